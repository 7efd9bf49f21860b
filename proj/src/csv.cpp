#include "psk/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "psk/error.hpp"

namespace psk {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw ValidationError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

int CsvTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto cells = split(trim(line));
    if (t.header.empty()) {
      t.header = cells;
      t.columns.resize(cells.size());
      continue;
    }
    if (cells.size() != t.header.size())
      throw ValidationError("line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                            " fields, found " + std::to_string(cells.size()));
    for (std::size_t j = 0; j < cells.size(); ++j) t.columns[j].push_back(parse_number(cells[j], line_no));
  }
  if (t.header.empty()) throw ValidationError("CSV input is empty");
  return t;
}

XYData xy_from_table(const CsvTable& t) {
  const int ix = t.find("x");
  const int iy = t.find("y");
  if (ix < 0 || iy < 0) throw ValidationError("CSV header must contain columns x and y");
  if (t.rows() == 0) throw ValidationError("CSV input has no data rows");
  return {t.columns[ix], t.columns[iy]};
}

XYData read_xy(std::istream& is) { return xy_from_table(read_csv(is)); }

void write_xy(std::ostream& os, const XYData& d) {
  const auto old = os.precision(15);
  os << "x,y\n";
  for (std::size_t i = 0; i < d.xs.size(); ++i) os << d.xs[i] << ',' << d.ys[i] << '\n';
  os.precision(old);
}

void write_curve(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& mu) {
  const auto old = os.precision(15);
  os << "x,mu_hat\n";
  for (std::size_t i = 0; i < xs.size(); ++i) os << xs[i] << ',' << mu[i] << '\n';
  os.precision(old);
}

void write_binned(std::ostream& os, const BinnedSample& s, double lo, double hi) {
  const auto old = os.precision(15);
  os << "center,mean,count\n";
  for (int k = 0; k < s.num_bins; ++k)
    os << lo + (hi - lo) * s.centers[k] << ',' << s.means[k] << ',' << s.counts[k] << '\n';
  os.precision(old);
}

}  // namespace psk
