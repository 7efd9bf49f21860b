#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "psk/binning.hpp"

namespace psk {

// Numeric CSV with a header row. LF or CRLF line endings, optional UTF-8 BOM.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  // Column index by name, or -1.
  int find(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);

struct XYData {
  std::vector<double> xs;
  std::vector<double> ys;
};

// Requires columns x and y and at least one data row.
XYData read_xy(std::istream& is);
XYData xy_from_table(const CsvTable& t);

void write_xy(std::ostream& os, const XYData& d);
void write_curve(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& mu);
// Centers are mapped back through lo + (hi - lo) * center.
void write_binned(std::ostream& os, const BinnedSample& s, double lo = 0.0, double hi = 1.0);

}  // namespace psk
