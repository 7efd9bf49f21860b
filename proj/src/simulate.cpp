#include "psk/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "psk/binning.hpp"
#include "psk/boundary.hpp"
#include "psk/error.hpp"
#include "psk/fitter.hpp"
#include "psk/targets.hpp"

namespace psk {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& v) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      if constexpr (std::is_same_v<T, int>) {
        const double d = std::stod(item, &pos);
        if (d != std::floor(d)) throw std::invalid_argument("not integral");
        out.push_back(static_cast<int>(d));
      } else {
        out.push_back(std::stod(item, &pos));
      }
      if (pos != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ValidationError("config key '" + key + "': cannot parse '" + item + "'");
    }
  }
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  const auto l = parse_list<double>(key, v);
  if (l.size() != 1) throw ValidationError("config key '" + key + "' expects one number");
  return l[0];
}

int parse_int(const std::string& key, const std::string& v) {
  const auto l = parse_list<int>(key, v);
  if (l.size() != 1) throw ValidationError("config key '" + key + "' expects one integer");
  return l[0];
}

// Nearest divisor of total within 10% of k0, else k0 itself.
int snap_to_divisor(int k0, int total) {
  int best = k0;
  int best_gap = -1;
  const int lo = static_cast<int>(std::ceil(0.9 * k0));
  const int hi = static_cast<int>(std::floor(1.1 * k0));
  for (int k = std::max(2, lo); k <= hi; ++k) {
    if (total % k) continue;
    const int gap = std::abs(k - k0);
    if (best_gap < 0 || gap < best_gap) {
      best = k;
      best_gap = gap;
    }
  }
  return best;
}

double sigma_at(const SimConfig& cfg, double x) {
  return cfg.sigma_shape == "linear" ? cfg.sigma * (0.5 + x) : cfg.sigma;
}

// Standardized noise with unit variance.
double draw_noise(const SimConfig& cfg, std::mt19937_64& gen) {
  if (cfg.noise == "uniform") {
    std::uniform_real_distribution<double> u(-std::sqrt(3.0), std::sqrt(3.0));
    return u(gen);
  }
  std::normal_distribution<double> z(0.0, 1.0);
  return z(gen);
}

// Runs body(rep, out) for rep in [0, reps) across threads; out has width slots.
std::vector<double> run_replicates(int reps, int width, int threads,
                                   const std::function<void(int, double*)>& body) {
  std::vector<double> out(static_cast<std::size_t>(reps) * width, 0.0);
  threads = std::max(1, std::min(threads, reps));
  if (threads == 1) {
    for (int r = 0; r < reps; ++r) body(r, out.data() + static_cast<std::size_t>(r) * width);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int r = t; r < reps; r += threads) body(r, out.data() + static_cast<std::size_t>(r) * width);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct Moments {
  double mean = 0, var = 0, skew = 0, kurt = 0;
};

Moments moments_of(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  Moments mo;
  for (double x : v) mo.mean += x;
  mo.mean /= n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : v) {
    const double d = x - mo.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  mo.var = m2 / (n - 1);
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0) {
    mo.skew = m3 / std::pow(m2, 1.5);
    mo.kurt = m4 / (m2 * m2) - 3.0;
  }
  return mo;
}

struct EvalPoint {
  double x = 0;
  bool boundary = false;
  double theory_bias = 0;
  double theory_var = 0;
  int first = 0;
  std::vector<double> basis;
};

double eval_coeffs(const EvalPoint& e, const std::vector<double>& theta) {
  double s = 0;
  for (std::size_t l = 0; l < e.basis.size(); ++l) s += e.basis[l] * theta[e.first + l];
  return s;
}

SimRow make_row(int n, const EvalPoint& e, const SimSchedule& sch, const std::vector<double>& errors) {
  const Moments mo = moments_of(errors);
  SimRow row;
  row.n = n;
  row.x = e.x;
  row.boundary_point = e.boundary;
  row.scaled_bias_emp = mo.mean;
  row.scaled_var_emp = mo.var;
  row.skew = mo.skew;
  row.kurtosis = mo.kurt;
  row.scaled_bias_theory = e.theory_bias;
  row.scaled_var_theory = e.theory_var;
  const double r = static_cast<double>(errors.size());
  row.bias_se = std::sqrt(mo.var / r);
  row.var_se = mo.var * std::sqrt(2.0 / (r - 1.0));
  row.schedule = sch;
  return row;
}

SimReport run(const SimConfig& cfg) {
  validate(cfg);
  const TargetFunction mu = TargetFunction::from_name(cfg.target);
  const DesignDensity dens = DesignDensity::from_name(cfg.density);
  const BoundaryKernel bk(cfg.m);
  const double h_l2 = kernel_l2_norm_sq(bk.interior());
  const int threads = resolve_threads(cfg.threads);
  const int m = cfg.m;
  const bool boundary_mode = cfg.mode == SimMode::Boundary;

  SimReport report;
  report.config = cfg;
  for (std::size_t ni = 0; ni < cfg.sizes.size(); ++ni) {
    const int n = cfg.sizes[ni];
    const SimSchedule sch = schedule_for(cfg, n);
    const SplineBasis basis(cfg.p, sch.K);
    const PenaltyOperator pen(m, basis.num_basis());

    std::vector<EvalPoint> pts;
    auto add_point = [&](double x, bool at_boundary, double c_x) {
      EvalPoint e;
      e.x = x;
      e.boundary = at_boundary;
      const double s2 = std::pow(sigma_at(cfg, x), 2);
      if (at_boundary) {
        const auto bv = boundary_bias_var(bk, cfg.h, c_x, mu.derivative(0.0, m), std::pow(sigma_at(cfg, 0.0), 2));
        e.theory_bias = bv.bias;
        e.theory_var = bv.variance;
      } else if (boundary_mode) {
        // Interior reference point on the boundary scale: the bias term is a
        // finite-n value, the variance limit is unchanged.
        e.theory_bias = sch.scale * std::pow(sch.h_n, 2 * m) * ((m + 1) % 2 ? -1.0 : 1.0) * mu.derivative(x, 2 * m);
        e.theory_var = s2 * h_l2 / cfg.h;
      } else {
        e.theory_bias = ((m + 1) % 2 ? -1.0 : 1.0) * std::pow(cfg.h, 2 * m) * mu.derivative(x, 2 * m);
        e.theory_var = s2 * h_l2 / cfg.h / dens(x);
      }
      const auto bv = eval_basis(basis, x);
      e.first = bv.first_index;
      e.basis = bv.values;
      pts.push_back(std::move(e));
    };
    if (boundary_mode)
      for (double c : cfg.c_x) add_point(c * sch.h_n, true, c);
    for (double x : cfg.x) add_point(x, false, 0.0);
    const int width = static_cast<int>(pts.size());

    std::vector<double> raw;
    if (cfg.mode == SimMode::RandomDesign) {
      const BinnedSample empty = [&] {
        BinnedSample s;
        s.num_bins = sch.I;
        for (int k = 0; k < sch.I; ++k) s.centers.push_back((k + 0.5) / sch.I);
        s.means.assign(sch.I, 0.0);
        s.counts.assign(sch.I, 1);
        return s;
      }();
      const bool weighted = cfg.empty_bins == "count_weighted";
      const Smoother fixed = binned_smoother(empty, cfg.p, m, sch.lambda, sch.K);
      raw = run_replicates(cfg.reps, width, threads, [&](int rep, double* out) {
        std::mt19937_64 gen(replicate_seed(cfg.seed, ni, rep));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        std::vector<double> xs(n), ys(n);
        for (int i = 0; i < n; ++i) {
          xs[i] = std::clamp(dens.inverse_cdf(u01(gen)), 0.0, 1.0);
          ys[i] = mu(xs[i]) + sigma_at(cfg, xs[i]) * draw_noise(cfg, gen);
        }
        const BinnedSample s = bin_data(xs, ys, sch.I);
        const auto theta = weighted ? binned_smoother(s, cfg.p, m, sch.lambda, sch.K, EmptyBinPolicy::CountWeighted)
                                          .coefficients(s.means)
                                    : fixed.coefficients(s.means);
        for (int j = 0; j < width; ++j) out[j] = sch.scale * (eval_coeffs(pts[j], theta) - mu(pts[j].x));
      });
    } else {
      const auto xs = midpoint_design(n);
      const Smoother sm(DesignMatrix(basis, xs), pen, sch.lambda);
      std::vector<double> mean(n), sd(n);
      for (int i = 0; i < n; ++i) {
        mean[i] = mu(xs[i]);
        sd[i] = sigma_at(cfg, xs[i]);
      }
      raw = run_replicates(cfg.reps, width, threads, [&](int rep, double* out) {
        std::mt19937_64 gen(replicate_seed(cfg.seed, ni, rep));
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) y[i] = mean[i] + sd[i] * draw_noise(cfg, gen);
        const auto theta = sm.coefficients(y);
        for (int j = 0; j < width; ++j) out[j] = sch.scale * (eval_coeffs(pts[j], theta) - mu(pts[j].x));
      });
    }

    for (int j = 0; j < width; ++j) {
      std::vector<double> errs(cfg.reps);
      for (int r = 0; r < cfg.reps; ++r) errs[r] = raw[static_cast<std::size_t>(r) * width + j];
      report.rows.push_back(make_row(n, pts[j], sch, errs));
    }
  }
  return report;
}

}  // namespace

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t n_index, std::uint64_t rep) {
  std::uint64_t s = master;
  s = splitmix64(s) ^ (n_index * 0xD1B54A32D192ED03ULL);
  s = splitmix64(s) ^ (rep * 0x9FB21C651E98DF25ULL);
  return splitmix64(s);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PSK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SimConfig parse_sim_config(std::istream& is) {
  SimConfig cfg;
  bool x_given = false;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "mode") {
      if (val == "interior") cfg.mode = SimMode::Interior;
      else if (val == "boundary") cfg.mode = SimMode::Boundary;
      else if (val == "random" || val == "random_design") cfg.mode = SimMode::RandomDesign;
      else throw ValidationError("unknown mode '" + val + "'");
    } else if (key == "m") cfg.m = parse_int(key, val);
    else if (key == "p") cfg.p = parse_int(key, val);
    else if (key == "sizes") cfg.sizes = parse_list<int>(key, val);
    else if (key == "reps") cfg.reps = parse_int(key, val);
    else if (key == "C") cfg.C = parse_real(key, val);
    else if (key == "tau") cfg.tau = parse_real(key, val);
    else if (key == "h") cfg.h = parse_real(key, val);
    else if (key == "target") cfg.target = val;
    else if (key == "noise") cfg.noise = val;
    else if (key == "sigma_shape") cfg.sigma_shape = val;
    else if (key == "sigma") cfg.sigma = parse_real(key, val);
    else if (key == "seed") {
      try {
        cfg.seed = std::stoull(val);
      } catch (const std::exception&) {
        throw ValidationError("config key 'seed': cannot parse '" + val + "'");
      }
    } else if (key == "x") {
      cfg.x = parse_list<double>(key, val);
      x_given = true;
    } else if (key == "c_x") cfg.c_x = parse_list<double>(key, val);
    else if (key == "density") cfg.density = val;
    else if (key == "c_I") cfg.c_I = parse_real(key, val);
    else if (key == "tau_I") cfg.tau_I = parse_real(key, val);
    else if (key == "empty_bins") cfg.empty_bins = val;
    else if (key == "threads") cfg.threads = parse_int(key, val);
    else throw ValidationError("unknown config key '" + key + "'");
  }
  // Boundary runs evaluate at c_x h_n unless absolute points are asked for too.
  if (cfg.mode == SimMode::Boundary && !x_given) cfg.x.clear();
  if (cfg.mode == SimMode::Boundary && cfg.c_x.empty()) cfg.c_x = {0.0};
  return cfg;
}

SimConfig parse_sim_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config file '" + path + "'");
  return parse_sim_config(f);
}

void validate(const SimConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  if (cfg.m < 1 || cfg.m > 8) fail("m must lie in 1..8");
  if (cfg.p < 0 || cfg.p > 10) fail("p must lie in 0..10");
  if (cfg.sizes.empty()) fail("sizes must list at least one sample size");
  for (int n : cfg.sizes)
    if (n < 10) fail("every sample size must be at least 10");
  if (cfg.reps < 2) fail("reps must be at least 2");
  if (!(cfg.C > 0)) fail("C must be positive");
  if (!(cfg.h > 0)) fail("h must be positive");
  if (!(cfg.sigma >= 0)) fail("sigma must be nonnegative");
  if (!(cfg.tau < 1.0)) fail("tau < 1 violated (more knots than observations)");
  if (cfg.noise != "gaussian" && cfg.noise != "uniform") fail("noise must be gaussian or uniform");
  if (cfg.sigma_shape != "const" && cfg.sigma_shape != "linear") fail("sigma_shape must be const or linear");
  if (cfg.empty_bins != "zero" && cfg.empty_bins != "count_weighted") fail("empty_bins must be zero or count_weighted");
  TargetFunction::from_name(cfg.target);
  DesignDensity::from_name(cfg.density);
  for (double x : cfg.x)
    if (!(x >= 0 && x <= 1)) fail("evaluation points must lie in [0,1]");
  for (double c : cfg.c_x)
    if (!(c >= 0)) fail("c_x values must be nonnegative");

  const double m = cfg.m;
  if (cfg.mode == SimMode::Boundary) {
    const double bound = (m + 1) / (2 * m + 1);
    if (!(cfg.tau > bound))
      fail("boundary runs need tau > (m+1)/(2m+1) = " + std::to_string(bound) + ", got " + std::to_string(cfg.tau));
    if (cfg.c_x.empty() && cfg.x.empty()) fail("boundary runs need c_x or x evaluation points");
  } else {
    const double bound = (m + 1) / (4 * m + 1);
    if (!(cfg.tau > bound))
      fail("interior runs need tau > (m+1)/(4m+1) = " + std::to_string(bound) + ", got " + std::to_string(cfg.tau));
    if (cfg.x.empty()) fail("at least one evaluation point x is required");
  }
  if (cfg.mode == SimMode::RandomDesign) {
    const double bound = std::max(cfg.tau, 0.5);
    if (!(cfg.tau_I > bound))
      fail("random-design runs need tau_I > max(tau, 1/2) = " + std::to_string(bound) + ", got " +
           std::to_string(cfg.tau_I));
    if (!(cfg.tau_I < 1.0)) fail("random-design runs need tau_I < 1");
    if (!(cfg.c_I > 0)) fail("c_I must be positive");
  } else if (cfg.density != "uniform") {
    fail("a non-uniform density requires mode=random");
  }
  for (int n : cfg.sizes) {
    const SimSchedule s = schedule_for(cfg, n);
    if (s.K < cfg.p + 1 || s.K < 2) fail("knot count " + std::to_string(s.K) + " too small at n=" + std::to_string(n));
    const int points = cfg.mode == SimMode::RandomDesign ? s.I : n;
    if (s.K > points) fail("more knot intervals than design points at n=" + std::to_string(n));
  }
}

SimSchedule schedule_for(const SimConfig& cfg, int n) {
  SimSchedule s;
  s.n = n;
  const double m = cfg.m;
  const bool boundary = cfg.mode == SimMode::Boundary;
  const double nd = n;
  s.h_n = cfg.h * std::pow(nd, boundary ? -1.0 / (2 * m + 1) : -1.0 / (4 * m + 1));
  s.scale = std::pow(nd, boundary ? m / (2 * m + 1) : 2 * m / (4 * m + 1));
  const int k0 = std::max(2, static_cast<int>(std::lround(cfg.C * std::pow(nd, cfg.tau))));
  if (cfg.mode == SimMode::RandomDesign) {
    s.I = std::max(2, static_cast<int>(std::ceil(cfg.c_I * std::pow(nd, cfg.tau_I))));
    s.K = snap_to_divisor(k0, s.I);
  } else {
    s.K = snap_to_divisor(k0, n);
  }
  s.lambda = std::pow(s.K * s.h_n, 2 * m);
  return s;
}

SimReport simulate_interior(const SimConfig& cfg) {
  if (cfg.mode != SimMode::Interior) throw ValidationError("config mode is not interior");
  return run(cfg);
}

SimReport simulate_boundary(const SimConfig& cfg) {
  if (cfg.mode != SimMode::Boundary) throw ValidationError("config mode is not boundary");
  return run(cfg);
}

SimReport simulate_random_design(const SimConfig& cfg) {
  if (cfg.mode != SimMode::RandomDesign) throw ValidationError("config mode is not random");
  return run(cfg);
}

SimReport simulate(const SimConfig& cfg) { return run(cfg); }

void write_sim_csv(std::ostream& os, const SimReport& report) {
  const auto old = os.precision(10);
  os << "n,x,scaled_bias_emp,scaled_bias_theory,scaled_var_emp,scaled_var_theory,skew,kurtosis\n";
  for (const auto& r : report.rows) {
    os << r.n << ',' << r.x << ',' << r.scaled_bias_emp << ',' << r.scaled_bias_theory << ',' << r.scaled_var_emp
       << ',' << r.scaled_var_theory << ',' << r.skew << ',' << r.kurtosis << '\n';
  }
  os.precision(old);
}

}  // namespace psk
