#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "psk/binning.hpp"
#include "psk/boundary.hpp"
#include "psk/charpoly.hpp"
#include "psk/csv.hpp"
#include "psk/equivalence.hpp"
#include "psk/error.hpp"
#include "psk/fitter.hpp"
#include "psk/kernel.hpp"
#include "psk/lidar.hpp"
#include "psk/penalty.hpp"
#include "psk/simulate.hpp"

namespace psk {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

double snap(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

CsvTable load_table(const std::string& path) {
  if (path == "-") return read_csv(std::cin);
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open input file '" + path + "'");
  return read_csv(f);
}

// Affine map of the data range onto [0,1].
struct UnitMap {
  double lo = 0.0;
  double hi = 1.0;
  double to_unit(double x) const { return std::clamp((x - lo) / (hi - lo), 0.0, 1.0); }
  double from_unit(double u) const { return lo + (hi - lo) * u; }
};

UnitMap range_of(const std::vector<double>& xs) {
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  if (!(*mx > *mn)) throw ValidationError("x values must span a nonempty range");
  return {*mn, *mx};
}

struct FitOptions {
  std::string csv;
  int p = 3;
  int m = 2;
  int knots = 35;
  double lambda = -1;
  double lambda_star = -1;
  double bandwidth = -1;
  int bins = 0;
  bool count_weighted = false;
  int grid = 201;
  bool at_data = false;
  bool no_rescale = false;
};

double resolve_lambda(const FitOptions& o, int n_points) {
  const int given = (o.lambda >= 0) + (o.lambda_star >= 0) + (o.bandwidth >= 0);
  if (given > 1) throw ValidationError("give at most one of --lambda, --lambda-star, --bandwidth");
  if (o.lambda >= 0) return o.lambda;
  if (o.lambda_star >= 0) return o.lambda_star * o.knots / n_points;
  const double h = o.bandwidth >= 0 ? o.bandwidth : 0.05;
  if (!(h > 0)) throw ValidationError("--bandwidth must be positive");
  return std::pow(o.knots * h, 2 * o.m);
}

void run_fit(const FitOptions& o, std::ostream& out) {
  const CsvTable t = load_table(o.csv);
  if (t.rows() == 0) throw ValidationError("input CSV has no data rows");
  const bool prebinned = t.find("center") >= 0 && t.find("mean") >= 0 && t.find("count") >= 0;

  UnitMap map;
  std::unique_ptr<Smoother> sm;
  std::vector<double> response;
  std::vector<double> data_x;
  double lambda = 0;
  if (prebinned) {
    const auto& c = t.columns[t.find("center")];
    const auto& mean = t.columns[t.find("mean")];
    const auto& count = t.columns[t.find("count")];
    const int I = static_cast<int>(c.size());
    if (I < 2) throw ValidationError("binned input needs at least two bins");
    const double w = c[1] - c[0];
    map = {c.front() - w / 2, c.back() + w / 2};
    BinnedSample s;
    s.num_bins = I;
    for (int k = 0; k < I; ++k) {
      s.centers.push_back((k + 0.5) / I);
      s.means.push_back(mean[k]);
      s.counts.push_back(static_cast<int>(count[k]));
    }
    lambda = resolve_lambda(o, I);
    sm = std::make_unique<Smoother>(binned_smoother(s, o.p, o.m, lambda, o.knots,
                                                    o.count_weighted ? EmptyBinPolicy::CountWeighted
                                                                     : EmptyBinPolicy::Zero));
    response = s.means;
    data_x = c;
  } else {
    XYData d = xy_from_table(t);
    map = o.no_rescale ? UnitMap{0.0, 1.0} : range_of(d.xs);
    std::vector<double> u(d.xs.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (o.no_rescale && !(d.xs[i] >= 0 && d.xs[i] <= 1))
        throw ValidationError("with --no-rescale all x must lie in [0,1]");
      u[i] = map.to_unit(d.xs[i]);
    }
    data_x = d.xs;
    if (o.bins > 0) {
      const BinnedSample s = bin_data(u, d.ys, o.bins);
      if (o.bins < o.knots) std::cerr << "warning: fewer bins than knot intervals\n";
      lambda = resolve_lambda(o, o.bins);
      sm = std::make_unique<Smoother>(binned_smoother(s, o.p, o.m, lambda, o.knots,
                                                      o.count_weighted ? EmptyBinPolicy::CountWeighted
                                                                       : EmptyBinPolicy::Zero));
      response = s.means;
    } else {
      lambda = resolve_lambda(o, static_cast<int>(u.size()));
      const SplineBasis basis(o.p, o.knots);
      sm = std::make_unique<Smoother>(DesignMatrix(basis, u), PenaltyOperator(o.m, basis.num_basis()), lambda);
      response = d.ys;
    }
  }
  const PSplineFit f = sm->fit(response);
  std::vector<double> gx, gy;
  if (o.at_data) {
    for (double x : data_x) {
      gx.push_back(x);
      gy.push_back(f(map.to_unit(x)));
    }
  } else {
    if (o.grid < 2) throw ValidationError("--grid must be at least 2");
    for (int i = 0; i < o.grid; ++i) {
      const double u = static_cast<double>(i) / (o.grid - 1);
      gx.push_back(map.from_unit(u));
      gy.push_back(f(u));
    }
  }
  write_curve(out, gx, gy);
}

void run_bin(const std::string& csv, int bins, std::ostream& out) {
  const XYData d = xy_from_table(load_table(csv));
  const UnitMap map = range_of(d.xs);
  std::vector<double> u(d.xs.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = map.to_unit(d.xs[i]);
  const int I = bins > 0 ? bins : default_bin_count(static_cast<long>(u.size()));
  write_binned(out, bin_data(u, d.ys, I), map.lo, map.hi);
}

struct KernelOptions {
  int m = 2;
  bool moments = false;
  bool boundary = false;
  bool boundary_moments = false;
  bool norms = false;
  double x = 0.0;
  double t = 0.0;
  double from = -6.0;
  double to = 6.0;
  double step = 0.25;
};

void run_kernel(const KernelOptions& o, std::ostream& out) {
  out << std::setprecision(12);
  if (o.moments) {
    const EquivalentKernel k(o.m);
    out << "ell,moment\n";
    for (int l = 0; l <= 2 * o.m; ++l) out << l << ',' << snap(kernel_moment(k, l)) << '\n';
    return;
  }
  if (o.boundary_moments) {
    const BoundaryKernel bk(o.m);
    out << "ell,moment\n";
    for (int l = 0; l <= o.m; ++l) out << l << ',' << snap(boundary_moment(bk, l, o.t)) << '\n';
    return;
  }
  if (o.norms) {
    const BoundaryKernel bk(o.m);
    out << "quantity,value\n";
    out << "interior_l2," << kernel_l2_norm_sq(bk.interior()) << '\n';
    out << "boundary_l2," << boundary_l2_norm_sq(bk, o.t) << '\n';
    return;
  }
  if (!(o.step > 0)) throw ValidationError("--step must be positive");
  if (o.boundary) {
    const BoundaryKernel bk(o.m);
    out << "xt,H_b,combined\n";
    const double lo = std::max(0.0, o.from);
    for (double xt = lo; xt <= o.to + 1e-12; xt += o.step)
      out << xt << ',' << snap(bk.correction(o.x, xt)) << ',' << snap(bk.combined(o.x, xt)) << '\n';
    return;
  }
  const EquivalentKernel k(o.m);
  out << "x,H,Q\n";
  for (double x = o.from; x <= o.to + 1e-12; x += o.step) out << snap(x) << ',' << k(x) << ',' << k.companion_q(x) << '\n';
}

struct RootOptions {
  int p = 3;
  int m = 2;
  double lambda = 1e6;
  int samples = 0;  // M; 0 selects the continuous-limit Gram band
};

void run_roots(const RootOptions& o, std::ostream& out) {
  std::vector<double> u;
  if (o.samples > 0) {
    const int q = std::max(o.p, o.m);
    const int K = 4 * q + 8;
    const SplineBasis basis(o.p, K);
    u = gram_band(DesignMatrix(basis, midpoint_design(K * o.samples)));
  } else {
    u = continuous_gram_band(o.p);
  }
  const auto eq = build_char_poly(o.p, o.m, o.lambda, u);
  const auto rs = solve_roots(eq);
  const auto errs = expansion_errors(rs);
  const auto co = coeffs_a(rs, eq);
  out << std::setprecision(15);
  out << "kind,index,re,im,delta_re,delta_im,psi_re,psi_im,expansion_error,a_re,a_im\n";
  const auto sel = rs.selected();
  for (std::size_t i = 0; i < sel.size(); ++i) {
    const bool kern = i < rs.kernel_roots.size();
    out << (kern ? "kernel" : "small") << ',' << i + 1 << ',' << sel[i].rho.real() << ',' << sel[i].rho.imag() << ','
        << sel[i].delta.real() << ',' << sel[i].delta.imag() << ',';
    if (kern)
      out << rs.kernel_psi[i].real() << ',' << rs.kernel_psi[i].imag() << ',' << errs[i];
    else
      out << ",,";
    out << ',' << co.a[i].real() << ',' << co.a[i].imag() << '\n';
  }
  if (rs.outside_unit_disk) std::cerr << "warning: a kernel root lies outside the unit disk\n";
}

struct CompareOptions {
  int n = 4000;
  int K = 100;
  int p = 3;
  int m = 2;
  std::vector<double> lambdas{1e4};
  double x = 0.5;
  std::string mode = "interior";
  double fixed_bandwidth = -1;
};

void run_compare(const CompareOptions& o, std::ostream& out) {
  std::vector<EquivalenceReport> reports;
  for (double lam : o.lambdas) {
    int K = o.K;
    double lambda = lam;
    if (o.fixed_bandwidth > 0) {
      K = std::max(o.p + 1, static_cast<int>(std::lround(std::pow(lam, 1.0 / (2 * o.m)) / o.fixed_bandwidth)));
    }
    const SplineBasis basis(o.p, K);
    const Smoother sm(DesignMatrix(basis, midpoint_design(o.n)), PenaltyOperator(o.m, basis.num_basis()), lambda);
    if (o.mode == "interior") reports.push_back(compare_interior(sm, o.x));
    else if (o.mode == "boundary") reports.push_back(compare_boundary(sm, o.x));
    else if (o.mode == "two-sided") reports.push_back(compare_two_sided(sm, o.x));
    else throw ValidationError("--mode must be interior, boundary or two-sided");
  }
  write_equivalence_csv(out, reports);
  if (reports.size() >= 2) {
    std::vector<ScanPoint> pts;
    for (const auto& r : reports) pts.push_back({r.config.lambda, r.sup_discrepancy});
    const auto scan = rate_scan(pts);
    if (scan.slope) std::cerr << "log-log slope of sup discrepancy vs lambda: " << *scan.slope << '\n';
    else std::cerr << "slope undefined (identical knob values)\n";
  }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"psk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"P-spline smoothing and equivalent-kernel toolkit", "psk"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed for generators and simulations");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv"}));

  FitOptions fo;
  auto* fit = app.add_subcommand("fit", "Fit a P-spline to x,y (or binned center,mean,count) CSV data");
  fit->add_option("--csv", fo.csv, "Input CSV path ('-' for stdin)")->required();
  fit->add_option("--p", fo.p, "Spline degree");
  fit->add_option("--m", fo.m, "Penalty order");
  fit->add_option("--knots", fo.knots, "Number of knot intervals K");
  fit->add_option("--lambda", fo.lambda, "Smoothing parameter lambda");
  fit->add_option("--lambda-star", fo.lambda_star, "Unscaled smoothing parameter lambda* = lambda n / K");
  fit->add_option("--bandwidth", fo.bandwidth, "Target bandwidth h; lambda = (K h)^(2m), default 0.05");
  fit->add_option("--bins", fo.bins, "Bin the data into this many bins before fitting");
  fit->add_flag("--count-weighted", fo.count_weighted, "Weight bins by their counts");
  fit->add_option("--grid", fo.grid, "Number of output grid points");
  fit->add_flag("--at-data", fo.at_data, "Evaluate at the data abscissae instead of a grid");
  fit->add_flag("--no-rescale", fo.no_rescale, "Use x as given (must lie in [0,1])");

  std::string bin_csv;
  int bins = 0;
  auto* bin = app.add_subcommand("bin", "Bin x,y CSV data into equal-width bins");
  bin->add_option("--csv", bin_csv, "Input CSV path ('-' for stdin)")->required();
  bin->add_option("--bins", bins, "Number of bins (default ceil(n^0.7))");

  KernelOptions ko;
  auto* kernel = app.add_subcommand("kernel", "Tabulate equivalent kernels and their moments");
  kernel->add_option("--m", ko.m, "Kernel order");
  kernel->add_flag("--moments", ko.moments, "Moments of H_m for ell = 0..2m");
  kernel->add_flag("--boundary", ko.boundary, "Tabulate the boundary kernel at position --x");
  kernel->add_flag("--boundary-moments", ko.boundary_moments, "Boundary moments ell = 0..m at position --t");
  kernel->add_flag("--norms", ko.norms, "Squared L2 norms of interior and boundary kernels");
  kernel->add_option("--x", ko.x, "Scaled boundary evaluation position");
  kernel->add_option("--t", ko.t, "Scaled boundary position for moments");
  kernel->add_option("--from", ko.from, "Table start");
  kernel->add_option("--to", ko.to, "Table end");
  kernel->add_option("--step", ko.step, "Table step");

  RootOptions ro;
  auto* roots = app.add_subcommand("roots", "Characteristic roots, expansion errors and coefficients");
  roots->add_option("--p", ro.p, "Spline degree");
  roots->add_option("--m", ro.m, "Penalty order");
  roots->add_option("--lambda", ro.lambda, "Smoothing parameter");
  roots->add_option("--M", ro.samples, "Samples per knot interval for the Gram band (0: continuous limit)");

  CompareOptions co;
  auto* compare = app.add_subcommand("compare", "Compare P-spline weights with the equivalent kernel");
  compare->add_option("--n", co.n, "Number of equidistant design points");
  compare->add_option("--K", co.K, "Knot intervals");
  compare->add_option("--p", co.p, "Spline degree");
  compare->add_option("--m", co.m, "Penalty order");
  compare->add_option("--lambda", co.lambdas, "One or more smoothing parameters")->delimiter(',');
  compare->add_option("--x", co.x, "Evaluation point");
  compare->add_option("--mode", co.mode, "interior, boundary or two-sided");
  compare->add_option("--fixed-bandwidth", co.fixed_bandwidth, "Hold h_n fixed; K = round(lambda^(1/2m) / h_n)");

  std::string sim_config;
  int threads = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a Monte Carlo study from a key=value config");
  simulate_cmd->add_option("--config", sim_config, "Config file")->required();
  simulate_cmd->add_option("--threads", threads, "Worker threads (default PSK_THREADS or hardware)");

  auto* lidar = app.add_subcommand("lidar", "Write the bundled synthetic LIDAR-like data set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      err << "error: cannot open output file '" << g.out << "'\n";
      return 2;
    }
    os = &file;
  }

  try {
    if (*fit) run_fit(fo, *os);
    else if (*bin) run_bin(bin_csv, bins, *os);
    else if (*kernel) run_kernel(ko, *os);
    else if (*roots) run_roots(ro, *os);
    else if (*compare) run_compare(co, *os);
    else if (*simulate_cmd) {
      SimConfig cfg = parse_sim_config_file(sim_config);
      if (threads > 0) cfg.threads = threads;
      if (app.get_option("--seed")->count() > 0) cfg.seed = g.seed;
      write_sim_csv(*os, simulate(cfg));
    } else if (*lidar) {
      write_xy(*os, synthetic_lidar(g.seed));
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace psk
