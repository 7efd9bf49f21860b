#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace psk {

enum class SimMode { Interior, Boundary, RandomDesign };

struct SimConfig {
  SimMode mode = SimMode::Interior;
  int m = 2;
  int p = 3;
  std::vector<int> sizes{2000, 8000, 32000};
  int reps = 500;
  double C = 1.0;    // K ~ C n^tau
  double tau = 0.6;
  double h = 0.5;    // h_n = h n^{-1/(4m+1)} (interior) or h n^{-1/(2m+1)} (boundary)
  std::string target = "sin2pi";
  std::string noise = "gaussian";     // gaussian | uniform
  std::string sigma_shape = "const";  // const | linear: sigma (0.5 + x)
  double sigma = 0.1;
  std::uint64_t seed = 12345;
  std::vector<double> x{0.5};     // absolute evaluation points
  std::vector<double> c_x;        // boundary points x = c_x h_n
  std::string density = "uniform";
  double c_I = 1.0;               // I = ceil(c_I n^tau_I)
  double tau_I = 0.8;
  std::string empty_bins = "zero";  // zero | count_weighted
  int threads = 0;                  // 0: PSK_THREADS or hardware default
};

// Flat key=value text; '#' starts a comment. Lists are comma separated.
SimConfig parse_sim_config(std::istream& is);
SimConfig parse_sim_config_file(const std::string& path);

// Throws ValidationError naming the violated condition.
void validate(const SimConfig& cfg);

struct SimSchedule {
  int n = 0;
  int K = 0;
  int I = 0;  // bins; 0 outside random design
  double h_n = 0.0;
  double lambda = 0.0;
  double scale = 0.0;  // n^{2m/(4m+1)} or n^{m/(2m+1)}
};

SimSchedule schedule_for(const SimConfig& cfg, int n);

struct SimRow {
  int n = 0;
  double x = 0.0;
  bool boundary_point = false;
  double scaled_bias_emp = 0.0;
  double scaled_bias_theory = 0.0;
  double scaled_var_emp = 0.0;
  double scaled_var_theory = 0.0;
  double skew = 0.0;
  double kurtosis = 0.0;  // excess
  double bias_se = 0.0;   // Monte Carlo standard error of the mean
  double var_se = 0.0;    // normal-theory standard error of the variance
  SimSchedule schedule;
};

struct SimReport {
  SimConfig config;
  std::vector<SimRow> rows;
};

SimReport simulate_interior(const SimConfig& cfg);
SimReport simulate_boundary(const SimConfig& cfg);
SimReport simulate_random_design(const SimConfig& cfg);
SimReport simulate(const SimConfig& cfg);

void write_sim_csv(std::ostream& os, const SimReport& report);

// Counter-based seed for replicate rep of size index n_index.
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t n_index, std::uint64_t rep);

// Threads to use: explicit request, else PSK_THREADS, else hardware concurrency.
int resolve_threads(int requested);

}  // namespace psk
