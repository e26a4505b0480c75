#ifndef HTDEPTH_EXPERIMENTS_HPP_
#define HTDEPTH_EXPERIMENTS_HPP_

// Monte Carlo harness: convergence-rate fits for the Hausdorff error of the
// sampled level sets against their population oracles, empirical delta-net
// failure frequencies against the net bound, and empirical deviation tails
// against the theorem bound. Replications are independent tasks keyed by
// (n, rep) with derived seeds; results are reduced in deterministic order no
// matter the thread count.

#include <cstdint>
#include <string>
#include <utility>

#include "htdepth/bounds.hpp"
#include "htdepth/distr.hpp"

namespace htdepth {

struct DirectionsRule {
  enum class Kind { kFixed, kCorollary4 } kind = Kind::kFixed;
  long long fixed_m = 0;  // kFixed
  double k = 1.0;         // kCorollary4 moment order

  static DirectionsRule fixed(long long m) { return {Kind::kFixed, m, 0.0}; }
  static DirectionsRule corollary4(double k) { return {Kind::kCorollary4, 0, k}; }
};

struct RateExperimentConfig {
  ReferenceDistribution dist;
  LevelSpec alpha;
  std::vector<long long> n_grid;
  int reps = 0;
  DirectionsRule directions_rule;
  double net_delta = 0.01;         // Hausdorff estimation net
  double oracle_net_delta = 1e-3;  // ball-oracle H-polytope conversion net
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0: available parallelism
};

struct RateRow {
  long long n = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  long long directions = 0;
  double hausdorff = 0.0;
  double certified_error = 0.0;
};

struct PerNSummary {
  long long n = 0;
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::vector<std::pair<double, double>> points;  // (log n, log error)
};

struct RateResult {
  RateFit mean_fit;
  RateFit median_fit;
  std::vector<RateRow> rows;
  std::vector<PerNSummary> per_n;
};

// Ordinary least squares of log(error) on log(n). Exposed directly so
// synthetic error curves can be fitted without the sampling pipeline.
RateFit fit_log_log(const std::vector<std::pair<long long, double>>& n_and_error);

RateResult run_rate_experiment(const RateExperimentConfig& cfg);

struct NetRow {
  long long directions = 0;
  int reps = 0;
  int failures = 0;
  double frequency = 0.0;
  double bound = 0.0;      // net failure bound at (d, M, delta)
  double std_error = 0.0;  // binomial SE of the frequency
};

std::vector<NetRow> run_net_experiment(int d, double delta, const std::vector<long long>& m_grid,
                                       int reps, std::uint64_t seed);

struct TailRow {
  double x = 0.0;
  bool in_domain = false;
  double radius_threshold = 0.0;  // C*x/sqrt(n)
  int exceed_count = 0;
  int reps = 0;
  double empirical = 0.0;
  double bound = 0.0;  // NaN when out of domain
};

struct TailResult {
  std::vector<TailRow> rows;
  long long n = 0;
  double big_c = 0.0;
};

// Exceedance frequencies of {d_H > C*x/sqrt(n)} on the first n of the grid,
// against the deviation bound; out-of-domain x values are kept and marked.
TailResult run_tail_experiment(const RateExperimentConfig& cfg, const AssumptionParams& params,
                               const std::vector<double>& x_grid);

// Fixed-name output files (byte-deterministic for identical configs).
void write_rate_raw_csv(const std::string& path, const std::vector<RateRow>& rows);
void write_rate_summary_json(const std::string& path, const RateResult& result);
void write_net_raw_csv(const std::string& path, const std::vector<NetRow>& rows);
void write_tail_raw_csv(const std::string& path, const TailResult& result);

}  // namespace htdepth

#endif  // HTDEPTH_EXPERIMENTS_HPP_
