#include "htdepth/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "htdepth/depth.hpp"
#include "htdepth/metric.hpp"

namespace htdepth {

namespace {

// Deterministic parallel map: tasks write into their own slot, so the result
// is independent of scheduling.
void parallel_for(long long count, int threads, const std::function<void(long long)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || count <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const long long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(std::min<long long>(threads, count));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

RateFit ols_fit(const std::vector<std::pair<double, double>>& pts) {
  RateFit fit;
  fit.points = pts;
  const double n = static_cast<double>(pts.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (const auto& [x, y] : pts) {
    const double r = y - (fit.intercept + fit.slope * x);
    rss += r * r;
  }
  const double dof = std::max(1.0, n - 2.0);
  fit.stderr_slope = std::sqrt(rss / dof / sxx);
  return fit;
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

RateFit fit_log_log(const std::vector<std::pair<long long, double>>& n_and_error) {
  if (n_and_error.size() < 2) throw std::invalid_argument("fit_log_log: need >= 2 points");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n_and_error.size());
  for (const auto& [n, e] : n_and_error) {
    if (!(e > 0.0)) throw std::invalid_argument("fit_log_log: errors must be positive");
    pts.emplace_back(std::log(static_cast<double>(n)), std::log(e));
  }
  return ols_fit(pts);
}

namespace {

struct OraclePolytope {
  HPolytope poly;
  double conversion_error;  // 2 R delta/(1-delta) for ball oracles, else 0
};

OraclePolytope oracle_polytope(const RateExperimentConfig& cfg) {
  const PopulationLevelSet oracle = population_levelset(cfg.dist, cfg.alpha, cfg.oracle_net_delta);
  if (oracle.kind == PopulationLevelSet::Kind::kBall) {
    const SphereNet net = deterministic_net(cfg.dist.dim, cfg.oracle_net_delta);
    const double conv =
        2.0 * std::max(norm(oracle.center) + oracle.radius, 1e-12) * cfg.oracle_net_delta /
        (1.0 - cfg.oracle_net_delta);
    return OraclePolytope{ball_to_hpolytope(oracle.center, oracle.radius, net), conv};
  }
  return OraclePolytope{*oracle.polytope, 0.0};
}

long long directions_for(const RateExperimentConfig& cfg, long long n) {
  switch (cfg.directions_rule.kind) {
    case DirectionsRule::Kind::kFixed:
      return cfg.directions_rule.fixed_m;
    case DirectionsRule::Kind::kCorollary4:
      return corollary4_directions(cfg.dist.dim, n, cfg.directions_rule.k);
  }
  return 0;
}

RateRow run_one_replication(const RateExperimentConfig& cfg, const OraclePolytope& oracle,
                            const SphereNet& hausdorff_net, long long n, int rep) {
  RateRow row;
  row.n = n;
  row.rep = rep;
  row.seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep));
  row.directions = directions_for(cfg, n);

  const PointCloud cloud = sample(cfg.dist, n, derive_seed(row.seed, 1, 0));
  const auto dirs = uniform_directions(cfg.dist.dim, row.directions, derive_seed(row.seed, 2, 0));
  LevelSetResult ls = levelset_sampled(cloud, cfg.alpha, dirs);
  // The truncated-estimator convention: empty becomes {0}, everything is
  // intersected with the log n ball (a support-function no-op whenever the
  // set already sits inside it).
  ls = truncate(ls, std::log(static_cast<double>(n)));

  const HausdorffEstimate est = hausdorff_support(ls.polytope, oracle.poly, hausdorff_net);
  row.hausdorff = est.value;
  row.certified_error = est.certified_error + oracle.conversion_error;
  return row;
}

}  // namespace

RateResult run_rate_experiment(const RateExperimentConfig& cfg) {
  if (cfg.n_grid.size() < 2) throw std::invalid_argument("run_rate_experiment: need >= 2 n values");
  for (std::size_t i = 1; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
      throw std::invalid_argument("run_rate_experiment: n_grid must be strictly increasing");
    }
  }
  if (cfg.reps < 2) throw std::invalid_argument("run_rate_experiment: reps must be >= 2");

  const OraclePolytope oracle = oracle_polytope(cfg);
  const SphereNet hausdorff_net = deterministic_net(cfg.dist.dim, cfg.net_delta);

  const long long total = static_cast<long long>(cfg.n_grid.size()) * cfg.reps;
  RateResult result;
  result.rows.resize(static_cast<std::size_t>(total));
  parallel_for(total, cfg.threads, [&](long long task) {
    const long long n = cfg.n_grid[static_cast<std::size_t>(task) / static_cast<std::size_t>(cfg.reps)];
    const int rep = static_cast<int>(task % cfg.reps);
    result.rows[static_cast<std::size_t>(task)] =
        run_one_replication(cfg, oracle, hausdorff_net, n, rep);
  });

  std::vector<std::pair<long long, double>> mean_pts, median_pts;
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const long long n = cfg.n_grid[g];
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(cfg.reps));
    for (int rep = 0; rep < cfg.reps; ++rep) {
      errors.push_back(result.rows[g * static_cast<std::size_t>(cfg.reps) + static_cast<std::size_t>(rep)].hausdorff);
    }
    PerNSummary summary;
    summary.n = n;
    double sum = 0.0;
    for (double e : errors) sum += e;
    summary.mean = sum / static_cast<double>(cfg.reps);
    summary.median = median_of(errors);
    double ss = 0.0;
    for (double e : errors) ss += (e - summary.mean) * (e - summary.mean);
    summary.sd = std::sqrt(ss / std::max(1.0, static_cast<double>(cfg.reps - 1)));
    result.per_n.push_back(summary);
    mean_pts.emplace_back(n, summary.mean);
    median_pts.emplace_back(n, summary.median);
  }
  result.mean_fit = fit_log_log(mean_pts);
  result.median_fit = fit_log_log(median_pts);
  return result;
}

std::vector<NetRow> run_net_experiment(int d, double delta, const std::vector<long long>& m_grid,
                                       int reps, std::uint64_t seed) {
  if (d < 2 || d > 3) {
    throw std::invalid_argument("run_net_experiment: probe verification supports d in {2, 3}");
  }
  if (reps < 1) throw std::invalid_argument("run_net_experiment: reps must be >= 1");
  if (m_grid.empty()) throw std::invalid_argument("run_net_experiment: empty M grid");
  const SphereNet probe = deterministic_net(d, delta / 4.0);

  std::vector<NetRow> rows;
  for (long long m : m_grid) {
    std::vector<char> ok(static_cast<std::size_t>(reps), 0);
    parallel_for(reps, 0, [&](long long rep) {
      const auto dirs = uniform_directions(
          d, m, derive_seed(seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(rep)));
      ok[static_cast<std::size_t>(rep)] = is_delta_net(dirs, delta, probe) ? 1 : 0;
    });
    NetRow row;
    row.directions = m;
    row.reps = reps;
    for (char c : ok) row.failures += (c == 0) ? 1 : 0;
    row.frequency = static_cast<double>(row.failures) / static_cast<double>(reps);
    row.bound = net_failure_bound(d, m, delta);
    row.std_error = std::sqrt(row.frequency * (1.0 - row.frequency) / static_cast<double>(reps));
    rows.push_back(row);
  }
  return rows;
}

TailResult run_tail_experiment(const RateExperimentConfig& cfg, const AssumptionParams& params,
                               const std::vector<double>& x_grid) {
  if (cfg.n_grid.empty()) throw std::invalid_argument("run_tail_experiment: need an n value");
  if (cfg.reps < 1) throw std::invalid_argument("run_tail_experiment: reps must be >= 1");
  if (x_grid.empty()) throw std::invalid_argument("run_tail_experiment: empty x grid");
  params.validate();

  const long long n = cfg.n_grid.front();
  const OraclePolytope oracle = oracle_polytope(cfg);
  const SphereNet hausdorff_net = deterministic_net(cfg.dist.dim, cfg.net_delta);

  std::vector<double> errors(static_cast<std::size_t>(cfg.reps));
  parallel_for(cfg.reps, cfg.threads, [&](long long rep) {
    errors[static_cast<std::size_t>(rep)] =
        run_one_replication(cfg, oracle, hausdorff_net, n, static_cast<int>(rep)).hausdorff;
  });

  TailResult result;
  result.n = n;
  result.big_c = (params.big_r / params.r) * (1.0 + params.epsilon / params.r) /
                 (1.0 - params.epsilon / params.r);
  for (double x : x_grid) {
    TailRow row;
    row.x = x;
    row.reps = cfg.reps;
    row.radius_threshold = result.big_c * x / std::sqrt(static_cast<double>(n));
    for (double e : errors) {
      if (e > row.radius_threshold) ++row.exceed_count;
    }
    row.empirical = static_cast<double>(row.exceed_count) / static_cast<double>(cfg.reps);
    try {
      row.bound = theorem2_bound(params, cfg.dist.dim, n, x).probability_bound;
      row.in_domain = true;
    } catch (const BoundDomainError&) {
      row.bound = std::numeric_limits<double>::quiet_NaN();
      row.in_domain = false;
    }
    result.rows.push_back(row);
  }
  return result;
}

void write_rate_raw_csv(const std::string& path, const std::vector<RateRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "n,rep,seed,M,hausdorff,certified_error\n";
  for (const RateRow& r : rows) {
    out << r.n << ',' << r.rep << ',' << r.seed << ',' << r.directions << ','
        << format_g(r.hausdorff) << ',' << format_g(r.certified_error) << '\n';
  }
}

void write_rate_summary_json(const std::string& path, const RateResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "{\n";
  out << "  \"slope\": " << format_g(result.mean_fit.slope) << ",\n";
  out << "  \"intercept\": " << format_g(result.mean_fit.intercept) << ",\n";
  out << "  \"stderr\": " << format_g(result.mean_fit.stderr_slope) << ",\n";
  out << "  \"median_slope\": " << format_g(result.median_fit.slope) << ",\n";
  out << "  \"median_intercept\": " << format_g(result.median_fit.intercept) << ",\n";
  out << "  \"per_n\": [";
  for (std::size_t i = 0; i < result.per_n.size(); ++i) {
    const PerNSummary& s = result.per_n[i];
    if (i) out << ",";
    out << "\n    {\"n\": " << s.n << ", \"mean\": " << format_g(s.mean)
        << ", \"median\": " << format_g(s.median) << ", \"sd\": " << format_g(s.sd) << "}";
  }
  out << "\n  ]\n}\n";
}

void write_net_raw_csv(const std::string& path, const std::vector<NetRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "M,reps,failures,frequency,bound,binomial_se\n";
  for (const NetRow& r : rows) {
    out << r.directions << ',' << r.reps << ',' << r.failures << ',' << format_g(r.frequency)
        << ',' << format_g(r.bound) << ',' << format_g(r.std_error) << '\n';
  }
}

void write_tail_raw_csv(const std::string& path, const TailResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "x,in_domain,radius_threshold,exceed_count,reps,empirical,bound\n";
  for (const TailRow& r : result.rows) {
    out << format_g(r.x) << ',' << (r.in_domain ? 1 : 0) << ',' << format_g(r.radius_threshold)
        << ',' << r.exceed_count << ',' << r.reps << ',' << format_g(r.empirical) << ','
        << (r.in_domain ? format_g(r.bound) : std::string("out-of-domain")) << '\n';
  }
}

}  // namespace htdepth
