#include "htdepth/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace htdepth {

namespace {

constexpr double kReducedCostEps = 1e-9;   // Bland entering threshold
constexpr double kPivotEps = 1e-11;        // smallest usable pivot element
constexpr double kPhase1Eps = 1e-9;        // infeasibility threshold, phase-1 objective

enum class SfStatus { kOptimal, kInfeasible, kUnbounded };

struct SfResult {
  SfStatus status = SfStatus::kInfeasible;
  double objective = 0.0;
  std::vector<int> basis_columns;  // real columns in the final basis (row order)
  Vec basis_values;
  Vec multipliers;                 // one per row of the equality system
};

// Dense two-phase simplex for  min g.w  s.t.  W w = h, w >= 0,  where W is
// rows x cols (rows small). Full tableau with artificial columns kept so the
// row multipliers can be read off their reduced costs at the end.
class StandardFormSimplex {
 public:
  StandardFormSimplex(int rows, long long cols, std::vector<double> w_colmajor_rows, Vec g, Vec h,
                      long long max_iterations)
      : rows_(rows),
        cols_(cols),
        width_(cols + rows + 1),
        tab_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(width_), 0.0),
        z_(static_cast<std::size_t>(width_), 0.0),
        cost_(std::move(g)),
        flip_(static_cast<std::size_t>(rows), 1.0),
        basis_(static_cast<std::size_t>(rows), -1),
        active_(static_cast<std::size_t>(rows), true),
        banned_(static_cast<std::size_t>(cols + rows), false),
        max_iterations_(max_iterations) {
    for (int i = 0; i < rows_; ++i) {
      double* row = tab_row(i);
      const double f = (h[static_cast<std::size_t>(i)] < 0.0) ? -1.0 : 1.0;
      flip_[static_cast<std::size_t>(i)] = f;
      for (long long j = 0; j < cols_; ++j) {
        row[j] = f * w_colmajor_rows[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                                     static_cast<std::size_t>(j)];
      }
      row[cols_ + i] = 1.0;
      row[width_ - 1] = f * h[static_cast<std::size_t>(i)];
      basis_[static_cast<std::size_t>(i)] = static_cast<long long>(cols_) + i;
    }
  }

  SfResult run() {
    // Phase 1: minimize the sum of artificials from the artificial basis.
    Vec phase1_cost(static_cast<std::size_t>(cols_ + rows_), 0.0);
    for (int i = 0; i < rows_; ++i) phase1_cost[static_cast<std::size_t>(cols_) + static_cast<std::size_t>(i)] = 1.0;
    rebuild_reduced_costs(phase1_cost);
    if (!iterate(/*allow_unbounded=*/false)) {
      throw SolverFailure("simplex: phase-1 iteration cap exceeded");
    }
    if (objective() > kPhase1Eps) {
      SfResult r;
      r.status = SfStatus::kInfeasible;
      return r;
    }
    drive_out_artificials();

    // Phase 2 on the real objective; artificials may not re-enter.
    for (int i = 0; i < rows_; ++i) banned_[static_cast<std::size_t>(cols_) + static_cast<std::size_t>(i)] = true;
    Vec phase2_cost(static_cast<std::size_t>(cols_ + rows_), 0.0);
    for (long long j = 0; j < cols_; ++j) phase2_cost[static_cast<std::size_t>(j)] = cost_[static_cast<std::size_t>(j)];
    rebuild_reduced_costs(phase2_cost);
    if (!iterate(/*allow_unbounded=*/true)) {
      throw SolverFailure("simplex: phase-2 iteration cap exceeded");
    }
    if (unbounded_) {
      SfResult r;
      r.status = SfStatus::kUnbounded;
      return r;
    }

    SfResult r;
    r.status = SfStatus::kOptimal;
    r.objective = objective();
    r.multipliers.assign(static_cast<std::size_t>(rows_), 0.0);
    for (int i = 0; i < rows_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      const long long b = basis_[static_cast<std::size_t>(i)];
      if (b < cols_) {
        r.basis_columns.push_back(static_cast<int>(b));
        r.basis_values.push_back(tab_row(i)[width_ - 1]);
      }
      // Reduced cost of the artificial column of row i is -pi_i in the
      // sign-flipped system.
      r.multipliers[static_cast<std::size_t>(i)] =
          -flip_[static_cast<std::size_t>(i)] * z_[static_cast<std::size_t>(cols_) + static_cast<std::size_t>(i)];
    }
    return r;
  }

 private:
  double* tab_row(int i) { return tab_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(width_); }

  double objective() const { return -z_[static_cast<std::size_t>(width_) - 1]; }

  void rebuild_reduced_costs(const Vec& cost) {
    for (long long j = 0; j < width_ - 1; ++j) z_[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
    z_[static_cast<std::size_t>(width_) - 1] = 0.0;
    for (int i = 0; i < rows_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      const double cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (cb == 0.0) continue;
      const double* row = tab_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(width_);
      for (long long j = 0; j < width_; ++j) z_[static_cast<std::size_t>(j)] -= cb * row[j];
    }
  }

  // Bland's rule iteration. Returns false when the iteration cap is hit.
  bool iterate(bool allow_unbounded) {
    unbounded_ = false;
    for (long long iter = 0; iter < max_iterations_; ++iter) {
      long long enter = -1;
      for (long long j = 0; j < cols_ + rows_; ++j) {
        if (banned_[static_cast<std::size_t>(j)]) continue;
        if (z_[static_cast<std::size_t>(j)] < -kReducedCostEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;  // optimal for this phase

      int leave_row = -1;
      long long leave_var = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        if (!active_[static_cast<std::size_t>(i)]) continue;
        const double* row = tab_row(i);
        const double a = row[enter];
        if (a <= kPivotEps) continue;
        const double ratio = row[width_ - 1] / a;
        const long long var = basis_[static_cast<std::size_t>(i)];
        // Bland tie-break: among minimal ratios, leave the smallest variable.
        if (leave_row < 0 || ratio < best_ratio || (ratio == best_ratio && var < leave_var)) {
          best_ratio = ratio;
          leave_row = i;
          leave_var = var;
        }
      }
      if (leave_row < 0) {
        if (allow_unbounded) {
          unbounded_ = true;
          return true;
        }
        throw SolverFailure("simplex: no ratio in a phase that cannot be unbounded");
      }
      pivot(leave_row, enter);
    }
    return false;
  }

  void pivot(int row_i, long long col_j) {
    double* prow = tab_row(row_i);
    const double inv = 1.0 / prow[col_j];
    for (long long j = 0; j < width_; ++j) prow[j] *= inv;
    prow[col_j] = 1.0;  // exact
    for (int i = 0; i < rows_; ++i) {
      if (i == row_i || !active_[static_cast<std::size_t>(i)]) continue;
      double* row = tab_row(i);
      const double f = row[col_j];
      if (f == 0.0) continue;
      for (long long j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[col_j] = 0.0;
    }
    const double zf = z_[static_cast<std::size_t>(col_j)];
    if (zf != 0.0) {
      for (long long j = 0; j < width_; ++j) z_[static_cast<std::size_t>(j)] -= zf * prow[j];
      z_[static_cast<std::size_t>(col_j)] = 0.0;
    }
    const long long old = basis_[static_cast<std::size_t>(row_i)];
    if (old >= cols_) banned_[static_cast<std::size_t>(old)] = true;  // artificials never re-enter
    basis_[static_cast<std::size_t>(row_i)] = col_j;
  }

  // After phase 1, pivot basic artificials onto real columns where possible;
  // rows where no real column has a usable pivot are linearly dependent and
  // get dropped.
  void drive_out_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (!active_[static_cast<std::size_t>(i)]) continue;
      if (basis_[static_cast<std::size_t>(i)] < cols_) continue;
      const double* row = tab_row(i);
      long long pick = -1;
      for (long long j = 0; j < cols_; ++j) {
        if (std::fabs(row[j]) > kPivotEps) {
          pick = j;
          break;
        }
      }
      if (pick >= 0) {
        pivot(i, pick);
      } else {
        active_[static_cast<std::size_t>(i)] = false;
      }
    }
  }

  int rows_;
  long long cols_;
  long long width_;
  std::vector<double> tab_;
  Vec z_;
  Vec cost_;
  Vec flip_;
  std::vector<long long> basis_;
  std::vector<bool> active_;
  std::vector<bool> banned_;
  long long max_iterations_;
  bool unbounded_ = false;
};

void validate_problem(const LpProblem& p) {
  if (p.d < 1) throw std::invalid_argument("LpProblem: d must be >= 1");
  if (p.m < 0) throw std::invalid_argument("LpProblem: m must be >= 0");
  if (static_cast<long long>(p.objective.size()) != p.d) {
    throw std::invalid_argument("LpProblem: objective size != d");
  }
  if (static_cast<long long>(p.constraints_b.size()) != p.m ||
      static_cast<long long>(p.constraints_a.size()) != p.m * p.d) {
    throw std::invalid_argument("LpProblem: constraint sizes inconsistent");
  }
  for (double v : p.objective) {
    if (!std::isfinite(v)) throw std::invalid_argument("LpProblem: non-finite objective");
  }
  for (double v : p.constraints_a) {
    if (!std::isfinite(v)) throw std::invalid_argument("LpProblem: non-finite constraint matrix");
  }
  for (double v : p.constraints_b) {
    if (!std::isfinite(v)) throw std::invalid_argument("LpProblem: non-finite constraint bound");
  }
}

// Solves via the dual; when the dual is infeasible the caller decides how to
// split unbounded from infeasible.
SfResult solve_dual(const LpProblem& p) {
  const int rows = p.d;
  const long long cols = p.m;
  // W = A^T laid out row-major by dual row (i.e. by primal coordinate).
  std::vector<double> w(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (long long j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      w[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)] =
          p.constraints_a[static_cast<std::size_t>(j) * static_cast<std::size_t>(rows) + static_cast<std::size_t>(i)];
    }
  }
  const long long cap = 50 * (p.m + p.d) + 200;
  StandardFormSimplex simplex(rows, cols, std::move(w), p.constraints_b, p.objective, cap);
  return simplex.run();
}

LpSolution optimal_from_dual(const LpProblem& p, SfResult&& r) {
  LpSolution s;
  s.status = LpStatus::kOptimal;
  s.value = r.objective;
  s.point = std::move(r.multipliers);
  // Deterministic presentation: active constraints sorted by index.
  std::vector<std::size_t> order(r.basis_columns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return r.basis_columns[a] < r.basis_columns[b]; });
  for (std::size_t i : order) {
    s.active_set.push_back(r.basis_columns[i]);
    s.dual_weights.push_back(std::max(0.0, r.basis_values[i]));
  }
  (void)p;
  return s;
}

double feasibility_gap_raw(const std::vector<double>& a, const Vec& b, long long m, int d) {
  // min t  s.t.  a_j.x - t <= b_j  for all j,  t >= -1. Always feasible and
  // bounded, so its dual is solvable; the polytope is nonempty iff min t <= 0.
  LpProblem q;
  q.d = d + 1;
  q.m = m + 1;
  q.objective.assign(static_cast<std::size_t>(d + 1), 0.0);
  q.objective.back() = -1.0;  // maximize -t
  q.constraints_a.assign(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(d + 1), 0.0);
  q.constraints_b.assign(static_cast<std::size_t>(m + 1), 0.0);
  for (long long j = 0; j < m; ++j) {
    for (int i = 0; i < d; ++i) {
      q.constraints_a[static_cast<std::size_t>(j) * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(i)] =
          a[static_cast<std::size_t>(j) * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)];
    }
    q.constraints_a[static_cast<std::size_t>(j) * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(d)] = -1.0;
    q.constraints_b[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j)];
  }
  q.constraints_a[static_cast<std::size_t>(m) * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(d)] = -1.0;
  q.constraints_b[static_cast<std::size_t>(m)] = 1.0;

  SfResult r = solve_dual(q);
  if (r.status != SfStatus::kOptimal) {
    throw SolverFailure("feasibility LP did not solve to optimality");
  }
  return -r.objective;  // min t
}

}  // namespace

LpSolution solve(const LpProblem& p) {
  validate_problem(p);

  if (p.m == 0) {
    LpSolution s;
    const bool zero_objective =
        std::all_of(p.objective.begin(), p.objective.end(), [](double v) { return v == 0.0; });
    if (zero_objective) {
      s.status = LpStatus::kOptimal;
      s.value = 0.0;
      s.point.assign(static_cast<std::size_t>(p.d), 0.0);
    } else {
      s.status = LpStatus::kUnbounded;
    }
    return s;
  }

  SfResult r = solve_dual(p);
  switch (r.status) {
    case SfStatus::kOptimal:
      return optimal_from_dual(p, std::move(r));
    case SfStatus::kUnbounded: {
      // Unbounded dual certifies an infeasible primal.
      LpSolution s;
      s.status = LpStatus::kInfeasible;
      return s;
    }
    case SfStatus::kInfeasible: {
      LpSolution s;
      const double gap = feasibility_gap_raw(p.constraints_a, p.constraints_b, p.m, p.d);
      s.status = (gap <= kPhase1Eps) ? LpStatus::kUnbounded : LpStatus::kInfeasible;
      return s;
    }
  }
  throw SolverFailure("unreachable solver state");
}

LpProblem lp_from_polytope(const HPolytope& p, std::span<const double> objective) {
  if (static_cast<int>(objective.size()) != p.dim()) {
    throw std::invalid_argument("lp_from_polytope: objective dimension mismatch");
  }
  LpProblem q;
  q.d = p.dim();
  q.m = static_cast<long long>(p.size());
  q.objective.assign(objective.begin(), objective.end());
  q.constraints_a.reserve(static_cast<std::size_t>(q.m) * static_cast<std::size_t>(q.d));
  q.constraints_b.reserve(static_cast<std::size_t>(q.m));
  for (const Halfspace& h : p.halfspaces()) {
    q.constraints_a.insert(q.constraints_a.end(), h.normal.coords().begin(), h.normal.coords().end());
    q.constraints_b.push_back(h.offset);
  }
  return q;
}

double feasibility_gap(const HPolytope& p) {
  if (p.size() == 0) return -1.0;  // all of R^d
  LpProblem q = lp_from_polytope(p, Vec(static_cast<std::size_t>(p.dim()), 0.0));
  return feasibility_gap_raw(q.constraints_a, q.constraints_b, q.m, q.d);
}

bool polytope_is_empty(const HPolytope& p) { return feasibility_gap(p) > kPhase1Eps; }

SupportValue support_function(const HPolytope& p, const Direction& u) {
  if (u.dim() != p.dim()) {
    throw std::invalid_argument("support_function: direction dimension mismatch");
  }
  LpSolution s = solve(lp_from_polytope(p, u.span()));
  switch (s.status) {
    case LpStatus::kOptimal:
      return SupportValue{false, s.value};
    case LpStatus::kUnbounded:
      return SupportValue{true, 0.0};
    case LpStatus::kInfeasible:
      throw EmptyPolytopeError("support_function: empty polytope");
  }
  throw SolverFailure("unreachable support state");
}

ConeCertificate active_cone_certificate(const HPolytope& p, const Direction& u) {
  if (u.dim() != p.dim()) {
    throw std::invalid_argument("active_cone_certificate: direction dimension mismatch");
  }
  LpSolution s = solve(lp_from_polytope(p, u.span()));
  if (s.status == LpStatus::kInfeasible) {
    throw EmptyPolytopeError("active_cone_certificate: empty polytope");
  }
  if (s.status == LpStatus::kUnbounded) {
    throw UnboundedPolytopeError("active_cone_certificate: unbounded support");
  }
  return ConeCertificate{std::move(s.point), std::move(s.active_set), std::move(s.dual_weights)};
}

}  // namespace htdepth
