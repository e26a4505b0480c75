#ifndef HTDEPTH_LINPROG_HPP_
#define HTDEPTH_LINPROG_HPP_

// Dense linear programming for support-function evaluation over H-polytopes.
//
// Problems have few variables (the ambient dimension, <= ~10) and possibly
// very many constraints (up to ~1e5), so the dense simplex tableau is kept
// for the dual  min{ b.y : A^T y = c, y >= 0 }  whose tableau is
// d x (m + d + 1). Pivoting uses Bland's anti-cycling rule throughout, with
// a phase-1/phase-2 split; everything is deterministic for fixed input.

#include <stdexcept>
#include <vector>

#include "htdepth/geom.hpp"

namespace htdepth {

// max <objective, x>  subject to  constraints_a * x <= constraints_b,
// x free. constraints_a is m x d row-major.
struct LpProblem {
  Vec objective;
  std::vector<double> constraints_a;
  Vec constraints_b;
  long long m = 0;
  int d = 0;
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  Vec point;                     // optimal x (when optimal)
  std::vector<int> active_set;   // tight constraint indices at point, <= d
  Vec dual_weights;              // nonnegative, aligned with active_set
};

// Iteration cap exceeded (must not occur with Bland's rule; a bug signal).
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised where a nonempty polytope is required but the input is empty.
class EmptyPolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised where a bounded value is required but the input is unbounded.
class UnboundedPolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two-phase dual simplex with Bland's rule. Throws std::invalid_argument on
// non-finite input, SolverFailure past the 50*(m+d) iteration cap.
LpSolution solve(const LpProblem& p);

// Value of the phase-1 feasibility program min{ t : Ax - t*1 <= b, t >= -1 }.
// Nonpositive (within 1e-9) iff {x : Ax <= b} is nonempty.
double feasibility_gap(const HPolytope& p);

// Emptiness decided by the phase-1 LP at threshold 1e-9.
bool polytope_is_empty(const HPolytope& p);

struct SupportValue {
  bool unbounded = false;
  double value = 0.0;
};

// h_P(u) = max{ <u,x> : x in P }. Unbounded is reported in the result, not
// thrown; an empty polytope raises EmptyPolytopeError.
SupportValue support_function(const HPolytope& p, const Direction& u);

// Active-constraint certificate at the maximizer of <u,x>: at most d
// constraint indices, tight at the optimum, whose normals combine with the
// returned nonnegative weights to u. Weights come from the LP dual basis;
// with more than d tight constraints the certificate is a valid subset and
// need not be unique.
struct ConeCertificate {
  Vec point;
  std::vector<int> indices;
  Vec weights;
};

ConeCertificate active_cone_certificate(const HPolytope& p, const Direction& u);

// Lp view of a support-function query on an H-polytope.
LpProblem lp_from_polytope(const HPolytope& p, std::span<const double> objective);

}  // namespace htdepth

#endif  // HTDEPTH_LINPROG_HPP_
