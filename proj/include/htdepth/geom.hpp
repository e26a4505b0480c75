#ifndef HTDEPTH_GEOM_HPP_
#define HTDEPTH_GEOM_HPP_

// Geometric primitives shared by the whole library: unit directions,
// halfspaces, H-polytopes, sphere nets and point clouds.
//
// All types are immutable value types once constructed and safe to share
// across threads. Random generation never touches global state: every
// operation that draws randomness takes an explicit seed.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace htdepth {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

// Default absolute tolerance for membership predicates.
inline constexpr double kMembershipTol = 1e-9;

// Deterministic random stream. The engine is std::mt19937_64 (fully
// specified by the standard); the uniform and Gaussian transforms are our
// own, so the produced values depend on the seed only, not on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  // Standard normal via Marsaglia's polar method (one value cached).
  double gaussian();
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Mixes a base seed with two stream identifiers into an independent seed.
// Used to key per-replication / per-purpose substreams deterministically.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

// A point of the unit sphere S^(d-1), d >= 2. Renormalized on construction;
// the unit-norm invariant then holds to 1e-12.
class Direction {
 public:
  explicit Direction(Vec coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Vec& coords() const { return coords_; }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> span() const { return coords_; }

 private:
  Vec coords_;
};

// Euclidean (chord) distance between two directions. Distances on the
// sphere are chords throughout this library; angle conversions use
// 2*asin(delta/2).
double chord_distance(const Direction& a, const Direction& b);

// Closed halfspace {x : <normal, x> <= offset}.
struct Halfspace {
  Direction normal;
  double offset;

  bool contains(std::span<const double> x, double tol = kMembershipTol) const;
};

// Intersection of finitely many halfspaces in R^d. An empty list is allowed
// and represents all of R^d (unbounded). Near-duplicate halfspaces are kept
// as given; redundancy is harmless for the LP-based queries.
class HPolytope {
 public:
  explicit HPolytope(int dim);
  HPolytope(std::vector<Halfspace> halfspaces, int dim);

  void add(Halfspace h);

  int dim() const { return dim_; }
  std::size_t size() const { return halfspaces_.size(); }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const Halfspace& operator[](std::size_t j) const { return halfspaces_[j]; }

  bool contains(std::span<const double> x, double tol = kMembershipTol) const;

 private:
  std::vector<Halfspace> halfspaces_;
  int dim_;
};

// True iff <u_j, x> <= t_j + tol for every halfspace of P.
bool polytope_contains(const HPolytope& p, std::span<const double> x, double tol = kMembershipTol);

enum class NetKind { kDeterministicCovering, kUniformRandom };

// A finite set of directions together with the covering parameter delta it
// was built for. Deterministic-covering nets satisfy the covering property
// by construction; uniform-random collections carry the target delta only.
struct SphereNet {
  std::vector<Direction> directions;
  double delta;
  NetKind kind;
};

// n points in R^d, row-major. Rows must be finite, n >= 1.
class PointCloud {
 public:
  PointCloud(std::vector<double> data, long long n, int dim);

  long long size() const { return n_; }
  int dim() const { return dim_; }
  std::span<const double> point(long long i) const {
    return {data_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& data() const { return data_; }

  // Max Euclidean norm over the points; used for net-resolution estimates.
  double max_norm() const;

 private:
  std::vector<double> data_;
  long long n_;
  int dim_;
};

// m i.i.d. uniform directions on S^(d-1), obtained by normalizing standard
// Gaussian vectors. Deterministic given the seed.
std::vector<Direction> uniform_directions(int d, long long m, std::uint64_t seed);

// Deterministic covering net with chord covering radius <= delta,
// 0 < delta <= 1. d = 2 uses equally spaced angles with spacing
// <= 2*asin(delta/2); d >= 3 uses a recursive latitude-band construction
// whose spacing certificate gives covering radius <= delta*sqrt(10)/4.
SphereNet deterministic_net(int d, double delta);

// Conservative delta-net check: true only if every probe direction has a
// candidate within chord delta/2. Requires probe covering radius <= delta/4,
// so a true answer certifies (by the triangle inequality) that the candidate
// set is a delta-net. One-sided: false answers may be spurious.
bool is_delta_net(const std::vector<Direction>& candidate, double delta, const SphereNet& probe);

}  // namespace htdepth

#endif  // HTDEPTH_GEOM_HPP_
