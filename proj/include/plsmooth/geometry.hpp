#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace plsmooth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Pinned numeric tolerances. Changing these invalidates recorded certificates.
namespace tol {
inline constexpr double membership = 1e-9;       // closed-simplex membership slack
inline constexpr double weight_sum = 1e-12;      // barycentric weights sum to 1
inline constexpr double weight_neg = 1e-12;      // weight nonnegativity slack
inline constexpr double reconstruct = 1e-10;     // point rebuilt from weights
inline constexpr double affine_residual = 1e-9;  // distance from affine hull
inline constexpr double exact = 1e-12;           // "exact" agreement checks
inline constexpr double volume_rel = 1e-9;       // relative volume conservation
inline constexpr double partition_sum = 1e-10;   // sum of partition weights vs 1
inline constexpr double c1_mismatch = 1e-2;      // smoothed-map probe threshold
inline constexpr double c1_kink = 0.5;           // kinked-input probe sensitivity
inline constexpr double profile_probe = 1e-3;    // probes at profile thresholds
inline constexpr double projection_tie = 1e-7;   // nearest-point tie perturbation
}  // namespace tol

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic RNG. Raw doubles are extracted bit-stably (53-bit mantissa
// trick) instead of std::uniform_real_distribution, whose output is
// implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t next() { return gen_(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

 private:
  std::mt19937_64 gen_;
};

// Barycentric weights of x with respect to the columns of V, solved as the
// least-squares system [V; 1^T] w = [x; 1]. Second member is the Euclidean
// distance from x to the affine hull.
struct BarycentricSolve {
  Vec weights;
  double residual = 0.0;
};
BarycentricSolve barycentric_solve(const Mat& V, const Vec& x);

// Exact distance from x to the closed simplex conv(columns of V), via
// enumeration of face projections (simplex dimension is at most 4 here).
struct SimplexProjection {
  Vec foot;         // nearest point of the closed simplex
  Vec weights;      // weights of foot w.r.t. all columns of V (zeros off-face)
  double distance = 0.0;
};
SimplexProjection project_to_simplex(const Mat& V, const Vec& x);

// k-dimensional volume of the simplex spanned by the columns of V:
// sqrt(det(E^T E)) / k! with E the matrix of edge vectors from column 0.
double simplex_volume(const Mat& V);

// Max pairwise distance between the columns of V.
double simplex_diameter(const Mat& V);

// True when the columns of V are affinely independent (k-volume above tol).
bool affinely_independent(const Mat& V, double tolerance = 1e-12);

// One uniform sample from the closed simplex: exponential spacings yield a
// uniform Dirichlet weight vector.
Vec sample_simplex_point(const Mat& V, Rng& rng);
Vec sample_simplex_weights(int nverts, Rng& rng);

// Orthogonal projection of x onto the affine hull of the columns of V.
// Returns the foot and its barycentric weights (which may be negative).
struct HullProjection {
  Vec foot;
  Vec weights;
  double distance = 0.0;
};
HullProjection project_to_affine_hull(const Mat& V, const Vec& x);

}  // namespace plsmooth
