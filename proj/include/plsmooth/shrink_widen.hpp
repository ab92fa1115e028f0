#pragma once

#include <functional>
#include <memory>

#include "plsmooth/sampling.hpp"

namespace plsmooth {

// Homothety shrinking of an open simplex at its barycenter, ratio 1 - eps.
// A point x of the closed simplex lies in the shrunk open simplex iff every
// barycentric weight of x exceeds eps / (dim + 1), so membership is a weight
// threshold and needs no extra geometry.
struct Shrinking {
  int simplex = -1;
  double epsilon = 0.0;
  Mat vertices;  // columns: images of the simplex vertices
};

Shrinking shrink(const Complex& K, int s, double epsilon);

// Open-shrunk-simplex membership by weight threshold. `margin` tightens the
// threshold (used by audits to assert strict containment).
bool in_shrunk_core(const Complex& K, int s, double epsilon, const Vec& x,
                    double margin = 0.0);

// Orthogonal projection onto the affine hull of simplex s, defined on the
// tube over the open simplex: nullopt when the foot has a weight below
// tol::membership (the foot leaves the open simplex).
struct TubularFoot {
  Vec foot;
  Vec weights;
  double dist = 0.0;
};
std::optional<TubularFoot> tubular_project(const Complex& K, int s, const Vec& x);

struct Widening {
  int simplex = -1;
  double epsilon = 0.0;  // shrink ratio of the core
  double eta = 0.0;      // tube radius
};

// x is in the widened set iff its hull foot lies in the shrunk open core and
// its hull distance is strictly below eta.
bool membership_widened(const Complex& K, const Widening& w, const Vec& x);

// Scales shared by the construction and the partition bumps. The bumps
// plateau on the backoff-scaled piece and vanish off the full piece. Core
// sizing probes face coverage at residual_scale, strictly between the two:
// every point is then either inside a face piece at residual_scale, where
// that face's bump is bounded below, or inside the core plateau of its own
// simplex. Either way the unnormalized partition total never decays into the
// smooth profile's tail on the polyhedron. residual_scale must stay above
// the backoff (sampled handoffs between face pieces miss the plateau scale
// by the sampling resolution) and below 1 (the profile tail underflows just
// inside the full piece).
inline constexpr double overlap_backoff = 0.9;
inline constexpr double residual_scale = 0.95;

// One covering piece per simplex. Vertex pieces are balls with constant
// retraction; positive-dimensional pieces are tube preimages of shrunk cores
// with the hull projection as retraction. Everything is recomputable from
// (simplex, epsilon, eta_prime, base_case), which is the serialized form.
struct CoveringPiece {
  int simplex = -1;
  double epsilon = 0.0;    // unused for base_case pieces
  double eta_prime = 0.0;  // radius actually used, < declared eta
  bool base_case = false;
};

struct Covering {
  Complex K;
  std::vector<CoveringPiece> pieces;  // indexed by simplex id
  std::vector<double> eta;            // declared budget per simplex

  // x in U_s (open). `scale` < 1 shrinks the set (radius * scale, weight
  // threshold / scale); the construction uses overlap_backoff to leave an
  // overlap band between a simplex's own core and its faces' pieces.
  bool member(int s, const Vec& x, double scale = 1.0) const;
  // Closure over-approximation: non-strict comparisons plus 1e-12 slack.
  bool member_closed(int s, const Vec& x) const;
  // x in V_s (the shrunk core; for a vertex piece, the vertex itself).
  bool in_core(int s, const Vec& x) const;
  Vec retract(int s, const Vec& x) const;
  // Pieces whose open set contains x.
  std::vector<int> active(const Vec& x) const;
};

// Dimension induction: vertex balls sized against exact distances to
// non-incident simplices, then per dimension the shrink ratio is bisected so
// the sampled residual (points not covered by residual_scale-scaled face
// pieces) sits inside the core with barycentric margin >= 1e-9, and the tube
// radius is capped at 0.45 of the sampled distance from the core closure to
// every disjoint simplex. Throws when a required positive distance is below
// 1e-12.
Covering build_covering(const Complex& K, const std::function<double(int)>& eta,
                        int density = 1000, std::uint64_t seed = 0);

inline Covering build_covering(const Complex& K, double eta, int density = 1000,
                               std::uint64_t seed = 0) {
  return build_covering(K, [eta](int) { return eta; }, density, seed);
}

// Locally finite shrinking of a family of neighborhoods: each U_k keeps only
// the part of its neighborhood within a collar of its target, the collar
// sized at 0.45 of the sampled distance to the other targets. Preserves
// containment of each target and separates neighborhoods of separated
// targets. Throws when a target sample leaves its own neighborhood.
struct ShrunkFamily {
  std::vector<std::function<bool(const Vec&)>> member;
  std::vector<double> collar;  // +infinity when unconstrained
};
ShrunkFamily shrink_family(std::vector<std::function<bool(const Vec&)>> neighborhoods,
                           std::vector<std::vector<Vec>> targets);

}  // namespace plsmooth
