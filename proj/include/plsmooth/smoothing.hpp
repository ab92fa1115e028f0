#pragma once

#include "plsmooth/approximation.hpp"
#include "plsmooth/partition.hpp"

namespace plsmooth {

// Map g on |K| with, per simplex t, a target simplex xi[t] whose closed hull
// contains g(t). Smoothness of g on every open simplex is asserted by the
// producer, not verified here (probes live in the verification layer).
struct CertifiedMap {
  MapEvaluator map;
  Complex target;
  std::vector<int> xi;  // per source simplex id
};

CertifiedMap certified_identity(const Complex& K);
CertifiedMap certify_simplicial(const SimplicialMap& G);
CertifiedMap certify_weakly_simplicial(const WeaklySimplicialMap& W);

// h(x) = sum over active pieces of theta_s(x) * g(r_s(x)). On the open set
// W_t (complement of the closures of all pieces whose simplex is not a face
// of t) every active piece retracts into t, so h(W_t) is a convex
// combination of points of g(t), inside xi[t].
struct SmoothMap {
  std::shared_ptr<const Covering> covering;
  PartitionOfUnity partition;
  CertifiedMap g;
  double delta_min = 0.0;    // smallest requested pointwise bound
  double measured_sup = 0.0; // sampled ||h - g||
  Decision status = Decision::Pass;
  std::string detail;

  Vec eval(const Vec& x) const;
  // Convex decomposition at x: (piece, weight, g(retract(x))).
  std::vector<std::tuple<int, double, Vec>> decomposition(const Vec& x) const;
  bool in_W(int t, const Vec& x) const;
  MapEvaluator evaluator() const;
};

// Builds h and measures the sampled sup distance to g against delta.
SmoothMap synthesize(const CertifiedMap& g, std::shared_ptr<const Covering> C,
                     const std::function<double(const Vec&)>& delta,
                     int sup_samples = 10000, std::uint64_t seed = 0);

// Smooth approximation of the identity: covering budget eta = eps/2, so the
// displacement stays under eps with room to spare. Fixes every vertex
// exactly (at a vertex only its own ball piece is active).
SmoothMap identity_smoother(const Complex& K, double eps, int covering_density = 1000,
                            std::uint64_t seed = 0);

// Identity smoothers at eps_n = 2^-n, n = 0..n_max: a cofinal sequence of
// smooth maps converging to the identity in the sup norm.
std::vector<SmoothMap> smoother_sequence(const Complex& K, int n_max,
                                         int covering_density = 1000,
                                         std::uint64_t seed = 0);

// Target presentation |L| -> Y. psi must be smooth on every closed simplex
// of L (oracle-asserted). When psi is not the identity inclusion, inverse
// must map f's values back into |L|.
struct WeakTriangulation {
  Complex L;
  MapEvaluator psi;
  std::function<Vec(const Vec&)> inverse;  // empty: f is already |L|-valued
};
WeakTriangulation identity_triangulation(const Complex& L);

struct PipelineBudgetEntry {
  int stage = 0;
  double eps_min = 0.0;  // sampled min of eps over the stage region
  double mu = 0.0;       // distance margin (1 for compact polyhedra)
  double delta = 0.0;    // continuity budget of psi for eps_min/3
  double budget = 0.0;   // min(mu/4, delta/2), fed to the staged stage
};

struct PipelineResult {
  Decision status = Decision::Fail;
  StagedResult staged;
  SmoothMap smooth;       // h*, the smoothed weakly simplicial map into |L|
  MapEvaluator composed;  // psi after h*
  std::vector<PipelineBudgetEntry> budgets;
  double measured_sup = 0.0;  // sampled ||composed - f||
  std::string detail;
};

struct PipelineOptions {
  StagedOptions staged;
  int covering_density = 1000;
  int sup_samples = 10000;
  std::uint64_t seed = 0;
};

// End-to-end smooth approximation of f : |K| -> psi(|L|) within eps:
// stage budgets from the target geometry and psi's sampled modulus, staged
// weakly simplicial approximation, smoothing of the result, composition
// with psi, and a final sampled error check.
PipelineResult approximate(const MapEvaluator& f, const Complex& K,
                           const std::vector<std::vector<int>>& filtration,
                           const WeakTriangulation& target,
                           const std::function<double(const Vec&)>& eps,
                           const PipelineOptions& opts = {});

}  // namespace plsmooth
