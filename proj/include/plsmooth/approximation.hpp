#pragma once

#include "plsmooth/maps.hpp"
#include "plsmooth/sampling.hpp"

namespace plsmooth {

enum class Decision { Pass, Fail, Inconclusive };
const char* to_string(Decision d);

// Star condition for F : |K| -> |L|: every source vertex w admits a target
// vertex w' with F(|St(w, K)|) inside |St(w', L)|. Sampled test; points whose
// membership falls in the band (tol, 100 tol) make the result Inconclusive
// instead of a hard failure.
struct StarConditionReport {
  Decision status = Decision::Fail;
  std::vector<int> assignment;  // nearest valid target vertex per source vertex
  int failing_vertex = -1;
  Vec witness;  // image point missing every candidate star
};
StarConditionReport check_star_condition(const MapEvaluator& F, const Complex& K,
                                         const Complex& L, int density = 1000,
                                         std::uint64_t seed = 0);

// Nearest-point projection onto |L|. Distance ties are broken by perturbing
// the query 1e-7 toward the barycenter of the first minimizing simplex and
// re-projecting.
Vec nearest_point_projection(const Complex& L, const Vec& x);

struct ZeemanOptions {
  int cap = 8;             // search cap for both subdivision counts
  int star_density = 300;  // samples per star simplex in the condition check
  int sup_samples = 10000;
  std::uint64_t seed = 0;
  long search_budget = 200000;  // assignment backtracking nodes
};

// Relative simplicial approximation: find kappa, ell and a simplicial
// G : sd^kappa(K/H) -> sd^ell(L) with G = F on |H| and sampled sup distance
// below epsilon. Requires F simplicial on H (vertexwise within 1e-12). The
// (kappa, ell) schedule alternates kappa += 1 then ell += 1 from (0, 0).
struct ZeemanResult {
  Decision status = Decision::Fail;
  int kappa = 0;
  int ell = 0;
  Subdivision source;     // K -> sd^kappa(K/H)
  SubdivisionTower tower; // target subdivisions, height >= ell
  SimplicialMap map;      // source.child -> tower.levels[ell]
  double sup_error = 0.0;
  std::string detail;
};
ZeemanResult relative_approximation(const MapEvaluator& F, const Complex& K,
                                    const std::vector<int>& H, const Complex& L,
                                    double epsilon, const ZeemanOptions& opts = {});

// Staged approximation over a finite filtration K_0 c K_1 c ... c K_N = K
// (simplex-id sets of K, each face closed, last one everything). Stage m runs
// the relative approximation on the part over |K_{m+1}| rel the part over
// |K_{m-1}|, blends with a distance-quotient cutoff that is 1 on |K_m| and
// supported inside |K_{m+1}|, and retracts back onto |L| by nearest-point
// projection. The result F* is affine on every simplex of the final
// subdivision K' with per-simplex target levels summing the stage levels.
struct StageReport {
  int stage = 0;
  double eps_stage = 0.0;  // min of eps over the stage polyhedron (sampled)
  double budget = 0.0;     // tolerance passed to the stage approximation
  int kappa = 0;
  int ell = 0;
  double zeeman_sup = 0.0;  // ||G - F_m|| on the stage region
  double change_sup = 0.0;  // ||F_{m+1} - F_m|| on |K|
  Decision status = Decision::Pass;
};
struct StagedOptions {
  ZeemanOptions zeeman;
  int eps_density = 200;  // samples per simplex for stage minima of eps
  std::uint64_t seed = 0;
};
struct StagedResult {
  Decision status = Decision::Fail;
  Subdivision source;          // K -> K' (the final mixed subdivision)
  WeaklySimplicialMap approx;  // F*
  std::vector<StageReport> stages;
  double final_sup = 0.0;  // sampled ||F* - F||
  std::string detail;
};
StagedResult weakly_simplicial_approximation(const MapEvaluator& F, const Complex& K,
                                             const std::vector<std::vector<int>>& filtration,
                                             const Complex& L,
                                             const std::function<double(const Vec&)>& eps,
                                             const StagedOptions& opts = {});

}  // namespace plsmooth
