#include "plsmooth/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace plsmooth {

CertifiedMap certified_identity(const Complex& K) {
  CertifiedMap out;
  out.map = {[](const Vec& x) { return x; }, "identity"};
  out.target = K;
  out.xi.resize(K.num_simplices());
  for (int s = 0; s < K.num_simplices(); ++s) out.xi[s] = s;
  return out;
}

CertifiedMap certify_simplicial(const SimplicialMap& G) {
  if (!G.valid()) throw error("map is not simplicial");
  CertifiedMap out;
  out.map = G.evaluator();
  out.target = G.target;
  out.xi.resize(G.source.num_simplices());
  for (int s = 0; s < G.source.num_simplices(); ++s) out.xi[s] = G.image_simplex(s);
  return out;
}

CertifiedMap certify_weakly_simplicial(const WeaklySimplicialMap& W) {
  std::string why;
  if (!W.coherent(&why)) throw error("incoherent weakly simplicial map: " + why);
  CertifiedMap out;
  out.map = W.evaluator();
  out.target = W.target();
  out.xi = W.certificate;
  return out;
}

Vec SmoothMap::eval(const Vec& x) const {
  auto parts = partition.weights(x);
  Vec out = Vec::Zero(g.target.ambient_dim());
  for (auto [s, w] : parts) out += w * g.map(covering->retract(s, x));
  return out;
}

std::vector<std::tuple<int, double, Vec>> SmoothMap::decomposition(const Vec& x) const {
  std::vector<std::tuple<int, double, Vec>> out;
  for (auto [s, w] : partition.weights(x))
    out.push_back({s, w, g.map(covering->retract(s, x))});
  return out;
}

bool SmoothMap::in_W(int t, const Vec& x) const {
  const Complex& K = covering->K;
  std::vector<int> keep = K.faces(t);
  keep.push_back(t);
  std::set<int> allowed(keep.begin(), keep.end());
  for (int s = 0; s < K.num_simplices(); ++s) {
    if (allowed.count(s)) continue;
    if (covering->member_closed(s, x)) return false;
  }
  return true;
}

MapEvaluator SmoothMap::evaluator() const {
  auto self = std::make_shared<SmoothMap>(*this);
  return {[self](const Vec& x) { return self->eval(x); }, "smoothed(" + g.map.name + ")"};
}

SmoothMap synthesize(const CertifiedMap& g, std::shared_ptr<const Covering> C,
                     const std::function<double(const Vec&)>& delta, int sup_samples,
                     std::uint64_t seed) {
  if (!C) throw error("synthesis requires a covering");
  if (static_cast<int>(g.xi.size()) != C->K.num_simplices())
    throw error("certificate table does not match the covering's complex");
  SmoothMap h;
  h.covering = C;
  h.partition = partition_of_unity(C);
  h.g = g;

  int per = std::max(1, sup_samples / std::max(1, C->K.num_simplices()));
  SampleSet S = sample_polyhedron(C->K, per, seed);
  double sup = 0.0;
  bool within = true;
  double dmin = std::numeric_limits<double>::infinity();
  for (const Vec& x : S.points) {
    double d = (h.eval(x) - g.map(x)).norm();
    sup = std::max(sup, d);
    double dx = delta(x);
    if (!(dx > 0.0)) throw error("delta must be strictly positive");
    dmin = std::min(dmin, dx);
    if (d >= dx) within = false;
  }
  h.measured_sup = sup;
  h.delta_min = dmin;
  h.status = within ? Decision::Pass : Decision::Fail;
  if (!within) h.detail = "sampled distance to the input map exceeds delta";
  return h;
}

SmoothMap identity_smoother(const Complex& K, double eps, int covering_density,
                            std::uint64_t seed) {
  if (!(eps > 0.0)) throw error("eps must be positive");
  auto C = std::make_shared<Covering>(
      build_covering(K, [eps](int) { return eps / 2.0; }, covering_density, seed));
  return synthesize(certified_identity(K), C, [eps](const Vec&) { return eps; }, 10000, seed);
}

std::vector<SmoothMap> smoother_sequence(const Complex& K, int n_max, int covering_density,
                                         std::uint64_t seed) {
  if (n_max < 0) throw error("n_max must be nonnegative");
  std::vector<SmoothMap> out;
  for (int n = 0; n <= n_max; ++n)
    out.push_back(identity_smoother(K, std::pow(2.0, -n), covering_density, seed));
  return out;
}

WeakTriangulation identity_triangulation(const Complex& L) {
  WeakTriangulation T;
  T.L = L;
  T.psi = {[](const Vec& x) { return x; }, "inclusion"};
  return T;
}

PipelineResult approximate(const MapEvaluator& f, const Complex& K,
                           const std::vector<std::vector<int>>& filtration,
                           const WeakTriangulation& target,
                           const std::function<double(const Vec&)>& eps,
                           const PipelineOptions& opts) {
  PipelineResult out;
  const Complex& L = target.L;

  // Budgets: the stage minimum of eps, the distance margin (1 for a compact
  // polyhedron with nothing removed), and a continuity budget for psi from
  // its sampled modulus.
  double lip_psi;
  {
    SampleSet S = sample_polyhedron(L, 80, opts.seed + 11);
    lip_psi = std::max(1.0, estimate_lipschitz([&](const Vec& y) { return target.psi(y); },
                                               S.points, 100000, opts.seed + 12));
  }
  std::vector<std::vector<int>> stages = filtration;
  if (stages.empty()) {
    std::vector<int> all(K.num_simplices());
    for (int s = 0; s < K.num_simplices(); ++s) all[s] = s;
    stages.push_back(all);
  }
  double budget_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < stages.size(); ++k) {
    PipelineBudgetEntry e;
    e.stage = static_cast<int>(k);
    SampleSet S = sample_simplices(K, stages[k], 100, opts.seed + 20 + k);
    e.eps_min = std::numeric_limits<double>::infinity();
    for (const Vec& x : S.points) e.eps_min = std::min(e.eps_min, eps(x));
    if (!(e.eps_min > 0.0)) throw error("eps must be positive on the polyhedron");
    e.mu = 1.0;
    e.delta = (e.eps_min / 3.0) / lip_psi;
    e.budget = std::min(e.mu / 4.0, e.delta / 2.0);
    budget_min = std::min(budget_min, e.budget);
    out.budgets.push_back(e);
  }

  // Reduce to |L|-valued data if psi is not the inclusion.
  MapEvaluator f_L = f;
  if (target.inverse) {
    auto inv = target.inverse;
    auto base = f.eval;
    f_L = {[inv, base](const Vec& x) { return inv(base(x)); }, f.name + "|L"};
  }

  StagedOptions sopts = opts.staged;
  sopts.seed = opts.seed;
  out.staged = weakly_simplicial_approximation(
      f_L, K, stages, L, [budget_min](const Vec&) { return budget_min; }, sopts);
  if (out.staged.status != Decision::Pass) {
    out.status = out.staged.status;
    out.detail = "staged approximation: " + out.staged.detail;
    return out;
  }

  CertifiedMap gstar = certify_weakly_simplicial(out.staged.approx);
  double lip_g;
  {
    SampleSet S = sample_polyhedron(out.staged.approx.source, 60, opts.seed + 31);
    lip_g = std::max(1.0, estimate_lipschitz([&](const Vec& x) { return gstar.map(x); },
                                             S.points, 100000, opts.seed + 32));
  }
  double eta = budget_min / (2.0 * lip_g);
  auto C = std::make_shared<Covering>(build_covering(
      out.staged.approx.source, [eta](int) { return eta; }, opts.covering_density,
      opts.seed + 41));
  out.smooth = synthesize(gstar, C, [budget_min](const Vec&) { return budget_min; },
                          opts.sup_samples, opts.seed + 42);
  if (out.smooth.status != Decision::Pass) {
    out.status = out.smooth.status;
    out.detail = "synthesis: " + out.smooth.detail;
    return out;
  }

  auto psi = target.psi;
  auto h = out.smooth.evaluator();
  out.composed = {[psi, h](const Vec& x) { return psi(h(x)); },
                  "smooth(" + f.name + ")"};

  SampleSet S = sample_polyhedron(K, std::max(1, opts.sup_samples / K.num_simplices()),
                                  opts.seed + 51);
  double sup = 0.0;
  bool within = true;
  for (const Vec& x : S.points) {
    double d = (out.composed(x) - f(x)).norm();
    sup = std::max(sup, d);
    if (d >= eps(x)) within = false;
  }
  out.measured_sup = sup;
  out.status = within ? Decision::Pass : Decision::Fail;
  if (!within) out.detail = "final sup above the requested tolerance";
  return out;
}

}  // namespace plsmooth
