#include "plsmooth/shrink_widen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace plsmooth {

Shrinking shrink(const Complex& K, int s, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw error("shrink ratio must be in (0,1)");
  Shrinking out;
  out.simplex = s;
  out.epsilon = epsilon;
  Mat V = K.simplex_matrix(s);
  Vec b = V.rowwise().mean();
  out.vertices = ((1.0 - epsilon) * V).colwise() + (epsilon * b);
  return out;
}

bool in_shrunk_core(const Complex& K, int s, double epsilon, const Vec& x, double margin) {
  Mat V = K.simplex_matrix(s);
  HullProjection p = project_to_affine_hull(V, x);
  if (p.distance > tol::affine_residual) return false;
  double threshold = epsilon / static_cast<double>(V.cols()) + margin;
  return (p.weights.array() > threshold).all();
}

std::optional<TubularFoot> tubular_project(const Complex& K, int s, const Vec& x) {
  HullProjection p = project_to_affine_hull(K.simplex_matrix(s), x);
  if ((p.weights.array() <= tol::membership).any()) return std::nullopt;
  TubularFoot out;
  out.foot = std::move(p.foot);
  out.weights = std::move(p.weights);
  out.dist = (x - out.foot).norm();
  return out;
}

bool membership_widened(const Complex& K, const Widening& w, const Vec& x) {
  HullProjection p = project_to_affine_hull(K.simplex_matrix(w.simplex), x);
  if ((x - p.foot).norm() >= w.eta) return false;
  double threshold = w.epsilon / static_cast<double>(p.weights.size());
  return (p.weights.array() > threshold).all();
}

bool Covering::member(int s, const Vec& x, double scale) const {
  const CoveringPiece& p = pieces[s];
  if (p.base_case) {
    const Vec& v = K.vertex(K.simplex(s)[0]);
    return (x - v).norm() < scale * p.eta_prime;
  }
  HullProjection pr = project_to_affine_hull(K.simplex_matrix(s), x);
  if ((x - pr.foot).norm() >= scale * p.eta_prime) return false;
  double threshold = p.epsilon / (static_cast<double>(pr.weights.size()) * scale);
  return (pr.weights.array() > threshold).all();
}

bool Covering::member_closed(int s, const Vec& x) const {
  const CoveringPiece& p = pieces[s];
  if (p.base_case) {
    const Vec& v = K.vertex(K.simplex(s)[0]);
    return (x - v).norm() <= p.eta_prime + tol::exact;
  }
  HullProjection pr = project_to_affine_hull(K.simplex_matrix(s), x);
  if ((x - pr.foot).norm() > p.eta_prime + tol::exact) return false;
  double threshold = p.epsilon / static_cast<double>(pr.weights.size());
  return (pr.weights.array() >= threshold - tol::exact).all();
}

bool Covering::in_core(int s, const Vec& x) const {
  const CoveringPiece& p = pieces[s];
  if (p.base_case) return (x - K.vertex(K.simplex(s)[0])).norm() <= tol::exact;
  return in_shrunk_core(K, s, p.epsilon, x);
}

Vec Covering::retract(int s, const Vec& x) const {
  if (pieces[s].base_case) return K.vertex(K.simplex(s)[0]);
  return project_to_affine_hull(K.simplex_matrix(s), x).foot;
}

std::vector<int> Covering::active(const Vec& x) const {
  std::vector<int> out;
  for (int s = 0; s < K.num_simplices(); ++s)
    if (member(s, x)) out.push_back(s);
  return out;
}

namespace {

// Simplices whose closed set misses the open simplex s: everything outside
// the star of s. Cl(U_s) must stay clear of all of them.
std::vector<int> disjoint_from(const Complex& K, int s) {
  std::vector<int> st = K.star(s);
  std::set<int> in_star(st.begin(), st.end());
  std::vector<int> out;
  for (int t = 0; t < K.num_simplices(); ++t)
    if (!in_star.count(t)) out.push_back(t);
  return out;
}

}  // namespace

Covering build_covering(const Complex& K, const std::function<double(int)>& eta,
                        int density, std::uint64_t seed) {
  Covering C;
  C.K = K;
  C.pieces.resize(K.num_simplices());
  C.eta.resize(K.num_simplices());
  for (int s = 0; s < K.num_simplices(); ++s) {
    C.eta[s] = eta(s);
    if (!(C.eta[s] > 0.0)) throw error("widening budget must be strictly positive");
  }

  for (int e = 0; e <= K.dim(); ++e) {
    for (int s = 0; s < K.num_simplices(); ++s) {
      if (K.simplex_dim(s) != e) continue;
      CoveringPiece& piece = C.pieces[s];
      piece.simplex = s;
      std::vector<int> far = disjoint_from(K, s);

      if (e == 0) {
        piece.base_case = true;
        const Vec& v = K.vertex(K.simplex(s)[0]);
        double D = distance_to_simplices(K, far, v);
        if (D < 1e-12) throw error("degenerate complex: vertex touches a non-incident simplex");
        piece.eta_prime = std::min(0.9 * C.eta[s], 0.45 * D);
        continue;
      }

      // Residual: sampled points of s not already covered by the 0.9-scaled
      // pieces of its proper faces. The scaling leaves an overlap band so the
      // core reaches past the sampled residual boundary.
      Mat V = K.simplex_matrix(s);
      const int nv = static_cast<int>(V.cols());
      std::vector<int> faces = K.faces(s);
      Rng rng(seed + 31 * static_cast<std::uint64_t>(s));
      double w_min = std::numeric_limits<double>::infinity();
      bool residual_empty = true;
      auto probe = [&](const Vec& w) {
        Vec x = V * w;
        for (int f : faces)
          if (C.member(f, x, residual_scale)) return;
        residual_empty = false;
        w_min = std::min(w_min, w.minCoeff());
      };
      for (int i = 0; i < density; ++i) probe(sample_simplex_weights(nv, rng));
      // The weight infimum of the residual sits in a layer of relative width
      // ~eta'/diam against each face piece, which uniform volume samples miss
      // once eta is small against the simplex. Blend face points inward by
      // log-spaced depths so the handoff is probed at every scale.
      const std::vector<int>& vs = K.simplex(s);
      for (int f : faces) {
        std::vector<int> pos;
        for (int gid : K.simplex(f))
          for (int j = 0; j < nv; ++j)
            if (vs[j] == gid) pos.push_back(j);
        for (int i = 0; i < density; ++i) {
          Vec wf = sample_simplex_weights(static_cast<int>(pos.size()), rng);
          double tau = std::pow(10.0, rng.uniform(-9.0, 0.0));
          Vec w = tau * sample_simplex_weights(nv, rng);
          for (std::size_t q = 0; q < pos.size(); ++q)
            w(pos[q]) += (1.0 - tau) * wf(static_cast<int>(q));
          probe(w);
        }
      }

      if (residual_empty) {
        piece.epsilon = 0.5;
      } else {
        // Largest ratio whose core still contains the residual, by bisection
        // on the weight threshold, then backed off toward the interior.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          if (w_min >= mid / nv + 1e-9)
            lo = mid;
          else
            hi = mid;
        }
        piece.epsilon = overlap_backoff * lo;
        if (w_min - piece.epsilon / nv < 1e-9)
          throw error("degenerate complex: residual hugs the simplex boundary");
      }

      // Tube radius: under the declared budget, and under 0.45 of the
      // sampled distance from the closed core to every disjoint simplex.
      Shrinking core = shrink(K, s, piece.epsilon);
      double D = std::numeric_limits<double>::infinity();
      if (!far.empty()) {
        for (int j = 0; j < nv; ++j)
          D = std::min(D, distance_to_simplices(K, far, core.vertices.col(j)));
        Rng crng(seed + 31 * static_cast<std::uint64_t>(s) + 1);
        for (int i = 0; i < density; ++i) {
          Vec w = sample_simplex_weights(nv, crng);
          D = std::min(D, distance_to_simplices(K, far, core.vertices * w));
        }
      }
      piece.eta_prime = std::min(0.9 * C.eta[s], 0.45 * D);
      if (piece.eta_prime < 1e-12)
        throw error("degenerate complex: core touches a disjoint simplex");
    }
  }
  return C;
}

ShrunkFamily shrink_family(std::vector<std::function<bool(const Vec&)>> neighborhoods,
                           std::vector<std::vector<Vec>> targets) {
  if (neighborhoods.size() != targets.size())
    throw error("one neighborhood per target required");
  const std::size_t n = targets.size();
  for (std::size_t k = 0; k < n; ++k)
    for (const Vec& p : targets[k])
      if (!neighborhoods[k](p)) throw error("target sample leaves its neighborhood");

  ShrunkFamily out;
  out.collar.assign(n, std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < n; ++k) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      for (const Vec& a : targets[k])
        for (const Vec& b : targets[j]) d = std::min(d, (a - b).norm());
    }
    if (std::isfinite(d)) out.collar[k] = 0.45 * d;
  }
  for (std::size_t k = 0; k < n; ++k) {
    auto nb = neighborhoods[k];
    auto tg = std::make_shared<std::vector<Vec>>(std::move(targets[k]));
    double collar = out.collar[k];
    out.member.push_back([nb, tg, collar](const Vec& x) {
      if (!nb(x)) return false;
      if (!std::isfinite(collar)) return true;
      for (const Vec& p : *tg)
        if ((x - p).norm() < collar) return true;
      return false;
    });
  }
  return out;
}

}  // namespace plsmooth
