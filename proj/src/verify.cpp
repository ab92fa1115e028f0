#include "plsmooth/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace plsmooth {

Decision worst(const std::vector<Report>& reports) {
  Decision out = Decision::Pass;
  for (const Report& r : reports) {
    if (r.status == Decision::Fail) return Decision::Fail;
    if (r.status == Decision::Inconclusive) out = Decision::Inconclusive;
  }
  return out;
}

SupResult sup_distance(const MapEvaluator& A, const MapEvaluator& B, const SampleSet& S) {
  SupResult out;
  for (const Vec& x : S.points) {
    double d = (A(x) - B(x)).norm();
    if (d >= out.value) {
      out.value = d;
      out.argmax = x;
    }
  }
  return out;
}

std::vector<ProbeResult> c1_probe(const MapEvaluator& A,
                                  const std::vector<CrossingProbe>& probes) {
  std::vector<ProbeResult> out;
  for (const CrossingProbe& p : probes) {
    double s = p.step;
    Vec at = A(p.point);
    Vec dm = (at - A(p.point - (2.0 * s) * p.dir_in)) / (2.0 * s);
    Vec dp = (A(p.point + (2.0 * s) * p.dir_out) - at) / (2.0 * s);
    out.push_back({p, (dp - dm).norm()});
  }
  return out;
}

double max_mismatch(const std::vector<ProbeResult>& results) {
  double m = 0.0;
  for (const ProbeResult& r : results) m = std::max(m, r.mismatch);
  return m;
}

std::vector<CrossingProbe> probes_across_faces(const Complex& K, int per_face, double step) {
  std::vector<CrossingProbe> out;
  const int d = K.dim();
  if (d < 1) return out;
  for (int f = 0; f < K.num_simplices(); ++f) {
    if (K.simplex_dim(f) != d - 1) continue;
    std::vector<int> cofaces;
    for (int t : K.star(f))
      if (K.simplex_dim(t) == d) cofaces.push_back(t);
    if (cofaces.size() != 2) continue;
    Vec b_in = K.barycenter(cofaces[0]);
    Vec b_out = K.barycenter(cofaces[1]);
    if (d - 1 == 0) {
      Vec v = K.vertex(K.simplex(f)[0]);
      CrossingProbe p;
      p.point = v;
      p.dir_in = (v - b_in).normalized();
      p.dir_out = (b_out - v).normalized();
      p.step = step;
      out.push_back(p);
      continue;
    }
    Mat V = K.simplex_matrix(f);
    Vec dir = (b_out - b_in).normalized();
    Rng rng(7 * static_cast<std::uint64_t>(f) + 1);
    for (int i = 0; i < per_face; ++i) {
      Vec w;
      if (V.cols() == 2) {
        // evenly spread, away from the face's ends
        double t = static_cast<double>(i + 1) / (per_face + 1);
        w = Vec(2);
        w << 1.0 - t, t;
      } else {
        w = sample_simplex_weights(static_cast<int>(V.cols()), rng);
      }
      CrossingProbe p;
      p.point = V * w;
      p.dir_in = dir;
      p.dir_out = dir;
      p.step = step;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<CrossingProbe> probes_at_vertex_bends(const Complex& K, double step) {
  std::vector<CrossingProbe> out;
  if (K.dim() != 1) return out;
  for (const CrossingProbe& p : probes_across_faces(K, 1, step))
    out.push_back(p);
  return out;
}

namespace {

Report make(const std::string& check, const std::string& tag) {
  Report r;
  r.check = check;
  r.paper_tag = tag;
  return r;
}

bool comparable(const Complex& K, int s, int t) {
  const auto& a = K.simplex(s);
  const auto& b = K.simplex(t);
  if (a.size() <= b.size()) return std::includes(b.begin(), b.end(), a.begin(), a.end());
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

// Samples of one covering piece: core points plus rejected tube offsets.
std::vector<Vec> sample_piece(const Covering& C, int s, int count, Rng& rng) {
  std::vector<Vec> out;
  const CoveringPiece& p = C.pieces[s];
  const int dim = C.K.ambient_dim();
  auto offset = [&]() {
    Vec o(dim);
    for (int k = 0; k < dim; ++k) o(k) = rng.uniform(-1.0, 1.0);
    double n = o.norm();
    if (n == 0.0) return Vec(Vec::Zero(dim));
    return Vec(o * (p.eta_prime * 0.999 * rng.uniform() / n));
  };
  if (p.base_case) {
    const Vec& v = C.K.vertex(C.K.simplex(s)[0]);
    out.push_back(v);
    for (int i = 0; i < count; ++i) out.push_back(v + offset());
    return out;
  }
  Mat V = C.K.simplex_matrix(s);
  Shrinking core = shrink(C.K, s, p.epsilon);
  for (int i = 0; i < count; ++i) {
    Vec w = sample_simplex_weights(static_cast<int>(V.cols()), rng);
    Vec base = core.vertices * w;
    out.push_back(base);
    for (int tries = 0; tries < 8; ++tries) {
      Vec x = base + offset();
      if (C.member(s, x)) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Report> audit(const Subdivision& S, int density, std::uint64_t seed) {
  std::vector<Report> out;
  const Complex& P = S.parent;
  const Complex& C = S.child;

  {
    Report r = make("subdivision.carrier", "S3.1");
    double worst_d = 0.0;
    Rng rng(seed);
    for (int s = 0; s < C.num_simplices(); ++s) {
      Mat V = C.simplex_matrix(s);
      int carrier = S.carrier_of[s];
      for (int j = 0; j < V.cols(); ++j)
        worst_d = std::max(worst_d, P.project(carrier, V.col(j)).distance);
      for (int i = 0; i < std::max(1, density / 50); ++i)
        worst_d = std::max(worst_d,
                           P.project(carrier, sample_simplex_point(V, rng)).distance);
    }
    r.metrics["max_dist"] = worst_d;
    r.status = worst_d <= tol::membership ? Decision::Pass : Decision::Fail;
    out.push_back(r);
  }

  {
    Report r = make("subdivision.volume", "S3.1");
    double worst_rel = 0.0;
    for (int t = 0; t < P.num_simplices(); ++t) {
      if (P.star(t).size() != 1) continue;  // top simplices only
      double vol = P.volume(t);
      double sum = 0.0;
      for (int s = 0; s < C.num_simplices(); ++s)
        if (S.carrier_of[s] == t && C.simplex_dim(s) == P.simplex_dim(t))
          sum += C.volume(s);
      worst_rel = std::max(worst_rel, std::abs(sum - vol) / vol);
    }
    r.metrics["max_rel_err"] = worst_rel;
    r.status = worst_rel <= tol::volume_rel ? Decision::Pass : Decision::Fail;
    out.push_back(r);
  }

  {
    Report r = make("subdivision.retention", "S3.1");
    r.metrics["fixed_count"] = static_cast<double>(S.fixed.size());
    bool ok = true;
    for (int f : S.fixed) {
      auto id = C.find(P.simplex(f));
      if (!id) {
        ok = false;
        break;
      }
      for (int v : P.simplex(f))
        if ((P.vertex(v).array() != C.vertex(v).array()).any()) ok = false;
      if (!ok) break;
    }
    r.status = ok ? Decision::Pass : Decision::Fail;
    if (!ok) r.note = "a fixed simplex is missing or moved in the child";
    out.push_back(r);
  }

  {
    Report r = make("subdivision.polyhedron", "S3.1");
    double worst_d = 0.0;
    SampleSet sc = sample_polyhedron(C, std::max(1, density / 10), seed + 1);
    for (const Vec& x : sc.points) worst_d = std::max(worst_d, P.distance_to(x));
    SampleSet sp = sample_polyhedron(P, std::max(1, density / 10), seed + 2);
    for (const Vec& x : sp.points) worst_d = std::max(worst_d, C.distance_to(x));
    r.metrics["max_dist"] = worst_d;
    r.status = worst_d <= tol::membership ? Decision::Pass : Decision::Fail;
    out.push_back(r);
  }
  return out;
}

std::vector<Report> audit(const WeaklySimplicialMap& W, int density, std::uint64_t seed) {
  std::vector<Report> out;

  {
    Report r = make("wsm.coherence", "T3.3(iii)");
    std::string why;
    bool ok = W.coherent(&why);
    r.status = ok ? Decision::Pass : Decision::Fail;
    r.note = why;
    r.metrics["levels_max"] =
        W.level_of.empty() ? 0.0
                           : static_cast<double>(*std::max_element(W.level_of.begin(),
                                                                   W.level_of.end()));
    out.push_back(r);
  }

  {
    Report r = make("wsm.certificate", "T3.3(i)");
    const Complex& base = W.tower.base();
    double max_dist = 0.0;
    Rng rng(seed);
    for (int s = 0; s < W.source.num_simplices(); ++s) {
      Mat V = W.source.simplex_matrix(s);
      for (int i = 0; i < std::max(1, density / 20); ++i) {
        Vec x = sample_simplex_point(V, rng);
        Vec y = W.eval(x);
        max_dist = std::max(max_dist, base.project(W.certificate[s], y).distance);
      }
    }
    r.metrics["max_dist"] = max_dist;
    r.status = max_dist <= tol::membership ? Decision::Pass : Decision::Fail;
    out.push_back(r);
  }

  {
    Report r = make("wsm.affine", "T3.3(ii)");
    double worst_d = 0.0;
    Rng rng(seed + 1);
    for (int s = 0; s < W.source.num_simplices(); ++s) {
      Mat V = W.source.simplex_matrix(s);
      const auto& verts = W.source.simplex(s);
      for (int i = 0; i < std::max(1, density / 20); ++i) {
        Vec w = sample_simplex_weights(static_cast<int>(V.cols()), rng);
        Vec x = V * w;
        Vec interp = Vec::Zero(W.target().ambient_dim());
        for (std::size_t j = 0; j < verts.size(); ++j)
          interp += w(static_cast<int>(j)) * W.image_point(verts[j]);
        worst_d = std::max(worst_d, (W.eval(x) - interp).norm());
      }
    }
    r.metrics["max_err"] = worst_d;
    r.status = worst_d <= tol::reconstruct ? Decision::Pass : Decision::Fail;
    out.push_back(r);
  }
  return out;
}

std::vector<Report> audit(const Covering& C, int density, std::uint64_t seed) {
  std::vector<Report> out;
  const Complex& K = C.K;

  {
    Report r = make("covering.coverage", "L3.5(i)");
    SampleSet S = sample_polyhedron(K, density, seed);
    int uncovered = 0;
    for (const Vec& x : S.points) {
      bool in = false;
      for (int s = 0; s < K.num_simplices() && !in; ++s) in = C.member(s, x);
      if (!in) ++uncovered;
    }
    r.metrics["samples"] = static_cast<double>(S.points.size());
    r.metrics["uncovered"] = uncovered;
    r.status = uncovered == 0 ? Decision::Pass : Decision::Fail;
    out.push_back(r);
  }

  {
    Report dis = make("covering.disjoint", "L3.5(ii)");
    Report disp = make("covering.displacement", "L3.5(iii)");
    double min_margin = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
    Rng rng(seed + 1);
    for (int s = 0; s < K.num_simplices(); ++s) {
      std::vector<int> st = K.star(s);
      std::set<int> in_star(st.begin(), st.end());
      std::vector<int> far;
      for (int t = 0; t < K.num_simplices(); ++t)
        if (!in_star.count(t)) far.push_back(t);
      for (const Vec& x : sample_piece(C, s, std::max(1, density / 10), rng)) {
        if (!far.empty())
          min_margin = std::min(min_margin, distance_to_simplices(K, far, x));
        max_ratio = std::max(max_ratio, (x - C.retract(s, x)).norm() / C.eta[s]);
      }
    }
    dis.metrics["min_margin"] =
        std::isfinite(min_margin) ? min_margin : -1.0;  // -1: no disjoint pairs
    dis.status = (!std::isfinite(min_margin) || min_margin > 0.0) ? Decision::Pass
                                                                  : Decision::Fail;
    disp.metrics["max_ratio"] = max_ratio;
    disp.status = max_ratio < 1.0 ? Decision::Pass : Decision::Fail;
    out.push_back(dis);
    out.push_back(disp);
  }

  {
    Report r = make("covering.local_finite", "L3.5(lf)");
    SampleSet S = sample_polyhedron(K, std::max(1, density / 5), seed + 2);
    int max_active = 0;
    bool chains = true;
    for (const Vec& x : S.points) {
      std::vector<int> act = C.active(x);
      max_active = std::max(max_active, static_cast<int>(act.size()));
      for (std::size_t i = 0; i < act.size() && chains; ++i)
        for (std::size_t j = i + 1; j < act.size(); ++j)
          if (!comparable(K, act[i], act[j])) {
            chains = false;
            break;
          }
    }
    r.metrics["max_active"] = max_active;
    r.metrics["bound"] = K.dim() + 1;
    r.status = (chains && max_active <= K.dim() + 1) ? Decision::Pass : Decision::Fail;
    if (!chains) r.note = "two non-incident pieces share a point";
    out.push_back(r);
  }

  {
    Report r = make("covering.residual", "L3.5(eps)");
    double min_margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < K.num_simplices(); ++s) {
      if (K.simplex_dim(s) == 0) continue;
      Mat V = K.simplex_matrix(s);
      const int nv = static_cast<int>(V.cols());
      std::vector<int> faces = K.faces(s);
      Rng rng(seed + 31 * static_cast<std::uint64_t>(s));
      for (int i = 0; i < density; ++i) {
        Vec w = sample_simplex_weights(nv, rng);
        Vec x = V * w;
        bool covered = false;
        for (int f : faces)
          if (C.member(f, x, residual_scale)) {
            covered = true;
            break;
          }
        if (covered) continue;
        min_margin = std::min(min_margin, w.minCoeff() - C.pieces[s].epsilon / nv);
      }
    }
    r.metrics["min_margin"] = std::isfinite(min_margin) ? min_margin : 1.0;
    r.status = (!std::isfinite(min_margin) || min_margin >= 1e-9) ? Decision::Pass
                                                                  : Decision::Fail;
    out.push_back(r);
  }

  {
    Report r = make("covering.idempotent", "L3.5(r)");
    double worst_d = 0.0;
    Rng rng(seed + 3);
    for (int s = 0; s < K.num_simplices(); ++s) {
      if (C.pieces[s].base_case) {
        const Vec& v = K.vertex(K.simplex(s)[0]);
        worst_d = std::max(worst_d, (C.retract(s, v) - v).norm());
        continue;
      }
      Shrinking core = shrink(K, s, C.pieces[s].epsilon);
      for (int i = 0; i < std::max(1, density / 20); ++i) {
        Vec x = core.vertices *
                sample_simplex_weights(static_cast<int>(core.vertices.cols()), rng);
        worst_d = std::max(worst_d, (C.retract(s, x) - x).norm());
      }
    }
    r.metrics["max_move"] = worst_d;
    r.status = worst_d <= tol::exact ? Decision::Pass : Decision::Fail;
    out.push_back(r);
  }
  return out;
}

std::vector<Report> audit(const SmoothMap& h, int density, std::uint64_t seed) {
  std::vector<Report> out;
  const Complex& K = h.covering->K;

  {
    Report r = make("smoothing.partition", "L3.6(pu)");
    SampleSet S = sample_polyhedron(K, std::max(1, density / 5), seed);
    double worst_sum = 0.0;
    bool support_ok = true;
    bool nonneg = true;
    try {
      for (const Vec& x : S.points) {
        auto w = h.partition.weights(x);
        double sum = 0.0;
        for (auto [s, v] : w) {
          sum += v;
          if (v < 0.0) nonneg = false;
          if (!h.covering->member(s, x)) support_ok = false;
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        for (int s = 0; s < K.num_simplices(); ++s)
          if (!h.covering->member(s, x) && h.partition.raw(s, x) != 0.0)
            support_ok = false;
      }
      r.metrics["max_sum_err"] = worst_sum;
      r.status = (worst_sum <= tol::partition_sum && support_ok && nonneg)
                     ? Decision::Pass
                     : Decision::Fail;
      if (!support_ok) r.note = "a bump leaks outside its piece";
    } catch (const error& e) {
      r.status = Decision::Fail;
      r.note = e.what();
    }
    out.push_back(r);
  }

  {
    Report cc = make("smoothing.convex", "L3.6(cc)");
    Report carrier = make("smoothing.carrier", "L3.6(i)");
    double recombine_err = 0.0;
    double min_weight = 0.0;
    double max_piece_dist = 0.0;
    double max_val_dist = 0.0;
    long w_samples = 0;
    Rng rng(seed + 1);
    try {
      for (int t = 0; t < K.num_simplices(); ++t) {
        Mat V = K.simplex_matrix(t);
        int xi = h.g.xi[t];
        for (int i = 0; i < std::max(1, density / 20); ++i) {
          Vec x = K.simplex_dim(t) == 0 ? Vec(V.col(0)) : sample_simplex_point(V, rng);
          if (!h.in_W(t, x)) continue;
          ++w_samples;
          auto parts = h.decomposition(x);
          Vec sum = Vec::Zero(h.g.target.ambient_dim());
          double wsum = 0.0;
          for (auto& [s, w, val] : parts) {
            sum += w * val;
            wsum += w;
            min_weight = std::min(min_weight, w);
            max_piece_dist =
                std::max(max_piece_dist, h.g.target.project(xi, val).distance);
          }
          recombine_err = std::max(recombine_err, (sum - h.eval(x)).norm());
          recombine_err = std::max(recombine_err, std::abs(wsum - 1.0));
          max_val_dist = std::max(max_val_dist, h.g.target.project(xi, h.eval(x)).distance);
        }
      }
      cc.metrics["max_recombine_err"] = recombine_err;
      cc.metrics["min_weight"] = min_weight;
      cc.status = (recombine_err <= 1e-10 && min_weight >= 0.0) ? Decision::Pass
                                                                : Decision::Fail;
      carrier.metrics["w_samples"] = static_cast<double>(w_samples);
      carrier.metrics["max_piece_dist"] = max_piece_dist;
      carrier.metrics["max_value_dist"] = max_val_dist;
      carrier.status = (max_piece_dist <= tol::membership && max_val_dist <= tol::membership)
                           ? Decision::Pass
                           : Decision::Fail;
    } catch (const error& e) {
      cc.status = Decision::Fail;
      cc.note = e.what();
      carrier.status = Decision::Fail;
      carrier.note = e.what();
    }
    out.push_back(cc);
    out.push_back(carrier);
  }

  {
    Report r = make("smoothing.delta", "L3.6(ii)");
    r.metrics["measured_sup"] = h.measured_sup;
    r.metrics["delta_min"] = h.delta_min;
    r.status = h.status;
    r.note = h.detail;
    out.push_back(r);
  }
  return out;
}

}  // namespace plsmooth
