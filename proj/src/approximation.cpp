#include "plsmooth/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

namespace plsmooth {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Pass: return "pass";
    case Decision::Fail: return "fail";
    default: return "inconclusive";
  }
}

namespace {

// Point location inside a subdivision child for points tagged with a parent
// simplex id: only children carried by a face of the tag are scanned.
struct ChildLocator {
  const Complex* child = nullptr;
  std::vector<std::vector<int>> kids;  // per parent simplex id

  ChildLocator() = default;
  ChildLocator(const Complex& parent, const Complex& child_, const std::vector<int>& carrier_of)
      : child(&child_) {
    kids.resize(parent.num_simplices());
    for (int c = 0; c < child_.num_simplices(); ++c)
      for (int s : parent.star(carrier_of[c])) kids[s].push_back(c);
  }

  // Carrier face of x among the children under `tag` (weights > tol only).
  BarycentricPoint locate(const Vec& x, int tag) const {
    double best = std::numeric_limits<double>::infinity();
    int best_c = -1;
    for (int c : kids[tag]) {
      double d = child->project(c, x).distance;
      if (d < best - tol::weight_neg) {
        best = d;
        best_c = c;
      }
      if (best == 0.0) break;
    }
    if (best_c < 0 || best > 10.0 * tol::membership)
      throw error("tagged point location failed: tag " + std::to_string(tag) +
                  " holds no child within " + std::to_string(best) + " of the sample");
    SimplexProjection pr = child->project(best_c, x);
    std::vector<int> face;
    const auto& verts = child->simplex(best_c);
    for (int j = 0; j < pr.weights.size(); ++j)
      if (pr.weights(j) > tol::membership) face.push_back(verts[j]);
    if (face.empty()) face.push_back(verts[0]);
    auto fid = child->find(face);
    if (!fid) throw error("carrier face lookup failed");
    BarycentricPoint bp;
    bp.simplex = *fid;
    bp.weights = child->project(*fid, x).weights;
    return bp;
  }
};

double star_distance(const Complex& L, const std::vector<int>& star_ids, const Vec& y) {
  double d = std::numeric_limits<double>::infinity();
  for (int s : star_ids) d = std::min(d, L.project(s, y).distance);
  return d;
}

struct VertexCandidates {
  std::vector<int> valid;  // target vertex ids, nearest image first
  bool ambiguous = false;  // some candidate failed only inside the gray band
  int worst_u = -1;
  Vec worst_witness;
  double worst_dist = std::numeric_limits<double>::infinity();
};

// Image samples of the closed star of one source vertex.
std::vector<Vec> star_image(const MapEvaluator& F, const Complex& K,
                            const std::vector<int>& star_ids, int density, Rng& rng) {
  std::vector<Vec> out;
  for (int s : star_ids) {
    Mat V = K.simplex_matrix(s);
    for (int j = 0; j < V.cols(); ++j) out.push_back(F(V.col(j)));
    if (K.simplex_dim(s) > 0)
      for (int i = 0; i < density; ++i) out.push_back(F(sample_simplex_point(V, rng)));
  }
  return out;
}

VertexCandidates candidates_for(const std::vector<Vec>& images, const Vec& fv,
                                const Complex& L,
                                const std::vector<std::vector<int>>& target_stars) {
  VertexCandidates out;
  const double gray = 100.0 * tol::membership;
  std::vector<std::pair<double, int>> order;
  for (int u = 0; u < L.num_vertices(); ++u)
    order.push_back({(L.vertex(u) - fv).norm(), u});
  std::sort(order.begin(), order.end());
  for (auto [du, u] : order) {
    double worst = 0.0;
    Vec worst_y;
    for (const Vec& y : images) {
      double d = star_distance(L, target_stars[u], y);
      if (d > worst) {
        worst = d;
        worst_y = y;
      }
      if (worst > gray) break;
    }
    if (worst <= tol::membership) {
      out.valid.push_back(u);
    } else if (worst <= gray) {
      out.ambiguous = true;
    }
    if (worst < out.worst_dist) {
      out.worst_dist = worst;
      out.worst_u = u;
      out.worst_witness = worst_y;
    }
  }
  return out;
}

// Backtracking vertex assignment: candidates per vertex (pins are singleton
// lists), every fully assigned active simplex must span a target simplex.
struct AssignmentSearch {
  const Complex* K = nullptr;
  const Complex* L = nullptr;
  const std::vector<int>* active_simplices = nullptr;
  std::vector<std::vector<int>> cands;  // per source vertex (empty = inactive)
  long budget = 0;

  std::vector<int> result;
  bool exhausted = false;

  bool consistent(const std::vector<int>& assign, int just_set) const {
    for (int s : *active_simplices) {
      const auto& verts = K->simplex(s);
      if (std::find(verts.begin(), verts.end(), just_set) == verts.end()) continue;
      std::set<int> img;
      bool full = true;
      for (int v : verts) {
        if (assign[v] < 0) {
          full = false;
          break;
        }
        img.insert(assign[v]);
      }
      if (full && !L->find({img.begin(), img.end()})) return false;
    }
    return true;
  }

  bool run(std::vector<int>& assign, const std::vector<int>& order, std::size_t pos) {
    if (pos == order.size()) {
      result = assign;
      return true;
    }
    if (--budget < 0) {
      exhausted = true;
      return false;
    }
    int v = order[pos];
    for (int u : cands[v]) {
      assign[v] = u;
      if (consistent(assign, v) && run(assign, order, pos + 1)) return true;
      if (exhausted) return false;
      assign[v] = -1;
    }
    return false;
  }
};

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct CoreResult {
  Decision status = Decision::Fail;
  int kappa = 0;
  int ell_add = 0;
  Subdivision sub;                 // current complex -> child (mod H)
  std::vector<int> active_child;   // child simplex ids over the active region
  std::vector<int> assignment;     // child vertex -> tower vertex id (-1 = off)
  double sup_error = std::numeric_limits<double>::infinity();
  std::string detail;
};

// One relative-approximation search over the active part of `cur` rel H.
// Samples for the sup check are drawn from `sup_region` (simplex ids of
// `cur`) and located through the candidate subdivision.
CoreResult zeeman_core(const std::function<Vec(const Vec&, int)>& F_tagged,
                       const std::function<int(int)>& orig_tag_of,  // cur simplex -> tag
                       const Complex& cur, const std::vector<int>& H,
                       const std::vector<int>& active, SubdivisionTower& tower,
                       int base_level, const std::map<int, int>& pins, double epsilon,
                       const ZeemanOptions& opts) {
  CoreResult best;
  bool saw_inconclusive = false;
  int kappa = 0, ell = 0;
  bool bump_kappa = true;

  while (true) {
    Subdivision sub = subdivide_iter(cur, H, kappa);
    const Complex& child = sub.child;
    std::vector<int> active_child = induced_subdivision(sub, active);
    tower.extend_to(base_level + ell);
    const Complex& Lc = tower.levels[base_level + ell];

    std::vector<std::vector<int>> target_stars(Lc.num_vertices());
    for (int u = 0; u < Lc.num_vertices(); ++u)
      target_stars[u] = Lc.star(Lc.vertex_simplex_id(u));

    std::set<int> active_verts;
    for (int s : active_child)
      for (int v : child.simplex(s)) active_verts.insert(v);

    // Star lists restricted to the active subcomplex.
    Rng rng(opts.seed + 7919 * (kappa + 9 * ell));
    bool pair_ok = true;
    bool pair_inconclusive = false;
    std::string fail_why;
    AssignmentSearch search;
    search.K = &child;
    search.L = &Lc;
    search.active_simplices = &active_child;
    search.cands.resize(child.num_vertices());
    search.budget = opts.search_budget;

    for (int v : active_verts) {
      std::vector<int> star_ids =
          intersect_sorted(child.star(child.vertex_simplex_id(v)), active_child);
      std::vector<Vec> images;
      {
        std::vector<Vec> raw;
        for (int s : star_ids) {
          Mat V = child.simplex_matrix(s);
          int tag = orig_tag_of(sub.carrier_of[s]);
          for (int j = 0; j < V.cols(); ++j) raw.push_back(F_tagged(V.col(j), tag));
          if (child.simplex_dim(s) > 0)
            for (int i = 0; i < opts.star_density; ++i)
              raw.push_back(F_tagged(sample_simplex_point(V, rng), tag));
        }
        images = std::move(raw);
      }
      Vec fv = F_tagged(child.vertex(v), orig_tag_of(sub.carrier_of[child.vertex_simplex_id(v)]));
      auto pin = pins.find(v);
      if (pin != pins.end()) {
        // Forced choice; still verify the star condition for it.
        double worst = 0.0;
        for (const Vec& y : images)
          worst = std::max(worst, star_distance(Lc, target_stars[pin->second], y));
        if (worst <= tol::membership) {
          search.cands[v] = {pin->second};
        } else if (worst <= 100.0 * tol::membership) {
          pair_inconclusive = true;
          pair_ok = false;
        } else {
          pair_ok = false;
          fail_why = "pinned vertex fails the star condition";
        }
        if (!pair_ok) break;
        continue;
      }
      VertexCandidates vc = candidates_for(images, fv, Lc, target_stars);
      if (vc.valid.empty()) {
        pair_ok = false;
        if (vc.ambiguous)
          pair_inconclusive = true;
        else
          fail_why = "no target star contains the image of a source star";
        break;
      }
      search.cands[v] = vc.valid;
    }

    if (pair_ok) {
      std::vector<int> order(active_verts.begin(), active_verts.end());
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (search.cands[a].size() != search.cands[b].size())
          return search.cands[a].size() < search.cands[b].size();
        return a < b;
      });
      std::vector<int> assign(child.num_vertices(), -1);
      bool found = search.run(assign, order, 0);
      if (search.exhausted) {
        pair_inconclusive = true;
        pair_ok = false;
      } else if (!found) {
        pair_ok = false;
        fail_why = "no star-condition assignment spans target simplices";
      } else {
        // Sampled sup distance over the active region.
        ChildLocator loc(cur, child, sub.carrier_of);
        int per = std::max(1, opts.sup_samples / std::max<int>(1, active.size()));
        Rng srng(opts.seed + 104729);
        double sup = 0.0;
        auto eval_G = [&](const Vec& x, int cur_id) {
          BarycentricPoint bp = loc.locate(x, cur_id);
          const auto& verts = child.simplex(bp.simplex);
          Vec y = Vec::Zero(Lc.ambient_dim());
          for (std::size_t j = 0; j < verts.size(); ++j) {
            int u = search.result[verts[j]];
            if (u < 0) throw error("sample landed outside the assigned region");
            y += bp.weights(j) * Lc.vertex(u);
          }
          return y;
        };
        for (int s : active) {
          Mat V = cur.simplex_matrix(s);
          int tag = orig_tag_of(s);  // the oracle keys on original ids, the locator on cur ids
          for (int j = 0; j < V.cols(); ++j) {
            Vec x = V.col(j);
            sup = std::max(sup, (eval_G(x, s) - F_tagged(x, tag)).norm());
          }
          if (cur.simplex_dim(s) == 0) continue;
          for (int i = 0; i < per; ++i) {
            Vec x = sample_simplex_point(V, srng);
            sup = std::max(sup, (eval_G(x, s) - F_tagged(x, tag)).norm());
          }
        }
        if (sup < epsilon) {
          best.status = Decision::Pass;
          best.kappa = kappa;
          best.ell_add = ell;
          best.sub = std::move(sub);
          best.active_child = std::move(active_child);
          best.assignment = std::move(search.result);
          best.sup_error = sup;
          return best;
        }
        fail_why = "sup distance " + std::to_string(sup) + " above tolerance";
        pair_ok = false;
      }
    }

    saw_inconclusive = saw_inconclusive || pair_inconclusive;
    if (!fail_why.empty()) best.detail = fail_why;
    if (kappa >= opts.cap && ell >= opts.cap) break;
    if (bump_kappa && kappa < opts.cap)
      ++kappa;
    else if (ell < opts.cap)
      ++ell;
    else
      ++kappa;
    bump_kappa = !bump_kappa;
  }

  best.status = saw_inconclusive ? Decision::Inconclusive : Decision::Fail;
  if (best.detail.empty())
    best.detail = "subdivision caps exceeded without an admissible approximation";
  return best;
}

}  // namespace

StarConditionReport check_star_condition(const MapEvaluator& F, const Complex& K,
                                         const Complex& L, int density, std::uint64_t seed) {
  StarConditionReport rep;
  Rng rng(seed);
  std::vector<std::vector<int>> target_stars(L.num_vertices());
  for (int u = 0; u < L.num_vertices(); ++u)
    target_stars[u] = L.star(L.vertex_simplex_id(u));

  rep.assignment.assign(K.num_vertices(), -1);
  bool ambiguous_any = false;
  for (int v = 0; v < K.num_vertices(); ++v) {
    std::vector<int> star_ids = K.star(K.vertex_simplex_id(v));
    std::vector<Vec> images = star_image(F, K, star_ids, density, rng);
    VertexCandidates vc = candidates_for(images, F(K.vertex(v)), L, target_stars);
    if (vc.valid.empty()) {
      if (vc.ambiguous) {
        ambiguous_any = true;
        continue;
      }
      rep.status = Decision::Fail;
      rep.failing_vertex = v;
      rep.witness = vc.worst_witness;
      return rep;
    }
    rep.assignment[v] = vc.valid.front();
  }
  rep.status = ambiguous_any ? Decision::Inconclusive : Decision::Pass;
  return rep;
}

Vec nearest_point_projection(const Complex& L, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> minimizers;
  for (int s = 0; s < L.num_simplices(); ++s) {
    double d = L.project(s, x).distance;
    if (d < best - tol::exact) {
      best = d;
      minimizers.assign(1, s);
    } else if (d <= best + tol::exact) {
      minimizers.push_back(s);
    }
  }
  if (minimizers.size() > 1) {
    Vec dir = L.barycenter(minimizers.front()) - x;
    double n = dir.norm();
    if (n > 0.0) {
      Vec xp = x + (tol::projection_tie / n) * dir;
      double b2 = std::numeric_limits<double>::infinity();
      int arg = minimizers.front();
      for (int s = 0; s < L.num_simplices(); ++s) {
        double d = L.project(s, xp).distance;
        if (d < b2 - tol::weight_neg) {
          b2 = d;
          arg = s;
        }
      }
      return L.project(arg, x).foot;
    }
  }
  return L.project(minimizers.front(), x).foot;
}

ZeemanResult relative_approximation(const MapEvaluator& F, const Complex& K,
                                    const std::vector<int>& H, const Complex& L,
                                    double epsilon, const ZeemanOptions& opts) {
  if (!(epsilon > 0.0)) throw error("tolerance must be positive");
  if (!is_subcomplex(K, H)) throw error("H is not a subcomplex");
  ZeemanResult out;

  // F must already be simplicial on H: vertices map onto target vertices and
  // the restriction is affine.
  std::map<int, int> pins;
  Rng hrng(opts.seed + 13);
  for (int h : H) {
    for (int v : K.simplex(h)) {
      if (pins.count(v)) continue;
      Vec fv = F(K.vertex(v));
      int u_best = -1;
      double d_best = std::numeric_limits<double>::infinity();
      for (int u = 0; u < L.num_vertices(); ++u) {
        double d = (L.vertex(u) - fv).norm();
        if (d < d_best) {
          d_best = d;
          u_best = u;
        }
      }
      if (d_best > tol::exact)
        throw error("map is not simplicial on the fixed subcomplex (vertex image)");
      pins[v] = u_best;
    }
  }
  for (int h : H) {
    if (K.simplex_dim(h) == 0) continue;
    Mat V = K.simplex_matrix(h);
    for (int i = 0; i < 16; ++i) {
      Vec w = sample_simplex_weights(static_cast<int>(V.cols()), hrng);
      Vec x = V * w;
      Vec interp = Vec::Zero(L.ambient_dim());
      for (int j = 0; j < V.cols(); ++j)
        interp += w(j) * L.vertex(pins.at(K.simplex(h)[j]));
      if ((F(x) - interp).norm() > tol::affine_residual)
        throw error("map is not simplicial on the fixed subcomplex (not affine)");
    }
  }

  std::vector<int> active(K.num_simplices());
  for (int s = 0; s < K.num_simplices(); ++s) active[s] = s;
  SubdivisionTower tower = make_tower(L, 0);
  auto F_tagged = [&](const Vec& x, int) { return F(x); };
  auto tag_of = [](int s) { return s; };
  CoreResult core =
      zeeman_core(F_tagged, tag_of, K, H, active, tower, 0, pins, epsilon, opts);

  out.status = core.status;
  out.detail = core.detail;
  out.kappa = core.kappa;
  out.ell = core.ell_add;
  out.sup_error = core.sup_error;
  if (core.status == Decision::Pass) {
    out.source = std::move(core.sub);
    out.map.source = out.source.child;
    out.map.target = tower.levels[out.ell];
    out.map.vertex_image = std::move(core.assignment);
    out.tower = std::move(tower);
  }
  return out;
}

StagedResult weakly_simplicial_approximation(const MapEvaluator& F, const Complex& K,
                                             const std::vector<std::vector<int>>& filtration_in,
                                             const Complex& L,
                                             const std::function<double(const Vec&)>& eps,
                                             const StagedOptions& opts) {
  StagedResult out;
  std::vector<std::vector<int>> filtration = filtration_in;
  if (filtration.empty()) {
    std::vector<int> all(K.num_simplices());
    for (int s = 0; s < K.num_simplices(); ++s) all[s] = s;
    filtration.push_back(all);
  }
  const int N = static_cast<int>(filtration.size()) - 1;
  for (int n = 0; n <= N; ++n) {
    if (!is_subcomplex(K, filtration[n])) throw error("filtration entry is not a subcomplex");
    std::sort(filtration[n].begin(), filtration[n].end());
    if (n > 0 &&
        !std::includes(filtration[n].begin(), filtration[n].end(), filtration[n - 1].begin(),
                       filtration[n - 1].end()))
      throw error("filtration is not nested");
  }
  if (static_cast<int>(filtration[N].size()) != K.num_simplices())
    throw error("filtration must end at the whole complex");

  // Stage minima of eps (sampled).
  std::vector<double> eps_stage(N + 1);
  for (int n = 0; n <= N; ++n) {
    SampleSet S = sample_simplices(K, filtration[n], opts.eps_density, opts.seed + n);
    double m = std::numeric_limits<double>::infinity();
    for (const Vec& x : S.points) m = std::min(m, eps(x));
    if (!(m > 0.0)) throw error("eps must be positive on the polyhedron");
    eps_stage[n] = m;
  }

  // Modulus of the nearest-point retraction near |L| (sampled estimate).
  double lip_rho;
  {
    SampleSet S = sample_polyhedron(L, 60, opts.seed + 101);
    Rng prng(opts.seed + 102);
    std::vector<Vec> nearby;
    for (const Vec& y : S.points) {
      nearby.push_back(y);
      Vec off(y.size());
      for (int d = 0; d < y.size(); ++d) off(d) = prng.uniform(-1.0, 1.0);
      double n = off.norm();
      if (n > 0.0) nearby.push_back(y + off * (0.5 * prng.uniform() / n));
    }
    lip_rho = estimate_lipschitz([&](const Vec& y) { return nearest_point_projection(L, y); },
                                 nearby, 20000, opts.seed + 103);
    lip_rho = std::max(lip_rho, 1.0);
  }

  // Stage state. Vertex ids persist across subdivisions, so the committed
  // image table is keyed by final-complex vertex ids throughout.
  Subdivision acc = subdivide_iter(K, {}, 0);
  auto tower = std::make_shared<SubdivisionTower>(make_tower(L, 0));
  int cum_ell = 0;
  std::vector<int> cum_after(N + 1, 0);
  std::map<int, int> committed;

  struct StageEval {
    std::shared_ptr<StageEval> prev;
    MapEvaluator base;  // used when prev == nullptr
    std::shared_ptr<Complex> child;
    std::shared_ptr<ChildLocator> loc;
    std::vector<int> assignment;
    std::shared_ptr<SubdivisionTower> tower;
    int level = 0;
    // cutoff geometry, against the original complex
    std::shared_ptr<Complex> orig;
    std::vector<int> on_set;       // phi = 1 here (P_m)
    std::vector<int> off_set;      // Cl(P \ P_{m+1}); empty => phi = 1
    std::vector<int> region;       // P_{m+1}
    bool last = false;

    Vec eval(const Vec& x, int tag) const {
      Vec fx = prev ? prev->eval(x, tag) : base(x);
      if (!last && distance_to_simplices(*orig, region, x) > tol::membership) return fx;
      BarycentricPoint bp = loc->locate(x, tag);
      const auto& verts = child->simplex(bp.simplex);
      Vec gx = Vec::Zero(fx.size());
      for (std::size_t j = 0; j < verts.size(); ++j) {
        int u = assignment[verts[j]];
        if (u < 0) return fx;  // outside the approximated region's closure
        gx += bp.weights(j) * tower->levels[level].vertex(u);
      }
      double t = 1.0;
      if (!last && !off_set.empty()) {
        double d1 = distance_to_simplices(*orig, on_set, x);
        double d2 = distance_to_simplices(*orig, off_set, x);
        if (d1 + d2 <= 0.0) throw error("filtration stages are not interior nested");
        t = d2 / (d1 + d2);
      }
      if (t >= 1.0) return gx;
      if (t <= 0.0) return fx;
      Vec blend = t * gx + (1.0 - t) * fx;
      return nearest_point_projection(tower->base(), blend);
    }
  };

  auto orig_shared = std::make_shared<Complex>(K);
  std::shared_ptr<StageEval> Fm;  // null => the oracle F itself
  auto eval_Fm = [&](const Vec& x, int tag) { return Fm ? Fm->eval(x, tag) : F(x); };

  for (int m = 0; m <= N; ++m) {
    StageReport rep;
    rep.stage = m;
    const int next = std::min(m + 1, N);
    rep.eps_stage = eps_stage[next];
    const double mu = 1.0;  // dist(Q, Cl(Q) \ Q) with empty remainder, capped at 1
    const double delta = (eps_stage[next] / 3.0) / lip_rho;
    rep.budget = std::min(mu / 2.0, delta);

    std::vector<int> active_cur = induced_subdivision(acc, filtration[next]);
    std::vector<int> H_cur =
        m >= 1 ? induced_subdivision(acc, filtration[m - 1]) : std::vector<int>{};

    std::map<int, int> pins;
    for (int h : H_cur)
      for (int v : acc.child.simplex(h)) {
        auto it = committed.find(v);
        if (it == committed.end()) throw error("fixed vertex without committed image");
        pins[v] = it->second;
      }

    auto tag_of = [&](int s) { return acc.carrier_of[s]; };
    CoreResult core = zeeman_core(eval_Fm, tag_of, acc.child, H_cur, active_cur, *tower,
                                  cum_ell, pins, rep.budget, opts.zeeman);
    rep.kappa = core.kappa;
    rep.ell = core.ell_add;
    rep.zeeman_sup = core.sup_error;
    if (core.status != Decision::Pass) {
      rep.status = core.status;
      out.stages.push_back(rep);
      out.status = core.status;
      out.detail = "stage " + std::to_string(m) + ": " + core.detail;
      return out;
    }

    // Compose the accepted subdivision into the running one.
    Subdivision acc_next;
    acc_next.parent = K;
    acc_next.child = core.sub.child;
    acc_next.levels = acc.levels + core.sub.levels;
    acc_next.carrier_of.resize(core.sub.child.num_simplices());
    for (int s = 0; s < core.sub.child.num_simplices(); ++s)
      acc_next.carrier_of[s] = acc.carrier_of[core.sub.carrier_of[s]];

    for (std::size_t v = 0; v < core.assignment.size(); ++v)
      if (core.assignment[v] >= 0) committed[static_cast<int>(v)] = core.assignment[v];

    auto stage_eval = std::make_shared<StageEval>();
    stage_eval->prev = Fm;
    stage_eval->base = F;
    stage_eval->child = std::make_shared<Complex>(core.sub.child);
    stage_eval->loc =
        std::make_shared<ChildLocator>(K, *stage_eval->child, acc_next.carrier_of);
    stage_eval->assignment = core.assignment;
    stage_eval->tower = tower;
    stage_eval->level = cum_ell + core.ell_add;
    stage_eval->orig = orig_shared;
    stage_eval->on_set = filtration[m];
    stage_eval->region = filtration[next];
    stage_eval->last = (m == N);
    if (m < N) {
      std::set<int> in(filtration[m + 1].begin(), filtration[m + 1].end());
      for (int s = 0; s < K.num_simplices(); ++s)
        if (!in.count(s)) stage_eval->off_set.push_back(s);
      stage_eval->last = stage_eval->off_set.empty();
    }

    // Sampled stage change ||F_{m+1} - F_m||.
    {
      SampleSet S = sample_polyhedron(K, 40, opts.seed + 500 + m);
      double sup = 0.0;
      for (std::size_t i = 0; i < S.points.size(); ++i) {
        Vec a = stage_eval->eval(S.points[i], S.carrier_tag[i]);
        Vec b = eval_Fm(S.points[i], S.carrier_tag[i]);
        sup = std::max(sup, (a - b).norm());
      }
      rep.change_sup = sup;
      if (sup >= eps_stage[next] / 3.0) rep.status = Decision::Fail;
    }

    cum_ell += core.ell_add;
    cum_after[m] = cum_ell;
    acc = std::move(acc_next);
    Fm = stage_eval;
    out.stages.push_back(rep);
  }

  // Extract the weakly simplicial map from the final state.
  WeaklySimplicialMap W;
  W.source = acc.child;
  W.tower = *tower;
  W.vertex_image.assign(acc.child.num_vertices(), -1);
  for (auto [v, u] : committed) W.vertex_image[v] = u;
  for (int v : W.vertex_image)
    if (v < 0) throw error("uncommitted vertex after the final stage");
  W.level_of.resize(acc.child.num_simplices());
  W.certificate.resize(acc.child.num_simplices());
  for (int s = 0; s < acc.child.num_simplices(); ++s) {
    int orig = acc.carrier_of[s];
    int j = N;
    for (int n = 0; n <= N; ++n) {
      if (std::binary_search(filtration[n].begin(), filtration[n].end(), orig)) {
        j = n;
        break;
      }
    }
    int level = cum_after[j];
    W.level_of[s] = level;
    std::set<int> img;
    for (int v : acc.child.simplex(s)) img.insert(W.vertex_image[v]);
    auto tid = W.tower.levels[level].find({img.begin(), img.end()});
    if (!tid) throw error("stage image does not span a simplex at its level");
    W.certificate[s] = W.tower.carrier[level][*tid];
  }
  out.source = acc;

  // Final sampled comparison against the input map.
  {
    SampleSet S = sample_polyhedron(K, 60, opts.seed + 900);
    double sup = 0.0;
    bool within = true;
    for (std::size_t i = 0; i < S.points.size(); ++i) {
      Vec a = Fm ? Fm->eval(S.points[i], S.carrier_tag[i]) : F(S.points[i]);
      double d = (a - F(S.points[i])).norm();
      sup = std::max(sup, d);
      if (d >= eps(S.points[i])) within = false;
    }
    out.final_sup = sup;
    out.status = within ? Decision::Pass : Decision::Fail;
    if (!within) out.detail = "final sup above the requested tolerance";
  }
  for (const StageReport& r : out.stages)
    if (r.status != Decision::Pass) out.status = r.status;
  out.approx = std::move(W);
  return out;
}

}  // namespace plsmooth
