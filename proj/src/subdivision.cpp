#include "plsmooth/subdivision.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace plsmooth {

namespace {

struct ChildSimplex {
  std::vector<int> verts;  // child vertex ids, sorted
  int carrier;             // parent simplex id
};

}  // namespace

Subdivision subdivide_mod(const Complex& K, const std::vector<int>& H) {
  if (!is_subcomplex(K, H)) throw error("H is not a subcomplex (not face closed)");
  std::set<int> inH(H.begin(), H.end());

  Subdivision out;
  out.parent = K;
  out.fixed = H;
  std::sort(out.fixed.begin(), out.fixed.end());

  std::vector<Vec> verts = K.vertices();
  // Barycenter vertex per parent simplex outside H; a 0-simplex is its own
  // barycenter and reuses the original vertex id.
  std::map<int, int> bary_id;
  for (int s = 0; s < K.num_simplices(); ++s) {
    if (inH.count(s)) continue;
    if (K.simplex_dim(s) == 0) {
      bary_id[s] = K.simplex(s)[0];
    } else {
      bary_id[s] = static_cast<int>(verts.size());
      verts.push_back(K.barycenter(s));
    }
  }

  std::map<std::vector<int>, int> best_carrier;
  auto emit = [&](std::vector<int> v, int carrier_simplex) {
    std::sort(v.begin(), v.end());
    auto it = best_carrier.find(v);
    // The same child simplex can arise from several chains; keep the smallest
    // carrier (carriers of duplicate emissions are nested, smaller is tighter).
    if (it == best_carrier.end() ||
        K.simplex(carrier_simplex).size() < K.simplex(it->second).size())
      best_carrier[v] = carrier_simplex;
  };

  // Simplices of H survive verbatim.
  for (int s : H) emit(K.simplex(s), s);

  // Chains s1 < ... < sr in K \ H, each prefixed by an optional s0 in H with
  // s0 < s1. DFS downward from every chain top.
  struct Frame {
    std::vector<int> chain;  // simplex ids, decreasing dimension from the top
  };
  std::vector<Frame> stack;
  for (int top = 0; top < K.num_simplices(); ++top) {
    if (inH.count(top)) continue;
    stack.push_back({{top}});
  }
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    int tail = f.chain.back();
    int top = f.chain.front();

    std::vector<int> bare;
    for (int s : f.chain) bare.push_back(bary_id[s]);
    emit(bare, top);
    for (int face : K.faces(tail)) {
      if (inH.count(face)) {
        std::vector<int> withH = bare;
        for (int v : K.simplex(face)) withH.push_back(v);
        emit(withH, top);
      } else {
        Frame g = f;
        g.chain.push_back(face);
        stack.push_back(g);
      }
    }
  }

  std::vector<std::vector<int>> simps;
  simps.reserve(best_carrier.size());
  for (const auto& [v, c] : best_carrier) simps.push_back(v);
  out.child = Complex(verts, simps);
  out.carrier_of.assign(out.child.num_simplices(), -1);
  for (const auto& [v, c] : best_carrier) {
    auto id = out.child.find(v);
    if (!id) throw error("child simplex lost during canonicalization");
    out.carrier_of[*id] = c;
  }
  for (int s = 0; s < out.child.num_simplices(); ++s)
    if (out.carrier_of[s] < 0) throw error("child simplex without carrier");
  return out;
}

Subdivision subdivide_iter(const Complex& K, const std::vector<int>& H, int k) {
  if (k < 0) throw error("subdivision count must be nonnegative");
  Subdivision acc;
  acc.parent = K;
  acc.child = K;
  acc.fixed = H;
  acc.levels = 0;
  acc.carrier_of.resize(K.num_simplices());
  for (int s = 0; s < K.num_simplices(); ++s) acc.carrier_of[s] = s;

  std::vector<int> H_cur = H;
  for (int round = 0; round < k; ++round) {
    Subdivision step = subdivide_mod(acc.child, H_cur);
    Subdivision next;
    next.parent = K;
    next.child = step.child;
    next.fixed = H;
    next.levels = acc.levels + 1;
    next.carrier_of.resize(step.child.num_simplices());
    for (int s = 0; s < step.child.num_simplices(); ++s)
      next.carrier_of[s] = acc.carrier_of[step.carrier_of[s]];
    acc = std::move(next);
    // H's simplices keep their vertex ids, so relocating is a lookup.
    std::vector<int> H_next;
    for (int h : H_cur) {
      auto id = acc.child.find(step.parent.simplex(h));
      if (!id) throw error("fixed subcomplex lost during subdivision");
      H_next.push_back(*id);
    }
    H_cur = std::move(H_next);
  }
  return acc;
}

double mesh_size(const Complex& K, const std::vector<int>& away_from) {
  double m = 0.0;
  for (int s = 0; s < K.num_simplices(); ++s) {
    if (!away_from.empty()) {
      bool inside = true;
      for (int v : K.simplex(s))
        if (distance_to_simplices(K, away_from, K.vertex(v)) > tol::membership)
          inside = false;
      if (inside &&
          distance_to_simplices(K, away_from, K.barycenter(s)) > tol::membership)
        inside = false;
      if (inside) continue;
    }
    m = std::max(m, K.diameter(s));
  }
  return m;
}

std::vector<int> relocate_subcomplex(const Subdivision& S, const std::vector<int>& parent_ids) {
  std::vector<int> out;
  for (int s : parent_ids) {
    auto id = S.child.find(S.parent.simplex(s));
    if (!id) throw error("subcomplex simplex not retained by subdivision");
    out.push_back(*id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> induced_subdivision(const Subdivision& S, const std::vector<int>& parent_ids) {
  std::set<int> in(parent_ids.begin(), parent_ids.end());
  std::vector<int> out;
  for (int s = 0; s < S.child.num_simplices(); ++s)
    if (in.count(S.carrier_of[s])) out.push_back(s);
  return out;
}

}  // namespace plsmooth
