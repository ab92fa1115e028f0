#include "plsmooth/complex.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace plsmooth {

namespace {

void all_subsets(const std::vector<int>& verts, std::set<std::vector<int>>& out) {
  const int n = static_cast<int>(verts.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> f;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) f.push_back(verts[j]);
    out.insert(f);
  }
}

}  // namespace

Complex::Complex(std::vector<Vec> vertices, std::vector<std::vector<int>> simplices)
    : vertices_(std::move(vertices)) {
  const int p = ambient_dim();
  if (!vertices_.empty() && (p < 1 || p > 4))
    throw error("ambient dimension must be between 1 and 4");
  for (const Vec& v : vertices_)
    if (v.size() != p) throw error("inconsistent vertex dimensions");

  std::set<std::vector<int>> closed;
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int v : s)
      if (v < 0 || v >= num_vertices()) throw error("simplex references unknown vertex");
    all_subsets(s, closed);
  }
  // Canonical order: dimension, then lexicographic vertex ids.
  simplices_.assign(closed.begin(), closed.end());
  std::stable_sort(simplices_.begin(), simplices_.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  for (int i = 0; i < num_simplices(); ++i) index_[simplices_[i]] = i;

  for (int s = 0; s < num_simplices(); ++s)
    if (!affinely_independent(simplex_matrix(s)))
      throw error("degenerate simplex (affinely dependent vertices)");

  stars_.resize(simplices_.size());
  for (int t = 0; t < num_simplices(); ++t) {
    std::set<std::vector<int>> subs;
    all_subsets(simplices_[t], subs);
    for (const auto& f : subs) stars_[index_.at(f)].push_back(t);
  }
  for (auto& st : stars_) std::sort(st.begin(), st.end());
}

int Complex::dim() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

Mat Complex::simplex_matrix(int s) const {
  const auto& verts = simplices_[s];
  Mat V(ambient_dim(), verts.size());
  for (std::size_t j = 0; j < verts.size(); ++j) V.col(j) = vertices_[verts[j]];
  return V;
}

Vec Complex::barycenter(int s) const {
  const auto& verts = simplices_[s];
  Vec b = Vec::Zero(ambient_dim());
  for (int v : verts) b += vertices_[v];
  return b / static_cast<double>(verts.size());
}

std::optional<int> Complex::find(const std::vector<int>& verts) const {
  std::vector<int> key = verts;
  std::sort(key.begin(), key.end());
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Complex::faces(int s) const {
  std::set<std::vector<int>> subs;
  all_subsets(simplices_[s], subs);
  std::vector<int> out;
  for (const auto& f : subs) {
    if (f == simplices_[s]) continue;
    out.push_back(index_.at(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Complex::star(int s) const { return stars_[s]; }

int Complex::vertex_simplex_id(int v) const {
  auto id = find({v});
  if (!id) throw error("vertex has no 0-simplex in the complex");
  return *id;
}

std::vector<int> Complex::vertex_star(int v) const {
  std::vector<int> all = star(vertex_simplex_id(v));
  std::vector<int> tops;
  for (int s : all) {
    bool maximal = true;
    for (int t : all)
      if (t != s && std::includes(simplices_[t].begin(), simplices_[t].end(),
                                  simplices_[s].begin(), simplices_[s].end()))
        maximal = false;
    if (maximal) tops.push_back(s);
  }
  return tops;
}

SimplexProjection Complex::project(int s, const Vec& x) const {
  return project_to_simplex(simplex_matrix(s), x);
}

double Complex::distance_to(const Vec& x) const {
  double d = std::numeric_limits<double>::infinity();
  for (int s = 0; s < num_simplices(); ++s) d = std::min(d, project(s, x).distance);
  return d;
}

bool Complex::operator==(const Complex& other) const {
  if (num_vertices() != other.num_vertices()) return false;
  for (int v = 0; v < num_vertices(); ++v)
    if (vertices_[v] != other.vertices_[v]) return false;
  return simplices_ == other.simplices_;
}

std::optional<int> carrier(const Complex& K, const Vec& x) {
  // Nearest simplex first (ties: lower dimension, then lower id via scan
  // order), then the face spanned by the strictly positive weights.
  double best = std::numeric_limits<double>::infinity();
  int best_s = -1;
  Vec best_w;
  for (int s = 0; s < K.num_simplices(); ++s) {
    SimplexProjection pr = K.project(s, x);
    if (pr.distance < best - tol::weight_neg) {
      best = pr.distance;
      best_s = s;
      best_w = pr.weights;
    }
  }
  if (best_s < 0 || best > tol::membership) return std::nullopt;
  const auto& verts = K.simplex(best_s);
  std::vector<int> face;
  for (int j = 0; j < best_w.size(); ++j)
    if (best_w(j) > tol::membership) face.push_back(verts[j]);
  if (face.empty()) face.push_back(verts[0]);
  auto id = K.find(face);
  if (!id) throw error("carrier face missing from complex (closure broken)");
  return *id;
}

BarycentricPoint locate(const Complex& K, const Vec& x) {
  auto c = carrier(K, x);
  if (!c) throw error("point lies off the polyhedron");
  BarycentricPoint bp;
  bp.simplex = *c;
  SimplexProjection pr = K.project(*c, x);
  bp.weights = pr.weights;
  return bp;
}

Vec barycentric_coords(const Complex& K, int s, const Vec& x) {
  BarycentricSolve sol = barycentric_solve(K.simplex_matrix(s), x);
  if (sol.residual > tol::affine_residual)
    throw error("point lies off the affine hull of the simplex");
  return sol.weights;
}

Vec rebuild(const Complex& K, const BarycentricPoint& bp) {
  return K.simplex_matrix(bp.simplex) * bp.weights;
}

std::optional<GeometryIssue> validate_geometry(const Complex& K, int samples_per_pair,
                                               std::uint64_t seed) {
  Rng rng(seed);
  const int n = K.num_simplices();
  std::vector<Vec> lo(n), hi(n);
  for (int s = 0; s < n; ++s) {
    Mat V = K.simplex_matrix(s);
    lo[s] = V.rowwise().minCoeff();
    hi[s] = V.rowwise().maxCoeff();
  }
  const double pad = 10.0 * tol::membership;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      bool boxes_meet = true;
      for (int d = 0; d < K.ambient_dim(); ++d)
        if (lo[a](d) > hi[b](d) + pad || lo[b](d) > hi[a](d) + pad) boxes_meet = false;
      if (!boxes_meet) continue;

      std::vector<int> shared;
      std::set_intersection(K.simplex(a).begin(), K.simplex(a).end(),
                            K.simplex(b).begin(), K.simplex(b).end(),
                            std::back_inserter(shared));
      std::optional<int> face = shared.empty() ? std::nullopt : K.find(shared);

      auto check_dir = [&](int src, int dst) -> std::optional<Vec> {
        Mat V = K.simplex_matrix(src);
        for (int i = 0; i < samples_per_pair; ++i) {
          Vec x = sample_simplex_point(V, rng);
          if (K.project(dst, x).distance > tol::membership) continue;
          double dface = face ? K.project(*face, x).distance
                              : std::numeric_limits<double>::infinity();
          if (dface > 1e-6) return x;  // in both hulls, far from the shared face
        }
        return std::nullopt;
      };
      if (auto w = check_dir(a, b)) return GeometryIssue{a, b, *w};
      if (auto w = check_dir(b, a)) return GeometryIssue{a, b, *w};
    }
  }
  return std::nullopt;
}

bool is_subcomplex(const Complex& K, const std::vector<int>& ids) {
  std::set<int> in(ids.begin(), ids.end());
  for (int s : ids)
    for (int f : K.faces(s))
      if (!in.count(f)) return false;
  return true;
}

std::vector<int> close_down(const Complex& K, std::vector<int> ids) {
  std::set<int> out(ids.begin(), ids.end());
  for (int s : ids)
    for (int f : K.faces(s)) out.insert(f);
  return {out.begin(), out.end()};
}

SubcomplexExtract extract_subcomplex(const Complex& K, const std::vector<int>& ids) {
  if (!is_subcomplex(K, ids)) throw error("simplex set is not face closed");
  std::set<int> vset;
  for (int s : ids)
    for (int v : K.simplex(s)) vset.insert(v);
  SubcomplexExtract out;
  out.vertex_map.assign(vset.begin(), vset.end());
  std::map<int, int> back;
  for (std::size_t i = 0; i < out.vertex_map.size(); ++i)
    back[out.vertex_map[i]] = static_cast<int>(i);
  std::vector<Vec> verts;
  for (int v : out.vertex_map) verts.push_back(K.vertex(v));
  std::vector<std::vector<int>> simps;
  for (int s : ids) {
    std::vector<int> relabeled;
    for (int v : K.simplex(s)) relabeled.push_back(back[v]);
    simps.push_back(relabeled);
  }
  out.complex = Complex(std::move(verts), std::move(simps));
  out.simplex_map.resize(out.complex.num_simplices());
  for (int s = 0; s < out.complex.num_simplices(); ++s) {
    std::vector<int> orig;
    for (int v : out.complex.simplex(s)) orig.push_back(out.vertex_map[v]);
    auto id = K.find(orig);
    if (!id) throw error("subcomplex simplex missing in parent");
    out.simplex_map[s] = *id;
  }
  return out;
}

double distance_to_simplices(const Complex& K, const std::vector<int>& ids, const Vec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (int s : ids) d = std::min(d, K.project(s, x).distance);
  return d;
}

}  // namespace plsmooth
