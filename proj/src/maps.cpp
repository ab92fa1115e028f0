#include "plsmooth/maps.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

namespace plsmooth {

MapEvaluator example_axes_bend() {
  MapEvaluator F;
  F.name = "axes-bend";
  F.eval = [](const Vec& x) {
    Vec y = Vec::Zero(2);
    if (x(0) < 0.0)
      y(1) = x(0);
    else
      y(0) = x(0);
    return y;
  };
  return F;
}

namespace {

struct Loop {
  std::vector<Vec> pts;
  std::vector<double> cum;  // cum[i] = arclength up to vertex i; cum[n] = total
  double total = 0.0;
};

Loop make_loop(std::vector<Vec> pts) {
  Loop L;
  L.pts = std::move(pts);
  L.cum.resize(L.pts.size() + 1, 0.0);
  for (std::size_t i = 0; i < L.pts.size(); ++i) {
    const Vec& a = L.pts[i];
    const Vec& b = L.pts[(i + 1) % L.pts.size()];
    L.cum[i + 1] = L.cum[i] + (b - a).norm();
  }
  L.total = L.cum.back();
  return L;
}

double loop_param(const Loop& L, const Vec& x) {
  double best_d = std::numeric_limits<double>::infinity();
  double best_s = 0.0;
  for (std::size_t i = 0; i < L.pts.size(); ++i) {
    const Vec& a = L.pts[i];
    const Vec& b = L.pts[(i + 1) % L.pts.size()];
    Vec e = b - a;
    double t = (x - a).dot(e) / e.squaredNorm();
    t = std::clamp(t, 0.0, 1.0);
    Vec foot = a + t * e;
    double d = (x - foot).norm();
    if (d < best_d - 1e-15) {
      best_d = d;
      best_s = L.cum[i] + t * (L.cum[i + 1] - L.cum[i]);
    }
  }
  return best_s;
}

Vec loop_point(const Loop& L, double s) {
  s = std::fmod(s, L.total);
  if (s < 0.0) s += L.total;
  for (std::size_t i = 0; i < L.pts.size(); ++i) {
    if (s <= L.cum[i + 1] || i + 1 == L.pts.size()) {
      double len = L.cum[i + 1] - L.cum[i];
      double t = len > 0.0 ? (s - L.cum[i]) / len : 0.0;
      if (t == 0.0) return L.pts[i];
      return L.pts[i] + t * (L.pts[(i + 1) % L.pts.size()] - L.pts[i]);
    }
  }
  return L.pts[0];
}

}  // namespace

MapEvaluator boundary_reparam(std::vector<Vec> source_loop, std::vector<Vec> target_loop,
                              int degree) {
  auto src = std::make_shared<Loop>(make_loop(std::move(source_loop)));
  auto dst = std::make_shared<Loop>(make_loop(std::move(target_loop)));
  MapEvaluator F;
  F.name = "boundary-reparam-deg" + std::to_string(degree);
  double ratio = dst->total / src->total;
  F.eval = [src, dst, degree, ratio](const Vec& x) {
    double s = loop_param(*src, x);
    return loop_point(*dst, static_cast<double>(degree) * s * ratio);
  };
  return F;
}

MapEvaluator affine_map(const Mat& A, const Vec& b) {
  MapEvaluator F;
  F.name = "affine";
  F.eval = [A, b](const Vec& x) -> Vec { return A * x + b; };
  return F;
}

int SimplicialMap::image_simplex(int s) const {
  std::set<int> img;
  for (int v : source.simplex(s)) img.insert(vertex_image[v]);
  auto id = target.find({img.begin(), img.end()});
  return id ? *id : -1;
}

bool SimplicialMap::valid() const {
  if (static_cast<int>(vertex_image.size()) != source.num_vertices()) return false;
  for (int v : vertex_image)
    if (v < 0 || v >= target.num_vertices()) return false;
  for (int s = 0; s < source.num_simplices(); ++s)
    if (image_simplex(s) < 0) return false;
  return true;
}

Vec SimplicialMap::eval(const Vec& x) const {
  BarycentricPoint bp = locate(source, x);
  const auto& verts = source.simplex(bp.simplex);
  Vec y = Vec::Zero(target.ambient_dim());
  for (std::size_t j = 0; j < verts.size(); ++j)
    y += bp.weights(j) * target.vertex(vertex_image[verts[j]]);
  return y;
}

MapEvaluator SimplicialMap::evaluator() const {
  auto self = std::make_shared<SimplicialMap>(*this);
  return MapEvaluator{[self](const Vec& x) { return self->eval(x); }, "simplicial"};
}

void SubdivisionTower::extend_to(int level) {
  while (height() < level) {
    Subdivision step = subdivide(levels.back());
    std::vector<int> cum(step.child.num_simplices());
    for (int s = 0; s < step.child.num_simplices(); ++s)
      cum[s] = carrier.back()[step.carrier_of[s]];
    levels.push_back(step.child);
    carrier.push_back(std::move(cum));
  }
}

SubdivisionTower make_tower(const Complex& base, int level) {
  SubdivisionTower T;
  T.levels.push_back(base);
  std::vector<int> self(base.num_simplices());
  for (int s = 0; s < base.num_simplices(); ++s) self[s] = s;
  T.carrier.push_back(std::move(self));
  T.extend_to(level);
  return T;
}

Vec WeaklySimplicialMap::eval(const Vec& x) const {
  BarycentricPoint bp = locate(source, x);
  const auto& verts = source.simplex(bp.simplex);
  Vec y = Vec::Zero(target().ambient_dim());
  for (std::size_t j = 0; j < verts.size(); ++j)
    y += bp.weights(j) * image_point(verts[j]);
  return y;
}

MapEvaluator WeaklySimplicialMap::evaluator() const {
  auto self = std::make_shared<WeaklySimplicialMap>(*this);
  return MapEvaluator{[self](const Vec& x) { return self->eval(x); }, "weakly-simplicial"};
}

bool WeaklySimplicialMap::coherent(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(vertex_image.size()) != source.num_vertices())
    return fail("vertex image size mismatch");
  if (static_cast<int>(level_of.size()) != source.num_simplices() ||
      static_cast<int>(certificate.size()) != source.num_simplices())
    return fail("per-simplex table size mismatch");
  for (int s = 0; s < source.num_simplices(); ++s) {
    int lvl = level_of[s];
    if (lvl < 0 || lvl > tower.height()) return fail("level out of tower range");
    const Complex& L = tower.levels[lvl];
    std::set<int> img;
    for (int v : source.simplex(s)) {
      int u = vertex_image[v];
      if (u < 0 || u >= L.num_vertices())
        return fail("image vertex not present at declared level");
      img.insert(u);
    }
    auto tid = L.find({img.begin(), img.end()});
    if (!tid) return fail("image vertex set spans no simplex at declared level");
    int cert = certificate[s];
    if (cert < 0 || cert >= tower.base().num_simplices())
      return fail("certificate out of range");
    for (int u : img) {
      SimplexProjection pr = tower.base().project(cert, L.vertex(u));
      if (pr.distance > tol::membership)
        return fail("image leaves the certificate simplex");
    }
  }
  return true;
}

WeaklySimplicialMap wrap_weakly_simplicial(const SimplicialMap& G, SubdivisionTower tower,
                                           int level) {
  tower.extend_to(level);
  if (!(G.target == tower.levels[level]))
    throw error("wrap: map target is not the tower at the given level");
  WeaklySimplicialMap W;
  W.source = G.source;
  W.vertex_image = G.vertex_image;
  W.level_of.assign(G.source.num_simplices(), level);
  W.certificate.resize(G.source.num_simplices());
  for (int s = 0; s < G.source.num_simplices(); ++s) {
    int img = G.image_simplex(s);
    if (img < 0) throw error("simplicial map invalid; cannot wrap");
    W.certificate[s] = tower.carrier[level][img];
  }
  W.tower = std::move(tower);
  return W;
}

}  // namespace plsmooth
