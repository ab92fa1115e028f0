#pragma once

#include <functional>
#include <string>

#include "plsmooth/subdivision.hpp"

namespace plsmooth {

// Continuous map oracle between polyhedra.
struct MapEvaluator {
  std::function<Vec(const Vec&)> eval;
  std::string name;
  Vec operator()(const Vec& x) const { return eval(x); }
};

// t < 0 -> (0, t); t >= 0 -> (t, 0). PL bend onto the coordinate cross.
MapEvaluator example_axes_bend();

// Perimeter-proportional self/cross reparametrization of closed polygon
// boundaries: the point at arclength s of `source`'s boundary maps to the
// point at arclength (degree * s * len(target)/len(source)) of `target`'s.
// Polygons are given by their cyclic vertex lists.
MapEvaluator boundary_reparam(std::vector<Vec> source_loop, std::vector<Vec> target_loop,
                              int degree = 1);

MapEvaluator affine_map(const Mat& A, const Vec& b);

// Vertex-to-vertex map between complexes, affine on each simplex. Valid when
// every simplex's image vertex set spans a simplex of the target.
struct SimplicialMap {
  Complex source;
  Complex target;
  std::vector<int> vertex_image;  // target vertex id per source vertex

  bool valid() const;
  // Target simplex spanned by the images of s's vertices (-1 if none).
  int image_simplex(int s) const;
  Vec eval(const Vec& x) const;
  MapEvaluator evaluator() const;
};

// Iterated barycentric subdivisions of a base complex, with cumulative
// carriers back to level 0. Vertex ids of level l are an id-prefix of level
// l+1, so a level-l vertex keeps its id at every later level.
struct SubdivisionTower {
  std::vector<Complex> levels;               // levels[0] = base
  std::vector<std::vector<int>> carrier;     // carrier[l][s] -> level-0 simplex

  const Complex& base() const { return levels.front(); }
  const Complex& top() const { return levels.back(); }
  int height() const { return static_cast<int>(levels.size()) - 1; }
  void extend_to(int level);
};
SubdivisionTower make_tower(const Complex& base, int level = 0);

// Map affine on each simplex of `source` whose vertex images are vertices of
// an iterated subdivision of the target, at a per-simplex level:
// the images of s's vertices span a simplex of tower.levels[level_of[s]].
// certificate[s] is a target simplex (level 0) containing the image of s.
struct WeaklySimplicialMap {
  Complex source;
  SubdivisionTower tower;
  std::vector<int> vertex_image;  // vertex id in tower.top()
  std::vector<int> level_of;      // per source simplex
  std::vector<int> certificate;   // per source simplex, id in tower.base()

  const Complex& target() const { return tower.base(); }
  Vec image_point(int source_vertex) const {
    return tower.top().vertex(vertex_image[source_vertex]);
  }
  Vec eval(const Vec& x) const;
  MapEvaluator evaluator() const;

  // Image vertex set of every simplex spans a simplex of its level, and that
  // simplex lies inside the declared certificate.
  bool coherent(std::string* why = nullptr) const;
};

// Uniform-level wrap of a simplicial map G into tower.levels[level].
WeaklySimplicialMap wrap_weakly_simplicial(const SimplicialMap& G, SubdivisionTower tower,
                                           int level);

}  // namespace plsmooth
