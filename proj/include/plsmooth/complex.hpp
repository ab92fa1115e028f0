#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plsmooth/geometry.hpp"

namespace plsmooth {

// Finite geometric simplicial complex in R^p, 1 <= p <= 4. Simplices are
// sorted vertex-id lists, face closed, stored in a canonical order
// (dimension, then lexicographic ids) so ids are deterministic.
class Complex {
 public:
  Complex() = default;
  // Completes the face closure, canonicalizes ids, checks affine independence
  // of every simplex. Geometric pairwise-intersection validity is a separate
  // (sampled) check, see validate_geometry.
  Complex(std::vector<Vec> vertices, std::vector<std::vector<int>> simplices);

  int ambient_dim() const { return vertices_.empty() ? 0 : static_cast<int>(vertices_[0].size()); }
  int dim() const;
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_simplices() const { return static_cast<int>(simplices_.size()); }

  const Vec& vertex(int v) const { return vertices_[v]; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<int>& simplex(int s) const { return simplices_[s]; }
  const std::vector<std::vector<int>>& simplices() const { return simplices_; }
  int simplex_dim(int s) const { return static_cast<int>(simplices_[s].size()) - 1; }

  // Vertex coordinates of simplex s as matrix columns.
  Mat simplex_matrix(int s) const;
  Vec barycenter(int s) const;
  double volume(int s) const { return simplex_volume(simplex_matrix(s)); }
  double diameter(int s) const { return simplex_diameter(simplex_matrix(s)); }

  std::optional<int> find(const std::vector<int>& verts) const;
  bool contains(const std::vector<int>& verts) const { return find(verts).has_value(); }

  // Ids of all proper faces of s (excluding s itself).
  std::vector<int> faces(int s) const;
  // Ids of simplices having s as a face, including s. For a vertex id v the
  // star is star(vertex_simplex_id(v)).
  std::vector<int> star(int s) const;
  int vertex_simplex_id(int v) const;
  // Top-dimensional simplices of the star of vertex v.
  std::vector<int> vertex_star(int v) const;

  // Exact distance from x to the closed simplex s.
  SimplexProjection project(int s, const Vec& x) const;
  double distance_to(const Vec& x) const;  // distance to the polyhedron |K|

  bool operator==(const Complex& other) const;

 private:
  std::vector<Vec> vertices_;
  std::vector<std::vector<int>> simplices_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<int>> stars_;  // per simplex, filled lazily in ctor
};

// Point of |K| in barycentric form: carrier simplex plus weights over its
// vertices. Weights are >= -1e-12 and sum to 1 within 1e-12.
struct BarycentricPoint {
  int simplex = -1;
  Vec weights;
};

// Minimal simplex whose closed hull contains x (its open simplex contains x).
// Ties among equally-near candidates resolve to lower dimension, then lower
// id. std::nullopt when x is farther than tol::membership from |K|.
std::optional<int> carrier(const Complex& K, const Vec& x);

// Carrier plus weights; throws plsmooth::error when x is off the polyhedron.
BarycentricPoint locate(const Complex& K, const Vec& x);

// Weights of x in simplex s. Throws when x is farther than tol from the
// affine hull of s.
Vec barycentric_coords(const Complex& K, int s, const Vec& x);

Vec rebuild(const Complex& K, const BarycentricPoint& bp);

// Sampled check that closed simplices meet exactly in their shared face.
// Pairs are prefiltered by bounding boxes; for each surviving pair, points of
// one simplex lying in the other (within tol) must lie in the common face.
struct GeometryIssue {
  int simplex_a = -1;
  int simplex_b = -1;
  Vec witness;
};
std::optional<GeometryIssue> validate_geometry(const Complex& K,
                                               int samples_per_pair = 64,
                                               std::uint64_t seed = 0);

// True when every simplex in `ids` has all its faces in `ids` (subcomplex).
bool is_subcomplex(const Complex& K, const std::vector<int>& ids);
// Face closure of the given simplex ids.
std::vector<int> close_down(const Complex& K, std::vector<int> ids);
// Extract a subcomplex as a standalone Complex; vertex_map/simplex_map give
// for each new id the originating id in K.
struct SubcomplexExtract {
  Complex complex;
  std::vector<int> vertex_map;
  std::vector<int> simplex_map;
};
SubcomplexExtract extract_subcomplex(const Complex& K, const std::vector<int>& ids);

// Distance from x to the union of the listed closed simplices
// (+infinity for an empty list).
double distance_to_simplices(const Complex& K, const std::vector<int>& ids, const Vec& x);

}  // namespace plsmooth
