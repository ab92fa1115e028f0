#pragma once

#include "plsmooth/complex.hpp"

namespace plsmooth {

// Result of subdividing `parent`. Child vertex ids 0..parent.num_vertices()-1
// are the parent vertices unchanged (id-exact retention); new vertices are
// barycenters of parent simplices, deduplicated by parent-simplex identity.
// carrier_of[s] is, for each child simplex, a parent simplex containing it
// (the top of the defining chain). levels counts how many single subdivisions
// were composed.
struct Subdivision {
  Complex parent;
  Complex child;
  std::vector<int> carrier_of;
  std::vector<int> fixed;  // parent simplex ids held fixed (the subcomplex H)
  int levels = 1;
};

// Barycentric subdivision relative to the subcomplex H (simplex ids of K,
// face closed; empty H gives the plain barycentric subdivision). Child
// simplices are spanned by the vertices of a simplex s0 in H together with
// the barycenters of a chain s1 < ... < sr of simplices of K outside H with
// s0 < s1; either part may be empty but not both. H's simplices are carried
// over with identical vertex ids.
Subdivision subdivide_mod(const Complex& K, const std::vector<int>& H);

inline Subdivision subdivide(const Complex& K) { return subdivide_mod(K, {}); }

// k-fold iterate: each round subdivides the previous child relative to the
// (id-identical) copy of H it retains. Carriers compose into the original K.
// k = 0 returns the identity subdivision.
Subdivision subdivide_iter(const Complex& K, const std::vector<int>& H, int k);

// Largest simplex diameter, skipping simplices contained in the polyhedron of
// the listed subcomplex (membership decided by vertex + barycenter distance).
double mesh_size(const Complex& K, const std::vector<int>& away_from = {});

// Relocate a set of parent simplex ids inside the child (ids are preserved
// vertex-wise, so this is an index lookup).
std::vector<int> relocate_subcomplex(const Subdivision& S, const std::vector<int>& parent_ids);

// Child simplex ids whose carrier lies in the given parent subcomplex: the
// induced subdivision of that subcomplex.
std::vector<int> induced_subdivision(const Subdivision& S, const std::vector<int>& parent_ids);

}  // namespace plsmooth
