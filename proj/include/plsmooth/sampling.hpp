#pragma once

#include <functional>

#include "plsmooth/complex.hpp"

namespace plsmooth {

// Deterministic sample of the polyhedron |K|: `density` points per simplex
// (all dimensions) plus every vertex, each tagged with the simplex it was
// drawn from. Fixed seed gives bit-identical points.
struct SampleSet {
  std::uint64_t seed = 0;
  int density = 0;
  std::vector<Vec> points;
  std::vector<int> carrier_tag;
};

SampleSet sample_polyhedron(const Complex& K, int density, std::uint64_t seed = 0);

// Same, restricted to the listed simplices (vertices of those simplices only).
SampleSet sample_simplices(const Complex& K, const std::vector<int>& ids, int density,
                           std::uint64_t seed = 0);

// Largest ratio |g(x)-g(y)| / |x-y| over `pairs` random sample pairs,
// inflated by factor 2. A sampled stand-in for a true modulus of continuity;
// treat results as estimates.
double estimate_lipschitz(const std::function<Vec(const Vec&)>& g,
                          const std::vector<Vec>& domain_samples,
                          int pairs = 100000, std::uint64_t seed = 0);

}  // namespace plsmooth
