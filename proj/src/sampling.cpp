#include "plsmooth/sampling.hpp"

#include <set>

namespace plsmooth {

SampleSet sample_simplices(const Complex& K, const std::vector<int>& ids, int density,
                           std::uint64_t seed) {
  SampleSet out;
  out.seed = seed;
  out.density = density;
  Rng rng(seed);
  std::set<int> seen_verts;
  for (int s : ids) {
    if (K.simplex_dim(s) == 0) {
      int v = K.simplex(s)[0];
      if (seen_verts.insert(v).second) {
        out.points.push_back(K.vertex(v));
        out.carrier_tag.push_back(s);
      }
      continue;
    }
    Mat V = K.simplex_matrix(s);
    for (int i = 0; i < density; ++i) {
      out.points.push_back(sample_simplex_point(V, rng));
      out.carrier_tag.push_back(s);
    }
    for (int v : K.simplex(s)) {
      if (seen_verts.insert(v).second) {
        out.points.push_back(K.vertex(v));
        out.carrier_tag.push_back(s);
      }
    }
  }
  return out;
}

SampleSet sample_polyhedron(const Complex& K, int density, std::uint64_t seed) {
  std::vector<int> ids(K.num_simplices());
  for (int s = 0; s < K.num_simplices(); ++s) ids[s] = s;
  return sample_simplices(K, ids, density, seed);
}

double estimate_lipschitz(const std::function<Vec(const Vec&)>& g,
                          const std::vector<Vec>& domain_samples, int pairs,
                          std::uint64_t seed) {
  if (domain_samples.size() < 2) return 0.0;
  Rng rng(seed);
  double best = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const Vec& a = domain_samples[rng.index(domain_samples.size())];
    const Vec& b = domain_samples[rng.index(domain_samples.size())];
    double dx = (a - b).norm();
    if (dx < 1e-12) continue;
    best = std::max(best, (g(a) - g(b)).norm() / dx);
  }
  return 2.0 * best;
}

}  // namespace plsmooth
