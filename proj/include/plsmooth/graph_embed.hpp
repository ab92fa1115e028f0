#pragma once

#include <functional>

#include "plsmooth/geometry.hpp"

namespace plsmooth {

// Re-embedding of a locally compact set X in R^p as the closed graph
// X' = {(x, t) : t = 1/theta(x)} in R^{p+1}, for a positive continuous theta
// that tends to 0 toward the missing limit points. forward/inverse are
// mutually inverse homeomorphisms (inverse is the coordinate projection, so
// round trips are bit exact).
struct GraphEmbedding {
  std::function<double(const Vec&)> theta;

  Vec forward(const Vec& x) const {
    double th = theta(x);
    if (!(th > 0.0)) throw error("theta must be positive on X");
    Vec y(x.size() + 1);
    y.head(x.size()) = x;
    y(x.size()) = 1.0 / th;
    return y;
  }
  Vec inverse(const Vec& y) const { return y.head(y.size() - 1); }
};

inline GraphEmbedding graph_embed(std::function<double(const Vec&)> theta) {
  return GraphEmbedding{std::move(theta)};
}

}  // namespace plsmooth
