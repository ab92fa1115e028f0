#pragma once

#include <cmath>

namespace plsmooth {

// Smooth step glued from exp(-1/t): one profile family for every cutoff in
// the repository. value(t) is exactly 1 for t <= a and exactly 0 for t >= b
// (branch, not underflow), so supports built from it are exact sets.
// ascending(t) = 1 - value(t) rises 0 -> 1 over the same window.
struct BumpProfile {
  double a = 0.25;
  double b = 1.0;

  double value(double t) const;
  double derivative(double t) const;
  double ascending(double t) const { return 1.0 - value(t); }
  double ascending_derivative(double t) const { return -derivative(t); }
};

}  // namespace plsmooth
