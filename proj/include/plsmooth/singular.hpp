#pragma once

#include <vector>

#include "plsmooth/geometry.hpp"

namespace plsmooth {

// Univariate real polynomial, coefficients in ascending degree.
struct Polynomial {
  std::vector<double> coeff;

  double operator()(double x) const;
  double derivative(double x) const;
};

// The surface Z = {g = 0} in R^3 with g(x, y1, y2) = f(x)^2 + y1^2 - y2^3.
// Z is the graph of y2 = cbrt(f(x)^2 + y1^2) over the (x, y1) plane, so Z is
// homeomorphic to R^2 while its singular locus is exactly where f, y1, y2
// all vanish.
struct SingularEmbedding {
  Polynomial f;

  double g(const Vec& p) const;       // p = (x, y1, y2)
  Vec grad_g(const Vec& p) const;     // (2 f f', 2 y1, -3 y2^2)
  Vec lift(double x, double y1) const;
  // pi(lift(x, y1)) = (x, y1), bitwise.
  static Vec project(const Vec& p);
};

struct SingularScan {
  int grid_points = 0;
  double max_rel_g = 0.0;            // |g| / max(1, |f^2 + y1^2|) on lifted grid
  std::vector<Vec> gradient_zeros;   // lifted points with ||grad g|| < tol
  bool zeros_match_locus = true;     // every zero has |f|, |y1|, |y2| < tol
  bool projection_exact = true;      // pi(lift) == (x, y1) bitwise on the grid
};

// Grid scan of [-extent, extent]^2 in the (x, y1) chart of Z.
SingularScan singular_locus_scan(const SingularEmbedding& E, int n, double extent,
                                 double grad_tol = 1e-8);

}  // namespace plsmooth
