#include "plsmooth/singular.hpp"

#include <cmath>

namespace plsmooth {

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (std::size_t i = coeff.size(); i-- > 0;) v = v * x + coeff[i];
  return v;
}

double Polynomial::derivative(double x) const {
  double v = 0.0;
  for (std::size_t i = coeff.size(); i-- > 1;) v = v * x + coeff[i] * static_cast<double>(i);
  return v;
}

double SingularEmbedding::g(const Vec& p) const {
  double fv = f(p(0));
  return fv * fv + p(1) * p(1) - p(2) * p(2) * p(2);
}

Vec SingularEmbedding::grad_g(const Vec& p) const {
  Vec out(3);
  out(0) = 2.0 * f(p(0)) * f.derivative(p(0));
  out(1) = 2.0 * p(1);
  out(2) = -3.0 * p(2) * p(2);
  return out;
}

Vec SingularEmbedding::lift(double x, double y1) const {
  double fv = f(x);
  Vec p(3);
  p(0) = x;
  p(1) = y1;
  p(2) = std::cbrt(fv * fv + y1 * y1);
  return p;
}

Vec SingularEmbedding::project(const Vec& p) {
  Vec out(2);
  out(0) = p(0);
  out(1) = p(1);
  return out;
}

SingularScan singular_locus_scan(const SingularEmbedding& E, int n, double extent,
                                 double grad_tol) {
  if (n < 2) throw error("grid needs at least 2 points per axis");
  SingularScan scan;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double x = -extent + 2.0 * extent * i / (n - 1);
      double y1 = -extent + 2.0 * extent * j / (n - 1);
      Vec p = E.lift(x, y1);
      ++scan.grid_points;

      double base = std::abs(E.f(x) * E.f(x) + y1 * y1);
      scan.max_rel_g = std::max(scan.max_rel_g, std::abs(E.g(p)) / std::max(1.0, base));

      Vec pr = SingularEmbedding::project(p);
      if (pr(0) != x || pr(1) != y1) scan.projection_exact = false;

      if (E.grad_g(p).norm() < grad_tol) {
        scan.gradient_zeros.push_back(p);
        if (!(std::abs(E.f(x)) < grad_tol && std::abs(y1) < grad_tol &&
              std::abs(p(2)) < grad_tol))
          scan.zeros_match_locus = false;
      }
    }
  }
  return scan;
}

}  // namespace plsmooth
