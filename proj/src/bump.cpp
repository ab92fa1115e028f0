#include "plsmooth/bump.hpp"

namespace plsmooth {

namespace {

double glue(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
double glue_deriv(double u) { return u > 0.0 ? std::exp(-1.0 / u) / (u * u) : 0.0; }

}  // namespace

double BumpProfile::value(double t) const {
  if (t <= a) return 1.0;
  if (t >= b) return 0.0;
  double r = (t - a) / (b - a);
  double A = glue(1.0 - r);
  double B = glue(r);
  return A / (A + B);
}

double BumpProfile::derivative(double t) const {
  if (t <= a || t >= b) return 0.0;
  double rp = 1.0 / (b - a);
  double r = (t - a) * rp;
  double A = glue(1.0 - r), B = glue(r);
  double Ap = -glue_deriv(1.0 - r), Bp = glue_deriv(r);
  double q = A + B;
  return rp * (Ap * B - A * Bp) / (q * q);
}

}  // namespace plsmooth
