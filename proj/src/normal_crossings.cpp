#include "plsmooth/normal_crossings.hpp"

#include <cmath>

namespace plsmooth {

NormalCrossingsModel::NormalCrossingsModel(int d_, int r_, std::vector<double> eta_)
    : d(d_), r(r_), eta(std::move(eta_)) {
  if (d < 1 || r < 1 || r > d) throw error("need 1 <= r <= d");
  if (static_cast<int>(eta.size()) != r) throw error("one gauge per active coordinate");
  for (double e : eta)
    if (!(e > 0.0)) throw error("gauges must be positive");
}

Vec nc_factor(const NormalCrossingsModel& M, int j, const Vec& x) {
  if (j < 0 || j >= M.r) throw error("factor index out of range");
  BumpProfile profile;
  Vec out = x;
  double t = (x(j) * x(j)) / (M.eta[j] * M.eta[j]);
  double f = profile.ascending(t);
  out(j) = f == 1.0 ? x(j) : x(j) * f;  // keep the identity region bitwise
  return out;
}

Vec weak_retract(const NormalCrossingsModel& M, const Vec& x) {
  if (x.size() != M.d) throw error("point dimension mismatch");
  Vec out = x;
  for (int j = 0; j < M.r; ++j) out = nc_factor(M, j, out);
  return out;
}

RetractionReport retraction_report(const NormalCrossingsModel& M, int n, double extent) {
  if (n < 2) throw error("grid needs at least 2 points per axis");
  RetractionReport rep;
  std::vector<int> idx(M.d, 0);
  Vec x(M.d);
  bool done = false;
  while (!done) {
    for (int k = 0; k < M.d; ++k)
      x(k) = -extent + 2.0 * extent * static_cast<double>(idx[k]) / (n - 1);
    ++rep.grid_points;

    Vec y = weak_retract(M, x);

    double prod = 1.0;
    for (int j = 0; j < M.r; ++j) prod *= x(j);
    if (prod == 0.0)
      rep.max_displacement_on_X = std::max(rep.max_displacement_on_X, (y - x).norm());

    bool in_W = false;
    bool outside = true;
    for (int j = 0; j < M.r; ++j) {
      if (std::abs(x(j)) < M.eta[j] / 2.0) in_W = true;
      if (std::abs(x(j)) < M.eta[j]) outside = false;
    }
    if (in_W) {
      double p = 1.0;
      for (int j = 0; j < M.r; ++j) p *= y(j);
      rep.max_active_product_W = std::max(rep.max_active_product_W, std::abs(p));
    }
    if (outside && (y.array() != x.array()).any()) rep.identity_outside = false;

    for (int i = 0; i < M.r; ++i)
      for (int j = i + 1; j < M.r; ++j) {
        Vec a = nc_factor(M, j, nc_factor(M, i, x));
        Vec b = nc_factor(M, i, nc_factor(M, j, x));
        rep.commutativity_error = std::max(rep.commutativity_error, (a - b).norm());
      }

    int k = 0;
    while (k < M.d && ++idx[k] == n) idx[k++] = 0;
    done = (k == M.d);
  }
  return rep;
}

}  // namespace plsmooth
