#pragma once

#include <vector>

#include "plsmooth/bump.hpp"
#include "plsmooth/geometry.hpp"

namespace plsmooth {

// Coordinate model of a normal crossings set: X = {x_1 * ... * x_r = 0} in
// R^d with a gauge eta_j per active coordinate.
struct NormalCrossingsModel {
  int d = 2;
  int r = 2;
  std::vector<double> eta;  // size r, all > 0

  NormalCrossingsModel() : eta{1.0, 1.0} {}
  NormalCrossingsModel(int d_, int r_, std::vector<double> eta_);
};

// Factor map: multiplies coordinate j by the ascending profile of
// (x_j / eta_j)^2. Exactly zero for |x_j| <= eta_j / 2, exactly the identity
// for |x_j| >= eta_j; all other coordinates pass through bitwise.
Vec nc_factor(const NormalCrossingsModel& M, int j, const Vec& x);

// Composition of all factor maps (ascending j). Smooth on R^d; maps the
// slab union {exists j: |x_j| < eta_j / 2} into X with an exactly zero
// coordinate, and fixes points with all |x_j| >= eta_j bitwise. The factors
// commute in this model (each reads and writes only its own coordinate).
Vec weak_retract(const NormalCrossingsModel& M, const Vec& x);

struct RetractionReport {
  int grid_points = 0;
  double max_displacement_on_X = 0.0;   // over grid points lying in X
  double max_active_product_W = 0.0;    // |prod of active coords| after retraction, W' points
  bool identity_outside = true;         // bitwise fixed where all |x_j| >= eta_j
  double commutativity_error = 0.0;     // max over factor pairs and grid points
};

// Uniform grid on [-extent, extent]^d, n points per axis (odd n puts grid
// points on X exactly).
RetractionReport retraction_report(const NormalCrossingsModel& M, int n, double extent);

}  // namespace plsmooth
