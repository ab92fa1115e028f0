#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plsmooth/graph_embed.hpp"
#include "plsmooth/normal_crossings.hpp"
#include "plsmooth/singular.hpp"

#include <cmath>

using namespace plsmooth;

namespace {
Vec v1(double x) {
  Vec v(1);
  v << x;
  return v;
}
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}
}  // namespace

TEST_CASE("weak retraction values on the plane model") {
  NormalCrossingsModel M;  // d = 2, r = 2, eta = (1, 1)
  // both coordinates inside the dead zone: lands on the crossing point
  CHECK((weak_retract(M, v2(0.1, 0.3)) - v2(0, 0)).norm() == 0.0);
  CHECK((weak_retract(M, v2(-0.45, 0.2)) - v2(0, 0)).norm() == 0.0);
  // far away: bitwise identity
  Vec far = v2(2.0, 3.0);
  Vec rf = weak_retract(M, far);
  CHECK(rf(0) == far(0));
  CHECK(rf(1) == far(1));
  // points of X are moved along X only (zero coordinate stays zero)
  Vec on_axis = weak_retract(M, v2(0.0, 0.8));
  CHECK(on_axis(0) == 0.0);
  CHECK((weak_retract(M, v2(0, 0)) - v2(0, 0)).norm() == 0.0);
}

TEST_CASE("retraction interpolates inside the collar") {
  NormalCrossingsModel M;
  // |x| between eta/2 and eta: coordinate scales by ascending((x/eta)^2)
  Vec x = v2(0.8, 2.0);
  Vec y = weak_retract(M, x);
  CHECK(y(1) == 2.0);
  CHECK(y(0) > 0.0);
  CHECK(y(0) < 0.8);
  BumpProfile p;
  CHECK(y(0) == 0.8 * p.ascending(0.8 * 0.8));
}

TEST_CASE("retraction scales with the gauge") {
  NormalCrossingsModel fine(2, 2, {0.1, 0.1});
  // displacement can never exceed the coordinate it kills
  double worst = 0.0;
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j) {
      Vec x = v2(i / 10.0, j / 10.0);
      worst = std::max(worst, (weak_retract(fine, x) - x).norm());
    }
  CHECK(worst <= std::sqrt(2.0) * 0.1 + 1e-15);
}

TEST_CASE("factor maps commute and touch only their coordinate") {
  NormalCrossingsModel M(3, 2, {1.0, 0.5});
  Vec x = v3(0.7, 0.3, -2.5);
  Vec a = nc_factor(M, 0, nc_factor(M, 1, x));
  Vec b = nc_factor(M, 1, nc_factor(M, 0, x));
  CHECK((a - b).norm() == 0.0);
  // the inactive third coordinate passes through bitwise
  CHECK(a(2) == x(2));
  CHECK(nc_factor(M, 0, x)(1) == x(1));
}

TEST_CASE("three dimensional model with one active coordinate") {
  NormalCrossingsModel M(3, 1, {1.0});
  Vec x = v3(0.2, 5.0, -7.0);
  Vec y = weak_retract(M, x);
  CHECK(y(0) == 0.0);
  CHECK(y(1) == 5.0);
  CHECK(y(2) == -7.0);
}

TEST_CASE("retraction report on a fine grid") {
  NormalCrossingsModel M;
  RetractionReport r = retraction_report(M, 101, 2.0);
  CHECK(r.grid_points == 101 * 101);
  CHECK(r.max_active_product_W == 0.0);
  CHECK(r.identity_outside);
  CHECK(r.max_displacement_on_X <= 1.0 + 1e-15);
  CHECK(r.commutativity_error <= 1e-15);
}

TEST_CASE("retraction is smooth across both thresholds") {
  NormalCrossingsModel M;
  BumpProfile p;
  auto comp0 = [&](double t) { return weak_retract(M, v2(t, 2.0))(0); };
  // central differences of the first coordinate map near eta/2 and eta
  for (double c : {0.5, 1.0}) {
    double h = 1e-5;
    double d1 = (comp0(c + h) - comp0(c - h)) / (2 * h);
    double d2in = (comp0(c - h) - comp0(c - 3 * h)) / (2 * h);
    double d2out = (comp0(c + 3 * h) - comp0(c + h)) / (2 * h);
    CHECK(std::abs(d2out - d1) < 1e-3);
    CHECK(std::abs(d1 - d2in) < 1e-3);
  }
}

TEST_CASE("model construction validates its inputs") {
  CHECK_THROWS_AS(NormalCrossingsModel(2, 3, {1, 1, 1}), error);  // r > d
  CHECK_THROWS_AS(NormalCrossingsModel(2, 2, {1}), error);        // gauge size
  CHECK_THROWS_AS(NormalCrossingsModel(2, 2, {1, 0}), error);     // gauge > 0
}

TEST_CASE("polynomial evaluation and derivative") {
  Polynomial p{{1, 2, 3}};  // 1 + 2x + 3x^2
  CHECK(p(2.0) == 17.0);
  CHECK(p.derivative(2.0) == 14.0);
  CHECK(p(0.0) == 1.0);
  Polynomial zero{{}};
  CHECK(zero(3.0) == 0.0);
  CHECK(zero.derivative(3.0) == 0.0);
}

TEST_CASE("singular surface lift and gradient") {
  SingularEmbedding E{Polynomial{{0, 1}}};  // f(x) = x
  CHECK((E.lift(0, 0) - v3(0, 0, 0)).norm() == 0.0);
  Vec p = E.lift(1, 0);  // x = 1: y2 = cbrt(1) = 1
  CHECK(p(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(E.g(p)) <= 1e-15);

  Vec q = E.lift(0, 2);  // y2 = cbrt(4)
  CHECK(q(2) == doctest::Approx(std::cbrt(4.0)).epsilon(1e-15));
  CHECK(q(2) * q(2) * q(2) == doctest::Approx(4.0).epsilon(1e-14));

  Vec gr = E.grad_g(v3(1, 2, 3));
  CHECK(gr(0) == 2.0);   // 2 f f' = 2 * 1 * 1
  CHECK(gr(1) == 4.0);   // 2 y1
  CHECK(gr(2) == -27.0); // -3 y2^2
}

TEST_CASE("projection undoes the lift bitwise") {
  SingularEmbedding E{Polynomial{{0, 1}}};
  for (double x : {-1.3, 0.0, 0.7, 2.0})
    for (double y1 : {-0.4, 0.0, 1.1}) {
      Vec p = E.lift(x, y1);
      Vec back = SingularEmbedding::project(p);
      CHECK(back(0) == x);
      CHECK(back(1) == y1);
    }
}

TEST_CASE("scan finds the singular point of f equal to x") {
  SingularEmbedding E{Polynomial{{0, 1}}};
  SingularScan s = singular_locus_scan(E, 101, 2.0, 1e-8);
  CHECK(s.grid_points == 101 * 101);
  CHECK(s.max_rel_g <= 1e-12);
  CHECK(s.projection_exact);
  REQUIRE(s.gradient_zeros.size() == 1);
  CHECK(s.gradient_zeros[0].norm() == 0.0);  // exactly the origin
  CHECK(s.zeros_match_locus);
}

TEST_CASE("scan of a nonvanishing polynomial finds nothing") {
  SingularEmbedding E{Polynomial{{1, 0, 1}}};  // x^2 + 1 > 0
  SingularScan s = singular_locus_scan(E, 51, 2.0, 1e-8);
  CHECK(s.gradient_zeros.empty());
  CHECK(s.zeros_match_locus);
  CHECK(s.max_rel_g <= 1e-12);
}

TEST_CASE("scan of a double root flags the whole fiber") {
  // f = x^2: f and f' vanish together at 0, so the gradient zero set on the
  // grid is again only the origin fiber point
  SingularEmbedding E{Polynomial{{0, 0, 1}}};
  SingularScan s = singular_locus_scan(E, 41, 1.0, 1e-8);
  REQUIRE_FALSE(s.gradient_zeros.empty());
  CHECK(s.zeros_match_locus);
  for (const Vec& z : s.gradient_zeros) CHECK(std::abs(z(0)) < 1e-6);
}

TEST_CASE("open interval graph embedding escapes every compact set") {
  GraphEmbedding emb = graph_embed([](const Vec& x) { return x(0) * (1.0 - x(0)); });
  CHECK(emb.forward(v1(1e-7))(1) > 1e6);
  Vec y = emb.forward(v1(0.25));
  CHECK(y(1) == doctest::Approx(1.0 / (0.25 * 0.75)).epsilon(1e-12));
  CHECK(emb.inverse(y)(0) == 0.25);
}
