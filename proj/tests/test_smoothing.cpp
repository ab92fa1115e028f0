#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plsmooth/fixtures.hpp"
#include "plsmooth/smoothing.hpp"
#include "plsmooth/verify.hpp"

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

bool check_fails(const std::vector<Report>& reports, const std::string& check) {
  for (const auto& r : reports)
    if (r.check == check) return r.status == Decision::Fail;
  return false;
}
}  // namespace

TEST_CASE("bump profile branches are exact") {
  BumpProfile p;  // a = 0.25, b = 1
  CHECK(p.value(0.25) == 1.0);
  CHECK(p.value(0.0) == 1.0);
  CHECK(p.value(-3.0) == 1.0);
  CHECK(p.value(1.0) == 0.0);
  CHECK(p.value(5.0) == 0.0);
  CHECK(p.ascending(0.1) == 0.0);
  CHECK(p.ascending(1.5) == 1.0);

  // i = 1 sits so close to the flat join that the tail rounds away in double
  // (1 - 4e-18 is not representable), so strictness starts one step in
  double prev = 1.0;
  for (int i = 2; i <= 40; ++i) {
    double t = 0.25 + 0.75 * i / 41.0;
    double v = p.value(t);
    CHECK(v < prev);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    prev = v;
  }
}

TEST_CASE("bump profile is flat to all orders at the ends") {
  BumpProfile p;
  // one-sided finite differences shrink faster than any power at the joins
  for (double h : {1e-2, 1e-3, 1e-4}) {
    CHECK(std::abs(p.value(0.25 + h) - 1.0) / h < 1e-8 / h);  // super-linear decay
    CHECK(std::abs(p.value(1.0 - h)) / h < 1e-8 / h);
  }
  CHECK(p.derivative(0.25) == 0.0);
  CHECK(p.derivative(1.0) == 0.0);
  CHECK(p.derivative(0.2) == 0.0);
  CHECK(p.derivative(1.1) == 0.0);
}

TEST_CASE("bump derivative matches finite differences in the window") {
  BumpProfile p;
  for (double t : {0.4, 0.5, 0.625, 0.8, 0.95}) {
    double h = 1e-6;
    double fd = (p.value(t + h) - p.value(t - h)) / (2 * h);
    CHECK(p.derivative(t) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(p.derivative(t) < 0.0);
  }
  CHECK(p.ascending_derivative(0.5) == -p.derivative(0.5));
}

TEST_CASE("partition of unity sums to one") {
  Complex K = fixtures::path_bend();
  auto C = std::make_shared<Covering>(build_covering(K, 0.3, 800, 0));
  PartitionOfUnity P = partition_of_unity(C);

  SampleSet S = sample_polyhedron(K, 300, 1);
  for (const Vec& x : S.points) {
    auto w = P.weights(x);
    REQUIRE_FALSE(w.empty());
    double sum = 0.0;
    for (auto& [s, th] : w) {
      CHECK(th >= 0.0);
      sum += th;
    }
    CHECK(std::abs(sum - 1.0) <= tol::partition_sum);
  }
}

TEST_CASE("bump support equals the open piece exactly") {
  Complex K = fixtures::unit_triangle();
  auto C = std::make_shared<Covering>(build_covering(K, 0.3, 800, 0));
  PartitionOfUnity P = partition_of_unity(C);
  SampleSet S = sample_polyhedron(K, 400, 2);
  for (const Vec& x : S.points)
    for (int s = 0; s < K.num_simplices(); ++s) {
      double r = P.raw(s, x);
      if (C->member(s, x, 0.999))
        CHECK(r > 0.0);  // clear of the shell where the profile tail underflows
      else if (!C->member(s, x))
        CHECK(r == 0.0);  // branch cutoff, not underflow
    }
}

TEST_CASE("partition gradient matches finite differences") {
  Complex K = fixtures::unit_triangle();
  auto C = std::make_shared<Covering>(build_covering(K, 0.3, 800, 0));
  PartitionOfUnity P = partition_of_unity(C);
  int t = *K.find({0, 1, 2});
  Vec x = v2(0.3, 0.3);
  Vec g = P.theta_gradient(t, x);
  for (int i = 0; i < 2; ++i) {
    Vec e = Vec::Zero(2);
    e(i) = 1e-5;
    double fd = (P.theta(t, x + e) - P.theta(t, x - e)) / 2e-5;
    CHECK(g(i) == doctest::Approx(fd).epsilon(1e-3));
  }
}

TEST_CASE("partition total throws off the polyhedron") {
  Complex K = fixtures::unit_edge();
  auto C = std::make_shared<Covering>(build_covering(K, 0.2, 500, 0));
  PartitionOfUnity P = partition_of_unity(C);
  CHECK_THROWS_AS(P.total(v1(5.0)), error);
}

TEST_CASE("smoothing a constant map reproduces the constant") {
  Complex K = fixtures::unit_edge();
  auto C = std::make_shared<Covering>(build_covering(K, 0.2, 500, 0));
  Vec c = v1(0.5);
  CertifiedMap g{{[c](const Vec&) { return c; }, "const"},
                 K,
                 std::vector<int>(K.num_simplices(), *K.find({0, 1}))};
  SmoothMap h = synthesize(g, C, [](const Vec&) { return 0.1; }, 2000, 0);
  REQUIRE(h.status == Decision::Pass);
  CHECK(h.measured_sup <= 1e-12);
  for (double t : {0.0, 0.1, 0.5, 0.77, 1.0})
    CHECK((h.eval(v1(t)) - c).norm() <= 1e-12);
}

TEST_CASE("smoothing the identity stays within delta") {
  Complex K = fixtures::unit_edge();
  auto C = std::make_shared<Covering>(build_covering(K, 0.05, 500, 0));
  SmoothMap h = synthesize(certified_identity(K), C, [](const Vec&) { return 0.1; },
                           3000, 0);
  REQUIRE(h.status == Decision::Pass);
  CHECK(h.measured_sup < 0.1);
  CHECK(h.delta_min == 0.1);
}

TEST_CASE("identity smoother fixes vertices bit-exactly") {
  for (const Complex& K : {fixtures::path_bend(), fixtures::square_diagonal()}) {
    SmoothMap h = identity_smoother(K, 0.1, 800, 0);
    REQUIRE(h.status == Decision::Pass);
    CHECK(h.measured_sup < 0.1);
    for (int v = 0; v < K.num_vertices(); ++v)
      CHECK((h.eval(K.vertex(v)) - K.vertex(v)).norm() == 0.0);
  }
}

TEST_CASE("identity smoother displacement shrinks with eps") {
  Complex K = fixtures::path_bend();
  SmoothMap h1 = identity_smoother(K, 0.1, 600, 0);
  SmoothMap h2 = identity_smoother(K, 0.01, 600, 0);
  CHECK(h1.measured_sup < 0.1);
  CHECK(h2.measured_sup < 0.01);
}

TEST_CASE("decomposition recombines to the value") {
  Complex K = fixtures::square_diagonal();
  SmoothMap h = identity_smoother(K, 0.1, 800, 0);
  SampleSet S = sample_polyhedron(K, 200, 3);
  for (const Vec& x : S.points) {
    auto dec = h.decomposition(x);
    REQUIRE_FALSE(dec.empty());
    Vec sum = Vec::Zero(K.ambient_dim());
    double wsum = 0.0;
    for (auto& [s, w, y] : dec) {
      CHECK(w >= 0.0);
      sum += w * y;
      wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) <= tol::partition_sum);
    CHECK((sum - h.eval(x)).norm() <= 1e-10);
  }
}

TEST_CASE("smoothed map audit passes and is fault-sensitive") {
  Complex K = fixtures::square_diagonal();
  SmoothMap h = identity_smoother(K, 0.1, 800, 0);
  for (const Report& r : audit(h, 500, 0)) {
    CAPTURE(r.check);
    CHECK(r.status == Decision::Pass);
  }

  SUBCASE("corrupted certificate table") {
    SmoothMap bad = h;
    bad.g.xi.assign(bad.g.xi.size(), K.vertex_simplex_id(3));
    auto reports = audit(bad, 500, 0);
    CHECK((check_fails(reports, "smoothing.carrier") ||
           check_fails(reports, "smoothing.convex")));
  }

  SUBCASE("broken covering behind the partition") {
    SmoothMap bad = h;
    auto C2 = std::make_shared<Covering>(*bad.covering);
    C2->pieces[K.vertex_simplex_id(0)].eta_prime /= 50.0;
    for (auto& p : C2->pieces) p.epsilon = std::min(0.99, p.epsilon * 8.0);
    bad.covering = C2;
    bad.partition.covering = C2;
    CHECK(check_fails(audit(bad, 800, 0), "smoothing.partition"));
  }
}

TEST_CASE("smoother sequence errors halve") {
  Complex K = fixtures::path_bend();
  auto seq = smoother_sequence(K, 4, 500, 0);
  REQUIRE(seq.size() == 5);
  double prev = 1.0;
  for (int n = 0; n < 5; ++n) {
    CHECK(seq[n].status == Decision::Pass);
    CHECK(seq[n].measured_sup < std::pow(2.0, -n));
    CHECK(seq[n].measured_sup <= prev + 1e-15);
    prev = seq[n].measured_sup;
  }
}

TEST_CASE("composition with a continuous map converges along the sequence") {
  Complex K = fixtures::unit_edge();
  auto seq = smoother_sequence(K, 4, 500, 0);
  auto f = [](const Vec& x) { return v1(std::sin(3.0 * x(0))); };
  double prev = 1e9;
  for (const SmoothMap& h : seq) {
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      Vec x = v1(i / 400.0);
      worst = std::max(worst, (f(h.eval(x)) - f(x)).norm());
    }
    CHECK(worst <= 3.0 * h.measured_sup + 1e-12);  // |sin'(3t)*3| <= 3
    CHECK(worst <= prev + 1e-12);
    prev = worst;
  }
}

TEST_CASE("pipeline approximates the axes bend") {
  Complex K = fixtures::interval_split();
  Complex L = fixtures::axes_cross();
  std::vector<int> all(K.num_simplices());
  for (int i = 0; i < K.num_simplices(); ++i) all[i] = i;

  PipelineOptions opts;
  opts.staged.zeeman.star_density = 150;
  opts.staged.zeeman.sup_samples = 3000;
  opts.covering_density = 600;
  opts.sup_samples = 3000;
  PipelineResult r = approximate(example_axes_bend(), K, {all},
                                 identity_triangulation(L),
                                 [](const Vec&) { return 0.05; }, opts);
  REQUIRE(r.status == Decision::Pass);
  CHECK(r.measured_sup < 0.05);
  REQUIRE(r.budgets.size() == 1);
  CHECK(r.budgets[0].budget == doctest::Approx(std::min(r.budgets[0].mu / 4.0,
                                                        r.budgets[0].delta / 2.0)));

  // image lies in the target polyhedron
  for (int i = 0; i <= 200; ++i) {
    Vec y = r.composed(v1(-1.0 + 2.0 * i / 200.0));
    CHECK(L.distance_to(y) <= 1e-9);
  }
}

TEST_CASE("synthesize flags an unmeetable delta") {
  // identity certified against a covering so coarse the displacement cannot
  // stay under the requested pointwise bound
  Complex K = fixtures::unit_edge();
  auto C = std::make_shared<Covering>(build_covering(K, 0.45, 500, 0));
  SmoothMap h = synthesize(certified_identity(K), C, [](const Vec&) { return 1e-6; },
                           2000, 0);
  CHECK(h.status == Decision::Fail);
  CHECK(h.measured_sup > 1e-6);
  CHECK(check_fails(audit(h, 500, 0), "smoothing.delta"));  // verdict is echoed
}
