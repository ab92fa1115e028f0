#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plsmooth/fixtures.hpp"
#include "plsmooth/io.hpp"
#include "plsmooth/shrink_widen.hpp"
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

bool all_pass(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (r.status != Decision::Pass) return false;
  return !reports.empty();
}

bool check_fails(const std::vector<Report>& reports, const std::string& check) {
  for (const auto& r : reports)
    if (r.check == check) return r.status == Decision::Fail;
  return false;
}
}  // namespace

TEST_CASE("shrinking an edge at ratio one half") {
  Complex K = fixtures::unit_edge();
  int e = *K.find({0, 1});
  Shrinking sh = shrink(K, e, 0.5);
  // barycenter 0.5, homothety 1 - eps = 0.5: endpoints move to 0.25, 0.75
  CHECK(sh.vertices(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(sh.vertices(0, 1) == doctest::Approx(0.75).epsilon(1e-15));

  CHECK(in_shrunk_core(K, e, 0.5, v1(0.5)));
  CHECK(in_shrunk_core(K, e, 0.5, v1(0.26)));
  CHECK_FALSE(in_shrunk_core(K, e, 0.5, v1(0.25)));  // boundary excluded
  CHECK_FALSE(in_shrunk_core(K, e, 0.5, v1(0.1)));
  // margin tightens the threshold
  CHECK_FALSE(in_shrunk_core(K, e, 0.5, v1(0.2500000001), 1e-6));
}

TEST_CASE("shrunk cores nest as epsilon grows") {
  Complex K = fixtures::unit_triangle();
  int t = *K.find({0, 1, 2});
  SampleSet S = sample_simplices(K, {t}, 200, 4);
  for (const Vec& x : S.points) {
    if (in_shrunk_core(K, t, 0.5, x)) CHECK(in_shrunk_core(K, t, 0.25, x));
    if (in_shrunk_core(K, t, 0.25, x)) CHECK(in_shrunk_core(K, t, 0.05, x));
  }
}

TEST_CASE("shrink displacement is linear in epsilon") {
  Complex K = fixtures::unit_triangle();
  int t = *K.find({0, 1, 2});
  Vec b = K.barycenter(t);
  for (double eps : {0.1, 0.2, 0.4}) {
    Shrinking sh = shrink(K, t, eps);
    for (int j = 0; j < 3; ++j) {
      const auto& vs = K.simplex(t);
      Vec moved = sh.vertices.col(j);
      Vec expect = b + (1.0 - eps) * (K.vertex(vs[j]) - b);
      CHECK((moved - expect).norm() <= 1e-15);
    }
  }
}

TEST_CASE("tubular projection over an edge") {
  Complex K = fixtures::unit_edge_in_plane();
  int e = *K.find({0, 1});
  auto foot = tubular_project(K, e, v2(0.5, 0.3));
  REQUIRE(foot.has_value());
  CHECK((foot->foot - v2(0.5, 0.0)).norm() <= 1e-15);
  CHECK(foot->dist == doctest::Approx(0.3).epsilon(1e-15));

  // foot outside the open simplex: rejected
  CHECK_FALSE(tubular_project(K, e, v2(-0.1, 0.05)).has_value());
  CHECK_FALSE(tubular_project(K, e, v2(1.0, 0.05)).has_value());  // foot at a vertex
}

TEST_CASE("widened membership is strict at the tube radius") {
  Complex K = fixtures::unit_edge_in_plane();
  Widening w{*K.find({0, 1}), 0.2, 0.25};
  CHECK(membership_widened(K, w, v2(0.5, 0.2)));
  CHECK_FALSE(membership_widened(K, w, v2(0.5, 0.25)));  // dist == eta excluded
  CHECK_FALSE(membership_widened(K, w, v2(0.05, 0.0)));  // foot outside the core
  CHECK(membership_widened(K, w, v2(0.5, 0.0)));
}

TEST_CASE("covering a single edge complex") {
  Complex K = fixtures::unit_edge();
  Covering C = build_covering(K, 0.3, 500, 0);
  REQUIRE(C.pieces.size() == 3);
  CHECK(all_pass(audit(C, 1000, 0)));

  // vertex piece contains and retracts to its vertex
  int s0 = K.vertex_simplex_id(0);
  CHECK(C.member(s0, v1(C.pieces[s0].eta_prime * 0.5)));
  CHECK((C.retract(s0, v1(0.01)) - K.vertex(0)).norm() == 0.0);

  // edge piece retracts along the hull (identity in ambient dim 1)
  int e = *K.find({0, 1});
  CHECK(C.member(e, v1(0.5)));
  CHECK((C.retract(e, v1(0.5)) - v1(0.5)).norm() == 0.0);
}

TEST_CASE("covering audits pass on the standard fixtures") {
  for (const Complex& K :
       {fixtures::unit_triangle(), fixtures::bowtie(), fixtures::path_bend()}) {
    Covering C = build_covering(K, 0.3, 800, 1);
    auto reports = audit(C, 1000, 1);
    for (const Report& r : reports) {
      CAPTURE(r.check);
      CHECK(r.status == Decision::Pass);
    }
  }
}

TEST_CASE("every point has all active pieces sharing a simplex") {
  Complex K = fixtures::bowtie();
  Covering C = build_covering(K, 0.25, 800, 2);
  SampleSet S = sample_polyhedron(K, 400, 7);
  for (const Vec& x : S.points) {
    auto act = C.active(x);
    CHECK_FALSE(act.empty());
    CHECK(act.size() <= 3);  // dim + 1
  }
}

TEST_CASE("coverage audit fails when a vertex ball is punctured") {
  Complex K = fixtures::unit_triangle();
  Covering C = build_covering(K, 0.3, 800, 0);
  C.pieces[K.vertex_simplex_id(0)].eta_prime /= 100.0;
  CHECK(check_fails(audit(C, 2000, 0), "covering.coverage"));
}

TEST_CASE("comparability audit fails when a tube swallows a disjoint simplex") {
  Complex K = fixtures::bowtie();
  Covering C = build_covering(K, 0.25, 800, 0);
  int e = *K.find({0, 1});  // far left edge, disjoint from the right wing
  C.pieces[e].eta_prime *= 100.0;
  auto reports = audit(C, 1000, 0);
  CHECK((check_fails(reports, "covering.disjoint") ||
         check_fails(reports, "covering.local_finite")));
}

TEST_CASE("displacement audit fails against a halved budget") {
  Complex K = fixtures::unit_triangle();
  Covering C = build_covering(K, 0.3, 800, 0);
  for (double& e : C.eta) e /= 2.0;
  CHECK(check_fails(audit(C, 1000, 0), "covering.displacement"));
}

TEST_CASE("residual audit fails when a core shrinks to nearly nothing") {
  Complex K = fixtures::unit_triangle();
  Covering C = build_covering(K, 0.3, 800, 0);
  C.pieces[*K.find({0, 1, 2})].epsilon = 0.99;
  CHECK(check_fails(audit(C, 2000, 0), "covering.residual"));
}

TEST_CASE("a tube piece that claims to be a ball loses its tube coverage") {
  Complex K = fixtures::unit_triangle();
  Covering C = build_covering(K, 0.3, 800, 0);
  CoveringPiece& p = C.pieces[*K.find({0, 1})];
  REQUIRE_FALSE(p.base_case);
  p.base_case = true;  // membership shrinks to a ball at one endpoint
  auto reports = audit(C, 1000, 0);
  CHECK(check_fails(reports, "covering.coverage"));
}

TEST_CASE("covering construction rejects meaningless budgets") {
  Complex K = fixtures::unit_triangle();
  CHECK_THROWS_AS(build_covering(K, 0.0, 200, 0), error);
}

TEST_CASE("covering round trips through JSON bit-exactly") {
  Complex K = fixtures::bowtie();
  Covering C = build_covering(K, 0.25, 500, 3);
  json j = to_json(C);
  Covering D = covering_from_json(j);
  REQUIRE(D.pieces.size() == C.pieces.size());
  for (std::size_t i = 0; i < C.pieces.size(); ++i) {
    CHECK(D.pieces[i].epsilon == C.pieces[i].epsilon);
    CHECK(D.pieces[i].eta_prime == C.pieces[i].eta_prime);
    CHECK(D.pieces[i].base_case == C.pieces[i].base_case);
  }
  SampleSet S = sample_polyhedron(K, 200, 5);
  for (const Vec& x : S.points)
    for (int s = 0; s < K.num_simplices(); ++s) {
      CHECK(C.member(s, x) == D.member(s, x));
      if (C.member(s, x)) CHECK((C.retract(s, x) - D.retract(s, x)).norm() == 0.0);
    }
}

TEST_CASE("per-simplex budgets are respected") {
  Complex K = fixtures::unit_triangle();
  auto eta = [&K](int s) { return K.simplex_dim(s) == 0 ? 0.1 : 0.35; };
  Covering C = build_covering(K, eta, 500, 0);
  for (int s = 0; s < K.num_simplices(); ++s) {
    CHECK(C.eta[s] == eta(s));
    CHECK(C.pieces[s].eta_prime < C.eta[s]);
    CHECK(C.pieces[s].eta_prime > 0.0);
  }
}

TEST_CASE("family shrinking separates neighborhoods of separated targets") {
  // two target segments on the x-axis with overlapping band neighborhoods
  std::vector<std::function<bool(const Vec&)>> nbhd = {
      [](const Vec& x) { return x(0) > -1.5 && x(0) < 0.75 && std::abs(x(1)) < 1.0; },
      [](const Vec& x) { return x(0) > -0.75 && x(0) < 1.5 && std::abs(x(1)) < 1.0; },
  };
  std::vector<std::vector<Vec>> targets(2);
  for (int i = 0; i <= 20; ++i) {
    targets[0].push_back(v2(-1.0 + 0.5 * i / 20.0, 0.0));
    targets[1].push_back(v2(0.5 + 0.5 * i / 20.0, 0.0));
  }
  ShrunkFamily F = shrink_family(nbhd, targets);
  REQUIRE(F.member.size() == 2);
  // targets still inside their own shrunk neighborhoods
  for (const Vec& t : targets[0]) CHECK(F.member[0](t));
  for (const Vec& t : targets[1]) CHECK(F.member[1](t));
  // the point between them is claimed by at most one
  Vec mid = v2(0.0, 0.0);
  CHECK_FALSE((F.member[0](mid) && F.member[1](mid)));
  // far corner of the original band is cut away
  CHECK_FALSE(F.member[0](v2(0.7, 0.9)));
}

TEST_CASE("family shrinking rejects targets outside their neighborhood") {
  std::vector<std::function<bool(const Vec&)>> nbhd = {
      [](const Vec& x) { return x.norm() < 1.0; }};
  std::vector<std::vector<Vec>> targets = {{v2(2.0, 0.0)}};
  CHECK_THROWS_AS(shrink_family(nbhd, targets), error);
}
