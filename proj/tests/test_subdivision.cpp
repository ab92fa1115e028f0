#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plsmooth/fixtures.hpp"
#include "plsmooth/subdivision.hpp"
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

double triangle_area(const Complex& K, int s) {
  const auto& vs = K.simplex(s);
  Vec a = K.vertex(vs[0]), b = K.vertex(vs[1]), c = K.vertex(vs[2]);
  double cross = (b(0) - a(0)) * (c(1) - a(1)) - (b(1) - a(1)) * (c(0) - a(0));
  return 0.5 * std::abs(cross);
}

bool all_pass(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (r.status != Decision::Pass) return false;
  return !reports.empty();
}

bool has_fail(const std::vector<Report>& reports, const std::string& check) {
  for (const auto& r : reports)
    if (r.check == check && r.status == Decision::Fail) return true;
  return false;
}
}  // namespace

TEST_CASE("subdividing an edge inserts the midpoint") {
  Subdivision S = subdivide(fixtures::unit_edge());
  CHECK(S.child.num_vertices() == 3);
  CHECK(S.child.vertex(0)(0) == 0.0);
  CHECK(S.child.vertex(1)(0) == 1.0);
  CHECK(S.child.vertex(2)(0) == 0.5);
  CHECK(S.child.find({0, 2}).has_value());
  CHECK(S.child.find({1, 2}).has_value());
  CHECK_FALSE(S.child.find({0, 1}).has_value());
}

TEST_CASE("subdividing a triangle gives six triangles on seven vertices") {
  Complex K = fixtures::unit_triangle();
  Subdivision S = subdivide(K);
  CHECK(S.child.num_vertices() == 7);
  int tops = 0;
  double area = 0.0;
  for (int s = 0; s < S.child.num_simplices(); ++s)
    if (S.child.simplex_dim(s) == 2) {
      ++tops;
      area += triangle_area(S.child, s);
    }
  CHECK(tops == 6);
  CHECK(area == doctest::Approx(0.5).epsilon(1e-9));
  // original vertices kept with their ids
  for (int v = 0; v < 3; ++v) CHECK((S.child.vertex(v) - K.vertex(v)).norm() == 0.0);
}

TEST_CASE("mesh size shrinks by the dimension factor") {
  std::vector<Vec> pts = {v2(0, 0), v2(1, 0), v2(0.5, std::sqrt(3) / 2)};
  Complex K(pts, {{0, 1, 2}});
  double d0 = mesh_size(K);
  CHECK(d0 == doctest::Approx(1.0).epsilon(1e-12));
  Subdivision S = subdivide(K);
  CHECK(mesh_size(S.child) <= 2.0 / 3.0 * d0 + 1e-12);
}

TEST_CASE("subdividing modulo everything changes nothing") {
  Complex K = fixtures::square_diagonal();
  std::vector<int> all(K.num_simplices());
  for (int i = 0; i < K.num_simplices(); ++i) all[i] = i;
  Subdivision S = subdivide_mod(K, all);
  CHECK(S.child == K);
  for (int s = 0; s < K.num_simplices(); ++s) CHECK(S.carrier_of[s] == s);
}

TEST_CASE("subdividing modulo the empty set is the plain subdivision") {
  Complex K = fixtures::square_diagonal();
  Subdivision S0 = subdivide(K);
  Subdivision S1 = subdivide_mod(K, {});
  CHECK(S0.child == S1.child);
  CHECK(S0.carrier_of == S1.carrier_of);
}

TEST_CASE("edge subdivided modulo one endpoint") {
  // K = edge {a,b}; H = {a}. The edge still splits at its midpoint but the
  // fixed vertex keeps its star shape: child edges {0,2} and {1,2}.
  Complex K = fixtures::unit_edge();
  Subdivision S = subdivide_mod(K, {K.vertex_simplex_id(0)});
  CHECK(S.child.num_vertices() == 3);
  CHECK(S.child.vertex(2)(0) == 0.5);
  CHECK(S.child.find({0, 2}).has_value());
  CHECK(S.child.find({1, 2}).has_value());
  CHECK(S.fixed == std::vector<int>{K.vertex_simplex_id(0)});
}

TEST_CASE("relative subdivision keeps the subcomplex simplices verbatim") {
  Complex K = fixtures::square_diagonal();
  auto H = close_down(K, {*K.find({0, 1, 2})});
  Subdivision S = subdivide_mod(K, H);
  // fixed triangle survives with identical vertex ids
  CHECK(S.child.find({0, 1, 2}).has_value());
  // the other triangle got subdivided away
  CHECK_FALSE(S.child.find({0, 2, 3}).has_value());
  for (int v : {0, 1, 2, 3}) CHECK((S.child.vertex(v) - K.vertex(v)).norm() == 0.0);
}

TEST_CASE("iterated subdivision of an edge") {
  Complex K = fixtures::unit_edge();
  Subdivision S0 = subdivide_iter(K, {}, 0);
  CHECK(S0.child == K);
  CHECK(S0.levels == 0);

  Subdivision S2 = subdivide_iter(K, {}, 2);
  CHECK(S2.levels == 2);
  CHECK(S2.child.num_vertices() == 5);
  CHECK(mesh_size(S2.child) == doctest::Approx(0.25).epsilon(1e-12));
  // carriers land in the original edge or its endpoints
  for (int s = 0; s < S2.child.num_simplices(); ++s)
    CHECK(S2.carrier_of[s] < K.num_simplices());
}

TEST_CASE("H-retention across iterated relative subdivision") {
  Complex K = fixtures::square_diagonal();
  auto H = close_down(K, {*K.find({0, 1, 2})});
  for (int k = 1; k <= 3; ++k) {
    Subdivision S = subdivide_iter(K, H, k);
    CHECK(S.child.find({0, 1, 2}).has_value());
    auto relocated = relocate_subcomplex(S, H);
    CHECK(relocated.size() == H.size());
    for (std::size_t i = 0; i < H.size(); ++i)
      CHECK(S.child.simplex(relocated[i]) == K.simplex(H[i]));
  }
}

TEST_CASE("mesh shrinks globally when only a vertex is pinned") {
  Complex K = fixtures::square_diagonal();
  std::vector<int> H = {K.vertex_simplex_id(3)};
  double prev = mesh_size(K);
  for (int k = 1; k <= 5; ++k) {
    Subdivision S = subdivide_iter(K, H, k);
    double m = mesh_size(S.child, relocate_subcomplex(S, H));
    CHECK(m <= prev + 1e-12);
    prev = m;
  }
  CHECK(prev < 0.5);
}

TEST_CASE("refinement concentrates near the fixed subcomplex") {
  // cells touching |H| stay large but flatten onto it; cells clear of |H|
  // shrink, so only small simplices remain at a fixed distance from |H|
  Complex K = fixtures::square_diagonal();
  auto H = close_down(K, {*K.find({0, 1, 2})});
  double prev = 2.0;
  for (int k : {2, 4, 6}) {
    Subdivision S = subdivide_iter(K, H, k);
    auto relocated = relocate_subcomplex(S, H);
    double worst = 0.0;
    for (int s = 0; s < S.child.num_simplices(); ++s) {
      if (S.child.simplex_dim(s) != 2) continue;
      const auto& vs = S.child.simplex(s);
      double dist_to_H = 1e100;
      for (int v : vs)
        dist_to_H = std::min(dist_to_H,
                             distance_to_simplices(S.child, relocated, S.child.vertex(v)));
      if (dist_to_H < 0.3) continue;  // the collar around |H| is allowed to stay coarse
      double diam = 0.0;
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          diam = std::max(diam, (S.child.vertex(vs[i]) - S.child.vertex(vs[j])).norm());
      worst = std::max(worst, diam);
    }
    CHECK(worst <= prev + 1e-12);
    prev = worst;
  }
  CHECK(prev < 0.3);
}

TEST_CASE("induced subdivision collects the children of a subcomplex") {
  Complex K = fixtures::square_diagonal();
  auto H = close_down(K, {*K.find({0, 2, 3})});
  Subdivision S = subdivide(K);
  auto ind = induced_subdivision(S, H);
  CHECK(is_subcomplex(S.child, ind));
  // the child triangles over H total its area
  double area = 0.0;
  for (int s : ind)
    if (S.child.simplex_dim(s) == 2) area += triangle_area(S.child, s);
  CHECK(area == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("subdivision audit passes on fresh output") {
  Complex K = fixtures::square_diagonal();
  auto H = close_down(K, {*K.find({0, 1, 2})});
  CHECK(all_pass(audit(subdivide_mod(K, H))));
  CHECK(all_pass(audit(subdivide_iter(fixtures::bowtie(), {}, 2))));
}

TEST_CASE("audit catches a corrupted carrier table") {
  Subdivision S = subdivide(fixtures::unit_triangle());
  // point a barycenter's carrier at a disjoint parent vertex
  for (int s = 0; s < S.child.num_simplices(); ++s) {
    if (S.child.simplex_dim(s) == 2) {
      S.carrier_of[s] = S.parent.vertex_simplex_id(0);
      break;
    }
  }
  CHECK(has_fail(audit(S), "subdivision.carrier"));
}

TEST_CASE("audit catches a missing top simplex") {
  Subdivision S = subdivide(fixtures::unit_triangle());
  std::vector<int> keep;
  bool dropped = false;
  for (int s = 0; s < S.child.num_simplices(); ++s) {
    if (!dropped && S.child.simplex_dim(s) == 2) {
      dropped = true;
      continue;
    }
    keep.push_back(s);
  }
  SubcomplexExtract ex = extract_subcomplex(S.child, close_down(S.child, keep));
  std::vector<int> carriers(ex.complex.num_simplices());
  for (int s = 0; s < ex.complex.num_simplices(); ++s)
    carriers[s] = S.carrier_of[ex.simplex_map[s]];
  Subdivision broken{S.parent, ex.complex, carriers, {}, 1};
  auto reports = audit(broken);
  CHECK((has_fail(reports, "subdivision.volume") || has_fail(reports, "subdivision.polyhedron")));
}

TEST_CASE("audit catches a wrong fixed list") {
  Complex K = fixtures::square_diagonal();
  auto H = close_down(K, {*K.find({0, 1, 2})});
  Subdivision S = subdivide_mod(K, H);
  S.fixed.push_back(*K.find({0, 2, 3}));  // claim the subdivided triangle was fixed
  CHECK(has_fail(audit(S), "subdivision.retention"));
}

TEST_CASE("relative subdivision of a 1-complex leaves fixed edges alone") {
  Complex K = fixtures::path_bend();
  auto H = close_down(K, {*K.find({0, 1})});
  Subdivision S = subdivide_mod(K, H);
  CHECK(S.child.find({0, 1}).has_value());
  CHECK_FALSE(S.child.find({1, 2}).has_value());
  CHECK(S.child.num_vertices() == 4);  // one new midpoint only
  CHECK(all_pass(audit(S)));
}
