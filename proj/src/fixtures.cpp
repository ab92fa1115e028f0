#include "plsmooth/fixtures.hpp"

#include <cmath>

namespace plsmooth {
namespace fixtures {

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

Complex unit_edge() { return Complex({v1(0.0), v1(1.0)}, {{0, 1}}); }

Complex unit_edge_in_plane() { return Complex({v2(0, 0), v2(1, 0)}, {{0, 1}}); }

Complex interval_split() {
  return Complex({v1(-1.0), v1(0.0), v1(1.0)}, {{0, 1}, {1, 2}});
}

Complex path_bend() {
  return Complex({v2(0, 0), v2(1, 0), v2(1, 1)}, {{0, 1}, {1, 2}});
}

Complex unit_triangle() {
  return Complex({v2(0, 0), v2(1, 0), v2(0, 1)}, {{0, 1, 2}});
}

Complex square_diagonal() {
  return Complex({v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)}, {{0, 1, 2}, {0, 2, 3}});
}

Complex bowtie() {
  return Complex({v2(-1, -1), v2(-1, 1), v2(0, 0), v2(1, -1), v2(1, 1)},
                 {{0, 1, 2}, {2, 3, 4}});
}

Complex axes_cross() {
  return Complex({v2(0, 0), v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)},
                 {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

Complex tetrahedron() {
  return Complex({v3(0, 0, 0), v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}, {{0, 1, 2, 3}});
}

std::vector<Vec> polygon_loop(int n, double radius) {
  if (n < 3) throw error("polygon needs at least 3 vertices");
  std::vector<Vec> loop;
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < n; ++k) {
    double a = 2.0 * pi * k / n;
    loop.push_back(v2(radius * std::cos(a), radius * std::sin(a)));
  }
  loop[0] = v2(radius, 0.0);
  return loop;
}

Complex loop_complex(const std::vector<Vec>& loop) {
  int n = static_cast<int>(loop.size());
  std::vector<std::vector<int>> edges;
  for (int k = 0; k < n; ++k) edges.push_back({k, (k + 1) % n});
  return Complex(loop, edges);
}

}  // namespace fixtures
}  // namespace plsmooth
