#pragma once

#include "plsmooth/complex.hpp"

namespace plsmooth {
namespace fixtures {

// Small builtin complexes used by the CLI defaults and the test suites.

Complex unit_edge();          // single segment [0,1] in R^1
Complex unit_edge_in_plane();  // same segment embedded along the x-axis of R^2
Complex interval_split();     // [-1,1] in R^1 with a vertex at 0
Complex path_bend();         // (0,0)-(1,0)-(1,1), two edges meeting at a right angle
Complex unit_triangle();     // full 2-simplex (0,0),(1,0),(0,1)
Complex square_diagonal();   // [0,1]^2 split into two triangles by a diagonal
Complex bowtie();            // two triangles sharing exactly one vertex
Complex axes_cross();        // {x y = 0} inside [-1,1]^2: four edges from the origin
Complex tetrahedron();       // full 3-simplex in R^3

// Counterclockwise regular n-gon of the given radius, first vertex at
// (radius, 0). Returned as the cyclic vertex list.
std::vector<Vec> polygon_loop(int n, double radius = 1.0);

// Closed polygon boundary as a 1-complex (vertex ids follow the loop order).
Complex loop_complex(const std::vector<Vec>& loop);

}  // namespace fixtures
}  // namespace plsmooth
