#pragma once

#include <string>
#include <vector>

#include "plsmooth/complex.hpp"

namespace plsmooth {

// Diagnostic plots only, nothing downstream depends on them. Ambient
// dimensions 1 and 2 draw directly; dimension 3 gets a fixed oblique
// projection (x - 0.35 z, y - 0.35 z); dimension 4 is rejected.
struct SvgOptions {
  int width = 640;
  double margin = 20.0;
  std::string mesh_color = "#3366aa";
  std::string overlay_color = "#cc3322";
};

struct SvgCanvas {
  SvgOptions opts;
  double min_x = 0.0, min_y = 0.0, scale = 1.0;
  int height = 0;
  std::string body;
};

// Canvas sized to the complex plus any overlay points.
SvgCanvas svg_canvas(const Complex& K, const std::vector<std::vector<Vec>>& overlays = {},
                     SvgOptions opts = {});

void svg_add_complex(SvgCanvas& canvas, const Complex& K);
void svg_add_polyline(SvgCanvas& canvas, const std::vector<Vec>& points,
                      const std::string& color = "");

std::string svg_render(const SvgCanvas& canvas);
void write_svg(const std::string& path, const std::string& content);

// Mesh plus optional sampled-curve overlays, written to path.
void plot_complex(const std::string& path, const Complex& K,
                  const std::vector<std::vector<Vec>>& overlays = {}, SvgOptions opts = {});

}  // namespace plsmooth
