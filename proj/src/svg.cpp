#include "plsmooth/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace plsmooth {

namespace {

// Project to drawing coordinates (before canvas scaling).
std::pair<double, double> plane(const Vec& x) {
  double px = x(0);
  double py = x.size() >= 2 ? x(1) : 0.0;
  if (x.size() >= 3) {
    px -= 0.35 * x(2);
    py -= 0.35 * x(2);
  }
  return {px, py};
}

std::pair<double, double> to_canvas(const SvgCanvas& c, const Vec& x) {
  auto [px, py] = plane(x);
  double sx = c.opts.margin + (px - c.min_x) * c.scale;
  // svg y grows downward
  double sy = static_cast<double>(c.height) - c.opts.margin - (py - c.min_y) * c.scale;
  return {sx, sy};
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

SvgCanvas svg_canvas(const Complex& K, const std::vector<std::vector<Vec>>& overlays,
                     SvgOptions opts) {
  if (K.ambient_dim() > 3) throw error("svg plotting supports ambient dimension <= 3");
  SvgCanvas c;
  c.opts = opts;
  double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
  bool first = true;
  auto absorb = [&](const Vec& p) {
    auto [px, py] = plane(p);
    if (first) {
      lo_x = hi_x = px;
      lo_y = hi_y = py;
      first = false;
    } else {
      lo_x = std::min(lo_x, px);
      hi_x = std::max(hi_x, px);
      lo_y = std::min(lo_y, py);
      hi_y = std::max(hi_y, py);
    }
  };
  for (int v = 0; v < K.num_vertices(); ++v) absorb(K.vertex(v));
  for (const auto& poly : overlays)
    for (const Vec& p : poly) absorb(p);
  double span_x = std::max(hi_x - lo_x, 1e-9);
  double span_y = std::max(hi_y - lo_y, 1e-9);
  c.min_x = lo_x;
  c.min_y = lo_y;
  c.scale = (opts.width - 2.0 * opts.margin) / span_x;
  c.height = static_cast<int>(span_y * c.scale + 2.0 * opts.margin + 0.5);
  return c;
}

void svg_add_complex(SvgCanvas& canvas, const Complex& K) {
  std::ostringstream os;
  for (int s = 0; s < K.num_simplices(); ++s) {
    const auto& verts = K.simplex(s);
    if (verts.size() == 3) {
      os << "<polygon points=\"";
      for (int v : verts) {
        auto [x, y] = to_canvas(canvas, K.vertex(v));
        os << num(x) << "," << num(y) << " ";
      }
      os << "\" fill=\"" << canvas.opts.mesh_color << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    } else if (verts.size() == 4) {
      // draw tetrahedra as their edge skeleton only; faces arrive separately
      continue;
    }
  }
  for (int s = 0; s < K.num_simplices(); ++s) {
    const auto& verts = K.simplex(s);
    if (verts.size() != 2) continue;
    auto [x1, y1] = to_canvas(canvas, K.vertex(verts[0]));
    auto [x2, y2] = to_canvas(canvas, K.vertex(verts[1]));
    os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
       << "\" y2=\"" << num(y2) << "\" stroke=\"" << canvas.opts.mesh_color
       << "\" stroke-width=\"1\"/>\n";
  }
  for (int v = 0; v < K.num_vertices(); ++v) {
    auto [x, y] = to_canvas(canvas, K.vertex(v));
    os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"2.5\" fill=\""
       << canvas.opts.mesh_color << "\"/>\n";
  }
  canvas.body += os.str();
}

void svg_add_polyline(SvgCanvas& canvas, const std::vector<Vec>& points,
                      const std::string& color) {
  if (points.empty()) return;
  std::ostringstream os;
  os << "<polyline points=\"";
  for (const Vec& p : points) {
    auto [x, y] = to_canvas(canvas, p);
    os << num(x) << "," << num(y) << " ";
  }
  os << "\" fill=\"none\" stroke=\"" << (color.empty() ? canvas.opts.overlay_color : color)
     << "\" stroke-width=\"1.5\"/>\n";
  canvas.body += os.str();
}

std::string svg_render(const SvgCanvas& canvas) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas.opts.width
     << "\" height=\"" << canvas.height << "\" viewBox=\"0 0 " << canvas.opts.width << " "
     << canvas.height << "\">\n";
  os << canvas.body;
  os << "</svg>\n";
  return os.str();
}

void write_svg(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << content;
}

void plot_complex(const std::string& path, const Complex& K,
                  const std::vector<std::vector<Vec>>& overlays, SvgOptions opts) {
  SvgCanvas c = svg_canvas(K, overlays, opts);
  svg_add_complex(c, K);
  for (const auto& poly : overlays) svg_add_polyline(c, poly);
  write_svg(path, svg_render(c));
}

}  // namespace plsmooth
