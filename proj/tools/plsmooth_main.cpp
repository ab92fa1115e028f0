#include <iostream>

#include "CLI11.hpp"
#include "plsmooth/fixtures.hpp"
#include "plsmooth/io.hpp"
#include "plsmooth/normal_crossings.hpp"
#include "plsmooth/singular.hpp"
#include "plsmooth/svg.hpp"

using namespace plsmooth;

namespace {

struct Flags {
  std::string in;
  std::string out;
  std::string plot;
  std::uint64_t seed = 0;
  int density = 1000;
  double epsilon = 0.1;
  double tolerance = 0.0;  // 0: derive from epsilon (or the check's default)
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--in", f.in, "input JSON path (builtin fixture when omitted)");
  cmd->add_option("--out", f.out, "output JSON path (stdout when omitted)");
  cmd->add_option("--seed", f.seed, "sampling seed");
  cmd->add_option("--density", f.density, "samples per simplex for sampled checks");
}

Complex load_complex_or(const Flags& f, Complex fallback) {
  if (f.in.empty()) return fallback;
  json j = load_json(f.in);
  if (j.contains("complex")) return complex_from_json(j.at("complex"));
  if (j.contains("child")) return complex_from_json(j.at("child"));
  return complex_from_json(j);
}

void emit(const Flags& f, const json& payload) {
  if (f.out.empty())
    std::cout << payload.dump(2) << "\n";
  else
    save_json(f.out, payload);
}

int code_of(const std::vector<Report>& reports) {
  switch (worst(reports)) {
    case Decision::Pass:
      return 0;
    case Decision::Fail:
      return 1;
    default:
      return 2;
  }
}

// Sampled h images of the 1-skeleton, for overlay plots.
std::vector<std::vector<Vec>> edge_images(const Complex& K, const MapEvaluator& h,
                                          int points_per_edge = 48) {
  std::vector<std::vector<Vec>> out;
  for (int s = 0; s < K.num_simplices(); ++s) {
    if (K.simplex_dim(s) != 1) continue;
    const Vec a = K.vertex(K.simplex(s)[0]);
    const Vec b = K.vertex(K.simplex(s)[1]);
    std::vector<Vec> curve;
    for (int i = 0; i <= points_per_edge; ++i) {
      double t = static_cast<double>(i) / points_per_edge;
      curve.push_back(h(a + t * (b - a)));
    }
    out.push_back(std::move(curve));
  }
  return out;
}

json mismatch_table(const std::vector<ProbeResult>& probes) {
  json t = json::array();
  for (const ProbeResult& p : probes) {
    json row;
    row["point"] = std::vector<double>(p.probe.point.data(),
                                       p.probe.point.data() + p.probe.point.size());
    row["mismatch"] = p.mismatch;
    t.push_back(row);
  }
  return t;
}

Report c1_report(const MapEvaluator& h, const Complex& K, double gate, json* table) {
  auto probes = c1_probe(h, probes_across_faces(K, 3));
  if (table) *table = mismatch_table(probes);
  Report r;
  r.check = "smoothing.c1";
  r.paper_tag = "T1.4";
  r.metrics["max_mismatch"] = max_mismatch(probes);
  r.metrics["probes"] = static_cast<double>(probes.size());
  r.status = max_mismatch(probes) < gate ? Decision::Pass : Decision::Fail;
  return r;
}

int run_subdivide(const Flags& f, int iterations) {
  Complex K = load_complex_or(f, fixtures::unit_triangle());
  Subdivision S = subdivide_iter(K, {}, iterations);
  std::vector<Report> reports = audit(S, f.density, f.seed);
  json payload;
  payload["subdivision"] = to_json(S);
  payload["reports"] = to_json(reports);
  emit(f, payload);
  return code_of(reports);
}

int run_subdivide_mod(const Flags& f, std::vector<int> fixed) {
  Complex K;
  if (!f.in.empty()) {
    json j = load_json(f.in);
    if (j.contains("complex")) {
      K = complex_from_json(j.at("complex"));
      if (fixed.empty() && j.contains("fixed")) fixed = j.at("fixed").get<std::vector<int>>();
    } else {
      K = complex_from_json(j);
    }
  } else {
    K = fixtures::square_diagonal();
    if (fixed.empty()) fixed = {*K.find({0, 1, 2})};
  }
  Subdivision S = subdivide_mod(K, close_down(K, fixed));
  std::vector<Report> reports = audit(S, f.density, f.seed);
  json payload;
  payload["subdivision"] = to_json(S);
  payload["reports"] = to_json(reports);
  emit(f, payload);
  return code_of(reports);
}

int run_approx(const Flags& f) {
  Complex K, L;
  MapEvaluator F;
  std::vector<int> pinned;
  if (!f.in.empty()) {
    json j = load_json(f.in);
    SimplicialMap G = simplicial_map_from_json(j);
    K = G.source;
    L = G.target;
    F = G.evaluator();
    if (j.contains("pinned")) pinned = j.at("pinned").get<std::vector<int>>();
  } else {
    auto loop = fixtures::polygon_loop(8);
    K = fixtures::loop_complex(loop);
    L = K;
    F = boundary_reparam(loop, loop, 2);
    pinned = {K.vertex_simplex_id(0)};
  }
  ZeemanOptions zo;
  zo.seed = f.seed;
  zo.star_density = f.density;
  ZeemanResult R = relative_approximation(F, K, close_down(K, pinned), L, f.epsilon, zo);

  std::vector<Report> reports;
  Report r;
  r.check = "approximation.relative";
  r.paper_tag = "T3.2";
  r.status = R.status;
  r.metrics["kappa"] = R.kappa;
  r.metrics["ell"] = R.ell;
  r.metrics["sup_error"] = R.sup_error;
  r.metrics["epsilon"] = f.epsilon;
  r.note = R.detail;
  reports.push_back(r);

  json payload;
  payload["status"] = to_string(R.status);
  payload["kappa"] = R.kappa;
  payload["ell"] = R.ell;
  payload["sup_error"] = R.sup_error;
  if (R.status == Decision::Pass) {
    WeaklySimplicialMap W = wrap_weakly_simplicial(R.map, R.tower, R.ell);
    auto more = audit(W, std::min(f.density, 200), f.seed);
    reports.insert(reports.end(), more.begin(), more.end());
    payload["map"] = to_json(R.map);
    payload["source"] = to_json(R.source);
  }
  payload["reports"] = to_json(reports);
  emit(f, payload);
  return code_of(reports);
}

int run_smooth(const Flags& f) {
  SimplicialMap G;
  if (!f.in.empty()) {
    G = simplicial_map_from_json(load_json(f.in));
  } else {
    Complex K = fixtures::square_diagonal();
    std::vector<int> iota(K.num_vertices());
    for (int v = 0; v < K.num_vertices(); ++v) iota[v] = v;
    G = SimplicialMap{K, K, iota};
  }
  double gate = f.tolerance > 0 ? f.tolerance : f.epsilon;
  auto C = std::make_shared<Covering>(
      build_covering(G.source, f.epsilon / 2, f.density, f.seed));
  SmoothMap h = synthesize(certify_simplicial(G), C, [gate](const Vec&) { return gate; },
                           10000, f.seed);
  std::vector<Report> reports = audit(h, f.density, f.seed);
  json table;
  reports.push_back(c1_report(h.evaluator(), G.source, tol::c1_mismatch, &table));

  json payload;
  payload["covering"] = to_json(*C);
  payload["delta"] = gate;
  payload["measured_sup"] = h.measured_sup;
  payload["status"] = to_string(h.status);
  payload["mismatch_table"] = table;
  payload["reports"] = to_json(reports);
  emit(f, payload);
  if (!f.plot.empty() && G.target.ambient_dim() <= 3) {
    auto overlays = edge_images(G.source, h.evaluator());
    SvgCanvas c = svg_canvas(G.target, overlays);
    svg_add_complex(c, G.target);
    for (const auto& curve : overlays) svg_add_polyline(c, curve);
    write_svg(f.plot, svg_render(c));
  }
  return code_of(reports);
}

int run_identity_smoother(const Flags& f) {
  Complex K = load_complex_or(f, fixtures::square_diagonal());
  SmoothMap h = identity_smoother(K, f.epsilon, f.density, f.seed);
  std::vector<Report> reports = audit(h, f.density, f.seed);
  json table;
  Report c1 = c1_report(h.evaluator(), K, tol::c1_mismatch, &table);
  c1.paper_tag = "C1.12";
  reports.push_back(c1);

  json payload;
  payload["covering"] = to_json(*h.covering);
  payload["epsilon"] = f.epsilon;
  payload["measured_sup"] = h.measured_sup;
  payload["status"] = to_string(h.status);
  payload["mismatch_table"] = table;
  payload["reports"] = to_json(reports);
  emit(f, payload);
  if (!f.plot.empty() && K.ambient_dim() <= 3) {
    auto overlays = edge_images(K, h.evaluator());
    SvgCanvas c = svg_canvas(K, overlays);
    svg_add_complex(c, K);
    for (const auto& curve : overlays) svg_add_polyline(c, curve);
    write_svg(f.plot, svg_render(c));
  }
  return code_of(reports);
}

int run_pipeline(const Flags& f) {
  Complex K, L;
  MapEvaluator F;
  std::vector<std::vector<int>> filtration;
  if (!f.in.empty()) {
    json j = load_json(f.in);
    SimplicialMap G = simplicial_map_from_json(j.contains("map") ? j.at("map") : j);
    K = G.source;
    L = G.target;
    F = G.evaluator();
    if (j.contains("filtration"))
      filtration = j.at("filtration").get<std::vector<std::vector<int>>>();
  } else {
    K = fixtures::interval_split();
    L = fixtures::axes_cross();
    F = example_axes_bend();
  }
  if (filtration.empty()) {
    std::vector<int> all(K.num_simplices());
    for (int s = 0; s < K.num_simplices(); ++s) all[s] = s;
    filtration = {all};
  }
  double eps = f.epsilon;
  PipelineOptions po;
  po.seed = f.seed;
  po.covering_density = f.density;
  PipelineResult R = approximate(F, K, filtration, identity_triangulation(L),
                                 [eps](const Vec&) { return eps; }, po);

  std::vector<Report> reports;
  Report top;
  top.check = "pipeline.sup";
  top.paper_tag = "T1.4";
  top.status = R.status;
  top.metrics["measured_sup"] = R.measured_sup;
  top.metrics["epsilon"] = eps;
  top.note = R.detail;
  reports.push_back(top);
  Report staged;
  staged.check = "approximation.staged";
  staged.paper_tag = "T3.3";
  staged.status = R.staged.status;
  staged.metrics["final_sup"] = R.staged.final_sup;
  staged.metrics["stages"] = static_cast<double>(R.staged.stages.size());
  reports.push_back(staged);
  json table;
  if (R.status == Decision::Pass) {
    auto more = audit(R.smooth, f.density, f.seed);
    reports.insert(reports.end(), more.begin(), more.end());
    reports.push_back(c1_report(R.composed, K, tol::c1_mismatch, &table));
  }

  json payload;
  payload["status"] = to_string(R.status);
  payload["measured_sup"] = R.measured_sup;
  payload["budgets"] = json::array();
  for (const auto& b : R.budgets)
    payload["budgets"].push_back({{"stage", b.stage},
                                  {"eps_min", b.eps_min},
                                  {"mu", b.mu},
                                  {"delta", b.delta},
                                  {"budget", b.budget}});
  payload["mismatch_table"] = table;
  payload["reports"] = to_json(reports);
  emit(f, payload);
  if (!f.plot.empty() && R.status == Decision::Pass && L.ambient_dim() <= 3) {
    auto smooth_curves = edge_images(K, R.composed);
    auto input_curves = edge_images(K, F);
    auto all = smooth_curves;
    all.insert(all.end(), input_curves.begin(), input_curves.end());
    SvgCanvas c = svg_canvas(L, all);
    svg_add_complex(c, L);
    for (const auto& curve : input_curves) svg_add_polyline(c, curve, "#999999");
    for (const auto& curve : smooth_curves) svg_add_polyline(c, curve);
    write_svg(f.plot, svg_render(c));
  }
  return code_of(reports);
}

int run_cover(const Flags& f) {
  Complex K = load_complex_or(f, fixtures::unit_triangle());
  Covering C = build_covering(K, f.epsilon, f.density, f.seed);
  std::vector<Report> reports = audit(C, f.density, f.seed);
  json payload;
  payload["covering"] = to_json(C);
  payload["reports"] = to_json(reports);
  emit(f, payload);
  return code_of(reports);
}

int run_retract_nc(const Flags& f, int d, int r, std::vector<double> eta, int grid,
                   double extent) {
  if (eta.empty()) eta.assign(r, 1.0);
  NormalCrossingsModel M(d, r, eta);
  RetractionReport rep = retraction_report(M, grid, extent);
  double comm_gate = f.tolerance > 0 ? f.tolerance : 1e-15;
  double eta_norm = 0.0;
  for (double e : eta) eta_norm += e * e;
  eta_norm = std::sqrt(eta_norm);

  std::vector<Report> reports;
  auto push = [&](const char* check, bool ok, double value) {
    Report rr;
    rr.check = check;
    rr.paper_tag = "P4.2";
    rr.status = ok ? Decision::Pass : Decision::Fail;
    rr.metrics["value"] = value;
    rr.metrics["grid_points"] = rep.grid_points;
    reports.push_back(rr);
  };
  push("retract.zero_coordinate", rep.max_active_product_W == 0.0, rep.max_active_product_W);
  push("retract.identity_outside", rep.identity_outside, rep.identity_outside ? 1.0 : 0.0);
  push("retract.displacement", rep.max_displacement_on_X <= eta_norm + tol::exact,
       rep.max_displacement_on_X);
  push("retract.commutativity", rep.commutativity_error <= comm_gate, rep.commutativity_error);

  json payload;
  payload["grid_points"] = rep.grid_points;
  payload["max_displacement_on_X"] = rep.max_displacement_on_X;
  payload["max_active_product_W"] = rep.max_active_product_W;
  payload["identity_outside"] = rep.identity_outside;
  payload["commutativity_error"] = rep.commutativity_error;
  payload["reports"] = to_json(reports);
  emit(f, payload);
  return code_of(reports);
}

int run_singular_lift(const Flags& f, std::vector<double> coeffs, std::vector<double> at,
                      int grid, double extent) {
  if (coeffs.empty()) coeffs = {0.0, 1.0};
  if (at.size() != 2) throw error("--at expects x,y1");
  SingularEmbedding E{Polynomial{coeffs}};
  Vec p = E.lift(at[0], at[1]);
  double grad_tol = f.tolerance > 0 ? f.tolerance : 1e-8;
  SingularScan scan = singular_locus_scan(E, grid, extent, grad_tol);

  std::vector<Report> reports;
  auto push = [&](const char* check, bool ok, double value) {
    Report rr;
    rr.check = check;
    rr.paper_tag = "L4.3";
    rr.status = ok ? Decision::Pass : Decision::Fail;
    rr.metrics["value"] = value;
    reports.push_back(rr);
  };
  double fx = E.f(at[0]);
  double denom = std::max(1.0, fx * fx + at[1] * at[1]);
  push("singular.on_surface", std::abs(E.g(p)) <= tol::exact * denom, E.g(p));
  push("singular.projection", scan.projection_exact, scan.projection_exact ? 1.0 : 0.0);
  push("singular.surface_residual", scan.max_rel_g <= tol::exact, scan.max_rel_g);
  push("singular.locus", scan.zeros_match_locus,
       static_cast<double>(scan.gradient_zeros.size()));

  json payload;
  payload["lift"] = std::vector<double>(p.data(), p.data() + p.size());
  payload["g_at_lift"] = E.g(p);
  Vec grad = E.grad_g(p);
  payload["gradient"] = std::vector<double>(grad.data(), grad.data() + grad.size());
  payload["grid_points"] = scan.grid_points;
  payload["gradient_zeros"] = scan.gradient_zeros.size();
  payload["reports"] = to_json(reports);
  emit(f, payload);

  if (!f.plot.empty()) {
    // the y1 = 0 slice of the surface: y2 = cbrt(f(x)^2)
    std::vector<Vec> curve;
    int n = std::max(grid, 64);
    for (int i = 0; i < n; ++i) {
      double x = -extent + 2.0 * extent * i / (n - 1);
      Vec q(2);
      q << x, std::cbrt(E.f(x) * E.f(x));
      curve.push_back(q);
    }
    Vec a(2), b(2);
    a << -extent, 0.0;
    b << extent, 0.0;
    Complex frame({a, b}, {{0, 1}});
    plot_complex(f.plot, frame, {curve});
  }
  return code_of(reports);
}

int run_audit(const Flags& f) {
  if (f.in.empty()) throw error("audit requires --in");
  json j = load_json(f.in);
  if (j.contains("covering")) j = j.at("covering");
  if (j.contains("subdivision")) j = j.at("subdivision");

  std::vector<Report> reports;
  if (j.contains("pieces")) {
    reports = audit(covering_from_json(j), f.density, f.seed);
  } else if (j.contains("carriers")) {
    reports = audit(subdivision_from_json(j), f.density, f.seed);
  } else if (j.contains("levels") && j.contains("vertex_image")) {
    reports = audit(weakly_simplicial_from_json(j), f.density, f.seed);
  } else if (j.contains("vertex_image")) {
    SimplicialMap G = simplicial_map_from_json(j);
    reports = audit(wrap_weakly_simplicial(G, make_tower(G.target), 0), f.density, f.seed);
  } else if (j.contains("vertices") && j.contains("simplices")) {
    Complex K = complex_from_json(j);
    auto issue = validate_geometry(K, f.density, f.seed);
    Report r;
    r.check = "complex.geometry";
    r.status = issue ? Decision::Fail : Decision::Pass;
    r.metrics["issues"] = issue ? 1.0 : 0.0;
    if (issue)
      r.note = "simplices " + std::to_string(issue->simplex_a) + " and " +
               std::to_string(issue->simplex_b) + " overlap off their shared face";
    reports.push_back(r);
  } else {
    throw error("unrecognized audit input");
  }
  json payload;
  payload["reports"] = to_json(reports);
  emit(f, payload);
  return code_of(reports);
}

int run_plot(const Flags& f) {
  Complex K = load_complex_or(f, fixtures::unit_triangle());
  std::string path = f.out.empty() ? "plot.svg" : f.out;
  plot_complex(path, K);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PL smoothing toolkit: subdivisions, simplicial approximation, "
               "coverings, partition-of-unity smoothing, and analytic retraction models"};
  app.require_subcommand(1);
  int rc = 0;
  auto guard = [&rc](auto fn) {
    return [&rc, fn]() {
      try {
        rc = fn();
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
      }
    };
  };

  Flags f_sub;
  int iterations = 1;
  auto* sub = app.add_subcommand("subdivide", "barycentric subdivision with audit");
  add_common(sub, f_sub);
  sub->add_option("--iterations", iterations, "number of subdivision rounds");
  sub->callback(guard([&]() { return run_subdivide(f_sub, iterations); }));

  Flags f_mod;
  std::vector<int> fixed;
  auto* mod = app.add_subcommand("subdivide-mod", "subdivision keeping a subcomplex intact");
  add_common(mod, f_mod);
  mod->add_option("--fixed", fixed, "simplex ids to hold fixed (closed down)")
      ->delimiter(',');
  mod->callback(guard([&]() { return run_subdivide_mod(f_mod, fixed); }));

  Flags f_approx;
  f_approx.epsilon = 0.2;
  auto* ap = app.add_subcommand("approx", "relative simplicial approximation");
  add_common(ap, f_approx);
  ap->add_option("--epsilon", f_approx.epsilon, "sup-error bound");
  ap->callback(guard([&]() { return run_approx(f_approx); }));

  Flags f_smooth;
  auto* sm = app.add_subcommand("smooth", "smooth a simplicial map by partition of unity");
  add_common(sm, f_smooth);
  sm->add_option("--epsilon", f_smooth.epsilon, "covering budget (eta = epsilon/2)");
  sm->add_option("--tolerance", f_smooth.tolerance, "pointwise bound (default epsilon)");
  sm->add_option("--plot", f_smooth.plot, "SVG overlay path");
  sm->callback(guard([&]() { return run_smooth(f_smooth); }));

  Flags f_id;
  auto* id = app.add_subcommand("identity-smoother", "smooth approximation of the identity");
  add_common(id, f_id);
  id->add_option("--epsilon", f_id.epsilon, "displacement bound");
  id->add_option("--plot", f_id.plot, "SVG overlay path");
  id->callback(guard([&]() { return run_identity_smoother(f_id); }));

  Flags f_pipe;
  f_pipe.epsilon = 0.05;
  auto* pipe = app.add_subcommand("pipeline", "end-to-end smooth approximation");
  add_common(pipe, f_pipe);
  pipe->add_option("--epsilon", f_pipe.epsilon, "sup-error budget");
  pipe->add_option("--plot", f_pipe.plot, "SVG overlay path");
  pipe->callback(guard([&]() { return run_pipeline(f_pipe); }));

  Flags f_cover;
  f_cover.epsilon = 0.3;
  auto* cov = app.add_subcommand("cover", "shrink-widen covering with audit");
  add_common(cov, f_cover);
  cov->add_option("--epsilon", f_cover.epsilon, "tube budget eta");
  cov->callback(guard([&]() { return run_cover(f_cover); }));

  Flags f_nc;
  int nc_dim = 2, nc_active = 2, nc_grid = 101;
  double nc_extent = 2.0;
  std::vector<double> nc_eta;
  auto* nc = app.add_subcommand("retract-nc", "weak retraction onto a coordinate crossing set");
  add_common(nc, f_nc);
  nc->add_option("--dim", nc_dim, "ambient dimension");
  nc->add_option("--active", nc_active, "number of crossing coordinates");
  nc->add_option("--eta", nc_eta, "gauges, one per active coordinate")->delimiter(',');
  nc->add_option("--grid", nc_grid, "grid points per axis");
  nc->add_option("--extent", nc_extent, "grid half-width");
  nc->add_option("--tolerance", f_nc.tolerance, "commutativity gate (default 1e-15)");
  nc->callback(guard([&]() { return run_retract_nc(f_nc, nc_dim, nc_active, nc_eta,
                                                   nc_grid, nc_extent); }));

  Flags f_sing;
  std::vector<double> poly, at{0.5, 0.25};
  int sing_grid = 101;
  double sing_extent = 1.5;
  auto* sing = app.add_subcommand("singular-lift", "graph lift onto the singular surface model");
  add_common(sing, f_sing);
  sing->add_option("--poly", poly, "polynomial coefficients, ascending degree")->delimiter(',');
  sing->add_option("--at", at, "chart point x,y1")->delimiter(',')->expected(2);
  sing->add_option("--grid", sing_grid, "scan grid points per axis");
  sing->add_option("--extent", sing_extent, "scan half-width");
  sing->add_option("--tolerance", f_sing.tolerance, "gradient-zero tolerance (default 1e-8)");
  sing->add_option("--plot", f_sing.plot, "SVG path for the y1 = 0 slice");
  sing->callback(guard([&]() { return run_singular_lift(f_sing, poly, at, sing_grid,
                                                        sing_extent); }));

  Flags f_audit;
  auto* au = app.add_subcommand("audit", "re-run property audits on a serialized object");
  add_common(au, f_audit);
  au->callback(guard([&]() { return run_audit(f_audit); }));

  Flags f_plot;
  auto* pl = app.add_subcommand("plot", "render a complex to SVG");
  add_common(pl, f_plot);
  pl->callback(guard([&]() { return run_plot(f_plot); }));

  CLI11_PARSE(app, argc, argv);
  return rc;
}
