#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plsmooth/fixtures.hpp"
#include "plsmooth/graph_embed.hpp"
#include "plsmooth/io.hpp"
#include "plsmooth/normal_crossings.hpp"
#include "plsmooth/singular.hpp"

namespace py = pybind11;
using namespace plsmooth;

namespace {

MapEvaluator wrap_callable(py::object fn, std::string name) {
  return MapEvaluator{[fn](const Vec& x) { return fn(x).cast<Vec>(); }, std::move(name)};
}

py::dict report_dict(const Report& r) {
  py::dict d;
  d["check"] = r.check;
  d["status"] = std::string(to_string(r.status));
  d["metrics"] = r.metrics;
  d["paper_tag"] = r.paper_tag;
  d["note"] = r.note;
  return d;
}

py::list report_list(const std::vector<Report>& reports) {
  py::list out;
  for (const Report& r : reports) out.append(report_dict(r));
  return out;
}

std::function<double(const Vec&)> scalar_field(py::object eps) {
  if (py::isinstance<py::float_>(eps) || py::isinstance<py::int_>(eps)) {
    double v = eps.cast<double>();
    return [v](const Vec&) { return v; };
  }
  return [eps](const Vec& x) { return eps(x).cast<double>(); };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "PL smoothing toolkit: simplicial complexes, subdivisions, simplicial "
            "approximation, shrink-widen coverings, partition-of-unity smoothing, "
            "and analytic retraction models";

  py::register_exception<error>(m, "Error");

  py::enum_<Decision>(m, "Decision")
      .value("Pass", Decision::Pass)
      .value("Fail", Decision::Fail)
      .value("Inconclusive", Decision::Inconclusive);

  py::class_<Complex>(m, "Complex")
      .def(py::init<std::vector<Vec>, std::vector<std::vector<int>>>(),
           py::arg("vertices"), py::arg("simplices"))
      .def_property_readonly("ambient_dim", &Complex::ambient_dim)
      .def_property_readonly("dim", &Complex::dim)
      .def_property_readonly("num_vertices", &Complex::num_vertices)
      .def_property_readonly("num_simplices", &Complex::num_simplices)
      .def("vertex", &Complex::vertex, py::return_value_policy::copy)
      .def("simplex", &Complex::simplex, py::return_value_policy::copy)
      .def("simplices", &Complex::simplices, py::return_value_policy::copy)
      .def("simplex_dim", &Complex::simplex_dim)
      .def("barycenter", &Complex::barycenter)
      .def("volume", &Complex::volume)
      .def("diameter", &Complex::diameter)
      .def("find", &Complex::find)
      .def("faces", &Complex::faces)
      .def("star", &Complex::star)
      .def("vertex_star", &Complex::vertex_star)
      .def("distance_to", &Complex::distance_to)
      .def("__eq__", [](const Complex& a, const Complex& b) { return a == b; })
      .def("__repr__", [](const Complex& K) {
        return "<Complex dim " + std::to_string(K.dim()) + ", " +
               std::to_string(K.num_vertices()) + " vertices, " +
               std::to_string(K.num_simplices()) + " simplices>";
      });

  m.def("to_json", [](const Complex& K) { return to_json(K).dump(); });
  m.def("complex_from_json",
        [](const std::string& s) { return complex_from_json(json::parse(s)); });

  m.def("carrier", &carrier, py::arg("K"), py::arg("x"));
  m.def("locate", [](const Complex& K, const Vec& x) {
    BarycentricPoint bp = locate(K, x);
    return py::make_tuple(bp.simplex, bp.weights);
  });
  m.def("close_down", &close_down);
  m.def("is_subcomplex", &is_subcomplex);

  py::class_<Subdivision>(m, "Subdivision")
      .def_readonly("parent", &Subdivision::parent)
      .def_readonly("child", &Subdivision::child)
      .def_readonly("carrier_of", &Subdivision::carrier_of)
      .def_readonly("fixed", &Subdivision::fixed)
      .def_readonly("levels", &Subdivision::levels);

  m.def("subdivide", &subdivide, py::arg("K"));
  m.def("subdivide_mod", &subdivide_mod, py::arg("K"), py::arg("fixed"));
  m.def("subdivide_iter", &subdivide_iter, py::arg("K"), py::arg("fixed"), py::arg("rounds"));
  m.def("mesh_size", &mesh_size, py::arg("K"), py::arg("away_from") = std::vector<int>{});

  py::class_<SimplicialMap>(m, "SimplicialMap")
      .def(py::init([](Complex source, Complex target, std::vector<int> vertex_image) {
             return SimplicialMap{std::move(source), std::move(target),
                                  std::move(vertex_image)};
           }),
           py::arg("source"), py::arg("target"), py::arg("vertex_image"))
      .def_readonly("source", &SimplicialMap::source)
      .def_readonly("target", &SimplicialMap::target)
      .def_readonly("vertex_image", &SimplicialMap::vertex_image)
      .def("valid", &SimplicialMap::valid)
      .def("image_simplex", &SimplicialMap::image_simplex)
      .def("__call__", &SimplicialMap::eval);

  py::class_<WeaklySimplicialMap>(m, "WeaklySimplicialMap")
      .def_readonly("source", &WeaklySimplicialMap::source)
      .def_readonly("vertex_image", &WeaklySimplicialMap::vertex_image)
      .def_readonly("level_of", &WeaklySimplicialMap::level_of)
      .def_readonly("certificate", &WeaklySimplicialMap::certificate)
      .def_property_readonly("target", &WeaklySimplicialMap::target)
      .def("coherent", [](const WeaklySimplicialMap& W) { return W.coherent(); })
      .def("__call__", &WeaklySimplicialMap::eval);

  py::class_<ZeemanResult>(m, "ZeemanResult")
      .def_readonly("status", &ZeemanResult::status)
      .def_readonly("kappa", &ZeemanResult::kappa)
      .def_readonly("ell", &ZeemanResult::ell)
      .def_readonly("source", &ZeemanResult::source)
      .def_readonly("map", &ZeemanResult::map)
      .def_readonly("sup_error", &ZeemanResult::sup_error)
      .def_readonly("detail", &ZeemanResult::detail);

  m.def(
      "relative_approximation",
      [](py::object F, const Complex& K, const std::vector<int>& H, const Complex& L,
         double epsilon, int cap, int star_density, int sup_samples, std::uint64_t seed) {
        ZeemanOptions opts;
        opts.cap = cap;
        opts.star_density = star_density;
        opts.sup_samples = sup_samples;
        opts.seed = seed;
        return relative_approximation(wrap_callable(F, "F"), K, H, L, epsilon, opts);
      },
      py::arg("F"), py::arg("K"), py::arg("H"), py::arg("L"), py::arg("epsilon"),
      py::arg("cap") = 8, py::arg("star_density") = 300, py::arg("sup_samples") = 10000,
      py::arg("seed") = 0);

  py::class_<StagedResult>(m, "StagedResult")
      .def_readonly("status", &StagedResult::status)
      .def_readonly("source", &StagedResult::source)
      .def_readonly("approx", &StagedResult::approx)
      .def_readonly("final_sup", &StagedResult::final_sup)
      .def_readonly("detail", &StagedResult::detail);

  m.def(
      "weakly_simplicial_approximation",
      [](py::object F, const Complex& K, const std::vector<std::vector<int>>& filtration,
         const Complex& L, py::object eps, std::uint64_t seed) {
        StagedOptions opts;
        opts.seed = seed;
        return weakly_simplicial_approximation(wrap_callable(F, "F"), K, filtration, L,
                                               scalar_field(eps), opts);
      },
      py::arg("F"), py::arg("K"), py::arg("filtration"), py::arg("L"), py::arg("eps"),
      py::arg("seed") = 0);

  py::class_<Covering>(m, "Covering")
      .def_readonly("K", &Covering::K)
      .def_readonly("eta", &Covering::eta)
      .def_property_readonly("num_pieces",
                             [](const Covering& C) { return C.pieces.size(); })
      .def("member", &Covering::member, py::arg("s"), py::arg("x"), py::arg("scale") = 1.0)
      .def("in_core", &Covering::in_core)
      .def("retract", &Covering::retract)
      .def("active", &Covering::active);

  m.def(
      "build_covering",
      [](const Complex& K, py::object eta, int density, std::uint64_t seed) {
        if (py::isinstance<py::float_>(eta) || py::isinstance<py::int_>(eta))
          return build_covering(K, eta.cast<double>(), density, seed);
        std::function<double(int)> per_simplex = [eta](int s) {
          return eta(s).cast<double>();
        };
        return build_covering(K, per_simplex, density, seed);
      },
      py::arg("K"), py::arg("eta"), py::arg("density") = 1000, py::arg("seed") = 0);

  py::class_<SmoothMap>(m, "SmoothMap")
      .def_readonly("delta_min", &SmoothMap::delta_min)
      .def_readonly("measured_sup", &SmoothMap::measured_sup)
      .def_readonly("status", &SmoothMap::status)
      .def_readonly("detail", &SmoothMap::detail)
      .def("__call__", &SmoothMap::eval)
      .def("theta", [](const SmoothMap& h, int s, const Vec& x) {
        return h.partition.theta(s, x);
      });

  m.def("identity_smoother", &identity_smoother, py::arg("K"), py::arg("eps"),
        py::arg("covering_density") = 1000, py::arg("seed") = 0);
  m.def("smoother_sequence", &smoother_sequence, py::arg("K"), py::arg("n_max"),
        py::arg("covering_density") = 1000, py::arg("seed") = 0);

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("status", &PipelineResult::status)
      .def_readonly("staged", &PipelineResult::staged)
      .def_readonly("measured_sup", &PipelineResult::measured_sup)
      .def_readonly("detail", &PipelineResult::detail)
      .def("__call__", [](const PipelineResult& R, const Vec& x) { return R.composed(x); })
      .def_property_readonly("budgets", [](const PipelineResult& R) {
        py::list out;
        for (const auto& b : R.budgets) {
          py::dict d;
          d["stage"] = b.stage;
          d["eps_min"] = b.eps_min;
          d["mu"] = b.mu;
          d["delta"] = b.delta;
          d["budget"] = b.budget;
          out.append(d);
        }
        return out;
      });

  m.def(
      "approximate",
      [](py::object f, const Complex& K, const std::vector<std::vector<int>>& filtration,
         const Complex& L, py::object eps, int covering_density, int sup_samples,
         std::uint64_t seed) {
        PipelineOptions opts;
        opts.covering_density = covering_density;
        opts.sup_samples = sup_samples;
        opts.seed = seed;
        return approximate(wrap_callable(f, "f"), K, filtration, identity_triangulation(L),
                           scalar_field(eps), opts);
      },
      py::arg("f"), py::arg("K"), py::arg("filtration"), py::arg("L"), py::arg("eps"),
      py::arg("covering_density") = 1000, py::arg("sup_samples") = 10000,
      py::arg("seed") = 0);

  m.def("audit", [](const Subdivision& S, int density, std::uint64_t seed) {
          return report_list(audit(S, density, seed));
        },
        py::arg("S"), py::arg("density") = 200, py::arg("seed") = 0);
  m.def("audit", [](const WeaklySimplicialMap& W, int density, std::uint64_t seed) {
          return report_list(audit(W, density, seed));
        },
        py::arg("W"), py::arg("density") = 200, py::arg("seed") = 0);
  m.def("audit", [](const Covering& C, int density, std::uint64_t seed) {
          return report_list(audit(C, density, seed));
        },
        py::arg("C"), py::arg("density") = 1000, py::arg("seed") = 0);
  m.def("audit", [](const SmoothMap& h, int density, std::uint64_t seed) {
          return report_list(audit(h, density, seed));
        },
        py::arg("h"), py::arg("density") = 1000, py::arg("seed") = 0);

  m.def(
      "sup_distance",
      [](py::object A, py::object B, const Complex& K, int density, std::uint64_t seed) {
        SampleSet S = sample_polyhedron(K, density, seed);
        SupResult r = sup_distance(wrap_callable(A, "A"), wrap_callable(B, "B"), S);
        return py::make_tuple(r.value, r.argmax);
      },
      py::arg("A"), py::arg("B"), py::arg("K"), py::arg("density") = 1000,
      py::arg("seed") = 0);

  m.def(
      "c1_mismatch",
      [](py::object A, const Complex& K, int per_face, double step) {
        return max_mismatch(c1_probe(wrap_callable(A, "A"), probes_across_faces(K, per_face, step)));
      },
      py::arg("A"), py::arg("K"), py::arg("per_face") = 10, py::arg("step") = 1e-5);

  py::class_<NormalCrossingsModel>(m, "NormalCrossingsModel")
      .def(py::init<int, int, std::vector<double>>(), py::arg("d"), py::arg("r"),
           py::arg("eta"))
      .def_readonly("d", &NormalCrossingsModel::d)
      .def_readonly("r", &NormalCrossingsModel::r)
      .def_readonly("eta", &NormalCrossingsModel::eta);

  m.def("weak_retract", &weak_retract, py::arg("model"), py::arg("x"));
  m.def(
      "retraction_report",
      [](const NormalCrossingsModel& M, int n, double extent) {
        RetractionReport r = retraction_report(M, n, extent);
        py::dict d;
        d["grid_points"] = r.grid_points;
        d["max_displacement_on_X"] = r.max_displacement_on_X;
        d["max_active_product_W"] = r.max_active_product_W;
        d["identity_outside"] = r.identity_outside;
        d["commutativity_error"] = r.commutativity_error;
        return d;
      },
      py::arg("model"), py::arg("n"), py::arg("extent"));

  py::class_<SingularEmbedding>(m, "SingularEmbedding")
      .def(py::init([](std::vector<double> coeffs) {
             return SingularEmbedding{Polynomial{std::move(coeffs)}};
           }),
           py::arg("coeffs"))
      .def("g", &SingularEmbedding::g)
      .def("grad_g", &SingularEmbedding::grad_g)
      .def("lift", &SingularEmbedding::lift, py::arg("x"), py::arg("y1"))
      .def_static("project", &SingularEmbedding::project)
      .def("f", [](const SingularEmbedding& E, double x) { return E.f(x); });

  m.def(
      "singular_locus_scan",
      [](const SingularEmbedding& E, int n, double extent, double grad_tol) {
        SingularScan s = singular_locus_scan(E, n, extent, grad_tol);
        py::dict d;
        d["grid_points"] = s.grid_points;
        d["max_rel_g"] = s.max_rel_g;
        d["gradient_zeros"] = s.gradient_zeros;
        d["zeros_match_locus"] = s.zeros_match_locus;
        d["projection_exact"] = s.projection_exact;
        return d;
      },
      py::arg("E"), py::arg("n"), py::arg("extent"), py::arg("grad_tol") = 1e-8);

  py::class_<GraphEmbedding>(m, "GraphEmbedding")
      .def("forward", &GraphEmbedding::forward)
      .def("inverse", &GraphEmbedding::inverse);
  m.def("graph_embed", [](py::object theta) {
    return graph_embed([theta](const Vec& x) { return theta(x).cast<double>(); });
  });

  auto fx = m.def_submodule("fixtures", "builtin example complexes");
  fx.def("unit_edge", &fixtures::unit_edge);
  fx.def("interval_split", &fixtures::interval_split);
  fx.def("path_bend", &fixtures::path_bend);
  fx.def("unit_triangle", &fixtures::unit_triangle);
  fx.def("square_diagonal", &fixtures::square_diagonal);
  fx.def("bowtie", &fixtures::bowtie);
  fx.def("axes_cross", &fixtures::axes_cross);
  fx.def("tetrahedron", &fixtures::tetrahedron);
  fx.def("polygon_loop", &fixtures::polygon_loop, py::arg("n"), py::arg("radius") = 1.0);
  fx.def("loop_complex", &fixtures::loop_complex);
  fx.def("axes_bend", []() { return example_axes_bend(); });

  py::class_<MapEvaluator>(m, "MapEvaluator")
      .def("__call__", [](const MapEvaluator& f, const Vec& x) { return f(x); })
      .def_readonly("name", &MapEvaluator::name);
}
