#pragma once

#include <map>
#include <string>

#include "plsmooth/smoothing.hpp"

namespace plsmooth {

// One verification result. paper_tag is an opaque property identifier kept
// stable for downstream tooling; pass means "no counterexample at the
// declared sampling density", never a universal proof.
struct Report {
  std::string check;
  Decision status = Decision::Pass;
  std::map<std::string, double> metrics;
  std::string paper_tag;
  std::string note;
};

Decision worst(const std::vector<Report>& reports);

struct SupResult {
  double value = 0.0;
  Vec argmax;
};
SupResult sup_distance(const MapEvaluator& A, const MapEvaluator& B, const SampleSet& S);

// One-sided directional derivatives around a crossing point by central
// differences: backward along dir_in, forward along dir_out. For a straight
// crossing dir_in == dir_out; a bent crossing follows a kinked path.
struct CrossingProbe {
  Vec point;
  Vec dir_in;
  Vec dir_out;
  double step = 1e-5;
};
struct ProbeResult {
  CrossingProbe probe;
  double mismatch = 0.0;  // || D+ - D- ||
};
std::vector<ProbeResult> c1_probe(const MapEvaluator& A,
                                  const std::vector<CrossingProbe>& probes);
double max_mismatch(const std::vector<ProbeResult>& results);

// Straight probes through interior points of every codimension-1 interface
// shared by exactly two top simplices, directed between their barycenters.
// For 1-dimensional complexes the interfaces are vertices and the probes
// bend along the two segments.
std::vector<CrossingProbe> probes_across_faces(const Complex& K, int per_face = 10,
                                               double step = 1e-5);
// Only the vertex interfaces of a 1-dimensional complex (kink detectors).
std::vector<CrossingProbe> probes_at_vertex_bends(const Complex& K, double step = 1e-5);

// Per-property audits. Every reported property has a constructed failing
// fixture in the test suite; audits read all data from the object, so tests
// inject faults by mutating fields.
std::vector<Report> audit(const Subdivision& S, int density = 200, std::uint64_t seed = 0);
std::vector<Report> audit(const WeaklySimplicialMap& W, int density = 200,
                          std::uint64_t seed = 0);
std::vector<Report> audit(const Covering& C, int density = 1000, std::uint64_t seed = 0);
std::vector<Report> audit(const SmoothMap& h, int density = 1000, std::uint64_t seed = 0);

}  // namespace plsmooth
