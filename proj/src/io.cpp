#include "plsmooth/io.hpp"

#include <fstream>

namespace plsmooth {

namespace {

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec vec_from_json(const json& j) {
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

}  // namespace

json to_json(const Complex& K) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < K.num_vertices(); ++v) j["vertices"].push_back(vec_to_json(K.vertex(v)));
  j["simplices"] = K.simplices();
  return j;
}

Complex complex_from_json(const json& j) {
  std::vector<Vec> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(vec_from_json(v));
  std::vector<std::vector<int>> simplices = j.at("simplices").get<std::vector<std::vector<int>>>();
  return Complex(std::move(vertices), std::move(simplices));
}

json to_json(const Subdivision& S) {
  json j;
  j["parent"] = to_json(S.parent);
  j["child"] = to_json(S.child);
  j["carriers"] = S.carrier_of;
  j["fixed"] = S.fixed;
  j["levels"] = S.levels;
  return j;
}

Subdivision subdivision_from_json(const json& j) {
  Subdivision S;
  S.parent = complex_from_json(j.at("parent"));
  S.child = complex_from_json(j.at("child"));
  S.carrier_of = j.at("carriers").get<std::vector<int>>();
  S.fixed = j.at("fixed").get<std::vector<int>>();
  S.levels = j.at("levels").get<int>();
  return S;
}

json to_json(const SimplicialMap& G) {
  json j;
  j["source"] = to_json(G.source);
  j["target"] = to_json(G.target);
  j["vertex_image"] = G.vertex_image;
  return j;
}

SimplicialMap simplicial_map_from_json(const json& j) {
  SimplicialMap G;
  G.source = complex_from_json(j.at("source"));
  G.target = complex_from_json(j.at("target"));
  G.vertex_image = j.at("vertex_image").get<std::vector<int>>();
  return G;
}

json to_json(const WeaklySimplicialMap& W) {
  json j;
  j["source"] = to_json(W.source);
  j["target"] = to_json(W.tower.base());
  j["tower_height"] = W.tower.height();
  j["vertex_image"] = W.vertex_image;
  j["levels"] = W.level_of;
  j["certificates"] = W.certificate;
  return j;
}

WeaklySimplicialMap weakly_simplicial_from_json(const json& j) {
  WeaklySimplicialMap W;
  W.source = complex_from_json(j.at("source"));
  W.tower = make_tower(complex_from_json(j.at("target")), j.at("tower_height").get<int>());
  W.vertex_image = j.at("vertex_image").get<std::vector<int>>();
  W.level_of = j.at("levels").get<std::vector<int>>();
  W.certificate = j.at("certificates").get<std::vector<int>>();
  return W;
}

json to_json(const Covering& C) {
  json j;
  j["complex"] = to_json(C.K);
  j["eta"] = C.eta;
  j["pieces"] = json::array();
  for (const CoveringPiece& p : C.pieces)
    j["pieces"].push_back({{"simplex", p.simplex},
                           {"epsilon", p.epsilon},
                           {"eta_prime", p.eta_prime},
                           {"base_case", p.base_case}});
  return j;
}

Covering covering_from_json(const json& j) {
  Covering C;
  C.K = complex_from_json(j.at("complex"));
  C.eta = j.at("eta").get<std::vector<double>>();
  for (const auto& p : j.at("pieces")) {
    CoveringPiece piece;
    piece.simplex = p.at("simplex").get<int>();
    piece.epsilon = p.at("epsilon").get<double>();
    piece.eta_prime = p.at("eta_prime").get<double>();
    piece.base_case = p.at("base_case").get<bool>();
    C.pieces.push_back(piece);
  }
  if (static_cast<int>(C.pieces.size()) != C.K.num_simplices())
    throw error("covering record does not match its complex");
  return C;
}

json to_json(const Report& r) {
  json j;
  j["check"] = r.check;
  j["status"] = to_string(r.status);
  j["metrics"] = r.metrics;
  j["paper_tag"] = r.paper_tag;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const std::vector<Report>& reports) {
  json j = json::array();
  for (const Report& r : reports) j.push_back(to_json(r));
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace plsmooth
