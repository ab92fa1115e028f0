#pragma once

#include <string>

#include "plsmooth/shrink_widen.hpp"
#include "plsmooth/verify.hpp"

#include "json.hpp"

namespace plsmooth {

using nlohmann::json;

// Complexes: {"vertices": [[..], ..], "simplices": [[ids], ..]}. The loader
// runs the constructor, so face closure and canonical ordering are restored.
json to_json(const Complex& K);
Complex complex_from_json(const json& j);

// Subdivisions carry both complexes plus per-child carriers and the retained
// simplex ids.
json to_json(const Subdivision& S);
Subdivision subdivision_from_json(const json& j);

json to_json(const SimplicialMap& G);
SimplicialMap simplicial_map_from_json(const json& j);

// Weakly simplicial maps store the tower height only; the tower itself is
// deterministic from the base and is rebuilt on load.
json to_json(const WeaklySimplicialMap& W);
WeaklySimplicialMap weakly_simplicial_from_json(const json& j);

// Coverings serialize as per-piece records; membership and retraction are
// recomputed from them on load, bit-stably.
json to_json(const Covering& C);
Covering covering_from_json(const json& j);

json to_json(const Report& r);
json to_json(const std::vector<Report>& reports);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace plsmooth
