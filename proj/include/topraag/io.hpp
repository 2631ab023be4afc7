#pragma once

// JSON input and output: graphs, base models, complex exports, homology
// reports and graded dimensions.

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "topraag/error.hpp"
#include "topraag/graded_dim.hpp"
#include "topraag/graph.hpp"
#include "topraag/homology.hpp"
#include "topraag/models.hpp"
#include "topraag/salvetti.hpp"

namespace topraag {

using Json = nlohmann::ordered_json;

namespace detail {

template <typename F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    raise(ErrorCode::ParseError, what + ": " + e.what());
  }
}

}  // namespace detail

// {"vertices":[...], "edges":[[u,v],...]}
inline Graph graph_from_json(const Json& j) {
  return detail::guarded("graph", [&] {
    auto vs = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> es;
    for (const auto& e : j.value("edges", Json::array())) {
      if (!e.is_array() || e.size() != 2) raise(ErrorCode::ParseError, "graph: an edge needs two endpoints");
      es.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return validate_graph(vs, es);
  });
}

inline Json graph_to_json(const Graph& g) {
  Json j;
  j["vertices"] = g.labels();
  j["edges"] = Json::array();
  for (auto [a, b] : g.edges()) j["edges"].push_back({g.label(a), g.label(b)});
  return j;
}

using AnyModel = std::variant<FiniteModel, ShiftModel, TrivialModel>;

// {"kind":"shift","m":2} | {"kind":"trivial"} |
// {"kind":"finite","degree":3,"U_gens":[...],"O_gens":[...],"phi_images":[...]}
// Permutations are one-line image arrays such as [2,3,1] or strings in the
// token syntax ("(1,2,3)", "perm[2,3,1]").
inline AnyModel model_from_json(const Json& j) {
  return detail::guarded("model", [&]() -> AnyModel {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "shift") return ShiftModel(j.at("m").get<std::int64_t>());
    if (kind == "trivial") return TrivialModel{};
    if (kind == "finite") {
      const auto degree = j.at("degree").get<std::size_t>();
      auto perms = [&](const char* key) {
        std::vector<Perm> out;
        for (const auto& p : j.at(key)) {
          if (p.is_string()) {
            auto q = perm_parse(p.get<std::string>(), degree);
            if (!q) raise(ErrorCode::ParseError, std::string("model: bad permutation in ") + key);
            out.push_back(*q);
          } else {
            auto imgs = p.get<std::vector<int>>();
            if (imgs.size() != degree) raise(ErrorCode::InvalidModel, std::string("model: wrong degree in ") + key);
            out.push_back(perm_from_one_line(imgs));
          }
        }
        return out;
      };
      return FiniteModel(degree, perms("U_gens"), perms("O_gens"), perms("phi_images"));
    }
    raise(ErrorCode::ParseError, "model: unknown kind '" + kind + "'");
  });
}

template <ElementEngine E>
Json ball_to_json(const E& engine, const CubeBall<E>& ball, const Json& meta) {
  const auto& g = engine.graph();
  Json j;
  j["vertices"] = Json::array();
  for (std::size_t i = 0; i < ball.vertices.size(); ++i)
    j["vertices"].push_back({{"id", i}, {"rep", engine.format(ball.vertices[i].rep)}, {"exp", ball.vertices[i].exp}});
  j["cubes"] = Json::array();
  for (const auto& c : ball.cubes) {
    Json type = Json::array();
    for (auto t : c.type) type.push_back(g.label(t));
    j["cubes"].push_back({{"dim", c.dim()}, {"type", type}, {"verts", c.corners}, {"min_corner", c.min_corner()}});
  }
  j["meta"] = meta;
  return j;
}

// Reads the export format above (or any list of vertices and cubes with
// corners in mask order).
inline CellComplex complex_from_json(const Json& j) {
  return detail::guarded("complex", [&] {
    CellComplex cc;
    const auto& vs = j.at("vertices");
    cc.vertex_count = vs.is_number() ? vs.get<std::size_t>() : vs.size();
    for (const auto& c : j.value("cubes", Json::array())) cc.add_cell(c.at("verts").get<std::vector<std::size_t>>());
    return cc;
  });
}

inline Json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Json homology_to_json(const HomologyResult& h) {
  Json j;
  j["reduced"] = h.reduced;
  j["degrees"] = Json::array();
  for (std::size_t d = 0; d < h.groups.size(); ++d) {
    Json t = Json::array();
    for (const auto& x : h.groups[d].torsion) t.push_back(int_to_json(x));
    j["degrees"].push_back({{"degree", d}, {"betti", h.groups[d].betti}, {"torsion", t}});
  }
  auto c = homological_connectivity(h);
  if (h.reduced) j["connectivity"] = {{"value", c.value}, {"within_computed_range", c.range_limited}};
  return j;
}

inline Json dim_to_json(DimValue v) {
  if (v.finite()) return v.value();
  return v.str();
}

inline DimValue dim_from_json(const Json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0) raise(ErrorCode::ParseError, "dimension must be non-negative");
    return j.get<std::uint64_t>();
  }
  if (j == "inf") return DimValue::inf();
  if (j == "unknown") return DimValue::unknown();
  raise(ErrorCode::ParseError, "dimension must be a natural number, \"inf\" or \"unknown\"");
}

// {"dims":{"0":1,"3":"inf","4":0},"default":"unknown"}
inline Json graded_to_json(const GradedDim& g) {
  Json dims = Json::object();
  for (const auto& [d, v] : g.explicit_dims()) dims[std::to_string(d)] = dim_to_json(v);
  return {{"dims", dims}, {"default", dim_to_json(g.tail())}};
}

inline GradedDim graded_from_json(const Json& j) {
  return detail::guarded("graded dimension", [&] {
    GradedDim g({}, dim_from_json(j.value("default", Json(0))));
    for (const auto& [k, v] : j.at("dims").items()) {
      if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
        raise(ErrorCode::ParseError, "graded dimension: degree keys are natural numbers");
      g.set(std::stoul(k), dim_from_json(v));
    }
    return g;
  });
}

}  // namespace topraag
