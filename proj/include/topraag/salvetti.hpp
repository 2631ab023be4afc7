#pragma once

// Finite balls in the generalised universal Salvetti complex. Vertices are
// cosets gU, one cube g Q_T per clique T with corners g t1^e1 ... tk^ek U.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "topraag/elements.hpp"
#include "topraag/error.hpp"
#include "topraag/graph.hpp"
#include "topraag/models.hpp"

namespace topraag {

struct ResourceCaps {
  std::size_t max_vertices = 1'000'000;
  std::size_t max_cubes = 10'000'000;
};

inline std::uint64_t cayley_abels_degree(std::uint64_t index_O, std::uint64_t index_phiO, const Graph& g) {
  return g.size() * (index_O + index_phiO);
}

template <BaseModel Model>
std::uint64_t cayley_abels_degree(const Model& m, const Graph& g) {
  return cayley_abels_degree(m.index_O(), m.index_phiO(), g);
}

// Elements u such that {g u Q_T : u} covers every cube with min corner gU.
inline std::vector<FiniteModel::Element> cube_transversal(const FiniteModel& m, std::size_t) { return m.elements(); }
inline std::vector<TrivialModel::Element> cube_transversal(const TrivialModel&, std::size_t) { return {0}; }
// The cubes g u Q_T, u in Z, depend on u modulo m^|T|.
inline std::vector<ShiftModel::Element> cube_transversal(const ShiftModel& m, std::size_t k) {
  std::vector<ShiftModel::Element> v;
  std::int64_t n = checked::pow(m.m(), static_cast<std::int64_t>(k));
  for (std::int64_t u = 0; u < n; ++u) v.push_back(u);
  return v;
}

template <ElementEngine E>
struct CubeBall {
  using Element = typename E::Element;

  struct Vertex {
    Element rep;  // canonical representative of the coset
    std::int64_t exp = 0;
    std::size_t dist = 0;
    bool interior = false;  // every cube through the vertex lies in the ball
  };

  struct Cube {
    std::vector<std::size_t> type;     // clique T, sorted vertex indices of the graph
    std::vector<std::size_t> corners;  // corner of g t^mask U at position mask
    std::vector<std::size_t> key;      // sorted corners
    Element rep;                       // g with cube = g Q_T
    std::size_t dim() const { return type.size(); }
    std::size_t min_corner() const { return corners.front(); }
  };

  std::size_t radius = 0;
  std::size_t max_dim = 0;
  std::vector<Vertex> vertices;
  std::vector<Cube> cubes;  // dimension >= 1
  std::map<Element, std::size_t> vertex_index;
  std::map<std::vector<std::size_t>, std::size_t> cube_index;
  std::vector<std::vector<std::size_t>> neighbours;
  std::vector<std::vector<std::size_t>> cubes_at;

  std::optional<std::size_t> find_vertex(const Element& rep) const {
    auto it = vertex_index.find(rep);
    if (it == vertex_index.end()) return std::nullopt;
    return it->second;
  }
  std::size_t count_dim(std::size_t d) const {
    if (d == 0) return vertices.size();
    return static_cast<std::size_t>(
        std::count_if(cubes.begin(), cubes.end(), [&](const Cube& c) { return c.dim() == d; }));
  }
  std::vector<std::size_t> interior_vertices() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].interior) v.push_back(i);
    return v;
  }
};

// Breadth-first search over stars St(gU) = {g u t^{+-1} U}, u running over
// transversals of U/phi(O) (for t) and U/O (for t^-1); then every cube whose
// corners all lie in the ball is attached.
template <ElementEngine E>
CubeBall<E> build_ball(const E& engine, std::size_t radius, const ResourceCaps& caps = {}) {
  using Ball = CubeBall<E>;
  using Element = typename E::Element;
  const auto& g = engine.graph();
  const auto& model = engine.model();
  Ball ball;
  ball.radius = radius;
  ball.max_dim = clique_number(g);

  auto add_vertex = [&](const Element& rep, std::size_t dist) {
    auto [it, inserted] = ball.vertex_index.emplace(rep, ball.vertices.size());
    if (inserted) {
      if (ball.vertices.size() >= caps.max_vertices)
        raise(ErrorCode::ResourceCap, "more than " + std::to_string(caps.max_vertices) + " vertices");
      ball.vertices.push_back({rep, engine.exponent(rep), dist, dist + ball.max_dim <= radius});
    }
    return it->second;
  };

  const auto trans_up = model.left_transversal_phiO();
  const auto trans_down = model.left_transversal_O();
  add_vertex(engine.vertex_rep(engine.identity()), 0);
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    if (ball.vertices[i].dist >= radius) continue;
    const Element rep = ball.vertices[i].rep;
    for (std::size_t t = 0; t < g.size(); ++t)
      for (int sign : {1, -1})
        for (auto u : sign > 0 ? trans_up : trans_down) {
          auto h = engine.mul(engine.mul(rep, engine.from_u(u)), engine.letter(t, sign));
          add_vertex(engine.vertex_rep(h), ball.vertices[i].dist + 1);
        }
  }

  ball.neighbours.assign(ball.vertices.size(), {});
  ball.cubes_at.assign(ball.vertices.size(), {});
  const auto all_cliques = cliques(g);
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    const Element rep = ball.vertices[i].rep;
    for (const auto& T : all_cliques) {
      if (T.empty()) continue;
      for (auto u : cube_transversal(model, T.size())) {
        const Element h = engine.mul(rep, engine.from_u(u));
        std::vector<std::size_t> corners;
        bool inside = true;
        for (std::size_t mask = 0; mask < (std::size_t{1} << T.size()) && inside; ++mask) {
          Element c = h;
          for (std::size_t b = 0; b < T.size(); ++b)
            if (mask & (std::size_t{1} << b)) c = engine.mul(c, engine.letter(T[b], 1));
          auto id = ball.find_vertex(engine.vertex_rep(c));
          if (!id) inside = false;
          else corners.push_back(*id);
        }
        if (!inside) continue;
        auto key = corners;
        std::sort(key.begin(), key.end());
        if (ball.cube_index.count(key)) continue;
        if (ball.cubes.size() >= caps.max_cubes)
          raise(ErrorCode::ResourceCap, "more than " + std::to_string(caps.max_cubes) + " cubes");
        ball.cube_index.emplace(key, ball.cubes.size());
        for (auto c : key) ball.cubes_at[c].push_back(ball.cubes.size());
        if (T.size() == 1) {
          ball.neighbours[corners[0]].push_back(corners[1]);
          ball.neighbours[corners[1]].push_back(corners[0]);
        }
        ball.cubes.push_back({T, corners, key, h});
      }
    }
  }
  for (auto& n : ball.neighbours) std::sort(n.begin(), n.end());
  return ball;
}

// Pointwise stabiliser of a cell by brute force: conjugates h u h^-1 of the
// vertex stabiliser that fix every corner.
template <ElementEngine E>
std::vector<typename E::Element> stabiliser_bruteforce(const E& engine,
                                                       const std::vector<typename E::Element>& corner_reps,
                                                       const typename E::Element& h) {
  using Model = typename E::Model;
  if constexpr (std::is_same_v<Model, ShiftModel>) {
    raise(ErrorCode::InfiniteStabiliser, "U = Z is infinite");
  } else {
    std::vector<typename E::Element> out;
    auto hi = engine.inv(h);
    for (auto u : engine.model().elements()) {
      auto x = engine.mul(h, engine.mul(engine.from_u(u), hi));
      bool fixes = std::all_of(corner_reps.begin(), corner_reps.end(),
                               [&](const auto& c) { return engine.vertex_rep(engine.mul(x, c)) == c; });
      if (fixes) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
}

// h phi^k(O) h^-1 for a k-cube h Q_T (k >= 1), h U h^-1 for a vertex.
template <ElementEngine E>
std::vector<typename E::Element> stabiliser_formula(const E& engine, std::size_t k, const typename E::Element& h) {
  using Model = typename E::Model;
  if constexpr (std::is_same_v<Model, ShiftModel>) {
    raise(ErrorCode::InfiniteStabiliser, "U = Z is infinite");
  } else {
    const auto& m = engine.model();
    auto group = k == 0 ? m.elements() : m.phi_power_image(k);
    std::vector<typename E::Element> out;
    auto hi = engine.inv(h);
    for (auto w : group) out.push_back(engine.mul(h, engine.mul(engine.from_u(w), hi)));
    std::sort(out.begin(), out.end());
    return out;
  }
}

template <ElementEngine E>
std::vector<typename E::Element> corner_reps(const CubeBall<E>& ball, std::size_t cube) {
  std::vector<typename E::Element> v;
  for (auto c : ball.cubes[cube].corners) v.push_back(ball.vertices[c].rep);
  return v;
}

}  // namespace topraag
