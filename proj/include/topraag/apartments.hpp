#pragma once

// Apartments n Sigma_0, the intersection trichotomy and the apartment nerve.

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "topraag/elements.hpp"
#include "topraag/salvetti.hpp"

namespace topraag {

template <typename E>
inline constexpr bool is_normal_sequence_engine = false;
template <typename M>
inline constexpr bool is_normal_sequence_engine<NormalSequenceEngine<M>> = true;

template <typename E>
inline constexpr bool has_apartment_calculus =
    is_normal_sequence_engine<E> || std::is_same_v<E, SemidirectEngine>;

// Canonical label of the apartment n Sigma_0: n modulo the pointwise
// stabiliser of Sigma_0, which is O when phi(O) = O and trivial in the shift regime.
template <ElementEngine E>
typename E::Element apartment_handle(const E& engine, const typename E::Element& n) {
  if constexpr (is_normal_sequence_engine<E>) {
    std::optional<typename E::Element> best;
    for (auto w : engine.model().O_elements()) {
      auto x = engine.mul(n, engine.from_u(w));
      if (!best || x < *best) best = x;
    }
    return *best;
  } else if constexpr (std::is_same_v<E, SemidirectEngine>) {
    return n;
  } else {
    raise(ErrorCode::RegimeMismatch, "apartments need phi(O) = O or the shift regime");
  }
}

template <ElementEngine E>
typename E::Element apartment_of(const E& engine, const typename E::Element& g) {
  return apartment_handle(engine, engine.n_part(g));
}

// Handles of the apartments through the representatives of every ball cell.
template <ElementEngine E>
std::vector<typename E::Element> enumerate_apartments(const E& engine, const CubeBall<E>& ball) {
  std::vector<typename E::Element> out;
  for (const auto& v : ball.vertices) out.push_back(apartment_of(engine, v.rep));
  for (const auto& c : ball.cubes) out.push_back(apartment_of(engine, c.rep));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// gU lies in Sigma_0 iff gU = aU for some a in A_Gamma.
template <ElementEngine E>
bool vertex_in_base_apartment(const E& engine, const typename E::Element& g) {
  return engine.in_artin(engine.vertex_rep(g));
}

template <ElementEngine E>
bool vertex_in_apartment(const E& engine, const typename E::Element& n, const typename E::Element& g) {
  return vertex_in_base_apartment(engine, engine.mul(engine.inv(n), g));
}

template <typename Element>
struct IntersectionClass {
  enum class Kind { Empty, VerticesOnly, ValleyUnion };
  Kind kind = Kind::Empty;
  std::vector<Element> vertices;        // VerticesOnly: coset representatives aU
  std::optional<std::int64_t> latitude;  // ValleyUnion: nullopt is +infinity

  std::string tag() const {
    switch (kind) {
      case Kind::Empty: return "Empty";
      case Kind::VerticesOnly: return "VerticesOnly";
      case Kind::ValleyUnion: return "ValleyUnion";
    }
    return "";
  }
};

// Sigma_0 meets n Sigma_0 in: nothing, a single vertex aU (n in a(U\O)a^-1),
// or the cubes bQ_T with e(b)+|T| <= epsilon(n).
template <ElementEngine E>
IntersectionClass<typename E::Element> classify_intersection(const E& engine, const typename E::Element& n) {
  using Class = IntersectionClass<typename E::Element>;
  Class res;
  if constexpr (is_normal_sequence_engine<E>) {
    const auto& m = engine.model();
    if (n.blocks.empty() && m.in_O(n.u0)) {
      res.kind = Class::Kind::ValleyUnion;
      return res;
    }
    // The only candidate conjugator is the first Artin block of n.
    std::vector<typename E::Element> candidates{engine.identity()};
    if (!n.blocks.empty()) candidates.push_back(engine.from_artin(n.blocks.front().first));
    for (const auto& a : candidates) {
      auto c = engine.mul(engine.inv(a), engine.mul(n, a));
      if (engine.in_U(c)) {
        res.kind = Class::Kind::VerticesOnly;
        res.vertices.push_back(engine.vertex_rep(a));
        return res;
      }
    }
    return res;
  } else if constexpr (std::is_same_v<E, SemidirectEngine>) {
    if (!n.a.empty()) raise(ErrorCode::NotInDomain, "element is not in the normal closure of U");
    res.kind = Class::Kind::ValleyUnion;
    res.latitude = engine.latitude(n.n);
    return res;
  } else {
    raise(ErrorCode::RegimeMismatch, "the trichotomy is computed only when phi(O) <= O");
  }
}

// Whether a cell of Sigma_0 (given by corner representatives) lies in the
// predicted intersection Sigma_0 \cap n Sigma_0.
template <ElementEngine E>
bool predicted_member(const E& engine, const IntersectionClass<typename E::Element>& cls,
                      const std::vector<typename E::Element>& corners) {
  using Kind = typename IntersectionClass<typename E::Element>::Kind;
  switch (cls.kind) {
    case Kind::Empty:
      return false;
    case Kind::VerticesOnly:
      return corners.size() == 1 &&
             std::find(cls.vertices.begin(), cls.vertices.end(), engine.vertex_rep(corners[0])) != cls.vertices.end();
    case Kind::ValleyUnion: {
      if (!cls.latitude) return true;
      for (const auto& c : corners)
        if (engine.exponent(c) > *cls.latitude) return false;
      return true;
    }
  }
  return false;
}

template <ElementEngine E>
bool fixes_cell(const E& engine, const typename E::Element& n, const std::vector<typename E::Element>& corners) {
  return std::all_of(corners.begin(), corners.end(),
                     [&](const auto& c) { return engine.vertex_rep(engine.mul(n, c)) == engine.vertex_rep(c); });
}

struct TrichotomyReport {
  std::size_t apartments = 0;
  std::size_t pairs = 0;
  std::size_t cells_checked = 0;
  std::size_t disagreements = 0;
  std::size_t empty = 0, vertices_only = 0, valley_union = 0;
  bool automorphic_shape_ok = true;  // each intersection empty or one vertex
  bool shift_shape_ok = true;        // each intersection a valley at latitude epsilon(n)
  std::vector<std::string> counterexamples;
};

// For every pair of apartments through the ball compare the predicted class
// with the cells lying in both apartments.
template <ElementEngine E>
TrichotomyReport check_trichotomy(const E& engine, const CubeBall<E>& ball) {
  using Element = typename E::Element;
  using Kind = typename IntersectionClass<Element>::Kind;
  TrichotomyReport rep;
  auto handles = enumerate_apartments(engine, ball);
  rep.apartments = handles.size();

  std::vector<std::vector<Element>> cells;
  for (const auto& v : ball.vertices) cells.push_back({v.rep});
  for (std::size_t c = 0; c < ball.cubes.size(); ++c) cells.push_back(corner_reps(ball, c));

  // Translated corners n_i^-1 c and membership of each cell in each apartment.
  std::vector<std::vector<std::vector<Element>>> pulled(handles.size());
  std::vector<std::vector<bool>> member(handles.size());
  for (std::size_t i = 0; i < handles.size(); ++i) {
    auto ni = engine.inv(handles[i]);
    for (const auto& cell : cells) {
      std::vector<Element> p;
      bool in = true;
      for (const auto& c : cell) {
        p.push_back(engine.vertex_rep(engine.mul(ni, c)));
        if (!engine.in_artin(p.back())) in = false;
      }
      pulled[i].push_back(std::move(p));
      member[i].push_back(in);
    }
  }

  for (std::size_t i = 0; i < handles.size(); ++i)
    for (std::size_t j = i + 1; j < handles.size(); ++j) {
      ++rep.pairs;
      auto n = engine.mul(engine.inv(handles[i]), handles[j]);
      auto cls = classify_intersection(engine, n);
      if (cls.kind == Kind::Empty) ++rep.empty;
      if (cls.kind == Kind::VerticesOnly) ++rep.vertices_only;
      if (cls.kind == Kind::ValleyUnion) ++rep.valley_union;
      std::size_t shared_cells = 0;
      bool shared_nonvertex = false;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        ++rep.cells_checked;
        bool brute = member[i][c] && member[j][c];
        bool predicted = member[i][c] && predicted_member(engine, cls, pulled[i][c]);
        if (brute) {
          ++shared_cells;
          if (cells[c].size() > 1) shared_nonvertex = true;
        }
        if (brute != predicted) {
          ++rep.disagreements;
          if (rep.counterexamples.size() < 10)
            rep.counterexamples.push_back("pair (" + engine.format(handles[i]) + ", " + engine.format(handles[j]) +
                                          ") class " + cls.tag() + " cell " + std::to_string(c));
        }
      }
      if (is_normal_sequence_engine<E> && (shared_cells > 1 || shared_nonvertex)) rep.automorphic_shape_ok = false;
      if (std::is_same_v<E, SemidirectEngine> && cls.kind != Kind::ValleyUnion) rep.shift_shape_ok = false;
    }
  return rep;
}

struct NerveGraph {
  Graph graph;
  std::vector<std::string> handles;
};

template <ElementEngine E>
NerveGraph nerve_graph(const E& engine, const CubeBall<E>& ball) {
  if constexpr (!has_apartment_calculus<E>) {
    raise(ErrorCode::RegimeMismatch, "the nerve needs phi(O) = O or the shift regime");
  } else {
    using Kind = typename IntersectionClass<typename E::Element>::Kind;
    auto handles = enumerate_apartments(engine, ball);
    NerveGraph out;
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < handles.size(); ++i) {
      labels.push_back("A" + std::to_string(i));
      out.handles.push_back(engine.format(handles[i]));
    }
    for (std::size_t i = 0; i < handles.size(); ++i)
      for (std::size_t j = i + 1; j < handles.size(); ++j)
        if (classify_intersection(engine, engine.mul(engine.inv(handles[i]), handles[j])).kind != Kind::Empty)
          edges.emplace_back(labels[i], labels[j]);
    out.graph = validate_graph(labels, edges);
    return out;
  }
}

}  // namespace topraag
