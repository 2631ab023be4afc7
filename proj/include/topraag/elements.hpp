#pragma once

// Operations shared by the element engines: the HNN retraction, relation
// checks and the engine concept used by the complex builder.

#include <concepts>
#include <set>
#include <type_traits>
#include <string>
#include <vector>

#include "topraag/britton.hpp"
#include "topraag/models.hpp"
#include "topraag/normal_sequence.hpp"
#include "topraag/semidirect.hpp"

namespace topraag {

template <typename E>
concept ElementEngine = requires(const E& e, typename E::Element x, std::size_t gen, int sign,
                                 typename E::U u) {
  typename E::Element;
  typename E::Model;
  { e.identity() } -> std::same_as<typename E::Element>;
  { e.mul(x, x) } -> std::same_as<typename E::Element>;
  { e.inv(x) } -> std::same_as<typename E::Element>;
  { e.from_u(u) } -> std::same_as<typename E::Element>;
  { e.letter(gen, sign) } -> std::same_as<typename E::Element>;
  { e.exponent(x) } -> std::same_as<std::int64_t>;
  { e.vertex_rep(x) } -> std::same_as<typename E::Element>;
  { e.n_part(x) } -> std::same_as<typename E::Element>;
  { e.a_part(x) } -> std::same_as<NormalWord>;
  { e.in_artin(x) } -> std::same_as<bool>;
  { e.format(x) } -> std::same_as<std::string>;
};

static_assert(ElementEngine<NormalSequenceEngine<FiniteModel>>);
static_assert(ElementEngine<NormalSequenceEngine<TrivialModel>>);
static_assert(ElementEngine<SemidirectEngine>);
static_assert(ElementEngine<BrittonEngine<FiniteModel>>);

template <ElementEngine E>
std::int64_t extended_exponent(const E& engine, const typename E::Element& g) {
  return engine.exponent(g);
}

// psi: u -> u, every Artin generator -> t, landing in the one-letter HNN extension.
template <ElementEngine E>
auto hnn_retract(const E& engine, const typename E::Element& g) {
  auto target = BrittonEngine<typename E::Model>::single(engine.model());
  using TokenT = Token<typename E::Model::Element>;
  std::vector<TokenT> w;
  for (const auto& t : engine.word_of(g))
    w.push_back(t.is_letter ? TokenT::of_letter(Letter{0, t.letter.exp}) : t);
  return target.from_tokens(w);
}

struct RelationReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> violations;

  void record(bool pass, const std::string& what) {
    ++checked;
    if (!pass) {
      ok = false;
      if (violations.size() < 20) violations.push_back(what);
    }
  }
};

// Model-level checks on a finite model: phi is an injective homomorphism on O.
inline RelationReport verify_model(const FiniteModel& m) {
  RelationReport rep;
  auto O = m.O_elements();
  std::set<FiniteModel::Element> images;
  for (auto a : O) {
    images.insert(m.phi(a));
    for (auto b : O)
      rep.record(m.phi(m.mul(a, b)) == m.mul(m.phi(a), m.phi(b)),
                 "phi(ab) != phi(a)phi(b) for a=" + m.format(a) + ", b=" + m.format(b));
  }
  rep.record(images.size() == O.size(), "phi is not injective");
  return rep;
}

// t w t^-1 = phi(w) for sampled or all w in O, and [s,t] = 1 for every edge.
template <ElementEngine E>
RelationReport verify_relations(const E& engine, const std::vector<typename E::U>& O_sample) {
  RelationReport rep;
  const auto& g = engine.graph();
  const auto& model = engine.model();
  if constexpr (std::is_same_v<typename E::Model, FiniteModel>) rep = verify_model(model);
  for (std::size_t t = 0; t < g.size(); ++t)
    for (auto w : O_sample) {
      auto lhs = engine.mul(engine.mul(engine.letter(t, 1), engine.from_u(w)), engine.letter(t, -1));
      auto rhs = engine.from_u(model.phi(w));
      rep.record(lhs == rhs, g.label(t) + " " + model.format(w) + " " + g.label(t) + "^-1 != phi(" +
                                 model.format(w) + ")");
    }
  for (auto [a, b] : g.edges()) {
    auto c = engine.mul(engine.mul(engine.letter(a, 1), engine.letter(b, 1)),
                        engine.mul(engine.letter(a, -1), engine.letter(b, -1)));
    rep.record(c == engine.identity(), "[" + g.label(a) + "," + g.label(b) + "] != 1");
  }
  return rep;
}

inline void require_relations(const RelationReport& r) {
  if (!r.ok) raise(ErrorCode::RelationViolation, r.violations.empty() ? "violation" : r.violations.front());
}

// Uniform mix of base-group samples and letters s^{+-1}.
template <typename Model>
std::vector<Token<typename Model::Element>> random_mixed_word(const Model& m, const Graph& g, Rng& rng,
                                                              std::size_t len) {
  std::vector<Token<typename Model::Element>> w;
  for (std::size_t i = 0; i < len; ++i) {
    if (rng() % 2)
      w.push_back(Token<typename Model::Element>::of_u(m.sample(rng)));
    else
      w.push_back(Token<typename Model::Element>::of_letter(
          Letter{static_cast<std::uint32_t>(rng() % g.size()), static_cast<std::int8_t>(rng() % 2 ? 1 : -1)}));
  }
  return w;
}

// A sample of O for relation checks: all of O when it is finite.
template <BaseModel Model>
std::vector<typename Model::Element> o_sample(const Model& m, Rng& rng, std::size_t count = 16) {
  if constexpr (requires { m.O_elements(); }) {
    return m.O_elements();
  } else {
    std::vector<typename Model::Element> out;
    for (std::size_t i = 0; i < count; ++i) {
      auto u = m.sample(rng);
      if (m.in_O(u)) out.push_back(u);
    }
    return out;
  }
}

}  // namespace topraag
