#pragma once

// Shift regime: A_Gamma(phi) = Z[1/m] x| A_Gamma for U = Z, phi = m*, Gamma
// connected. Every Artin generator conjugates the normal closure by one shift.

#include <optional>
#include <string>
#include <vector>

#include "topraag/error.hpp"
#include "topraag/graph.hpp"
#include "topraag/models.hpp"
#include "topraag/raag.hpp"
#include "topraag/tokens.hpp"

namespace topraag {

struct SemidirectElement {
  NElem n;  // u / m^k
  NormalWord a;

  bool operator==(const SemidirectElement&) const = default;
  friend bool operator<(const SemidirectElement& x, const SemidirectElement& y) {
    if (x.a == y.a) return x.n < y.n;
    return x.a < y.a;
  }
};

class SemidirectEngine {
 public:
  using Model = ShiftModel;
  using U = ShiftModel::Element;
  using Element = SemidirectElement;
  using TokenT = Token<U>;

  SemidirectEngine(const ShiftModel& model, const Graph& g) : model_(model), g_(g) {
    if (g.size() == 0) raise(ErrorCode::RegimeMismatch, "empty graph");
    if (!is_connected(g)) {
      std::string hint;
      for (const auto& c : connected_components(g)) {
        hint += hint.empty() ? "{" : ", {";
        for (std::size_t i = 0; i < c.size(); ++i) hint += (i ? "," : "") + c.label(i);
        hint += "}";
      }
      raise(ErrorCode::DisconnectedGraph,
            "the shift regime needs a connected graph; the group splits over the components " + hint);
    }
  }

  const ShiftModel& model() const { return model_; }
  const Graph& graph() const { return g_; }
  std::string regime() const { return "shift"; }

  Element identity() const { return {}; }
  Element from_u(U u) const { return {NElem{0, u}, {}}; }
  Element from_n(NElem n) const { return {model_.reduce_N(n), {}}; }
  Element from_artin(const NormalWord& a) const { return {{}, a}; }
  Element letter(std::size_t gen, int sign) const {
    return from_artin(NormalWord{{Letter{static_cast<std::uint32_t>(gen), static_cast<std::int8_t>(sign)}}});
  }

  // (x,a)(y,b) = (x + m^{e(a)} y, ab)
  Element mul(const Element& x, const Element& y) const {
    return {model_.n_add(x.n, model_.n_shift(y.n, topraag::exponent(x.a))), raag_multiply(g_, x.a, y.a)};
  }
  Element inv(const Element& x) const {
    return {model_.n_neg(model_.n_shift(x.n, -topraag::exponent(x.a))), raag_invert(g_, x.a)};
  }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element from_tokens(const std::vector<TokenT>& w) const {
    Element e = identity();
    for (const auto& t : w) e = mul(e, t.is_letter ? letter(t.letter.gen, t.letter.exp) : from_u(t.u));
    return e;
  }
  Element parse(const std::string& text) const { return from_tokens(parse_mixed_word(model_, g_, text)); }

  // u/m^k is written s^-k u s^k with s the first vertex.
  std::vector<TokenT> word_of(const Element& x) const {
    std::vector<TokenT> w;
    for (std::int64_t i = 0; i < x.n.k; ++i) w.push_back(TokenT::of_letter({0, -1}));
    if (x.n.u != 0) w.push_back(TokenT::of_u(x.n.u));
    for (std::int64_t i = 0; i < x.n.k; ++i) w.push_back(TokenT::of_letter({0, 1}));
    for (auto l : x.a.letters) w.push_back(TokenT::of_letter(l));
    return w;
  }

  std::int64_t exponent(const Element& x) const { return topraag::exponent(x.a); }
  NormalWord a_part(const Element& x) const { return x.a; }
  Element n_part(const Element& x) const { return {x.n, {}}; }
  bool in_U(const Element& x) const { return x.a.empty() && x.n.k == 0; }
  bool in_artin(const Element& x) const { return x.n.u == 0; }

  // (x,a)U = (x + m^{e(a)} Z, a); the representative takes x in [0, m^{e(a)}).
  Element vertex_rep(const Element& x) const { return {model_.n_mod_pow(x.n, topraag::exponent(x.a)), x.a}; }

  // sup{j : n in s^j U s^-j}; nullopt is +infinity.
  std::optional<std::int64_t> latitude(NElem n) const {
    n = model_.reduce_N(n);
    auto d = model_.phi_depth(n.u);
    if (!d) return std::nullopt;
    return *d - n.k;
  }

  std::string format(const Element& x) const {
    return "((" + std::to_string(x.n.k) + "," + std::to_string(x.n.u) + "), " +
           (x.a.empty() ? std::string("empty") : format_word(g_, x.a)) + ")";
  }

 private:
  ShiftModel model_;
  Graph g_;
};

}  // namespace topraag
