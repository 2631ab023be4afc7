#pragma once

// Britton normal forms in the multiple HNN extension H_S(phi) with one stable
// letter per vertex of an edgeless graph. Syllables after x carry right coset
// representatives of O\U, syllables after x^-1 those of phi(O)\U.

#include <string>
#include <vector>

#include "topraag/error.hpp"
#include "topraag/graph.hpp"
#include "topraag/models.hpp"
#include "topraag/raag.hpp"
#include "topraag/tokens.hpp"

namespace topraag {

template <typename U>
struct BrittonForm {
  U u0{};
  std::vector<std::pair<Letter, U>> syllables;

  bool operator==(const BrittonForm&) const = default;
  friend bool operator<(const BrittonForm& a, const BrittonForm& b) {
    if (a.syllables.size() != b.syllables.size()) return a.syllables.size() < b.syllables.size();
    if (a.u0 != b.u0) return a.u0 < b.u0;
    for (std::size_t i = 0; i < a.syllables.size(); ++i) {
      const auto& x = a.syllables[i];
      const auto& y = b.syllables[i];
      if (!(x.first == y.first)) return x.first < y.first;
      if (x.second != y.second) return x.second < y.second;
    }
    return false;
  }
};

template <BaseModel M>
class BrittonEngine {
 public:
  using Model = M;
  using U = typename Model::Element;
  using Element = BrittonForm<U>;
  using TokenT = Token<U>;

  BrittonEngine(const Model& model, const Graph& g) : model_(model), g_(g) {
    if (g.edge_count() != 0) raise(ErrorCode::RegimeMismatch, "Britton forms need an edgeless graph");
  }

  // Single stable letter "t".
  static BrittonEngine single(const Model& model) { return BrittonEngine(model, validate_graph({"t"}, {})); }

  const Model& model() const { return model_; }
  const Graph& graph() const { return g_; }
  std::string regime() const { return "britton"; }

  Element identity() const { return Element{model_.identity(), {}}; }
  Element from_u(U u) const { return Element{u, {}}; }
  Element from_artin(const NormalWord& a) const {
    return from_tokens([&] {
      std::vector<TokenT> w;
      for (auto l : a.letters) w.push_back(TokenT::of_letter(l));
      return w;
    }());
  }
  Element letter(std::size_t gen, int sign) const {
    return act_letter(Letter{static_cast<std::uint32_t>(gen), static_cast<std::int8_t>(sign)}, identity());
  }

  Element act_u(U u, Element s) const {
    s.u0 = model_.mul(u, s.u0);
    return s;
  }

  Element act_letter(Letter x, Element s) const {
    const U one = model_.identity();
    bool pinch = false;
    U head, rep;
    if (x.exp > 0) {
      auto [omega, r] = model_.decompose(s.u0);
      head = model_.phi(omega);
      rep = r;
    } else {
      auto [v, r] = model_.decompose_phi(s.u0);
      head = model_.phi_inv(v);
      rep = r;
    }
    if (rep == one && !s.syllables.empty() && s.syllables.front().first == x.inverse()) pinch = true;
    if (pinch) {
      s.u0 = model_.mul(head, s.syllables.front().second);
      s.syllables.erase(s.syllables.begin());
    } else {
      s.u0 = head;
      s.syllables.insert(s.syllables.begin(), {x, rep});
    }
    return s;
  }

  Element act(const TokenT& t, Element s) const { return t.is_letter ? act_letter(t.letter, std::move(s)) : act_u(t.u, std::move(s)); }
  Element apply(const std::vector<TokenT>& w, Element s) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) s = act(*it, std::move(s));
    return s;
  }
  Element from_tokens(const std::vector<TokenT>& w) const { return apply(w, identity()); }
  Element parse(const std::string& text) const { return from_tokens(parse_mixed_word(model_, g_, text)); }

  std::vector<TokenT> word_of(const Element& s) const {
    std::vector<TokenT> w;
    if (s.u0 != model_.identity()) w.push_back(TokenT::of_u(s.u0));
    for (const auto& [x, u] : s.syllables) {
      w.push_back(TokenT::of_letter(x));
      if (u != model_.identity()) w.push_back(TokenT::of_u(u));
    }
    return w;
  }

  Element mul(const Element& a, const Element& b) const { return apply(word_of(a), b); }
  Element inv(const Element& a) const { return from_tokens(invert_tokens(model_, word_of(a))); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::int64_t exponent(const Element& s) const {
    std::int64_t e = 0;
    for (const auto& [x, u] : s.syllables) e += x.exp;
    return e;
  }
  NormalWord a_part(const Element& s) const {
    ArtinWord w;
    for (const auto& [x, u] : s.syllables) w.push_back(x);
    return raag_normal_form(g_, w, 4 * default_word_cap);
  }
  Element n_part(const Element& s) const { return mul(s, inv(from_artin(a_part(s)))); }
  bool in_U(const Element& s) const { return s.syllables.empty(); }
  bool in_artin(const Element& s) const {
    if (s.u0 != model_.identity()) return false;
    for (const auto& y : s.syllables)
      if (y.second != model_.identity()) return false;
    return true;
  }

  Element vertex_rep(const Element& g) const {
    Element h = inv(g);
    h.u0 = model_.identity();
    return inv(h);
  }

  // Transversal membership and the absence of pinches.
  bool is_reduced(const Element& s) const {
    for (std::size_t i = 0; i < s.syllables.size(); ++i) {
      const auto& [x, u] = s.syllables[i];
      auto r = x.exp > 0 ? model_.decompose(u).second : model_.decompose_phi(u).second;
      if (r != u) return false;
      if (i + 1 < s.syllables.size() && u == model_.identity() && s.syllables[i + 1].first == x.inverse())
        return false;
    }
    return true;
  }

  std::string format(const Element& s) const {
    std::string out = model_.format(s.u0);
    for (const auto& [x, u] : s.syllables) out += " " + format_letter(g_, x) + " " + model_.format(u);
    return out;
  }

 private:
  Model model_;
  Graph g_;
};

}  // namespace topraag
