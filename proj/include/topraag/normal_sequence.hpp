#pragma once

// Normal sequences (u0, a1, u1, ..., an, un) and the rewriting action of
// A_Gamma(phi) on them. Valid when phi(O) = O.

#include <string>
#include <utility>
#include <vector>

#include "topraag/error.hpp"
#include "topraag/graph.hpp"
#include "topraag/models.hpp"
#include "topraag/raag.hpp"
#include "topraag/tokens.hpp"

namespace topraag {

template <typename U>
struct NormalSequence {
  U u0{};
  std::vector<std::pair<NormalWord, U>> blocks;  // (a_i, u_i)

  std::size_t length() const { return blocks.size(); }
  bool operator==(const NormalSequence&) const = default;
  friend bool operator<(const NormalSequence& a, const NormalSequence& b) {
    if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
    if (a.u0 != b.u0) return a.u0 < b.u0;
    return a.blocks < b.blocks;
  }
};

template <BaseModel M>
class NormalSequenceEngine {
 public:
  using Model = M;
  using U = typename Model::Element;
  using Element = NormalSequence<U>;
  using TokenT = Token<U>;

  NormalSequenceEngine(const Model& model, const Graph& g) : model_(model), g_(g) {
    if (!model_.is_automorphic())
      raise(ErrorCode::RegimeMismatch, "normal sequences require phi(O) = O");
  }

  const Model& model() const { return model_; }
  const Graph& graph() const { return g_; }
  std::string regime() const { return "automorphic"; }

  Element identity() const { return Element{model_.identity(), {}}; }
  Element from_u(U u) const { return Element{u, {}}; }
  Element from_artin(const NormalWord& a) const {
    Element e = identity();
    if (!a.empty()) e.blocks.emplace_back(a, model_.identity());
    return e;
  }
  Element letter(std::size_t gen, int sign) const {
    return from_artin(NormalWord{{Letter{static_cast<std::uint32_t>(gen), static_cast<std::int8_t>(sign)}}});
  }

  Element act_u(U u, Element s) const {
    s.u0 = model_.mul(u, s.u0);
    return s;
  }

  // The three cases of the action of t^{+-1}.
  Element act_letter(Letter x, Element s) const {
    const U one = model_.identity();
    auto [omega, rep] = model_.decompose(s.u0);
    U shifted = x.exp > 0 ? model_.phi(omega) : model_.phi_inv(omega);
    if (s.blocks.empty() || rep != one) {
      s.u0 = shifted;
      s.blocks.insert(s.blocks.begin(), {NormalWord{{x}}, rep});
      return s;
    }
    NormalWord& a1 = s.blocks.front().first;
    if (a1.size() == 1 && a1.letters[0] == x.inverse()) {
      s.u0 = model_.mul(shifted, s.blocks.front().second);
      s.blocks.erase(s.blocks.begin());
      return s;
    }
    ArtinWord w{x};
    w.insert(w.end(), a1.letters.begin(), a1.letters.end());
    a1 = raag_normal_form(g_, w);
    s.u0 = shifted;
    return s;
  }

  Element act(const TokenT& t, Element s) const { return t.is_letter ? act_letter(t.letter, std::move(s)) : act_u(t.u, std::move(s)); }

  // Applies the word to (1) letter by letter from the right.
  Element from_tokens(const std::vector<TokenT>& w) const { return apply(w, identity()); }
  Element apply(const std::vector<TokenT>& w, Element s) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) s = act(*it, std::move(s));
    return s;
  }
  Element parse(const std::string& text) const { return from_tokens(parse_mixed_word(model_, g_, text)); }

  std::vector<TokenT> word_of(const Element& s) const {
    std::vector<TokenT> w;
    if (s.u0 != model_.identity()) w.push_back(TokenT::of_u(s.u0));
    for (const auto& [a, u] : s.blocks) {
      for (auto l : a.letters) w.push_back(TokenT::of_letter(l));
      if (u != model_.identity()) w.push_back(TokenT::of_u(u));
    }
    return w;
  }

  Element mul(const Element& a, const Element& b) const { return apply(word_of(a), b); }
  Element inv(const Element& a) const { return from_tokens(invert_tokens(model_, word_of(a))); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::int64_t exponent(const Element& s) const {
    std::int64_t e = 0;
    for (const auto& [a, u] : s.blocks) e += topraag::exponent(a);
    return e;
  }

  NormalWord a_part(const Element& s) const {
    ArtinWord w;
    for (const auto& [a, u] : s.blocks) w.insert(w.end(), a.letters.begin(), a.letters.end());
    return raag_normal_form(g_, w, 4 * default_word_cap);
  }
  Element n_part(const Element& s) const { return mul(s, from_artin(raag_invert(g_, a_part(s)))); }

  bool in_U(const Element& s) const { return s.blocks.empty(); }
  bool in_artin(const Element& s) const {
    if (s.u0 != model_.identity()) return false;
    for (const auto& b : s.blocks)
      if (b.second != model_.identity()) return false;
    return true;
  }

  // U g determines every entry after u0, so stripping u0 of g^{-1} gives a
  // canonical label for g U; its inverse is the canonical representative.
  Element vertex_rep(const Element& g) const {
    Element h = inv(g);
    h.u0 = model_.identity();
    return inv(h);
  }

  // Checks the defining conditions of a normal sequence.
  bool is_normal(const Element& s) const {
    const U one = model_.identity();
    for (std::size_t i = 0; i < s.blocks.size(); ++i) {
      const auto& [a, u] = s.blocks[i];
      if (a.empty() || raag_normal_form(g_, a.letters) != a) return false;
      if (model_.decompose(u).second != u) return false;
      if (i + 1 < s.blocks.size() && u == one) return false;
    }
    return true;
  }

  std::string format(const Element& s) const {
    std::string out = "(" + model_.format(s.u0);
    for (const auto& [a, u] : s.blocks) out += ", " + format_word(g_, a) + ", " + model_.format(u);
    return out + ")";
  }

 private:
  Model model_;
  Graph g_;
};

}  // namespace topraag
