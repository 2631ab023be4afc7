#pragma once

// Random generators and independent oracles shared by the unit tests and the
// acceptance binary.

#include <random>
#include <vector>

#include "topraag/elements.hpp"
#include "topraag/graph.hpp"
#include "topraag/models.hpp"
#include "topraag/raag.hpp"

namespace topraag::testing {

inline NormalWord random_nonempty_word(const Graph& g, Rng& rng, std::size_t max_len = 4) {
  for (;;) {
    ArtinWord w;
    std::size_t len = 1 + rng() % max_len;
    for (std::size_t i = 0; i < len; ++i)
      w.push_back(Letter{static_cast<std::uint32_t>(rng() % g.size()), static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
    auto n = raag_normal_form(g, w);
    if (!n.empty()) return n;
  }
}

// Uniform choice of a normal sequence shape: u0 in U, a_i != 1, u_i in R \ {1}
// for i < n and u_n in R.
template <typename Model>
NormalSequence<typename Model::Element> random_normal_sequence(const Model& m, const Graph& g, Rng& rng,
                                                               std::size_t max_blocks = 4) {
  auto R = m.right_transversal_O();
  std::vector<typename Model::Element> Rn;
  for (auto r : R)
    if (r != m.identity()) Rn.push_back(r);
  NormalSequence<typename Model::Element> s;
  s.u0 = m.sample(rng);
  std::size_t n = rng() % (max_blocks + 1);
  if (Rn.empty()) n = std::min<std::size_t>(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = random_nonempty_word(g, rng);
    auto u = (i + 1 < n) ? Rn[rng() % Rn.size()] : R[rng() % R.size()];
    s.blocks.emplace_back(a, u);
  }
  return s;
}

using topraag::random_mixed_word;

// Independent model of A_Gamma(phi) for U = S3, O = A3, phi = id:
//   A_Gamma(phi) = A3 x| (C2 * A_Gamma),
// with C2 = <(12)> acting on A3 by inversion and A_Gamma acting trivially.
class S3A3Oracle {
 public:
  struct Value {
    int rot = 0;                    // exponent of (123) mod 3
    std::vector<NormalWord> parts;  // w0 c w1 c ... c wk
    bool operator<(const Value& o) const {
      if (rot != o.rot) return rot < o.rot;
      return parts < o.parts;
    }
    bool operator==(const Value&) const = default;
  };

  S3A3Oracle(const FiniteModel& m, const Graph& g) : m_(m), g_(g) {
    c123_ = m.parse("(123)").value();
    c12_ = m.parse("(12)").value();
  }

  Value identity() const { return Value{0, {NormalWord{}}}; }

  Value of_u(FiniteModel::Element u) const {
    // u = c123^k or c123^k * (12), found by direct search.
    auto p = m_.identity();
    for (int k = 0; k < 3; ++k) {
      if (p == u) return Value{k, {NormalWord{}}};
      if (m_.mul(p, c12_) == u) return Value{k, {NormalWord{}, NormalWord{}}};
      p = m_.mul(p, c123_);
    }
    throw std::logic_error("not in S3");
  }
  Value of_letter(Letter l) const { return Value{0, {NormalWord{{l}}}}; }

  Value mul(const Value& x, const Value& y) const {
    int sign = (x.parts.size() % 2 == 1) ? 1 : -1;
    Value r;
    r.rot = ((x.rot + sign * y.rot) % 3 + 3) % 3;
    r.parts = x.parts;
    std::vector<NormalWord> rest = y.parts;
    // Merge the touching A_Gamma words; c c cancels when a merged word is trivial.
    while (true) {
      auto merged = raag_multiply(g_, r.parts.back(), rest.front());
      if (merged.empty() && r.parts.size() > 1 && rest.size() > 1) {
        r.parts.pop_back();
        rest.erase(rest.begin());
        continue;
      }
      r.parts.back() = merged;
      r.parts.insert(r.parts.end(), rest.begin() + 1, rest.end());
      break;
    }
    return r;
  }

  Value eval(const std::vector<Token<FiniteModel::Element>>& w) const {
    Value v = identity();
    for (const auto& t : w) v = mul(v, t.is_letter ? of_letter(t.letter) : of_u(t.u));
    return v;
  }

 private:
  FiniteModel m_;
  Graph g_;
  FiniteModel::Element c123_, c12_;
};

}  // namespace topraag::testing
