#pragma once

// Right-angled Artin groups: canonical words, exponent map, parabolic retractions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "topraag/error.hpp"
#include "topraag/graph.hpp"

namespace topraag {

struct Letter {
  std::uint32_t gen = 0;
  std::int8_t exp = 1;  // +1 or -1

  bool operator==(const Letter&) const = default;
  Letter inverse() const { return {gen, static_cast<std::int8_t>(-exp)}; }
  // Alphabet order: generators in vertex order, s before s^-1.
  friend bool operator<(const Letter& a, const Letter& b) {
    if (a.gen != b.gen) return a.gen < b.gen;
    return a.exp > b.exp;
  }
};

using ArtinWord = std::vector<Letter>;

inline constexpr std::size_t default_word_cap = 10000;

// Canonical word: freely reduced and ShortLex-least in its shuffle class.
struct NormalWord {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const NormalWord&) const = default;
  friend bool operator<(const NormalWord& a, const NormalWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  }
};

namespace detail {

inline void check_letters(const Graph& g, const ArtinWord& w) {
  for (const auto& l : w) {
    if (l.gen >= g.size()) raise(ErrorCode::UnknownGenerator, "generator index " + std::to_string(l.gen));
    if (l.exp != 1 && l.exp != -1) raise(ErrorCode::UnknownGenerator, "letter exponent must be +-1");
  }
}

// Free and shuffle reduction: an incoming letter cancels against the nearest
// earlier letter on the same generator if everything in between commutes with it.
inline ArtinWord reduce(const Graph& g, const ArtinWord& w) {
  ArtinWord out;
  out.reserve(w.size());
  for (const auto& x : w) {
    bool cancelled = false;
    for (std::size_t j = out.size(); j-- > 0;) {
      if (out[j].gen == x.gen) {
        if (out[j].exp == -x.exp) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
          cancelled = true;
        }
        break;
      }
      if (!g.adjacent(out[j].gen, x.gen)) break;
    }
    if (!cancelled) out.push_back(x);
  }
  return out;
}

// Lexicographically least linearisation of the dependence order of a reduced word.
inline ArtinWord lex_least(const Graph& g, ArtinWord w) {
  ArtinWord out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::size_t best = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (best < w.size() && !(w[i] < w[best])) continue;
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j)
        if (w[j].gen == w[i].gen || !g.adjacent(w[j].gen, w[i].gen)) free = false;
      if (free) best = i;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

}  // namespace detail

inline NormalWord raag_normal_form(const Graph& g, const ArtinWord& w,
                                   std::size_t cap = default_word_cap) {
  if (w.size() > cap) raise(ErrorCode::WordTooLong, std::to_string(w.size()) + " letters");
  detail::check_letters(g, w);
  return NormalWord{detail::lex_least(g, detail::reduce(g, w))};
}

inline NormalWord raag_multiply(const Graph& g, const NormalWord& a, const NormalWord& b) {
  for (const auto* w : {&a, &b})
    for (const auto& l : w->letters)
      if (l.gen >= g.size()) raise(ErrorCode::GraphMismatch, "word uses a generator outside the graph");
  ArtinWord w = a.letters;
  w.insert(w.end(), b.letters.begin(), b.letters.end());
  return raag_normal_form(g, w, 2 * default_word_cap);
}

inline ArtinWord word_inverse(const ArtinWord& w) {
  ArtinWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

inline NormalWord raag_invert(const Graph& g, const NormalWord& a) {
  for (const auto& l : a.letters)
    if (l.gen >= g.size()) raise(ErrorCode::GraphMismatch, "word uses a generator outside the graph");
  return raag_normal_form(g, word_inverse(a.letters));
}

inline std::int64_t exponent(const ArtinWord& w) {
  std::int64_t e = 0;
  for (const auto& l : w) e += l.exp;
  return e;
}
inline std::int64_t exponent(const NormalWord& w) { return exponent(w.letters); }

// Retraction onto A_T; T must be a join factor (adjacent to every vertex outside T).
inline NormalWord parabolic_project(const Graph& g, const std::vector<std::size_t>& T, const NormalWord& w) {
  std::vector<bool> inT(g.size(), false);
  for (auto t : T) {
    if (t >= g.size()) raise(ErrorCode::UnknownGenerator, "vertex index " + std::to_string(t));
    inT[t] = true;
  }
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (inT[a] && !inT[b] && !g.adjacent(a, b))
        raise(ErrorCode::NotAJoinFactor, g.label(a) + " is not adjacent to " + g.label(b));
  ArtinWord kept;
  for (const auto& l : w.letters)
    if (inT[l.gen]) kept.push_back(l);
  return raag_normal_form(g, kept);
}

// Tokens "s", "s^-1", "s^3"; powers expand to repeated letters.
inline bool parse_letter_token(const Graph& g, const std::string& tok, ArtinWord& out) {
  std::string name = tok;
  long power = 1;
  auto caret = tok.find('^');
  if (caret != std::string::npos) {
    name = tok.substr(0, caret);
    std::string p = tok.substr(caret + 1);
    try {
      std::size_t used = 0;
      power = std::stol(p, &used);
      if (used != p.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  auto idx = g.index_of(name);
  if (!idx) return false;
  std::int8_t e = power < 0 ? -1 : 1;
  for (long i = 0; i < std::labs(power); ++i) out.push_back({static_cast<std::uint32_t>(*idx), e});
  return true;
}

inline ArtinWord parse_artin_word(const Graph& g, const std::string& text) {
  ArtinWord w;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok)
    if (!parse_letter_token(g, tok, w)) raise(ErrorCode::UnknownGenerator, tok);
  return w;
}

inline std::string format_letter(const Graph& g, const Letter& l) {
  return l.exp > 0 ? g.label(l.gen) : g.label(l.gen) + "^-1";
}

inline std::string format_word(const Graph& g, const ArtinWord& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += " ";
    out += format_letter(g, l);
  }
  return out;
}
inline std::string format_word(const Graph& g, const NormalWord& w) { return format_word(g, w.letters); }

// Relators over an arbitrary alphabet, e.g. "a1 b1 a1^-1 b1^-1".
inline bool is_balanced(const std::vector<std::string>& relators) {
  for (const auto& r : relators) {
    std::istringstream ss(r);
    std::string tok;
    long sum = 0;
    while (ss >> tok) {
      auto caret = tok.find('^');
      sum += caret == std::string::npos ? 1 : std::stol(tok.substr(caret + 1));
    }
    if (sum != 0) return false;
  }
  return true;
}

}  // namespace topraag
