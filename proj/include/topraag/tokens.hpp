#pragma once

// Mixed words over U and the Artin generators, e.g. "s perm[2,1,3] t^-1" or "s 1 s^-1".

#include <sstream>
#include <string>
#include <vector>

#include "topraag/error.hpp"
#include "topraag/graph.hpp"
#include "topraag/raag.hpp"

namespace topraag {

template <typename U>
struct Token {
  bool is_letter = false;
  Letter letter{};
  U u{};

  static Token of_letter(Letter l) { return Token{true, l, U{}}; }
  static Token of_u(U x) { return Token{false, Letter{}, x}; }
};

template <typename Model>
std::vector<Token<typename Model::Element>> parse_mixed_word(const Model& model, const Graph& g,
                                                             const std::string& text) {
  std::vector<Token<typename Model::Element>> out;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    ArtinWord w;
    if (parse_letter_token(g, tok, w)) {
      for (auto l : w) out.push_back(Token<typename Model::Element>::of_letter(l));
      continue;
    }
    auto u = model.parse(tok);
    if (!u) raise(ErrorCode::ParseError, "unrecognised token '" + tok + "'");
    out.push_back(Token<typename Model::Element>::of_u(*u));
  }
  return out;
}

template <typename Model>
std::vector<Token<typename Model::Element>> invert_tokens(const Model& model,
                                                          const std::vector<Token<typename Model::Element>>& w) {
  std::vector<Token<typename Model::Element>> r;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r.push_back(it->is_letter ? Token<typename Model::Element>::of_letter(it->letter.inverse())
                              : Token<typename Model::Element>::of_u(model.inv(it->u)));
  return r;
}

template <typename Model>
std::string format_tokens(const Model& model, const Graph& g,
                          const std::vector<Token<typename Model::Element>>& w) {
  std::string out;
  for (const auto& t : w) {
    if (!out.empty()) out += " ";
    out += t.is_letter ? format_letter(g, t.letter) : model.format(t.u);
  }
  return out;
}

}  // namespace topraag
