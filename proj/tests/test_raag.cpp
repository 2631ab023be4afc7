#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "topraag/raag.hpp"

using namespace topraag;

namespace {

// Every word reachable by commuting adjacent letters and deleting adjacent
// inverse pairs; the shortest ones form the reduced shuffle class.
ArtinWord brute_normal_form(const Graph& g, const ArtinWord& w) {
  std::set<ArtinWord, bool (*)(const ArtinWord&, const ArtinWord&)> seen(
      +[](const ArtinWord& a, const ArtinWord& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  std::vector<ArtinWord> stack{w};
  seen.insert(w);
  while (!stack.empty()) {
    ArtinWord x = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      ArtinWord y = x;
      if (x[i] == x[i + 1].inverse()) {
        y.erase(y.begin() + static_cast<long>(i), y.begin() + static_cast<long>(i) + 2);
      } else if (x[i].gen != x[i + 1].gen && g.adjacent(x[i].gen, x[i + 1].gen)) {
        std::swap(y[i], y[i + 1]);
      } else {
        continue;
      }
      if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return *seen.begin();
}

std::vector<Letter> alphabet(const Graph& g) {
  std::vector<Letter> a;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    a.push_back({v, 1});
    a.push_back({v, -1});
  }
  return a;
}

void for_all_words(const std::vector<Letter>& alpha, std::size_t max_len,
                   const std::function<void(const ArtinWord&)>& f) {
  ArtinWord w;
  std::function<void()> rec = [&] {
    f(w);
    if (w.size() == max_len) return;
    for (auto l : alpha) {
      w.push_back(l);
      rec();
      w.pop_back();
    }
  };
  rec();
}

NormalWord nf(const Graph& g, const std::string& s) { return raag_normal_form(g, parse_artin_word(g, s)); }

}  // namespace

TEST_CASE("raag normal form examples", "[raag]") {
  auto e = graphs::edge();
  REQUIRE(format_word(e, nf(e, "t s")) == "s t");
  REQUIRE(nf(e, "s t s^-1 t^-1").empty());
  auto free2 = graphs::edgeless(2, "x");
  auto f = validate_graph({"s", "t"}, {});
  REQUIRE(format_word(f, nf(f, "s t s^-1")) == "s t s^-1");
  REQUIRE(raag_multiply(e, nf(e, "s"), nf(e, "s^-1")).empty());
  REQUIRE(format_word(e, raag_multiply(e, nf(e, "s"), nf(e, "t"))) == "s t");
  REQUIRE(format_word(e, raag_multiply(e, nf(e, "t"), nf(e, "s"))) == "s t");
  REQUIRE(format_word(e, raag_invert(e, nf(e, "s t"))) == "s^-1 t^-1");
  REQUIRE_THROWS_AS(parse_artin_word(e, "s q"), Error);
  REQUIRE_THROWS_AS(raag_multiply(graphs::point(), nf(e, "t"), nf(e, "s")), Error);
}

TEST_CASE("word length cap is enforced", "[raag]") {
  auto e = graphs::edge();
  ArtinWord w(default_word_cap + 1, Letter{0, 1});
  try {
    raag_normal_form(e, w);
    FAIL("expected WordTooLong");
  } catch (const Error& err) {
    REQUIRE(err.code() == ErrorCode::WordTooLong);
  }
}

TEST_CASE("normal form matches shuffle-class enumeration on all short words", "[raag]") {
  std::vector<Graph> gs{graphs::point(), graphs::edge(), validate_graph({"s", "t"}, {}), graphs::path3(),
                        graphs::triangle(), graphs::square(),
                        validate_graph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}})};
  for (const auto& g : gs) {
    const std::size_t len = 6;
    std::map<ArtinWord, ArtinWord> seen_nf;  // brute form -> engine form
    for_all_words(alphabet(g), len, [&](const ArtinWord& w) {
      auto ours = raag_normal_form(g, w);
      auto brute = brute_normal_form(g, w);
      REQUIRE(ours.letters == brute);
      REQUIRE(raag_normal_form(g, ours.letters) == ours);
    });
  }
}

TEST_CASE("exponent is a homomorphism and constant on classes", "[raag]") {
  auto e = graphs::edge();
  REQUIRE(exponent(parse_artin_word(e, "s t^-1")) == 0);
  REQUIRE(exponent(parse_artin_word(e, "s s t")) == 3);
  REQUIRE(exponent(parse_artin_word(e, "s t s^-1 t^-1")) == 0);
  std::mt19937_64 rng(2);
  auto g = graphs::square();
  auto alpha = alphabet(g);
  for (int i = 0; i < 500; ++i) {
    ArtinWord a, b;
    for (int j = 0; j < 8; ++j) a.push_back(alpha[rng() % 8]);
    for (int j = 0; j < 8; ++j) b.push_back(alpha[rng() % 8]);
    auto na = raag_normal_form(g, a), nb = raag_normal_form(g, b);
    REQUIRE(exponent(na) == exponent(a));
    REQUIRE(exponent(raag_multiply(g, na, nb)) == exponent(na) + exponent(nb));
  }
}

TEST_CASE("parabolic projection", "[raag]") {
  auto c4 = graphs::square();  // a-b-c-d-a, so {a,c} v {b,d}
  REQUIRE(format_word(c4, parabolic_project(c4, {0, 2}, nf(c4, "a b c"))) == "a c");
  auto w = nf(c4, "a b c d^-1 a");
  REQUIRE(parabolic_project(c4, {0, 1, 2, 3}, w) == w);
  auto e = graphs::edge();
  REQUIRE(format_word(e, parabolic_project(e, {0}, nf(e, "s t"))) == "s");
  try {
    parabolic_project(graphs::path3(), {0}, NormalWord{});
    FAIL("expected NotAJoinFactor");
  } catch (const Error& err) {
    REQUIRE(err.code() == ErrorCode::NotAJoinFactor);
  }
  // Retraction: identity on A_T and a homomorphism.
  std::mt19937_64 rng(8);
  auto alpha = alphabet(c4);
  for (int i = 0; i < 300; ++i) {
    ArtinWord a, b, t;
    for (int j = 0; j < 7; ++j) a.push_back(alpha[rng() % 8]);
    for (int j = 0; j < 7; ++j) b.push_back(alpha[rng() % 8]);
    for (int j = 0; j < 7; ++j) t.push_back(Letter{rng() % 2 ? 0u : 2u, static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
    auto nt = raag_normal_form(c4, t);
    REQUIRE(parabolic_project(c4, {0, 2}, nt) == nt);
    auto na = raag_normal_form(c4, a), nb = raag_normal_form(c4, b);
    REQUIRE(parabolic_project(c4, {0, 2}, raag_multiply(c4, na, nb)) ==
            raag_multiply(c4, parabolic_project(c4, {0, 2}, na), parabolic_project(c4, {0, 2}, nb)));
  }
}

TEST_CASE("complete graphs: normal forms biject with exponent vectors", "[raag]") {
  auto k3 = graphs::triangle();
  std::mt19937_64 rng(4);
  auto alpha = alphabet(k3);
  std::map<std::vector<int>, NormalWord> by_vector;
  for (int i = 0; i < 2000; ++i) {
    ArtinWord w;
    for (int j = 0; j < 6; ++j) w.push_back(alpha[rng() % alpha.size()]);
    std::vector<int> v(3, 0);
    for (auto l : w) v[l.gen] += l.exp;
    auto n = raag_normal_form(k3, w);
    auto [it, inserted] = by_vector.emplace(v, n);
    REQUIRE(it->second == n);
  }
  std::set<NormalWord> distinct;
  for (auto& [v, n] : by_vector) distinct.insert(n);
  REQUIRE(distinct.size() == by_vector.size());
}

TEST_CASE("balanced relators", "[raag]") {
  REQUIRE(is_balanced({"s t s^-1 t^-1"}));
  REQUIRE_FALSE(is_balanced({"x x"}));
  REQUIRE(is_balanced({"a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"}));
}
