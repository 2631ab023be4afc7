#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "topraag/models.hpp"

using namespace topraag;

namespace {

FiniteModel::Element cyc(const FiniteModel& m, const std::string& s) { return m.parse(s).value(); }

}  // namespace

TEST_CASE("S3/A3 decompositions by coset scan", "[models]") {
  auto m = FiniteModel::s3_a3();
  REQUIRE(m.order() == 6);
  REQUIRE(m.O_elements().size() == 3);
  auto e = m.identity();
  auto t12 = cyc(m, "(12)");
  auto c123 = cyc(m, "(123)");
  REQUIRE(m.decompose(t12) == std::pair{e, t12});
  REQUIRE(m.decompose(c123) == std::pair{c123, e});
  REQUIRE(m.index_O() == 2);
  REQUIRE(m.index_phiO() == 2);
  REQUIRE(m.is_automorphic());
  REQUIRE_FALSE(m.is_shrinking());
  REQUIRE(m.phi(c123) == c123);
  REQUIRE(m.format(t12) == "perm[2,1,3]");
  REQUIRE(m.parse("perm[2,1,3]") == t12);
}

TEST_CASE("decompose is a bijection onto O x R with 1 in R", "[models]") {
  std::vector<FiniteModel> models{
      FiniteModel::s3_a3(),
      // U = S4, O = S3 on {1,2,3}, phi = conjugation by (14): O -> S3 on {2,3,4}.
      FiniteModel::from_one_line(4, {{2, 1, 3, 4}, {2, 3, 4, 1}}, {{2, 1, 3, 4}, {2, 3, 1, 4}},
                                 {{1, 3, 2, 4}, {1, 3, 4, 2}}),
      // U = Z/6 generated by a 6-cycle, O = <c^2>, phi = inversion.
      FiniteModel::from_one_line(6, {{2, 3, 4, 5, 6, 1}}, {{3, 4, 5, 6, 1, 2}}, {{5, 6, 1, 2, 3, 4}}),
  };
  for (const auto& m : models) {
    std::set<std::pair<FiniteModel::Element, FiniteModel::Element>> pairs;
    std::set<FiniteModel::Element> reps;
    for (auto u : m.elements()) {
      auto [w, r] = m.decompose(u);
      REQUIRE(m.in_O(w));
      REQUIRE(m.mul(w, r) == u);
      pairs.insert({w, r});
      reps.insert(r);
      auto [v, r2] = m.decompose_phi(u);
      REQUIRE(m.in_phiO(v));
      REQUIRE(m.mul(v, r2) == u);
    }
    REQUIRE(pairs.size() == m.order());
    REQUIRE(reps.count(m.identity()));
    REQUIRE(reps.size() * m.O_elements().size() == m.order());
    REQUIRE(m.index_O() == reps.size());
    // phi: exhaustive homomorphism and injectivity.
    std::set<FiniteModel::Element> images;
    for (auto a : m.O_elements()) {
      images.insert(m.phi(a));
      REQUIRE(m.phi_inv(m.phi(a)) == a);
      for (auto b : m.O_elements()) REQUIRE(m.phi(m.mul(a, b)) == m.mul(m.phi(a), m.phi(b)));
    }
    REQUIRE(images.size() == m.O_elements().size());
  }
  REQUIRE_FALSE(models[1].is_automorphic());
  REQUIRE(models[2].is_automorphic());
}

TEST_CASE("invalid finite models are rejected", "[models]") {
  // phi sending a 3-cycle to a transposition is not a homomorphism.
  REQUIRE_THROWS_AS(FiniteModel::from_one_line(3, {{2, 1, 3}, {2, 3, 1}}, {{2, 3, 1}}, {{2, 1, 3}}), Error);
  // O generator outside U.
  REQUIRE_THROWS_AS(FiniteModel::from_one_line(3, {{2, 3, 1}}, {{2, 1, 3}}, {{2, 1, 3}}), Error);
  auto m = FiniteModel::s3_a3();
  REQUIRE_THROWS_AS(m.phi(cyc(m, "(12)")), Error);
}

TEST_CASE("shift model arithmetic", "[models]") {
  ShiftModel m(2);
  REQUIRE(m.phi(3) == 6);
  REQUIRE(m.phi_inv(6) == 3);
  try {
    m.phi_inv(3);
    FAIL("expected NotInDomain");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NotInDomain);
  }
  REQUIRE(m.index_O() == 1);
  REQUIRE(m.index_phiO() == 2);
  REQUIRE(m.reduce_N({1, 6}) == NElem{0, 3});
  REQUIRE(m.reduce_N({0, 5}) == NElem{0, 5});
  REQUIRE(m.reduce_N({3, 8}) == NElem{0, 1});
  REQUIRE(m.phi_depth(6) == 1);
  REQUIRE(m.phi_depth(5) == 0);
  REQUIRE(ShiftModel(3).phi_depth(27) == 3);
  REQUIRE_FALSE(m.phi_depth(0).has_value());
  REQUIRE(m.is_shrinking());
  REQUIRE_FALSE(m.is_automorphic());
  REQUIRE_THROWS_AS(ShiftModel(1), Error);
}

TEST_CASE("reduce_N is idempotent and Z[1/m] arithmetic matches rationals", "[models]") {
  std::mt19937_64 rng(5);
  for (std::int64_t mm : {2, 3, 5}) {
    ShiftModel m(mm);
    std::uniform_int_distribution<std::int64_t> ku(0, 4), uu(-200, 200);
    for (int i = 0; i < 1000; ++i) {
      NElem a{ku(rng), uu(rng)}, b{ku(rng), uu(rng)};
      auto ra = m.reduce_N(a), rb = m.reduce_N(b);
      REQUIRE(m.reduce_N(ra) == ra);
      // Cross-multiplied rational comparison: u/m^k.
      long double va = static_cast<long double>(a.u) / std::pow(static_cast<long double>(mm), a.k);
      long double vb = static_cast<long double>(b.u) / std::pow(static_cast<long double>(mm), b.k);
      auto sum = m.n_add(a, b);
      long double vs = static_cast<long double>(sum.u) / std::pow(static_cast<long double>(mm), sum.k);
      REQUIRE(std::fabs(static_cast<double>(vs - (va + vb))) < 1e-9);
      // Independent of representatives.
      REQUIRE(m.n_add(ra, rb) == sum);
      REQUIRE(m.n_add({a.k + 1, a.u * mm}, b) == sum);
      // Injectivity of (k,u) -> u/m^k on reduced pairs.
      if (ra != rb) REQUIRE(std::fabs(static_cast<double>(va - vb)) > 1e-12);
    }
  }
}

TEST_CASE("trivial model is degenerate", "[models]") {
  TrivialModel t;
  REQUIRE(t.decompose(0) == std::pair<std::uint32_t, std::uint32_t>{0, 0});
  REQUIRE(t.index_O() == 1);
  REQUIRE(t.index_phiO() == 1);
  REQUIRE(t.is_automorphic());
}
