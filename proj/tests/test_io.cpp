#include <catch_amalgamated.hpp>

#include "topraag/io.hpp"
#include "topraag/semidirect.hpp"
#include "topraag/valley.hpp"

using namespace topraag;

TEST_CASE("graph JSON", "[io]") {
  auto g = graph_from_json(Json::parse(R"({"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["d","a"]]})"));
  REQUIRE(g == graphs::square());
  REQUIRE(graph_from_json(graph_to_json(g)) == g);
  REQUIRE_THROWS_AS(graph_from_json(Json::parse(R"({"vertices":["s"],"edges":[["s","s"]]})")), Error);
  REQUIRE_THROWS_AS(graph_from_json(Json::parse(R"({"vertices":["s","s"]})")), Error);
  REQUIRE_THROWS_AS(graph_from_json(Json::parse(R"({"vertices":["s"],"edges":[["s"]]})")), Error);
  REQUIRE_THROWS_AS(graph_from_json(Json::parse(R"({"edges":[]})")), Error);
}

TEST_CASE("model JSON", "[io]") {
  auto s = model_from_json(Json::parse(R"({"kind":"shift","m":3})"));
  REQUIRE(std::get<ShiftModel>(s).m() == 3);
  REQUIRE(std::holds_alternative<TrivialModel>(model_from_json(Json::parse(R"({"kind":"trivial"})"))));
  auto f = std::get<FiniteModel>(model_from_json(Json::parse(
      R"J({"kind":"finite","degree":3,"U_gens":[[2,1,3],"(1,2,3)"],"O_gens":[[2,3,1]],"phi_images":["perm[2,3,1]"]})J")));
  auto ref = FiniteModel::s3_a3();
  REQUIRE(f.order() == ref.order());
  REQUIRE(f.index_O() == ref.index_O());
  REQUIRE(f.is_automorphic());
  REQUIRE_THROWS_AS(model_from_json(Json::parse(R"({"kind":"shift","m":1})")), Error);
  REQUIRE_THROWS_AS(model_from_json(Json::parse(R"({"kind":"lattice"})")), Error);
  REQUIRE_THROWS_AS(model_from_json(Json::parse(
                        R"({"kind":"finite","degree":3,"U_gens":[[2,1,3]],"O_gens":[[2,1,3]],"phi_images":[[1,2,3]]})")),
                    Error);
}

TEST_CASE("complex export round trip", "[io]") {
  SemidirectEngine eng(ShiftModel(2), graphs::edge());
  auto ball = build_ball(eng, 2);
  auto j = ball_to_json(eng, ball, {{"radius", 2}});
  REQUIRE(j["vertices"].size() == ball.vertices.size());
  REQUIRE(j["cubes"].size() == ball.cubes.size());
  REQUIRE(j["cubes"][0].contains("min_corner"));
  REQUIRE(j["meta"]["radius"] == 2);
  auto back = complex_from_json(Json::parse(j.dump()));
  auto direct = to_cell_complex(ball);
  REQUIRE(reduced_homology(chain_complex(back)).groups == reduced_homology(chain_complex(direct)).groups);
  REQUIRE(back.euler_characteristic() == direct.euler_characteristic());
}

TEST_CASE("homology and graded dimension JSON", "[io]") {
  auto h = reduced_homology(chain_complex(complexes::hollow_square()));
  auto j = homology_to_json(h);
  REQUIRE(j["degrees"][1]["betti"] == 1);
  REQUIRE(j["degrees"][0]["torsion"].empty());
  REQUIRE(j["connectivity"]["value"] == 0);

  auto g = graded_from_json(Json::parse(R"({"dims":{"0":1,"3":"inf","4":0},"default":"unknown"})"));
  REQUIRE(g[0] == DimValue(1));
  REQUIRE(g[1].is_unknown());
  REQUIRE(g[3].infinite());
  REQUIRE(g[4].is_zero());
  REQUIRE(g[9].is_unknown());
  REQUIRE(graded_from_json(graded_to_json(g)) == g);
  REQUIRE(graded_to_json(sb_homology(2)).dump() == R"({"dims":{"0":1,"1":"unknown","2":"unknown","3":"inf"},"default":0})");
  REQUIRE_THROWS_AS(graded_from_json(Json::parse(R"({"dims":{"x":1}})")), Error);
  REQUIRE_THROWS_AS(graded_from_json(Json::parse(R"({"dims":{"0":-1}})")), Error);
}
