// Command-line front end: build balls, run verification suites, compute
// homology. Reports are JSON on stdout; exit 0 on success, 1 on a property or
// regime failure, 2 on a usage or configuration error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "topraag/apartments.hpp"
#include "topraag/cube_checks.hpp"
#include "topraag/elements.hpp"
#include "topraag/graded_dim.hpp"
#include "topraag/homology.hpp"
#include "topraag/io.hpp"
#include "topraag/salvetti.hpp"
#include "topraag/valley.hpp"

using namespace topraag;

namespace {

struct RunConfig {
  std::string command;
  std::string graph_path;
  std::string model_path;
  std::string complex_path;
  std::string suite;
  std::string out_path;
  std::size_t radius = 2;
  std::optional<std::int64_t> latitude;
  std::size_t window = 4;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  ResourceCaps caps;
};

// Configuration or usage problems map to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << x;
  return os.str();
}

// Inputs as parsed JSON plus every option that affects the result.
Json config_json(const RunConfig& c, const Json& graph, const Json& model, const Json& complex) {
  Json j;
  j["command"] = c.command;
  if (!c.suite.empty()) j["suite"] = c.suite;
  if (!graph.is_null()) j["graph"] = graph;
  if (!model.is_null()) j["model"] = model;
  if (!complex.is_null()) j["complex"] = complex;
  j["radius"] = c.radius;
  if (c.latitude) j["latitude"] = *c.latitude;
  j["window"] = c.window;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["cap_vertices"] = c.caps.max_vertices;
  j["cap_cubes"] = c.caps.max_cubes;
  return j;
}

// Calls f with the element engine matching the (model, graph) regime.
template <typename F>
Json with_engine(const AnyModel& model, const Graph& g, F&& f) {
  return std::visit(
      [&](const auto& m) -> Json {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ShiftModel>) {
          if (is_connected(g)) return f(SemidirectEngine(m, g));
          if (g.edge_count() == 0) return f(BrittonEngine<ShiftModel>(m, g));
          return f(SemidirectEngine(m, g));  // raises DisconnectedGraph with a per-component hint
        } else if constexpr (std::is_same_v<M, FiniteModel>) {
          if (m.is_automorphic()) return f(NormalSequenceEngine<FiniteModel>(m, g));
          if (g.edge_count() == 0) return f(BrittonEngine<FiniteModel>(m, g));
          raise(ErrorCode::RegimeMismatch, "a finite model with phi(O) != O needs an edgeless graph");
        } else {
          return f(NormalSequenceEngine<TrivialModel>(m, g));
        }
      },
      model);
}

template <ElementEngine E>
std::string regime_of(const E&) {
  if constexpr (std::is_same_v<E, SemidirectEngine>) return "shift";
  else if constexpr (is_normal_sequence_engine<E>) return "automorphic";
  else return "britton";
}

template <ElementEngine E>
Json ball_summary(const E& engine, const CubeBall<E>& ball) {
  Json j;
  j["regime"] = regime_of(engine);
  j["vertices"] = ball.vertices.size();
  Json by_dim = Json::array();
  for (std::size_t d = 1; d <= ball.max_dim; ++d) by_dim.push_back(ball.count_dim(d));
  j["cubes_by_dim"] = by_dim;
  j["degree"] = cayley_abels_degree(engine.model(), engine.graph());
  std::optional<std::size_t> lo, hi;
  for (std::size_t v = 0; v < ball.vertices.size(); ++v)
    if (ball.vertices[v].dist < ball.radius) {
      auto d = ball.neighbours[v].size();
      lo = lo ? std::min(*lo, d) : d;
      hi = hi ? std::max(*hi, d) : d;
    }
  if (lo) j["observed_degree"] = {{"min", *lo}, {"max", *hi}};
  j["dimension"] = clique_number(engine.graph());
  return j;
}

struct Property {
  std::string name;
  bool pass = true;
  Json details = Json::object();
  Json counterexamples = Json::array();
};

Json properties_json(const std::vector<Property>& ps, bool& all_pass) {
  Json arr = Json::array();
  all_pass = true;
  for (const auto& p : ps) {
    all_pass = all_pass && p.pass;
    Json j{{"name", p.name}, {"status", p.pass ? "PASS" : "FAIL"}, {"details", p.details}};
    if (!p.counterexamples.empty()) j["counterexamples"] = p.counterexamples;
    arr.push_back(j);
  }
  return arr;
}

template <ElementEngine E>
std::vector<Property> suite_normal_form(const E& engine, const RunConfig& c) {
  Rng rng(c.seed);
  const auto& m = engine.model();
  const auto& g = engine.graph();
  Property round{"word_round_trip"}, group{"group_axioms"}, rel{"defining_relations"};
  std::size_t checked = 0;
  for (std::size_t i = 0; i < c.samples; ++i) {
    auto x = engine.from_tokens(random_mixed_word(m, g, rng, 1 + rng() % 8));
    auto y = engine.from_tokens(random_mixed_word(m, g, rng, 1 + rng() % 8));
    ++checked;
    if (!(engine.from_tokens(engine.word_of(x)) == x)) {
      round.pass = false;
      if (round.counterexamples.size() < 5) round.counterexamples.push_back(engine.format(x));
    }
    bool ok = engine.mul(x, engine.inv(x)) == engine.identity() &&
              engine.inv(engine.mul(x, y)) == engine.mul(engine.inv(y), engine.inv(x)) &&
              engine.exponent(engine.mul(x, y)) == engine.exponent(x) + engine.exponent(y);
    if (!ok) {
      group.pass = false;
      if (group.counterexamples.size() < 5) group.counterexamples.push_back(engine.format(x) + " ; " + engine.format(y));
    }
  }
  round.details["samples"] = checked;
  group.details["samples"] = checked;
  auto rep = verify_relations(engine, o_sample(m, rng));
  rel.pass = rep.ok;
  rel.details["checked"] = rep.checked;
  for (const auto& v : rep.violations) rel.counterexamples.push_back(v);
  return {round, group, rel};
}

template <ElementEngine E>
std::vector<Property> suite_stabilisers(const E& engine, const RunConfig& c) {
  auto ball = build_ball(engine, c.radius, c.caps);
  Property p{"stabiliser_formula"};
  std::size_t cells = 0;
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    ++cells;
    const auto& h = ball.vertices[v].rep;
    if (stabiliser_bruteforce(engine, {h}, h) != stabiliser_formula(engine, 0, h)) {
      p.pass = false;
      if (p.counterexamples.size() < 5) p.counterexamples.push_back("vertex " + engine.format(h));
    }
  }
  for (std::size_t k = 0; k < ball.cubes.size(); ++k) {
    ++cells;
    const auto& cube = ball.cubes[k];
    if (stabiliser_bruteforce(engine, corner_reps(ball, k), cube.rep) !=
        stabiliser_formula(engine, cube.dim(), cube.rep)) {
      p.pass = false;
      if (p.counterexamples.size() < 5) p.counterexamples.push_back("cube " + engine.format(cube.rep));
    }
  }
  p.details["cells"] = cells;
  return {p};
}

template <ElementEngine E>
std::vector<Property> suite_intersections(const E& engine, const RunConfig& c) {
  auto ball = build_ball(engine, c.radius, c.caps);
  auto r = check_trichotomy(engine, ball);
  Property agree{"classification_matches_fixed_cells"}, shape{"intersection_shape"};
  agree.pass = r.disagreements == 0;
  agree.details = {{"apartments", r.apartments}, {"pairs", r.pairs}, {"cells_checked", r.cells_checked},
                   {"empty", r.empty}, {"vertices_only", r.vertices_only}, {"valley_union", r.valley_union}};
  for (const auto& s : r.counterexamples) agree.counterexamples.push_back(s);
  shape.pass = std::is_same_v<E, SemidirectEngine> ? r.shift_shape_ok : r.automorphic_shape_ok;
  shape.details["expected"] = std::is_same_v<E, SemidirectEngine> ? "valleys at latitude epsilon(n)"
                                                                   : "empty or a single vertex";
  return {agree, shape};
}

template <ElementEngine E>
std::vector<Property> suite_nerve(const E& engine, const RunConfig& c) {
  auto ball = build_ball(engine, c.radius, c.caps);
  auto nv = nerve_graph(engine, ball);
  const auto n = nv.graph.size();
  Property p{std::is_same_v<E, SemidirectEngine> ? "nerve_complete" : "nerve_chordal"};
  p.details = {{"apartments", n}, {"edges", nv.graph.edge_count()}};
  if constexpr (std::is_same_v<E, SemidirectEngine>) {
    p.pass = nv.graph.edge_count() == n * (n - 1) / 2;
  } else {
    auto ch = is_chordal(nv.graph);
    p.pass = ch.chordal;
    if (!ch.chordal) {
      Json cyc = Json::array();
      for (auto v : ch.induced_cycle) cyc.push_back(nv.handles[v]);
      p.counterexamples.push_back(cyc);
    }
  }
  return {p};
}

template <ElementEngine E>
bool expects_pockets(const E& engine, std::size_t radius) {
  return std::is_same_v<E, SemidirectEngine> && engine.graph().edge_count() > 0 && radius >= 2;
}

template <ElementEngine E>
std::vector<Property> suite_pockets(const E& engine, const RunConfig& c) {
  auto ball = build_ball(engine, c.radius, c.caps);
  auto pockets = detect_pockets(ball);
  const bool expect = expects_pockets(engine, c.radius);
  Property p{expect ? "pockets_present" : "no_pockets"};
  p.pass = expect ? !pockets.empty() : pockets.empty();
  p.details = {{"pockets", pockets.size()}, {"squares", ball.count_dim(2)}};
  for (std::size_t i = 0; i < pockets.size() && i < 3; ++i) {
    Json w = Json::array();
    for (auto q : {pockets[i].cube_a, pockets[i].cube_b}) {
      Json corners = Json::array();
      for (auto v : ball.cubes[q].corners) corners.push_back(engine.format(ball.vertices[v].rep));
      w.push_back(corners);
    }
    (expect ? p.details["witnesses"] : p.counterexamples).push_back(w);
  }
  return {p};
}

template <ElementEngine E>
std::vector<Property> suite_links(const E& engine, const RunConfig& c) {
  auto ball = build_ball(engine, c.radius, c.caps);
  auto rep = check_links(ball);
  auto pockets = detect_pockets(ball);
  std::vector<Property> out;
  Property dich{"face_condition_iff_no_pockets"};
  dich.pass = rep.face_condition == pockets.empty();
  dich.details = {{"face_condition", rep.face_condition}, {"pockets", pockets.size()},
                  {"face_violations", rep.face_violations.size()}};
  out.push_back(dich);
  if (!std::is_same_v<E, SemidirectEngine>) {
    Property cat{"flag_links_and_common_faces"};
    cat.pass = rep.all_flag && rep.face_condition;
    cat.details = {{"interior_vertices", rep.vertices.size()}, {"all_flag", rep.all_flag}};
    for (const auto& v : rep.vertices)
      if ((!v.flag || !v.simplicial) && cat.counterexamples.size() < 5)
        cat.counterexamples.push_back(engine.format(ball.vertices[v.vertex].rep));
    out.push_back(cat);
  }
  return out;
}

Json stabilised_json(const StabilisedHomology& s) {
  Json im = Json::array(), im1 = Json::array();
  for (auto x : s.image_r) im.push_back(x);
  for (auto x : s.image_r1) im1.push_back(x);
  return {{"radius", s.radius},
          {"raw_at_radius", homology_to_json(s.raw_r)},
          {"raw_at_radius_plus_1", homology_to_json(s.raw_r1)},
          {"image_ranks", im},
          {"image_ranks_next", im1},
          {"stabilised", s.stabilised}};
}

std::vector<Property> suite_valleys(const Graph& g, const RunConfig& c, Json& extra) {
  const std::int64_t t = c.latitude.value_or(0);
  auto s = valley_homology(g, t, c.window, c.caps);
  auto lh = reduced_homology(simplicial_chain_complex(clique_complex(g)), clique_number(g));
  auto lc = homological_connectivity(lh);
  // Connectivity read off the image ranks, over the same degree range.
  std::int64_t vc = static_cast<std::int64_t>(s.image_r.size()) - 1;
  bool v_limited = true;
  for (std::size_t k = 0; k < s.image_r.size(); ++k)
    if (s.image_r[k] != 0) {
      vc = static_cast<std::int64_t>(k) - 1;
      v_limited = false;
      break;
    }
  extra["valley"] = stabilised_json(s);
  extra["clique_complex"] = homology_to_json(lh);
  Property stab{"stabilised"}, conn{"valley_connected"}, match{"connectivity_matches_clique_complex"};
  stab.pass = s.stabilised;
  conn.pass = s.stabilised && s.vanishes(0);
  // Range-limited values agree when both sides vanished through the range.
  match.pass = s.stabilised && (vc == lc.value || (v_limited && lc.range_limited && vc >= lc.value - 1));
  match.details = {{"valley", vc}, {"valley_within_computed_range", v_limited},
                   {"clique_complex", lc.value}, {"clique_complex_within_computed_range", lc.range_limited}};
  return {stab, conn, match};
}

std::vector<Property> suite_sb(const RunConfig& c, Json& extra) {
  auto g = sb_homology(c.n);
  extra["dims"] = graded_to_json(g);
  Property p{"infinite_dimension_above_n"};
  p.pass = g[c.n + 1].infinite();
  for (std::size_t d = c.n + 2; d < c.n + 12; ++d) p.pass = p.pass && g[d].is_zero();
  p.details = {{"degree", c.n + 1}, {"value", dim_to_json(g[c.n + 1])}};
  return {p};
}

void emit(const Json& report, const RunConfig& c) {
  std::cout << report.dump(2) << "\n";
  if (!c.out_path.empty() && c.command != "build") {
    std::ofstream out(c.out_path);
    if (!out) throw ConfigError("cannot write " + c.out_path);
    out << report.dump(2) << "\n";
  }
}

int run(RunConfig& c) {
  Json graph_j, model_j, complex_j;
  std::optional<Graph> graph;
  std::optional<AnyModel> model;
  const bool needs_inputs = c.command == "build" || (c.command == "verify" && c.suite != "sb" && c.suite != "valleys");
  if (!c.graph_path.empty()) {
    graph_j = read_json(c.graph_path);
    graph = graph_from_json(graph_j);
  }
  if (!c.model_path.empty()) {
    model_j = read_json(c.model_path);
    model = model_from_json(model_j);
  }
  if (!c.complex_path.empty()) complex_j = read_json(c.complex_path);
  if (needs_inputs && (!graph || !model)) throw ConfigError("--graph and --model are required");
  if (c.command == "verify" && c.suite == "valleys" && !graph) throw ConfigError("--graph is required");

  Json cfg = config_json(c, graph_j, model_j, complex_j);
  Json report;
  report["command"] = c.command;
  report["config_hash"] = hex(fnv1a(cfg.dump()));

  if (c.command == "build") {
    Json export_json;
    report["summary"] = with_engine(*model, *graph, [&](const auto& engine) {
      auto ball = build_ball(engine, c.radius, c.caps);
      if (!c.out_path.empty())
        export_json = ball_to_json(engine, ball,
                                   {{"model", model_j}, {"graph", graph_j}, {"radius", c.radius},
                                    {"config_hash", report["config_hash"]}});
      return ball_summary(engine, ball);
    });
    if (!c.out_path.empty()) {
      std::ofstream out(c.out_path);
      if (!out) throw ConfigError("cannot write " + c.out_path);
      out << export_json.dump(2) << "\n";
      report["export"] = c.out_path;
    }
    emit(report, c);
    return 0;
  }

  if (c.command == "verify") {
    report["suite"] = c.suite;
    std::vector<Property> props;
    Json extra = Json::object();
    if (c.suite == "sb") {
      props = suite_sb(c, extra);
    } else if (c.suite == "valleys") {
      props = suite_valleys(*graph, c, extra);
    } else {
      with_engine(*model, *graph, [&](const auto& engine) {
        report["regime"] = regime_of(engine);
        if (c.suite == "normal-form") props = suite_normal_form(engine, c);
        else if (c.suite == "stabilisers") props = suite_stabilisers(engine, c);
        else if (c.suite == "intersections") props = suite_intersections(engine, c);
        else if (c.suite == "nerve") props = suite_nerve(engine, c);
        else if (c.suite == "pockets") props = suite_pockets(engine, c);
        else if (c.suite == "links") props = suite_links(engine, c);
        return Json();
      });
    }
    bool all = true;
    report["properties"] = properties_json(props, all);
    for (auto& [k, v] : extra.items()) report[k] = v;
    report["status"] = all ? "PASS" : "FAIL";
    emit(report, c);
    return all ? 0 : 1;
  }

  // homology
  if (!complex_j.is_null()) {
    auto ch = chain_complex(complex_from_json(complex_j));
    report["reduced"] = homology_to_json(reduced_homology(ch));
    report["unreduced"] = homology_to_json(homology(ch, false));
  } else if (c.latitude) {
    if (!graph) throw ConfigError("--graph is required");
    report["valley"] = stabilised_json(valley_homology(*graph, *c.latitude, c.window, c.caps));
    report["latitude"] = *c.latitude;
  } else {
    if (!graph || !model) throw ConfigError("homology needs --complex, or --graph with --model or --latitude");
    report["ball"] = with_engine(*model, *graph, [&](const auto& engine) {
      auto ch = chain_complex(to_cell_complex(build_ball(engine, c.radius, c.caps)));
      return Json{{"reduced", homology_to_json(reduced_homology(ch))},
                  {"unreduced", homology_to_json(homology(ch, false))}};
    });
  }
  emit(report, c);
  return 0;
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::RegimeMismatch:
    case ErrorCode::DisconnectedGraph:
    case ErrorCode::InfiniteStabiliser:
    case ErrorCode::NonClosedComplex:
    case ErrorCode::RelationViolation:
    case ErrorCode::NoInteriorVertices:
      return false;
    default:
      return true;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological right-angled Artin groups: normal forms, Salvetti balls, homology"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph_path, "graph JSON")->check(CLI::ExistingFile);
    sub->add_option("--model", c.model_path, "model JSON")->check(CLI::ExistingFile);
    sub->add_option("--radius", c.radius, "ball radius")->capture_default_str();
    sub->add_option("--out", c.out_path, "output file");
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--cap-vertices", c.caps.max_vertices, "vertex cap")->capture_default_str();
    sub->add_option("--cap-cubes", c.caps.max_cubes, "cube cap")->capture_default_str();
  };
  auto* build = app.add_subcommand("build", "build a ball and export it");
  common(build);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option("--suite", c.suite, "suite")
      ->required()
      ->check(CLI::IsMember({"normal-form", "stabilisers", "intersections", "nerve", "links", "pockets", "valleys", "sb"}));
  verify->add_option("--n", c.n, "Bieri-Stallings index")->capture_default_str();
  verify->add_option("--latitude", c.latitude, "valley latitude (default 0)");
  verify->add_option("--window", c.window, "valley word radius")->capture_default_str();
  verify->add_option("--samples", c.samples, "random samples for normal-form")->capture_default_str();
  auto* hom = app.add_subcommand("homology", "integral homology of a complex, ball or valley");
  common(hom);
  hom->add_option("--complex", c.complex_path, "complex JSON")->check(CLI::ExistingFile);
  hom->add_option("--latitude", c.latitude, "valley latitude");
  hom->add_option("--window", c.window, "valley word radius")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    return run(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_config_error(e.code()) ? 2 : 1;
  }
}
