#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prodsys/suites.hpp"

using namespace prodsys;

TEST_CASE("splitmix64 matches the reference stream", "[random]") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);

  // Same seed, same stream; the generator holds no hidden state.
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("fnv1a64 matches the reference vectors", "[random]") {
  CHECK(fnv1a64("") == 0xCBF29CE484222325ull);
  CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8Cull);
  CHECK(fnv1a64("unit-laws") != fnv1a64("isometry"));
}

TEST_CASE("bounded draws stay in range", "[random]") {
  SplitMix64 rng(7);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 200; ++i) {
    double d = rng.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    std::int64_t r = rng.range(-2, 2);  // inclusive ends
    CHECK(r >= -2);
    CHECK(r <= 2);
    seen.insert(r);
    double u = rng.uniform(1.0, 3.0);
    CHECK(u >= 1.0);
    CHECK(u <= 3.0);
  }
  CHECK(seen.size() == 5);
  CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
  CHECK_THROWS_AS(rng.range(5, 4), std::invalid_argument);
}

TEST_CASE("suite streams with different names decorrelate", "[random]") {
  SplitMix64 a = suite_stream(11, "unit-laws");
  SplitMix64 b = suite_stream(11, "isometry");
  CHECK(a.next() != b.next());

  SplitMix64 c = suite_stream(11, "unit-laws");
  SplitMix64 d = suite_stream(11, "unit-laws");
  for (int i = 0; i < 8; ++i) CHECK(c.next() == d.next());
}

TEST_CASE("generated step functions respect the stated bounds", "[random]") {
  SplitMix64 rng(3);
  const std::int64_t q = 10080;
  for (int i = 0; i < 25; ++i) {
    StepFunction f = gen::step_function(rng, q, 0, 2 * q, 1, 4, 1.0, 2.0);
    CHECK(f.lo() == Rational(0));
    CHECK(f.hi() == Rational(2));
    CHECK(f.multiplicity() == 1);
    CHECK(static_cast<int>(f.pieces().size()) <= 4);
    CHECK(l2_norm(f) <= 2.0 + 1e-12);
    CHECK_NOTHROW(require_on_grid(f, q, "generator"));
  }
  CHECK_THROWS_AS(gen::step_function(rng, q, 5, 5, 1, 2, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("generated fibers live at the requested time", "[random]") {
  SplitMix64 rng(9);
  Model m = exponential_model(2);
  const std::int64_t q = 60;
  FiberVector x = gen::exp_fiber_vector(rng, m, q, 90, 3, 3, 1.0, 2.0);
  CHECK(x.t == Rational(3, 2));
  CHECK(x.terms.size() >= 1);
  CHECK(x.terms.size() <= 3);
  for (const auto& term : x.terms) {
    CHECK(term.vec.generator.lo() == Rational(0));
    CHECK(term.vec.generator.hi() == Rational(3, 2));
    CHECK(term.vec.generator.multiplicity() == 2);
  }
  CHECK_NOTHROW(require_on_grid(x, q, "fiber"));
}

TEST_CASE("generated section vectors partition the unit interval", "[random]") {
  SplitMix64 rng(13);
  Model m = exponential_model(1);
  const std::int64_t q = 720;
  for (int i = 0; i < 10; ++i) {
    KVector k = gen::kvector(rng, m, q);
    CHECK(intervals_partition_unit(k.sections));
    CHECK(static_cast<int>(k.sections.size()) <= 3);
    CHECK_NOTHROW(require_on_grid(k, q, "vector"));
  }
}

TEST_CASE("scenario generation is a pure function of the seed", "[random]") {
  ScenarioConfig cfg;
  cfg.seed = 21;
  cfg.has_seed = true;
  cfg.params["isometry"].cases = 4;

  Json a = generate_random_scenario(cfg, "isometry");
  Json b = generate_random_scenario(cfg, "isometry");
  CHECK_FALSE(a.empty());
  CHECK(a.dump() == b.dump());

  ScenarioConfig other = cfg;
  other.seed = 22;
  Json c = generate_random_scenario(other, "isometry");
  CHECK(a.dump() != c.dump());

  // Streams are per suite: another suite sees unrelated draws.
  cfg.params["associativity-3.2"].cases = 4;
  Json d = generate_random_scenario(cfg, "associativity-3.2");
  CHECK(a.dump() != d.dump());

  CHECK_THROWS_AS(generate_random_scenario(cfg, "fast-checks"), ConfigError);
}

namespace {

// Parse a JSONL report, drop the wall-clock field, return canonical dumps.
std::vector<std::string> canonical_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    Json j = Json::parse(line);
    j.erase("wall_time_ms");
    out.push_back(j.dump());
  }
  return out;
}

}  // namespace

TEST_CASE("reports are identical across job counts", "[random]") {
  ScenarioConfig cfg;
  cfg.seed = 5;
  cfg.has_seed = true;
  cfg.suites = {"unit-laws", "discrete-A1"};
  cfg.params["unit-laws"].cases = 4;
  cfg.params["discrete-A1"].cases = 4;

  std::ostringstream serial, parallel;
  ReportWriter ws(serial), wp(parallel);
  int rc1 = run_all_suites(cfg, ws, 1);
  int rc2 = run_all_suites(cfg, wp, 4);
  CHECK(rc1 == 0);
  CHECK(rc2 == 0);

  std::vector<std::string> a = canonical_lines(serial.str());
  std::vector<std::string> b = canonical_lines(parallel.str());
  REQUIRE(a.size() == b.size());
  CHECK(a == b);
  CHECK(a.size() > 2);  // case records plus one summary per suite
}

TEST_CASE("config loader accepts a minimal run description", "[random]") {
  Json j{{"suites", Json::array({"unit-laws"})}, {"seed", 3}};
  ScenarioConfig cfg = scenario_config_from_json(j);
  CHECK(cfg.has_seed);
  CHECK(cfg.seed == 3);
  CHECK(cfg.grid_denominator == 10080);
  CHECK(cfg.model.kind == ModelKind::exponential);
  CHECK(cfg.suites == std::vector<std::string>{"unit-laws"});
  CHECK_FALSE(params_for(cfg, "unit-laws").cases.has_value());
  CHECK_NOTHROW(validate_for_run(cfg));

  Json full{{"model", {{"kind", "exponential"}, {"dim", 2}}},
            {"grid_denominator", 720},
            {"seed", 9},
            {"suites", Json::array({"isometry"})},
            {"suite_params", {{"isometry", {{"cases", 7}, {"tolerance", 1e-8}}}}}};
  ScenarioConfig rich = scenario_config_from_json(full);
  CHECK(rich.model.dim == 2);
  CHECK(rich.grid_denominator == 720);
  CHECK(params_for(rich, "isometry").cases == 7);
  CHECK(params_for(rich, "isometry").tolerance == 1e-8);
  CHECK_FALSE(params_for(rich, "isometry").max_pieces.has_value());

  // to_json keeps the identity of the run (model, grid, suites, seed).
  ScenarioConfig back = scenario_config_from_json(scenario_config_to_json(rich));
  CHECK(back.model.dim == 2);
  CHECK(back.grid_denominator == 720);
  CHECK(back.seed == 9);
  CHECK(back.suites == rich.suites);
}

TEST_CASE("config loader rejects malformed runs", "[random]") {
  auto parse = [](const Json& j) { return scenario_config_from_json(j); };

  CHECK_THROWS_AS(parse(Json::array()), ConfigError);
  CHECK_THROWS_WITH(parse(Json{{"seeds", 1}}), Catch::Matchers::ContainsSubstring("unknown key"));
  CHECK_THROWS_AS(parse(Json{{"seed", -1}}), ConfigError);
  CHECK_THROWS_AS(parse(Json{{"grid_denominator", 0}}), ConfigError);
  CHECK_THROWS_AS(parse(Json{{"suites", "isometry"}}), ConfigError);
  CHECK_THROWS_WITH(parse(Json{{"suites", Json::array({"warp"})}}),
                    Catch::Matchers::ContainsSubstring("unknown suite"));
  CHECK_THROWS_WITH(parse(Json{{"suites", Json::array({"isometry", "isometry"})}}),
                    Catch::Matchers::ContainsSubstring("listed twice"));
  CHECK_THROWS_AS(parse(Json{{"suite_params", {{"warp", Json::object()}}}}), ConfigError);
  CHECK_THROWS_WITH(parse(Json{{"suite_params", {{"unit-laws", {{"speed", 3}}}}}}),
                    Catch::Matchers::ContainsSubstring("unknown suite parameter"));
  CHECK_THROWS_WITH(parse(Json{{"suite_params", {{"unit-laws", {{"cases", "many"}}}}}}),
                    Catch::Matchers::ContainsSubstring("wrong type"));
  CHECK_THROWS_WITH(parse(Json{{"suite_params", {{"unit-laws", {{"tolerance", 0.0}}}}}}),
                    Catch::Matchers::ContainsSubstring("tolerance must be positive"));
  CHECK_THROWS_AS(parse(Json{{"suite_params", {{"unit-laws", {{"cases", -2}}}}}}), ConfigError);

  // A run that draws cases needs a seed; a run with no suites does not.
  ScenarioConfig no_seed = parse(Json{{"suites", Json::array({"unit-laws"})}});
  CHECK_THROWS_AS(validate_for_run(no_seed), ConfigError);
  ScenarioConfig idle = parse(Json::object());
  CHECK_NOTHROW(validate_for_run(idle));
}
