#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "prodsys/report.hpp"
#include "prodsys/serialization.hpp"

using namespace prodsys;

namespace {

StepFunction ramp() {
  return StepFunction(Rational(0),
                      {Piece{Rational(1, 2), Value{Complex(1.0, 2.0)}},
                       Piece{Rational(2), Value{Complex(-1.0, 0.0)}}},
                      1);
}

ElementarySection sample_section() {
  StepFunction f_abs(Rational(-1, 2), {Piece{Rational(1, 4), Value{Complex(0.8, -0.3)}}}, 1);
  StepFunction f_rel(Rational(-1, 3), {Piece{Rational(0), Value{Complex(0.2, 0.1)}}}, 1);
  return ElementarySection(Interval{Rational(0), Rational(3, 5)}, Complex(0.7, 0.2),
                           std::move(f_abs), Rational(1, 3), std::move(f_rel));
}

}  // namespace

TEST_CASE("rationals serialize as p/q strings", "[serialization]") {
  CHECK(rational_to_json(Rational(3, 4)).get<std::string>() == "3/4");
  CHECK(rational_to_json(Rational(4)).get<std::string>() == "4/1");
  CHECK(rational_from_json(Json("3/4")) == Rational(3, 4));
  CHECK(rational_from_json(Json("-6/8")) == Rational(-3, 4));
  CHECK_THROWS_AS(rational_from_json(Json(0.75)), ConfigError);
  CHECK_THROWS_AS(rational_from_json(Json("three")), ConfigError);
}

TEST_CASE("complex numbers serialize as [re, im] pairs", "[serialization]") {
  Json j = complex_to_json(Complex(1.5, -2.0));
  REQUIRE(j.is_array());
  CHECK(j[0].get<double>() == 1.5);
  CHECK(j[1].get<double>() == -2.0);
  CHECK(complex_from_json(j) == Complex(1.5, -2.0));
  CHECK_THROWS_AS(complex_from_json(Json::array({1.0})), ConfigError);
  CHECK_THROWS_AS(complex_from_json(Json::array({1.0, 2.0, 3.0})), ConfigError);
  CHECK_THROWS_AS(complex_from_json(Json::array({"1", "2"})), ConfigError);
  CHECK_THROWS_AS(complex_from_json(Json{{"re", 1.0}}), ConfigError);
}

TEST_CASE("value arrays round-trip", "[serialization]") {
  Value v{Complex(1.0, 0.0), Complex(0.0, -1.0)};
  Json j = value_to_json(v);
  Value back = value_from_json(j);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == v[0]);
  CHECK(back[1] == v[1]);
  CHECK_THROWS_AS(value_from_json(Json::array()), ConfigError);
  CHECK_THROWS_AS(value_from_json(Json("x")), ConfigError);
}

TEST_CASE("step functions round-trip", "[serialization]") {
  StepFunction f = ramp();
  Json j = step_function_to_json(f);
  StepFunction back = step_function_from_json(j);
  CHECK(back == f);
  CHECK(step_function_to_json(back) == j);

  // The empty function keeps its anchor and multiplicity.
  StepFunction none = StepFunction::empty(Rational(1, 2), 3);
  StepFunction none_back = step_function_from_json(step_function_to_json(none));
  CHECK(none_back == none);
  CHECK(none_back.multiplicity() == 3);
}

TEST_CASE("step function loader rejects malformed input", "[serialization]") {
  Json good = step_function_to_json(ramp());

  Json no_lo = good;
  no_lo.erase("lo");
  CHECK_THROWS_AS(step_function_from_json(no_lo), ConfigError);

  Json bad_piece = good;
  bad_piece["pieces"][0].erase("end");
  CHECK_THROWS_AS(step_function_from_json(bad_piece), ConfigError);

  // Non-increasing breakpoints fail structural validation, reported as a
  // config error rather than the internal invalid_argument.
  Json folded = good;
  folded["pieces"][1]["end"] = "1/4";
  CHECK_THROWS_WITH(step_function_from_json(folded),
                    Catch::Matchers::ContainsSubstring("step function"));
  CHECK_THROWS_AS(step_function_from_json(folded), ConfigError);

  CHECK_THROWS_AS(step_function_from_json(Json::array()), ConfigError);
}

TEST_CASE("exponential fibers round-trip", "[serialization]") {
  Model m = exponential_model(1);
  StepFunction g(Rational(0), {Piece{Rational(2), Value{Complex(0.5, 0.5)}}}, 1);
  FiberVector x = make_exp_fiber(
      m,
      {FiberVector::Term{Complex(2.0, 0.0), ExpVector(ramp())},
       FiberVector::Term{Complex(0.0, -1.0), ExpVector(std::move(g))}},
      Rational(2));
  Json j = fiber_to_json(x);
  REQUIRE(j.contains("terms"));
  FiberVector back = fiber_from_json(m, j);
  CHECK(fiber_to_json(back) == j);
  CHECK(back.t == Rational(2));

  Json missing = j;
  missing.erase("terms");
  CHECK_THROWS_AS(fiber_from_json(m, missing), ConfigError);
}

TEST_CASE("dense fibers round-trip", "[serialization]") {
  Model m = discrete_model(2);
  FiberVector x = make_dense_fiber(
      m, 2, {Complex(0.5, 0.0), Complex(0.0, 0.5), Complex(-0.5, 0.0), Complex(0.0, -0.5)});
  Json j = fiber_to_json(x);
  CHECK(j.at("level").get<long>() == 2);
  REQUIRE(j.at("amplitudes").size() == 4);
  FiberVector back = fiber_from_json(m, j);
  CHECK(fiber_to_json(back) == j);

  // Amplitude count must match dim^level.
  Json short_amp = j;
  short_amp["amplitudes"].erase(3);
  CHECK_THROWS_AS(fiber_from_json(m, short_amp), ConfigError);

  // Dense data only makes sense for the discrete model.
  CHECK_THROWS_AS(fiber_from_json(exponential_model(2), j), ConfigError);
}

TEST_CASE("sections and section vectors round-trip", "[serialization]") {
  ElementarySection s = sample_section();
  Json js = section_to_json(s);
  ElementarySection back = section_from_json(js);
  CHECK(section_to_json(back) == js);
  CHECK(back.interval.lo == s.interval.lo);
  CHECK(back.interval.hi == s.interval.hi);
  CHECK(back.kappa == s.kappa);
  CHECK(back.depth == s.depth);
  CHECK(back.f_abs == s.f_abs);
  CHECK(back.f_rel == s.f_rel);

  KVector k = make_kvector(1, {s});
  Json jk = kvector_to_json(k);
  CHECK(kvector_to_json(kvector_from_json(jk)) == jk);

  Json vac = kvector_to_json(vacuum_kvector(2));
  KVector vac_back = kvector_from_json(vac);
  CHECK(vac_back.dim == 2);
  CHECK(kvector_norm(vac_back) == 1.0);
}

TEST_CASE("section loaders reject inconsistent data", "[serialization]") {
  Json js = section_to_json(sample_section());

  // Riding part must cover (-depth, 0]: deepen the band without widening it.
  Json deeper = js;
  deeper["depth"] = "1/2";
  CHECK_THROWS_AS(section_from_json(deeper), ConfigError);

  Json no_kappa = js;
  no_kappa.erase("kappa");
  CHECK_THROWS_AS(section_from_json(no_kappa), ConfigError);

  Json jk = kvector_to_json(make_kvector(1, {sample_section()}));
  Json no_dim = jk;
  no_dim.erase("dim");
  CHECK_THROWS_AS(kvector_from_json(no_dim), ConfigError);

  // Section multiplicity has to match the vector dimension.
  Json wrong_dim = jk;
  wrong_dim["dim"] = 2;
  CHECK_THROWS_AS(kvector_from_json(wrong_dim), ConfigError);
}

TEST_CASE("models round-trip with defaults", "[serialization]") {
  Model m = discrete_model(3, true);
  Model back = model_from_json(model_to_json(m));
  CHECK(back.kind == m.kind);
  CHECK(back.dim == 3);
  CHECK(back.opposed);

  Model dflt = model_from_json(Json::object());
  CHECK(dflt.kind == ModelKind::exponential);
  CHECK(dflt.dim == 1);
  CHECK_FALSE(dflt.opposed);

  CHECK_THROWS_AS(model_from_json(Json{{"kind", "fock"}}), ConfigError);
  CHECK_THROWS_AS(model_from_json(Json{{"dim", 0}}), ConfigError);
  CHECK_THROWS_AS(model_from_json(Json("exponential")), ConfigError);
}

TEST_CASE("finite rank operators round-trip", "[serialization]") {
  FiniteRankOperator a = make_finite_rank(
      1, {FiniteRankOperator::Term{Complex(0.6, 0.2), vacuum_kvector(1),
                                   make_kvector(1, {sample_section()})}});
  Json j = operator_to_json(a);
  CHECK(operator_to_json(operator_from_json(j)) == j);

  Json no_terms = j;
  no_terms.erase("terms");
  CHECK_THROWS_AS(operator_from_json(no_terms), ConfigError);
}

TEST_CASE("grid validation accepts multiples of 1/q only", "[serialization]") {
  CHECK_NOTHROW(require_on_grid(Rational(3, 4), 8, "t"));
  CHECK_NOTHROW(require_on_grid(Rational(-5, 2), 8, "t"));
  CHECK_THROWS_WITH(require_on_grid(Rational(1, 3), 8, "t"),
                    Catch::Matchers::ContainsSubstring("not a multiple of 1/8"));

  StepFunction f = ramp();  // breakpoints at 1/2 and 2
  CHECK_NOTHROW(require_on_grid(f, 4, "generator"));
  CHECK_THROWS_AS(require_on_grid(f, 3, "generator"), ConfigError);

  ElementarySection s = sample_section();  // endpoints on fifths, depth 1/3
  CHECK_NOTHROW(require_on_grid(s, 60, "section"));
  CHECK_THROWS_AS(require_on_grid(s, 8, "section"), ConfigError);

  KVector k = make_kvector(1, {sample_section()});
  CHECK_NOTHROW(require_on_grid(k, 60, "vector"));
  CHECK_THROWS_AS(require_on_grid(k, 10, "vector"), ConfigError);
}

TEST_CASE("report records carry digest, error and verdict", "[serialization]") {
  Json inputs{{"a", 1}, {"b", "2/3"}};
  ReportRecord r =
      comparison_record("unit-laws", "series-0", inputs, Complex(1.0, 0.0), Complex(1.0, 1e-12), 1e-9);
  CHECK(r.digest.size() == 16);
  CHECK(r.digest == digest_of(inputs));
  CHECK(r.abs_error == Catch::Approx(1e-12));
  CHECK(r.pass);

  Json other{{"a", 2}};
  CHECK(digest_of(other) != r.digest);

  Json j = record_to_json(r);
  CHECK(j.at("suite") == "unit-laws");
  CHECK(j.at("pass").get<bool>());
  CHECK_FALSE(j.contains("route"));
  CHECK_FALSE(j.contains("frame_size"));

  r.t = Rational(3, 2);
  r.route = "frame";
  r.frame_size = 13;
  Json jp = record_to_json(r);
  CHECK(jp.at("t") == "3/2");
  CHECK(jp.at("route") == "frame");
  CHECK(jp.at("frame_size").get<long>() == 13);
  CHECK(jp.at("value_re").get<double>() == 1.0);
}

TEST_CASE("report writer counts cases and failures", "[serialization]") {
  std::ostringstream out;
  ReportWriter w(out);
  Json inputs{{"x", 1}};
  w.write(comparison_record("isometry", "iso-0", inputs, Complex(1.0), Complex(1.0), 1e-9));
  w.write(comparison_record("isometry", "iso-1", inputs, Complex(1.0), Complex(2.0), 1e-9));
  w.suite_summary("isometry", w.cases(), w.failures());
  CHECK(w.cases() == 2);
  CHECK(w.failures() == 1);

  std::istringstream lines(out.str());
  std::string line;
  int n = 0;
  bool saw_summary = false;
  while (std::getline(lines, line)) {
    Json j = Json::parse(line);  // every line is self-contained JSON
    if (j.value("summary", false)) {
      saw_summary = true;
      CHECK(j.at("cases").get<long>() == 2);
      CHECK(j.at("failures").get<long>() == 1);
      CHECK_FALSE(j.at("pass").get<bool>());
    }
    ++n;
  }
  CHECK(n == 3);
  CHECK(saw_summary);
}
