#pragma once

// JSON encoding of every value the harness reads or writes.  Conventions:
// rationals are "p/q" strings, complex numbers are [re, im] pairs, tensors
// and step-function values are arrays of such pairs.  Loaders validate
// structural invariants and (when a grid is in force) that every time
// coordinate lies on the grid; violations raise ConfigError.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodsys/rational.hpp"
#include "prodsys/step_function.hpp"
#include "prodsys/product_system.hpp"
#include "prodsys/sections.hpp"
#include "prodsys/operators.hpp"

namespace prodsys {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Json rational_to_json(const Rational& r) { return Json(r.str()); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ConfigError("expected a rational \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("expected a complex [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json value_to_json(const Value& v) {
  Json out = Json::array();
  for (const Complex& c : v) out.push_back(complex_to_json(c));
  return out;
}

inline Value value_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("expected a nonempty array of complex pairs");
  Value v;
  v.reserve(j.size());
  for (const Json& c : j) v.push_back(complex_from_json(c));
  return v;
}

inline Json step_function_to_json(const StepFunction& f) {
  Json pieces = Json::array();
  for (const Piece& p : f.pieces())
    pieces.push_back(Json{{"end", rational_to_json(p.end)}, {"value", value_to_json(p.value)}});
  return Json{{"lo", rational_to_json(f.lo())},
              {"multiplicity", f.multiplicity()},
              {"pieces", pieces}};
}

inline StepFunction step_function_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("step function: expected an object");
  if (!j.contains("lo") || !j.contains("multiplicity") || !j.contains("pieces"))
    throw ConfigError("step function: need lo, multiplicity, pieces");
  Rational lo = rational_from_json(j.at("lo"));
  int mult = j.at("multiplicity").get<int>();
  std::vector<Piece> pieces;
  for (const Json& p : j.at("pieces")) {
    if (!p.contains("end") || !p.contains("value"))
      throw ConfigError("step function piece: need end and value");
    pieces.push_back(Piece{rational_from_json(p.at("end")), value_from_json(p.at("value"))});
  }
  try {
    return StepFunction(lo, std::move(pieces), mult);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("step function: ") + e.what());
  }
}

inline Json fiber_to_json(const FiberVector& x) {
  if (x.dense_rep) {
    Json amp = Json::array();
    for (const Complex& c : x.dense) amp.push_back(complex_to_json(c));
    return Json{{"level", x.t.num()}, {"amplitudes", amp}};
  }
  Json terms = Json::array();
  for (const auto& term : x.terms)
    terms.push_back(Json{{"coeff", complex_to_json(term.coeff)},
                         {"generator", step_function_to_json(term.vec.generator)}});
  return Json{{"t", rational_to_json(x.t)}, {"terms", terms}};
}

inline FiberVector fiber_from_json(const Model& m, const Json& j) {
  if (!j.is_object()) throw ConfigError("fiber vector: expected an object");
  try {
    if (j.contains("amplitudes")) {
      long level = j.at("level").get<long>();
      std::vector<Complex> amp;
      for (const Json& c : j.at("amplitudes")) amp.push_back(complex_from_json(c));
      return make_dense_fiber(m, level, std::move(amp));
    }
    if (!j.contains("t") || !j.contains("terms"))
      throw ConfigError("fiber vector: need t and terms (or level and amplitudes)");
    Rational t = rational_from_json(j.at("t"));
    std::vector<FiberVector::Term> terms;
    for (const Json& term : j.at("terms"))
      terms.push_back(FiberVector::Term{
          complex_from_json(term.at("coeff")),
          ExpVector(step_function_from_json(term.at("generator")))});
    return make_exp_fiber(m, std::move(terms), t);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("fiber vector: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("fiber vector: ") + e.what());
  }
}

inline Json section_to_json(const ElementarySection& s) {
  return Json{{"interval",
               Json{{"lo", rational_to_json(s.interval.lo)}, {"hi", rational_to_json(s.interval.hi)}}},
              {"kappa", complex_to_json(s.kappa)},
              {"f_abs", step_function_to_json(s.f_abs)},
              {"depth", rational_to_json(s.depth)},
              {"f_rel", step_function_to_json(s.f_rel)}};
}

inline ElementarySection section_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("section: expected an object");
  try {
    const Json& iv = j.at("interval");
    return ElementarySection(
        Interval{rational_from_json(iv.at("lo")), rational_from_json(iv.at("hi"))},
        complex_from_json(j.at("kappa")), step_function_from_json(j.at("f_abs")),
        rational_from_json(j.at("depth")), step_function_from_json(j.at("f_rel")));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("section: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section: ") + e.what());
  }
}

inline Json kvector_to_json(const KVector& k) {
  Json sections = Json::array();
  for (const auto& s : k.sections) sections.push_back(section_to_json(s));
  return Json{{"dim", k.dim}, {"sections", sections}};
}

inline KVector kvector_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("sections"))
    throw ConfigError("section vector: need dim and sections");
  int dim = j.at("dim").get<int>();
  std::vector<ElementarySection> sections;
  for (const Json& s : j.at("sections")) sections.push_back(section_from_json(s));
  try {
    return make_kvector(dim, std::move(sections));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("section vector: ") + e.what());
  }
}

inline Json model_to_json(const Model& m) {
  return Json{{"kind", m.kind == ModelKind::exponential ? "exponential" : "discrete"},
              {"dim", m.dim},
              {"opposed", m.opposed}};
}

inline Model model_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("model: expected an object");
  std::string kind = j.value("kind", "exponential");
  int dim = j.value("dim", 1);
  bool opposed = j.value("opposed", false);
  try {
    if (kind == "exponential") return exponential_model(dim, opposed);
    if (kind == "discrete") return discrete_model(dim, opposed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  throw ConfigError("model: kind must be \"exponential\" or \"discrete\"");
}

inline Json operator_to_json(const FiniteRankOperator& a) {
  Json terms = Json::array();
  for (const auto& term : a.terms)
    terms.push_back(Json{{"coeff", complex_to_json(term.coeff)},
                         {"ket", kvector_to_json(term.ket)},
                         {"bra", kvector_to_json(term.bra)}});
  return Json{{"dim", a.dim}, {"terms", terms}};
}

inline FiniteRankOperator operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
    throw ConfigError("operator: need dim and terms");
  int dim = j.at("dim").get<int>();
  std::vector<FiniteRankOperator::Term> terms;
  for (const Json& term : j.at("terms"))
    terms.push_back(FiniteRankOperator::Term{complex_from_json(term.at("coeff")),
                                             kvector_from_json(term.at("ket")),
                                             kvector_from_json(term.at("bra"))});
  try {
    return make_finite_rank(dim, std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("operator: ") + e.what());
  }
}

// Grid validation: every time coordinate must be a multiple of 1/q.

inline void require_on_grid(const Rational& r, std::int64_t q, const char* what) {
  if (!r.on_grid(q))
    throw ConfigError(std::string(what) + ": " + r.str() + " is not a multiple of 1/" +
                      std::to_string(q));
}

inline void require_on_grid(const StepFunction& f, std::int64_t q, const char* what) {
  require_on_grid(f.lo(), q, what);
  for (const Piece& p : f.pieces()) require_on_grid(p.end, q, what);
}

inline void require_on_grid(const FiberVector& x, std::int64_t q, const char* what) {
  require_on_grid(x.t, q, what);
  for (const auto& term : x.terms) require_on_grid(term.vec.generator, q, what);
}

inline void require_on_grid(const ElementarySection& s, std::int64_t q, const char* what) {
  require_on_grid(s.interval.lo, q, what);
  require_on_grid(s.interval.hi, q, what);
  require_on_grid(s.depth, q, what);
  require_on_grid(s.f_abs, q, what);
  require_on_grid(s.f_rel, q, what);
}

inline void require_on_grid(const KVector& k, std::int64_t q, const char* what) {
  for (const auto& s : k.sections) require_on_grid(s, q, what);
}

}  // namespace prodsys
