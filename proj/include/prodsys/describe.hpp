#pragma once

// Plain-text traces of the core values and of single dilation steps.  These
// exist for humans reading a report or debugging a failing case: every
// applied operator is narrated with the bookkeeping it performs (shift
// decomposition, landing cut, branch intervals), so a trace can be followed
// against the identities the suites check.

#include <sstream>
#include <string>

#include "prodsys/dilation.hpp"
#include "prodsys/product_system.hpp"
#include "prodsys/sections.hpp"
#include "prodsys/serialization.hpp"

namespace prodsys {

namespace detail {

inline std::string fmt_complex(const Complex& z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() >= 0.0) os << "+" << z.imag() << "i";
  else os << z.imag() << "i";
  return os.str();
}

inline std::string fmt_value(const Value& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << fmt_complex(v[i]);
  }
  os << ")";
  return os.str();
}

inline bool is_vacuum_section(const ElementarySection& s) {
  if (s.kappa != Complex(1.0)) return false;
  if (!(s.depth == Rational(0))) return false;
  return zero_on_window(s.f_abs, s.f_abs.lo(), s.f_abs.hi());
}

}  // namespace detail

inline std::string describe(const Rational& r) { return r.pretty(); }

inline std::string describe(const StepFunction& f) {
  std::ostringstream os;
  if (f.empty_domain()) {
    os << "step function on empty domain at " << f.lo().pretty() << ", multiplicity "
       << f.multiplicity();
    return os.str();
  }
  os << "step function on (" << f.lo().pretty() << ", " << f.hi().pretty() << "], "
     << f.pieces().size() << (f.pieces().size() == 1 ? " piece" : " pieces") << ":";
  Rational cursor = f.lo();
  for (const Piece& p : f.pieces()) {
    os << "\n  (" << cursor.pretty() << ", " << p.end.pretty() << "] -> "
       << detail::fmt_value(p.value);
    cursor = p.end;
  }
  return os.str();
}

inline std::string describe(const ElementarySection& s) {
  std::ostringstream os;
  os << "interval (" << s.interval.lo.pretty() << ", " << s.interval.hi.pretty() << "], depth "
     << s.depth.pretty();
  if (detail::is_vacuum_section(s)) {
    os << ", vacuum";
    return os.str();
  }
  os << ", weight " << detail::fmt_complex(s.kappa);
  if (s.f_abs.empty_domain()) os << ", no static part";
  else
    os << ", static part on (" << s.f_abs.lo().pretty() << ", " << s.f_abs.hi().pretty() << "]";
  if (Rational(0) < s.depth)
    os << ", riding part on (-" << s.depth.pretty() << ", 0]";
  return os.str();
}

inline std::string describe(const KVector& k) {
  std::ostringstream os;
  os << "section vector, multiplicity " << k.dim << ", " << k.sections.size()
     << (k.sections.size() == 1 ? " section" : " sections");
  for (std::size_t i = 0; i < k.sections.size(); ++i)
    os << "\n  [" << (i + 1) << "] " << describe(k.sections[i]);
  return os.str();
}

inline std::string describe(const Model& m, const FiberVector& x) {
  std::ostringstream os;
  if (m.kind == ModelKind::discrete) {
    os << "discrete fiber tensor at level " << x.t.pretty() << ", local dimension " << m.dim
       << ", " << x.dense.size() << " amplitudes";
    return os.str();
  }
  os << "fiber vector at t = " << x.t.pretty() << ", " << x.terms.size()
     << (x.terms.size() == 1 ? " term" : " terms");
  for (std::size_t i = 0; i < x.terms.size(); ++i) {
    const auto& term = x.terms[i];
    os << "\n  [" << (i + 1) << "] coeff " << detail::fmt_complex(term.coeff)
       << ", exponential of " << describe(term.vec.generator);
  }
  return os.str();
}

inline std::string describe(const ShiftIndex& si) {
  std::ostringstream os;
  os << "absorbs " << si.n << (si.n == 1 ? " turn" : " turns") << ", lands at beta = "
     << si.beta.pretty();
  return os.str();
}

// Narrates one left dilation step: the shift decomposition of t, the landing
// cut splitting the parameter axis, and the per-branch interval images.
inline std::string describe_left_dilation(const Rational& t, const KVector& k,
                                          const FiberVector& x) {
  std::ostringstream os;
  Rational r = frac_in_unit(t);
  Rational turns = t - r;
  Rational cut = Rational(1) - r;
  os << "left dilation at t = " << t.pretty() << ": t = " << turns.pretty() << " + "
     << r.pretty() << ", split at 1 - r = " << cut.pretty() << "\n";
  os << "parameters in (0, " << cut.pretty() << "] absorb " << turns.pretty()
     << " turn(s) and land in (" << r.pretty() << ", 1]; parameters in (" << cut.pretty()
     << ", 1] absorb " << (turns + Rational(1)).pretty() << " and land in (0, " << r.pretty()
     << "]\n";
  os << "every trajectory deepens by t and picks up the fiber generator on the fresh band\n";
  os << "input " << describe(k) << "\n";
  Model m = exponential_model(k.dim);
  os << "fiber argument " << describe(m, x) << "\n";
  KVector out = left_dilation_apply(t, k, x);
  os << "output " << describe(out);
  return os.str();
}

inline std::string describe_right_dilation(const Rational& t, const FiberVector& x,
                                           const KVector& l) {
  std::ostringstream os;
  os << "right dilation at t = " << t.pretty()
     << ": computed as the left dilation of the time-reversed generators\n";
  Model m = exponential_model(l.dim);
  os << "fiber argument " << describe(m, x) << "\n";
  os << "input " << describe(l) << "\n";
  KVector out = right_dilation_apply(t, x, l);
  os << "output " << describe(out);
  return os.str();
}

// Narrates the composition identity: two applications against a single
// application at the summed time, with the residual norm of the difference.
inline std::string describe_composition(const Rational& s, const Rational& t, const KVector& k,
                                        const FiberVector& x, const FiberVector& y) {
  std::ostringstream os;
  Model m = exponential_model(k.dim);
  os << "composition check at s = " << s.pretty() << ", t = " << t.pretty() << "\n";
  os << "route one: dilate at s, then dilate the result at t\n";
  KVector step1 = left_dilation_apply(s, k, x);
  KVector route1 = left_dilation_apply(t, step1, y);
  os << "  after s: " << step1.sections.size() << " sections; after t: "
     << route1.sections.size() << " sections\n";
  os << "route two: concatenate the fiber arguments, dilate once at s + t = "
     << (s + t).pretty() << "\n";
  KVector route2 = left_dilation_apply(s + t, k, u_concat(m, x, y));
  os << "  single application: " << route2.sections.size() << " sections\n";
  double err = kvector_norm(kv_sub(route1, route2));
  os << "norm of route difference: " << err;
  return os.str();
}

// Dispatch on a tagged input document; unknown tags raise ConfigError.
inline std::string describe_input(const Json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw ConfigError("describe: input must be an object with a \"type\" field");
  std::string type;
  try {
    type = j.at("type").get<std::string>();
  } catch (const Json::exception&) {
    throw ConfigError("describe: \"type\" must be a string");
  }
  try {
    if (type == "rational") return describe(rational_from_json(j.at("value")));
    if (type == "step_function") return describe(step_function_from_json(j.at("value")));
    if (type == "section") return describe(section_from_json(j.at("value")));
    if (type == "kvector") return describe(kvector_from_json(j.at("value")));
    if (type == "fiber") {
      Model m = model_from_json(j.at("model"));
      return describe(m, fiber_from_json(m, j.at("value")));
    }
    if (type == "shift") {
      Rational alpha = rational_from_json(j.at("alpha"));
      Rational t = rational_from_json(j.at("t"));
      std::ostringstream os;
      os << "shift of alpha = " << alpha.pretty() << " by t = " << t.pretty() << ": "
         << describe(shift_index(alpha, t));
      return os.str();
    }
    if (type == "left_dilation") {
      Model m = model_from_json(j.at("model"));
      return describe_left_dilation(rational_from_json(j.at("t")),
                                    kvector_from_json(j.at("k")),
                                    fiber_from_json(m, j.at("x")));
    }
    if (type == "right_dilation") {
      Model m = model_from_json(j.at("model"));
      return describe_right_dilation(rational_from_json(j.at("t")),
                                     fiber_from_json(m, j.at("x")),
                                     kvector_from_json(j.at("l")));
    }
    if (type == "composition") {
      Model m = model_from_json(j.at("model"));
      return describe_composition(rational_from_json(j.at("s")), rational_from_json(j.at("t")),
                                  kvector_from_json(j.at("k")), fiber_from_json(m, j.at("x")),
                                  fiber_from_json(m, j.at("y")));
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("describe: malformed input: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("describe: invalid value: ") + e.what());
  }
  throw ConfigError("describe: unknown type \"" + type + "\"");
}

}  // namespace prodsys
