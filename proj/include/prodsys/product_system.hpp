#pragma once

// Two concrete product systems over a shared interface, plus the structure
// maps between fibers.
//
//  * exponential model: the fiber at t is spanned by exponential vectors
//    e(f) of step functions f on (0,t] with values in C^d, and
//    <e(f), e(g)> = exp( l2_inner(f,g) ).  Concatenation of generators
//    implements the fiber product.
//  * discrete model: the fiber at integer n is the n-fold tensor power of
//    C^delta, stored densely.  The first tensor factor is the most
//    significant index digit.
//
// Either model can be flagged "opposed": the fiber product is taken in the
// reversed order.  Inner products are conjugate-linear in the first slot.

#include <complex>
#include <vector>
#include <optional>
#include <stdexcept>
#include <cmath>

#include "prodsys/rational.hpp"
#include "prodsys/step_function.hpp"

namespace prodsys {

// Generators beyond this L^2 norm push exp(<f,g>) towards overflow and the
// truncated-series cross-checks out of their validated range.
inline constexpr double kGeneratorNormBound = 8.0;

enum class ModelKind { exponential, discrete };

struct Model {
  ModelKind kind = ModelKind::exponential;
  int dim = 1;           // multiplicity d (exponential) / local dimension delta (discrete)
  bool opposed = false;  // fiber product taken in reversed order
};

inline Model exponential_model(int multiplicity, bool opposed = false) {
  if (multiplicity < 1)
    throw std::invalid_argument("exponential_model: multiplicity must be >= 1");
  return Model{ModelKind::exponential, multiplicity, opposed};
}

inline Model discrete_model(int local_dim, bool opposed = false) {
  if (local_dim < 1)
    throw std::invalid_argument("discrete_model: local dimension must be >= 1");
  return Model{ModelKind::discrete, local_dim, opposed};
}

inline Model opposite(Model m) {
  m.opposed = !m.opposed;
  return m;
}

// A single exponential vector e(f), f a step function on (0, t].
struct ExpVector {
  StepFunction generator;

  explicit ExpVector(StepFunction gen) : generator(std::move(gen)) {
    if (!(generator.lo() == Rational(0)))
      throw std::invalid_argument("ExpVector: generator domain must start at 0");
    if (l2_norm(generator) > kGeneratorNormBound)
      throw std::invalid_argument("ExpVector: generator norm exceeds bound 8");
  }

  Rational t() const { return generator.hi(); }
  friend bool operator==(const ExpVector&, const ExpVector&) = default;
};

// A vector in the fiber at time t.  Exponential model: a finite linear
// combination of exponential vectors.  Discrete model: a dense tensor of
// delta^n amplitudes (t = n integer; n = 0 is the scalar fiber).
struct FiberVector {
  struct Term {
    Complex coeff;
    ExpVector vec;
  };

  Rational t;
  std::vector<Term> terms;   // exponential model
  std::vector<Complex> dense;  // discrete model
  bool dense_rep = false;
};

namespace detail {

inline std::size_t pow_size(int base, long exp) {
  std::size_t r = 1;
  for (long i = 0; i < exp; ++i) {
    if (r > (1u << 26) / static_cast<std::size_t>(base))
      throw std::length_error("discrete fiber: tensor too large");
    r *= static_cast<std::size_t>(base);
  }
  return r;
}

// Drops zero terms and merges terms with identical generators.
inline void canonicalize_terms(std::vector<FiberVector::Term>& terms) {
  std::vector<FiberVector::Term> out;
  for (auto& term : terms) {
    bool merged = false;
    for (auto& o : out) {
      if (o.vec == term.vec) {
        o.coeff += term.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(term));
  }
  std::erase_if(out, [](const FiberVector::Term& tm) { return tm.coeff == Complex(0.0); });
  terms = std::move(out);
}

}  // namespace detail

inline FiberVector make_exp_fiber(const Model& m, std::vector<FiberVector::Term> terms,
                                  std::optional<Rational> t = std::nullopt) {
  if (m.kind != ModelKind::exponential)
    throw std::invalid_argument("make_exp_fiber: model is not exponential");
  if (terms.empty() && !t)
    throw std::invalid_argument("make_exp_fiber: zero vector needs an explicit time");
  Rational tt = t ? *t : terms.front().vec.t();
  for (const auto& term : terms) {
    if (!(term.vec.t() == tt))
      throw std::invalid_argument("make_exp_fiber: mixed fiber times");
    if (term.vec.generator.multiplicity() != m.dim)
      throw std::invalid_argument("make_exp_fiber: multiplicity mismatch");
  }
  detail::canonicalize_terms(terms);
  FiberVector v;
  v.t = tt;
  v.terms = std::move(terms);
  return v;
}

inline FiberVector exp_fiber(const Model& m, const StepFunction& gen, Complex coeff = 1.0) {
  return make_exp_fiber(m, {FiberVector::Term{coeff, ExpVector(gen)}});
}

inline FiberVector make_dense_fiber(const Model& m, long n, std::vector<Complex> amplitudes) {
  if (m.kind != ModelKind::discrete)
    throw std::invalid_argument("make_dense_fiber: model is not discrete");
  if (n < 0) throw std::invalid_argument("make_dense_fiber: negative level");
  if (amplitudes.size() != detail::pow_size(m.dim, n))
    throw std::invalid_argument("make_dense_fiber: amplitude count must be dim^n");
  FiberVector v;
  v.t = Rational(n);
  v.dense = std::move(amplitudes);
  v.dense_rep = true;
  return v;
}

// e(0_t) in the exponential model, the n-fold power of the first basis
// vector in the discrete model.  A unit vector in either case, and the
// family is multiplicative under the fiber product.
inline FiberVector vacuum_unit(const Model& m, const Rational& t) {
  if (m.kind == ModelKind::exponential) {
    if (t < Rational(0)) throw std::invalid_argument("vacuum_unit: negative time");
    StepFunction zero = StepFunction::zero(Rational(0), t, m.dim);
    return make_exp_fiber(m, {FiberVector::Term{Complex(1.0), ExpVector(zero)}}, t);
  }
  if (!t.is_integer() || t < Rational(0))
    throw std::invalid_argument("vacuum_unit: discrete fibers live at nonnegative integers");
  long n = t.num();
  std::vector<Complex> amp(detail::pow_size(m.dim, n), Complex(0.0));
  amp[0] = Complex(1.0);
  return make_dense_fiber(m, n, std::move(amp));
}

// <x, y> in the fiber at the common time, conjugate-linear in x.
inline Complex fiber_inner(const Model& m, const FiberVector& x, const FiberVector& y) {
  if (!(x.t == y.t))
    throw std::invalid_argument("fiber_inner: vectors live in different fibers");
  if (m.kind == ModelKind::exponential) {
    if (x.dense_rep || y.dense_rep)
      throw std::invalid_argument("fiber_inner: dense tensor in exponential model");
    Complex acc(0.0);
    for (const auto& a : x.terms)
      for (const auto& b : y.terms)
        acc += std::conj(a.coeff) * b.coeff *
               std::exp(l2_inner(a.vec.generator, b.vec.generator));
    return acc;
  }
  if (!x.dense_rep || !y.dense_rep)
    throw std::invalid_argument("fiber_inner: discrete model expects dense tensors");
  Complex acc(0.0);
  for (std::size_t i = 0; i < x.dense.size(); ++i)
    acc += std::conj(x.dense[i]) * y.dense[i];
  return acc;
}

inline double fiber_norm(const Model& m, const FiberVector& x) {
  return std::sqrt(std::max(0.0, fiber_inner(m, x, x).real()));
}

inline FiberVector fiber_add(const Model& m, const FiberVector& x, const FiberVector& y) {
  if (!(x.t == y.t)) throw std::invalid_argument("fiber_add: mixed fiber times");
  if (m.kind == ModelKind::exponential) {
    std::vector<FiberVector::Term> terms = x.terms;
    terms.insert(terms.end(), y.terms.begin(), y.terms.end());
    return make_exp_fiber(m, std::move(terms), x.t);
  }
  std::vector<Complex> amp = x.dense;
  for (std::size_t i = 0; i < amp.size(); ++i) amp[i] += y.dense[i];
  return make_dense_fiber(m, x.t.num(), std::move(amp));
}

inline FiberVector fiber_scale(const Model& m, Complex c, const FiberVector& x) {
  FiberVector v = x;
  if (m.kind == ModelKind::exponential) {
    for (auto& term : v.terms) term.coeff *= c;
    detail::canonicalize_terms(v.terms);
  } else {
    for (auto& a : v.dense) a *= c;
  }
  return v;
}

namespace detail {

inline FiberVector concat_primal(const Model& m, const FiberVector& x, const FiberVector& y) {
  if (m.kind == ModelKind::exponential) {
    std::vector<FiberVector::Term> terms;
    terms.reserve(x.terms.size() * y.terms.size());
    for (const auto& a : x.terms)
      for (const auto& b : y.terms)
        terms.push_back(FiberVector::Term{
            a.coeff * b.coeff, ExpVector(concat(a.vec.generator, b.vec.generator))});
    return make_exp_fiber(m, std::move(terms), x.t + y.t);
  }
  // Kronecker product; the first factor supplies the leading index digits.
  long n = x.t.num() + y.t.num();
  std::vector<Complex> amp;
  amp.reserve(x.dense.size() * y.dense.size());
  for (const Complex& a : x.dense)
    for (const Complex& b : y.dense) amp.push_back(a * b);
  return make_dense_fiber(m, n, std::move(amp));
}

}  // namespace detail

// The structure map E_s x E_t -> E_{s+t} applied to x (*) y.  In an opposed
// model the factors multiply in reversed order.
inline FiberVector u_concat(const Model& m, const FiberVector& x, const FiberVector& y) {
  if (m.opposed) return detail::concat_primal(m, y, x);
  return detail::concat_primal(m, x, y);
}

// Inverse of u_concat on the fiber at s+t: expands z into a finite sum of
// simple tensors (x_i, y_i) with x_i at time s and y_i at time t.
// Exponential terms split one-to-one; a discrete tensor is expanded along
// the basis of the first factor.
inline std::vector<std::pair<FiberVector, FiberVector>>
u_split_at(const Model& m, const Rational& s, const Rational& t, const FiberVector& z) {
  if (!(z.t == s + t))
    throw std::invalid_argument("u_split_at: fiber time must equal s + t");
  if (!(Rational(0) < s) || !(Rational(0) < t))
    throw std::invalid_argument("u_split_at: both parts must have positive length");
  if (m.opposed) {
    Model primal = m;
    primal.opposed = false;
    auto swapped = u_split_at(primal, t, s, z);
    std::vector<std::pair<FiberVector, FiberVector>> out;
    out.reserve(swapped.size());
    for (auto& [a, b] : swapped) out.emplace_back(std::move(b), std::move(a));
    return out;
  }
  std::vector<std::pair<FiberVector, FiberVector>> out;
  if (m.kind == ModelKind::exponential) {
    for (const auto& term : z.terms) {
      auto [f1, f2] = split(term.vec.generator, s);
      out.emplace_back(exp_fiber(m, f1, term.coeff), exp_fiber(m, f2));
    }
    return out;
  }
  if (!s.is_integer() || !t.is_integer())
    throw std::invalid_argument("u_split_at: discrete split points must be integers");
  long ns = s.num(), nt = t.num();
  std::size_t left_size = detail::pow_size(m.dim, ns);
  std::size_t right_size = detail::pow_size(m.dim, nt);
  for (std::size_t i = 0; i < left_size; ++i) {
    std::vector<Complex> block(z.dense.begin() + static_cast<std::ptrdiff_t>(i * right_size),
                               z.dense.begin() + static_cast<std::ptrdiff_t>((i + 1) * right_size));
    bool all_zero = true;
    for (const Complex& c : block)
      if (c != Complex(0.0)) { all_zero = false; break; }
    if (all_zero) continue;
    std::vector<Complex> basis(left_size, Complex(0.0));
    basis[i] = Complex(1.0);
    out.emplace_back(make_dense_fiber(m, ns, std::move(basis)),
                     make_dense_fiber(m, nt, std::move(block)));
  }
  return out;
}

}  // namespace prodsys
