#pragma once

// Step functions on half-open rational intervals (lo, hi] with values in C^d.
// This is the computable dense core of L^2: concatenation, splitting, inner
// products and the closed-form integral of exp(linear) are all exact up to
// floating point in the *values*; the breakpoint combinatorics is exact.
//
// Canonical form: breakpoints strictly increasing, adjacent pieces with equal
// values merged, so equality of canonical forms is meaningful.

#include <complex>
#include <vector>
#include <algorithm>
#include <stdexcept>
#include <cmath>

#include "prodsys/rational.hpp"

namespace prodsys {

using Complex = std::complex<double>;
using Value = std::vector<Complex>;  // one sample in C^d

struct Piece {
  Rational end;  // right endpoint of the piece (inclusive)
  Value value;
  friend bool operator==(const Piece&, const Piece&) = default;
};

class StepFunction {
public:
  // Pieces cover (lo, pieces.back().end]; each piece i covers
  // (prev end, end_i].  Throws on non-increasing ends or mixed value arity.
  StepFunction(Rational lo, std::vector<Piece> pieces, int multiplicity)
      : lo_(lo), pieces_(std::move(pieces)), mult_(multiplicity) {
    if (mult_ < 1)
      throw std::invalid_argument("StepFunction: multiplicity must be >= 1");
    Rational prev = lo_;
    for (const Piece& p : pieces_) {
      if (!(prev < p.end))
        throw std::invalid_argument("StepFunction: breakpoints must increase strictly");
      if (static_cast<int>(p.value.size()) != mult_)
        throw std::invalid_argument("StepFunction: value arity mismatch");
      prev = p.end;
    }
    merge_equal_neighbours();
  }

  // Empty-domain function (at, at].
  static StepFunction empty(Rational at, int multiplicity) {
    return StepFunction(at, {}, multiplicity);
  }

  static StepFunction zero(Rational lo, Rational hi, int multiplicity) {
    if (hi < lo) throw std::invalid_argument("StepFunction::zero: hi < lo");
    if (hi == lo) return empty(lo, multiplicity);
    return StepFunction(lo, {Piece{hi, Value(multiplicity, Complex(0.0))}}, multiplicity);
  }

  static StepFunction constant(Rational lo, Rational hi, Value v) {
    if (!(lo < hi)) throw std::invalid_argument("StepFunction::constant: need lo < hi");
    int d = static_cast<int>(v.size());
    return StepFunction(lo, {Piece{hi, std::move(v)}}, d);
  }

  Rational lo() const { return lo_; }
  Rational hi() const { return pieces_.empty() ? lo_ : pieces_.back().end; }
  Rational length() const { return hi() - lo_; }
  int multiplicity() const { return mult_; }
  bool empty_domain() const { return pieces_.empty(); }
  const std::vector<Piece>& pieces() const { return pieces_; }

  // Value at sigma, for sigma in (lo, hi].
  const Value& value_at(const Rational& sigma) const {
    if (!(lo_ < sigma) || hi() < sigma)
      throw std::out_of_range("StepFunction::value_at: point outside domain");
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), sigma,
                               [](const Piece& p, const Rational& s) { return p.end < s; });
    return it->value;
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.mult_ == b.mult_ && a.lo_ == b.lo_ && a.pieces_ == b.pieces_;
  }

private:
  void merge_equal_neighbours() {
    if (pieces_.size() < 2) return;
    std::vector<Piece> out;
    out.reserve(pieces_.size());
    out.push_back(std::move(pieces_.front()));
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
      if (pieces_[i].value == out.back().value) {
        out.back().end = pieces_[i].end;  // extend, the values agree exactly
      } else {
        out.push_back(std::move(pieces_[i]));
      }
    }
    pieces_ = std::move(out);
  }

  Rational lo_;
  std::vector<Piece> pieces_;
  int mult_;
};

// f shifted by delta: domain (lo+delta, hi+delta], same values.
inline StepFunction translate(const StepFunction& f, const Rational& delta) {
  std::vector<Piece> ps = f.pieces();
  for (Piece& p : ps) p.end = p.end + delta;
  return StepFunction(f.lo() + delta, std::move(ps), f.multiplicity());
}

// Restriction to (a, b] with lo <= a <= b <= hi.
inline StepFunction slice(const StepFunction& f, const Rational& a, const Rational& b) {
  if (a < f.lo() || f.hi() < b || b < a)
    throw std::invalid_argument("slice: (a,b] not inside the domain");
  if (a == b) return StepFunction::empty(a, f.multiplicity());
  std::vector<Piece> out;
  for (const Piece& p : f.pieces()) {
    if (!(a < p.end)) continue;       // entirely left of the window
    Rational end = min(p.end, b);
    out.push_back(Piece{end, p.value});
    if (!(end < b)) break;
  }
  return StepFunction(a, std::move(out), f.multiplicity());
}

// Concatenation: f on (0,s], g on (0,t] -> (f then g) on (0,s+t].
// The second factor is appended after the first on the time axis.
inline StepFunction concat(const StepFunction& f, const StepFunction& g) {
  if (f.multiplicity() != g.multiplicity())
    throw std::invalid_argument("concat: multiplicity mismatch");
  if (!(f.lo() == Rational(0)) || !(g.lo() == Rational(0)))
    throw std::invalid_argument("concat: operands must start at 0");
  std::vector<Piece> ps = f.pieces();
  Rational s = f.hi();
  for (const Piece& p : g.pieces()) ps.push_back(Piece{p.end + s, p.value});
  return StepFunction(Rational(0), std::move(ps), f.multiplicity());
}

// Inverse of concat at an interior point 0 < s < hi: returns the first part
// on (0,s] and the second part re-based to (0, hi-s].
inline std::pair<StepFunction, StepFunction> split(const StepFunction& f, const Rational& s) {
  if (!(f.lo() == Rational(0)))
    throw std::invalid_argument("split: operand must start at 0");
  if (!(Rational(0) < s) || !(s < f.hi()))
    throw std::invalid_argument("split: point must be strictly interior");
  StepFunction first = slice(f, Rational(0), s);
  StepFunction second = translate(slice(f, s, f.hi()), -s);
  return {std::move(first), std::move(second)};
}

// L^2 inner product over a shared domain, conjugate-linear in the FIRST slot.
inline Complex l2_inner(const StepFunction& f, const StepFunction& g) {
  if (f.multiplicity() != g.multiplicity())
    throw std::invalid_argument("l2_inner: multiplicity mismatch");
  if (!(f.lo() == g.lo()) || !(f.hi() == g.hi()))
    throw std::invalid_argument("l2_inner: domains differ");
  Complex acc(0.0);
  std::size_t i = 0, j = 0;
  Rational cursor = f.lo();
  const auto& fp = f.pieces();
  const auto& gp = g.pieces();
  while (i < fp.size() && j < gp.size()) {
    Rational end = min(fp[i].end, gp[j].end);
    double len = (end - cursor).to_double();
    Complex cell(0.0);
    for (int c = 0; c < f.multiplicity(); ++c)
      cell += std::conj(fp[i].value[c]) * gp[j].value[c];
    acc += len * cell;
    cursor = end;
    if (fp[i].end == end) ++i;
    if (gp[j].end == end) ++j;
  }
  return acc;
}

inline double l2_norm_sq(const StepFunction& f) { return l2_inner(f, f).real(); }
inline double l2_norm(const StepFunction& f) { return std::sqrt(std::max(0.0, l2_norm_sq(f))); }

// Time reversal on the domain: rev(f)(sigma) = f(lo + hi - sigma), with the
// half-open convention handled by flipping piece boundaries.
inline StepFunction reverse(const StepFunction& f) {
  if (f.empty_domain()) return f;
  Rational lo = f.lo(), hi = f.hi();
  const auto& ps = f.pieces();
  std::vector<Piece> out;
  out.reserve(ps.size());
  // Piece i covers (e_{i-1}, e_i]; reversed it covers (lo+hi-e_i, lo+hi-e_{i-1}].
  for (std::size_t i = ps.size(); i-- > 0;) {
    Rational left = (i == 0) ? lo : ps[i - 1].end;
    out.push_back(Piece{lo + hi - left, ps[i].value});
  }
  return StepFunction(lo, std::move(out), f.multiplicity());
}

// Integral over (lo, hi] of exp(a*x + b).  Closed form when a*(hi-lo) is
// appreciable; 4-term Taylor expansion of (e^z - 1)/z when |a|*(hi-lo) < 1e-8
// to avoid cancellation.
inline Complex exp_linear_integral(Complex a, Complex b, const Rational& lo, const Rational& hi) {
  if (!(lo < hi))
    throw std::invalid_argument("exp_linear_integral: need lo < hi");
  double x0 = lo.to_double();
  double dx = (hi - lo).to_double();
  Complex z = a * dx;
  if (std::abs(z) < 1e-8) {
    // exp(a x0 + b) * dx * (1 + z/2 + z^2/6 + z^3/24)
    Complex series = 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0)));
    return std::exp(a * x0 + b) * dx * series;
  }
  double x1 = hi.to_double();
  return (std::exp(a * x1 + b) - std::exp(a * x0 + b)) / a;
}

}  // namespace prodsys
