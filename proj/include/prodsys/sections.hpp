#pragma once

// Vectors in the dilation space, realized as finite sums of elementary
// sections over the parameter interval (0,1].
//
// An elementary section assigns to each parameter beta in its interval the
// exponential vector of a trajectory T_beta supported on the half-axis
// (-infty, beta]:
//
//   T_beta(sigma) = f_abs(sigma)          for sigma <= beta - depth
//   T_beta(sigma) = f_rel(sigma - beta)   for beta - depth < sigma <= beta
//
// f_abs lives on a fixed window of the absolute axis and is zero-extended;
// f_rel lives on (-depth, 0] and rides along with beta.  Inner products
// integrate exp(<T_beta, T'_beta>) over beta; the exponent is piecewise
// linear in beta with kinks only where a riding breakpoint crosses a static
// one, so each cell integrates in closed form.

#include <complex>
#include <vector>
#include <algorithm>
#include <stdexcept>
#include <cmath>

#include "prodsys/rational.hpp"
#include "prodsys/step_function.hpp"

namespace prodsys {

// Half-open interval (lo, hi].
struct Interval {
  Rational lo, hi;
  bool empty() const { return !(lo < hi); }
  Rational length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
  return Interval{max(a.lo, b.lo), min(a.hi, b.hi)};
}

struct ElementarySection {
  Interval interval;   // subset of (0,1], nonempty
  Complex kappa = 1.0;
  StepFunction f_abs;  // static window on the absolute axis, zero-extended
  Rational depth;      // nonnegative
  StepFunction f_rel;  // riding part, domain (-depth, 0]

  ElementarySection(Interval iv, Complex k, StepFunction abs_part, Rational d,
                    StepFunction rel_part)
      : interval(iv), kappa(k), f_abs(std::move(abs_part)), depth(d),
        f_rel(std::move(rel_part)) {
    if (interval.empty() || interval.lo < Rational(0) || Rational(1) < interval.hi)
      throw std::invalid_argument("ElementarySection: interval must be a nonempty subset of (0,1]");
    if (depth < Rational(0))
      throw std::invalid_argument("ElementarySection: negative depth");
    if (!(f_rel.lo() == -depth) || !(f_rel.hi() == (depth == Rational(0) ? -depth : Rational(0))))
      throw std::invalid_argument("ElementarySection: riding part must cover (-depth, 0]");
    if (f_abs.multiplicity() != f_rel.multiplicity())
      throw std::invalid_argument("ElementarySection: multiplicity mismatch");
  }

  int multiplicity() const { return f_abs.multiplicity(); }
  friend bool operator==(const ElementarySection&, const ElementarySection&) = default;
};

struct KVector {
  int dim = 1;
  std::vector<ElementarySection> sections;
};

inline KVector make_kvector(int dim, std::vector<ElementarySection> sections) {
  if (dim < 1) throw std::invalid_argument("make_kvector: dim must be >= 1");
  for (const auto& s : sections)
    if (s.multiplicity() != dim)
      throw std::invalid_argument("make_kvector: section multiplicity mismatch");
  return KVector{dim, std::move(sections)};
}

// The unit with identically vanishing trajectories.
inline KVector vacuum_kvector(int dim) {
  ElementarySection s(Interval{Rational(0), Rational(1)}, Complex(1.0),
                      StepFunction::empty(Rational(0), dim), Rational(0),
                      StepFunction::empty(Rational(0), dim));
  return KVector{dim, {s}};
}

inline KVector kv_scale(Complex c, const KVector& x) {
  KVector out = x;
  for (auto& s : out.sections) s.kappa *= c;
  return out;
}

inline KVector kv_add(const KVector& x, const KVector& y) {
  if (x.dim != y.dim) throw std::invalid_argument("kv_add: dimension mismatch");
  KVector out = x;
  out.sections.insert(out.sections.end(), y.sections.begin(), y.sections.end());
  return out;
}

inline KVector kv_sub(const KVector& x, const KVector& y) {
  return kv_add(x, kv_scale(Complex(-1.0), y));
}

namespace detail {

// Trajectory at a fixed beta: disjoint pieces, ascending, zero elsewhere.
struct ProfilePiece {
  Rational lo, hi;
  const Value* value;
};

inline std::vector<ProfilePiece> trajectory_profile(const ElementarySection& s,
                                                    const Rational& beta) {
  std::vector<ProfilePiece> out;
  Rational clip = beta - s.depth;  // static part visible on (-infty, clip]
  Rational cursor = s.f_abs.lo();
  for (const Piece& p : s.f_abs.pieces()) {
    if (cursor < clip) {
      Rational end = min(p.end, clip);
      out.push_back(ProfilePiece{cursor, end, &p.value});
    }
    cursor = p.end;
    if (!(cursor < clip)) break;
  }
  cursor = s.f_rel.lo() + beta;
  for (const Piece& p : s.f_rel.pieces()) {
    out.push_back(ProfilePiece{cursor, p.end + beta, &p.value});
    cursor = p.end + beta;
  }
  return out;
}

inline Complex profile_inner(const std::vector<ProfilePiece>& a,
                             const std::vector<ProfilePiece>& b, int dim) {
  Complex acc(0.0);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Rational lo = max(a[i].lo, b[j].lo);
    Rational hi = min(a[i].hi, b[j].hi);
    if (lo < hi) {
      Complex cell(0.0);
      for (int c = 0; c < dim; ++c)
        cell += std::conj((*a[i].value)[c]) * (*b[j].value)[c];
      acc += (hi - lo).to_double() * cell;
    }
    if (a[i].hi < b[j].hi) ++i;
    else if (b[j].hi < a[i].hi) ++j;
    else { ++i; ++j; }
  }
  return acc;
}

// <T_beta, T'_beta> as a function of beta.
inline Complex trajectory_overlap(const ElementarySection& s1, const ElementarySection& s2,
                                  const Rational& beta) {
  return profile_inner(trajectory_profile(s1, beta), trajectory_profile(s2, beta),
                       s1.multiplicity());
}

// Breakpoints of the static part on the absolute axis.
inline void collect_static_breaks(const ElementarySection& s, std::vector<Rational>& out) {
  if (s.f_abs.empty_domain()) return;
  out.push_back(s.f_abs.lo());
  for (const Piece& p : s.f_abs.pieces()) out.push_back(p.end);
}

// Breakpoints of the riding part in section-relative coordinates, the
// rel/abs boundary -depth included.
inline void collect_riding_breaks(const ElementarySection& s, std::vector<Rational>& out) {
  out.push_back(-s.depth);
  out.push_back(Rational(0));
  for (const Piece& p : s.f_rel.pieces()) out.push_back(p.end);
}

}  // namespace detail

// <S1, S2> = conj(kappa1) kappa2 * integral over the interval overlap of
// exp(<T_beta, T'_beta>) d beta, evaluated cell by cell in closed form.
inline Complex section_inner(const ElementarySection& s1, const ElementarySection& s2) {
  if (s1.multiplicity() != s2.multiplicity())
    throw std::invalid_argument("section_inner: multiplicity mismatch");
  Interval overlap = intersect(s1.interval, s2.interval);
  if (overlap.empty()) return Complex(0.0);

  // A kink can only sit where a riding breakpoint beta + rho meets a static
  // breakpoint a, i.e. beta = a - rho.
  std::vector<Rational> statics, ridings;
  detail::collect_static_breaks(s1, statics);
  detail::collect_static_breaks(s2, statics);
  detail::collect_riding_breaks(s1, ridings);
  detail::collect_riding_breaks(s2, ridings);

  std::vector<Rational> cuts;
  cuts.push_back(overlap.lo);
  cuts.push_back(overlap.hi);
  for (const Rational& a : statics)
    for (const Rational& rho : ridings) {
      Rational beta = a - rho;
      if (overlap.lo < beta && beta < overlap.hi) cuts.push_back(beta);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Complex acc(0.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& c0 = cuts[i];
    const Rational& c1 = cuts[i + 1];
    Complex y0 = detail::trajectory_overlap(s1, s2, c0);
    Complex y1 = detail::trajectory_overlap(s1, s2, c1);
    double x0 = c0.to_double();
    double dx = (c1 - c0).to_double();
    Complex slope = (y1 - y0) / dx;
    Complex offset = y0 - slope * x0;
    acc += exp_linear_integral(slope, offset, c0, c1);
  }
  return std::conj(s1.kappa) * s2.kappa * acc;
}

inline Complex kvector_inner(const KVector& x, const KVector& y) {
  if (x.dim != y.dim) throw std::invalid_argument("kvector_inner: dimension mismatch");
  Complex acc(0.0);
  for (const auto& a : x.sections)
    for (const auto& b : y.sections) acc += section_inner(a, b);
  return acc;
}

// Tiny negative round-off from cancellation is clamped to zero.
inline double kvector_norm(const KVector& x) {
  return std::sqrt(std::max(0.0, kvector_inner(x, x).real()));
}

namespace detail {

// True when every stored value of f on the window (lo, hi] is exactly zero;
// the zero-extension outside the stored domain counts as zero.
inline bool zero_on_window(const StepFunction& f, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) return true;
  Rational cursor = f.lo();
  for (const Piece& p : f.pieces()) {
    Rational a = max(cursor, lo), b = min(p.end, hi);
    if (a < b) {
      for (const Complex& c : p.value)
        if (c != Complex(0.0)) return false;
    }
    cursor = p.end;
  }
  return true;
}

inline bool all_zero(const Value& v) {
  for (const Complex& c : v)
    if (c != Complex(0.0)) return false;
  return true;
}

// Drop explicit zero pieces at both edges of the static window.
inline StepFunction trim_zero_edges(const StepFunction& f) {
  const auto& ps = f.pieces();
  std::size_t first = 0, last = ps.size();
  while (first < last && all_zero(ps[first].value)) ++first;
  while (last > first && all_zero(ps[last - 1].value)) --last;
  if (first == last) return StepFunction::empty(Rational(0), f.multiplicity());
  Rational lo = (first == 0) ? f.lo() : ps[first - 1].end;
  std::vector<Piece> kept(ps.begin() + static_cast<std::ptrdiff_t>(first),
                          ps.begin() + static_cast<std::ptrdiff_t>(last));
  return StepFunction(lo, std::move(kept), f.multiplicity());
}

inline ElementarySection canonicalize_section(ElementarySection s) {
  // Strip zero pieces at the deep end of the riding part.  The stripped band
  // is re-assigned to the zero-extended static part, so the static part must
  // be zero on the whole band swept by the interval.
  while (Rational(0) < s.depth) {
    const Piece& deepest = s.f_rel.pieces().front();
    if (!all_zero(deepest.value)) break;
    Rational new_depth = -deepest.end;
    Rational band_lo = s.interval.lo - s.depth;
    Rational band_hi = s.interval.hi - new_depth;
    if (!zero_on_window(s.f_abs, band_lo, band_hi)) break;
    s.f_rel = (deepest.end == Rational(0))
                  ? StepFunction::empty(Rational(0), s.f_rel.multiplicity())
                  : slice(s.f_rel, deepest.end, Rational(0));
    s.depth = new_depth;
  }
  StepFunction trimmed = trim_zero_edges(s.f_abs);
  return ElementarySection(s.interval, s.kappa, std::move(trimmed), s.depth,
                           std::move(s.f_rel));
}

}  // namespace detail

// Canonical form: per-section depth reduction and zero-trimming, zero-weight
// sections dropped, sections ordered by interval, and adjacent sections with
// identical data merged.  Idempotent; preserves kvector_inner exactly.
inline KVector canonicalize_kvector(const KVector& x) {
  std::vector<ElementarySection> sections;
  sections.reserve(x.sections.size());
  for (const auto& s : x.sections) {
    if (s.kappa == Complex(0.0)) continue;
    sections.push_back(detail::canonicalize_section(s));
  }
  std::stable_sort(sections.begin(), sections.end(),
                   [](const ElementarySection& a, const ElementarySection& b) {
                     if (a.interval.lo < b.interval.lo) return true;
                     if (b.interval.lo < a.interval.lo) return false;
                     return a.interval.hi < b.interval.hi;
                   });
  std::vector<ElementarySection> merged;
  for (auto& s : sections) {
    if (!merged.empty()) {
      ElementarySection& prev = merged.back();
      if (prev.interval.hi == s.interval.lo && prev.kappa == s.kappa &&
          prev.f_abs == s.f_abs && prev.depth == s.depth && prev.f_rel == s.f_rel) {
        prev.interval.hi = s.interval.hi;
        continue;
      }
    }
    merged.push_back(std::move(s));
  }
  return KVector{x.dim, std::move(merged)};
}

// The intervals of a section list, sorted; used to check that dilation
// outputs tile (0,1] exactly.
inline bool intervals_partition_unit(const std::vector<ElementarySection>& sections) {
  if (sections.empty()) return false;
  std::vector<Interval> ivs;
  ivs.reserve(sections.size());
  for (const auto& s : sections) ivs.push_back(s.interval);
  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
    if (a.lo < b.lo) return true;
    if (b.lo < a.lo) return false;
    return a.hi < b.hi;
  });
  Rational cursor(0);
  for (const auto& iv : ivs) {
    if (!(iv.lo == cursor)) return false;
    cursor = iv.hi;
  }
  return cursor == Rational(1);
}

}  // namespace prodsys
