#pragma once

// Left and right dilation of the exponential system, acting on section
// vectors.
//
// Applying the left dilation at time t extends every trajectory by the
// generator h on the fresh band (beta, beta + t] and renames the parameter
// modulo the integers.  Writing t = n_t + r with r in (0,1], a parameter
// alpha lands at alpha + r when alpha <= 1 - r (absorbing n_t whole turns)
// and at alpha + r - 1 when alpha > 1 - r (absorbing n_t + 1).  On the
// trajectory this is a rigid shift: the riding part deepens by t and picks
// up h at the shallow end, the static part shifts down by the number of
// absorbed turns.
//
// The right dilation is the left dilation of the time-reversed generators:
// reversal exchanges the order of concatenation, which is exactly the
// relation between the two dilation laws.

#include <stdexcept>
#include <vector>

#include "prodsys/product_system.hpp"
#include "prodsys/sections.hpp"

namespace prodsys {

struct ShiftIndex {
  long n;         // whole turns absorbed
  Rational beta;  // landing parameter in (0,1]
};

// Decomposition alpha + t = n + beta with beta in (0,1].
inline ShiftIndex shift_index(const Rational& alpha, const Rational& t) {
  if (!(Rational(0) < alpha) || Rational(1) < alpha)
    throw std::invalid_argument("shift_index: alpha must lie in (0,1]");
  Rational x = alpha + t;
  Rational beta = frac_in_unit(x);
  Rational n = x - beta;
  return ShiftIndex{n.num(), beta};
}

namespace detail {

// Riding part of a dilated section: the old riding part pushed down by t,
// with the generator h (re-based from (0,t] to (-t,0]) appended on top.
inline StepFunction extend_riding(const StepFunction& f_rel, const StepFunction& h,
                                  const Rational& t) {
  StepFunction deepened = translate(f_rel, -t);
  std::vector<Piece> ps = deepened.pieces();
  StepFunction fresh = translate(h, -t);
  for (const Piece& p : fresh.pieces()) ps.push_back(p);
  return StepFunction(deepened.lo(), std::move(ps), h.multiplicity());
}

}  // namespace detail

// Images of the elementary sections of k under the left dilation at time t
// applied against x, grouped per term of x.  Within one term the images of a
// section list tiling (0,1] tile (0,1] again.
inline std::vector<std::vector<ElementarySection>>
left_dilation_term_images(const Rational& t, const KVector& k, const FiberVector& x) {
  if (!(Rational(0) < t))
    throw std::invalid_argument("left dilation: time must be positive");
  if (!(x.t == t))
    throw std::invalid_argument("left dilation: fiber vector must live at time t");
  if (x.dense_rep)
    throw std::invalid_argument("left dilation: expected an exponential fiber vector");

  Rational r = frac_in_unit(t);
  Rational turns = t - r;  // n_t, a nonnegative integer
  Rational cut = Rational(1) - r;

  std::vector<std::vector<ElementarySection>> images;
  images.reserve(x.terms.size());
  for (const auto& term : x.terms) {
    if (term.vec.generator.multiplicity() != k.dim)
      throw std::invalid_argument("left dilation: multiplicity mismatch");
    std::vector<ElementarySection> image;
    for (const ElementarySection& s : k.sections) {
      // Low branch: parameters in (0, 1-r] absorb n_t turns, landing in (r, 1].
      // High branch: parameters in (1-r, 1] absorb n_t + 1, landing in (0, r].
      const Interval low = intersect(s.interval, Interval{Rational(0), cut});
      const Interval high = intersect(s.interval, Interval{cut, Rational(1)});
      for (int branch = 0; branch < 2; ++branch) {
        const Interval& iv = branch == 0 ? low : high;
        if (iv.empty()) continue;
        Rational n = branch == 0 ? turns : turns + Rational(1);
        Rational delta = t - n;  // landing shift, in (-1, 1]
        image.emplace_back(Interval{iv.lo + delta, iv.hi + delta}, s.kappa * term.coeff,
                           translate(s.f_abs, -n), s.depth + t,
                           detail::extend_riding(s.f_rel, term.vec.generator, t));
      }
    }
    images.push_back(std::move(image));
  }
  return images;
}

// v_t(k (*) x): the left dilation applied to a section vector and a fiber
// vector at time t.
inline KVector left_dilation_apply(const Rational& t, const KVector& k, const FiberVector& x) {
  auto images = left_dilation_term_images(t, k, x);
  KVector out{k.dim, {}};
  for (auto& image : images)
    for (auto& s : image) out.sections.push_back(std::move(s));
  return out;
}

// w_t(x (*) l): the right dilation, computed as the left dilation of the
// time-reversed generators.  Reversal swaps concatenation order, so the
// right dilation law follows from the left one.
inline KVector right_dilation_apply(const Rational& t, const FiberVector& x, const KVector& l) {
  if (x.dense_rep)
    throw std::invalid_argument("right dilation: expected an exponential fiber vector");
  FiberVector reversed;
  reversed.t = x.t;
  reversed.terms.reserve(x.terms.size());
  for (const auto& term : x.terms)
    reversed.terms.push_back(FiberVector::Term{term.coeff, ExpVector(reverse(term.vec.generator))});
  return left_dilation_apply(t, l, reversed);
}

// Bookkeeping check used by the verification suites: every per-term image of
// a dilation application must tile (0,1] exactly, provided the input tiles.
inline bool dilation_partitions_unit(const Rational& t, const KVector& k, const FiberVector& x) {
  for (const auto& image : left_dilation_term_images(t, k, x))
    if (!intervals_partition_unit(image)) return false;
  return true;
}

}  // namespace prodsys
