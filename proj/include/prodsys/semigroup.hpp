#pragma once

// The operator layer induced by the dilations: the representation eta carried
// by the right dilation, matrix elements of the unitary that intertwines the
// two dilations, matrix elements of the induced semigroup acting on
// finite-rank operators, and a continuity probe that samples matrix elements
// on refining time grids.
//
// Only forward applications of the dilations are computable, so operators
// conjugated by a dilation are probed through frame families: inserting the
// clipped pseudo-inverse of the frame Gram matrix between two forward legs
// replaces every adjoint by the projection onto the frame span.  The exact
// leg orientation is spelled out at each matrix-element function.

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "prodsys/dilation.hpp"
#include "prodsys/frames.hpp"
#include "prodsys/operators.hpp"

namespace prodsys {

// eta_t(x) l = w_t(x (*) l): the representation carried by the right
// dilation.  eta_t(x) eta_s(y) = eta_{t+s}(x * y) with x * y the fiber
// product, and <eta_t(x) l, eta_t(y) l'> = <x,y> <l,l'>.
inline KVector eta_apply(const Rational& t, const FiberVector& x, const KVector& l) {
  return right_dilation_apply(t, x, l);
}

namespace detail {

inline FiberVector frame_member(const FrameFamily& frame, std::size_t j) {
  FiberVector v;
  v.t = frame.t;
  v.terms.push_back(FiberVector::Term{Complex(1.0), ExpVector(frame.generators[j])});
  return v;
}

}  // namespace detail

// Matrix element <k (*) l, u_t (k' (*) l')> of the unitary that intertwines
// the two dilations.  The inner adjoint leg w_t^* l' is resolved against the
// frame: with A_j = <k, v_t(k' (*) e(h_j))> and B_j = <w_t(e(h_j) (*) l), l'>
// the element is sum_jk A_j P_jk B_k.  On factored arguments
// l' = w_t(x (*) l'') with x in the frame span this reproduces
// u_t (k' (*) w_t(x (*) l'')) = v_t(k' (*) x) (*) l'' up to the clip.
inline Complex u_matrix_element(const Rational& t, const KVector& k, const KVector& l,
                                const KVector& kp, const KVector& lp,
                                const FrameFamily& frame) {
  if (!(frame.t == t))
    throw std::invalid_argument("u_matrix_element: frame time mismatch");
  const auto n = frame.size();
  std::vector<Complex> a(n), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    FiberVector ej = detail::frame_member(frame, j);
    // A_j: pairing of k against the left dilation fed with the j-th member.
    a[j] = kvector_inner(k, left_dilation_apply(t, kp, ej));
    // B_j: pairing of the right-dilation preimage candidate against l' and l.
    b[j] = kvector_inner(right_dilation_apply(t, ej, l), lp);
  }
  Complex acc(0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t kk = 0; kk < n; ++kk)
      acc += a[j] * frame.pinv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(kk)) * b[kk];
  return acc;
}

// Matrix element <m, theta_t(a) m'> of the induced semigroup on finite-rank
// operators, theta_t(a) = v_t (a (*) id) v_t^*, probed through a frame:
// A^r_j = <m, v_t(ket_r (*) e(h_j))>, B^r_k = <v_t(bra_r (*) e(h_k)), m'>.
inline Complex theta_matrix_element(const Rational& t, const FiniteRankOperator& a,
                                    const KVector& m, const KVector& mp,
                                    const FrameFamily& frame) {
  if (!(frame.t == t))
    throw std::invalid_argument("theta_matrix_element: frame time mismatch");
  const auto n = frame.size();
  Complex acc(0.0);
  std::vector<Complex> rowa(n), rowb(n);
  for (const auto& term : a.terms) {
    for (std::size_t j = 0; j < n; ++j) {
      FiberVector ej = detail::frame_member(frame, j);
      rowa[j] = kvector_inner(m, left_dilation_apply(t, term.ket, ej));
      rowb[j] = kvector_inner(left_dilation_apply(t, term.bra, ej), mp);
    }
    Complex part(0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t kk = 0; kk < n; ++kk)
        part += rowa[j] * frame.pinv(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(kk)) *
                rowb[kk];
    acc += term.coeff * part;
  }
  return acc;
}

// Exact route for factored arguments of u_t: u_t(k' (*) w_t(x (*) l'')) =
// v_t(k' (*) x) (*) l'', so the matrix element against k (*) l factorizes.
inline Complex u_exact_factored(const Rational& t, const KVector& k, const KVector& l,
                                const KVector& kp, const FiberVector& x, const KVector& lpp) {
  return kvector_inner(k, left_dilation_apply(t, kp, x)) * kvector_inner(l, lpp);
}

// Exact route for theta against a factored probe m' = v_t(k'' (*) y):
// <m, theta_t(a) v_t(k'' (*) y)> = <m, v_t((a k'') (*) y)>.
inline Complex theta_exact_factored(const Rational& t, const FiniteRankOperator& a,
                                    const KVector& m, const KVector& kpp, const FiberVector& y) {
  return kvector_inner(m, left_dilation_apply(t, operator_apply(a, kpp), y));
}

// One matrix element of the semigroup as a function of t, sampled on a
// strictly increasing grid.  Factored scenarios take the exact route; general
// scenarios resolve against the default frame at the stated level.
struct ContinuityScenario {
  KVector k, l;    // fixed probe k (*) l
  KVector kp;      // first leg of the argument
  // Factored route: the argument is k' (*) w_t(e(slice(x_gen, 0, t)) (*) l2).
  std::optional<StepFunction> x_gen;  // generator window covering (0, max t]
  KVector l2;
  int frame_level = 1;
  double frame_clip = 1e-10;
  double frame_max_condition = 1e12;
};

struct ContinuityPoint {
  Rational t;
  Complex value;
  std::string route;  // "exact" or "frame"
  long frame_size = 0;
};

inline ContinuityPoint continuity_sample(const ContinuityScenario& sc, const Rational& t) {
  ContinuityPoint pt;
  pt.t = t;
  if (sc.x_gen) {
    if (sc.x_gen->hi() < t)
      throw std::invalid_argument("continuity_sample: generator window too short");
    FiberVector x;
    x.t = t;
    x.terms.push_back(FiberVector::Term{Complex(1.0), ExpVector(slice(*sc.x_gen, Rational(0), t))});
    pt.value = kvector_inner(sc.k, left_dilation_apply(t, sc.kp, x)) * kvector_inner(sc.l, sc.l2);
    pt.route = "exact";
  } else {
    Model m = exponential_model(sc.k.dim);
    FrameFamily frame = default_frame(m, t, sc.frame_level, sc.frame_clip, sc.frame_max_condition);
    pt.value = u_matrix_element(t, sc.k, sc.l, sc.kp, sc.l2, frame);
    pt.route = "frame";
    pt.frame_size = static_cast<long>(frame.size());
  }
  return pt;
}

// Samples the scenario on the grid and reports the largest jump between
// consecutive samples.  Refining the grid must send the jumps to zero; the
// acceptance suites check that halving the spacing shrinks them.
struct ContinuityProbe {
  std::vector<ContinuityPoint> points;
  double max_jump = 0.0;
};

inline ContinuityProbe continuity_probe(const ContinuityScenario& sc,
                                        const std::vector<Rational>& grid) {
  if (grid.size() < 2)
    throw std::invalid_argument("continuity_probe: need at least two grid points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("continuity_probe: grid must increase strictly");
  ContinuityProbe probe;
  probe.points.reserve(grid.size());
  for (const Rational& t : grid) probe.points.push_back(continuity_sample(sc, t));
  for (std::size_t i = 0; i + 1 < probe.points.size(); ++i)
    probe.max_jump = std::max(probe.max_jump,
                              std::abs(probe.points[i + 1].value - probe.points[i].value));
  return probe;
}

}  // namespace prodsys
