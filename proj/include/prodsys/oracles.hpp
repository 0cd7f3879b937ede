#pragma once

// Independent reference computations the verification suites compare
// against.  Each one recomputes a quantity along a different route than the
// production code: truncated series instead of exp, midpoint quadrature
// instead of closed forms, eigenvalue checks instead of algebraic
// identities.  None of them call the code paths they check.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "prodsys/product_system.hpp"
#include "prodsys/sections.hpp"

namespace prodsys::oracle {

// <e(f), e(g)> via the tensor-power series sum_{n<=nmax} z^n / n!, z the
// L^2 pairing computed by midpoint quadrature (not by the piecewise form).
inline Complex exp_inner_series(const StepFunction& f, const StepFunction& g,
                                int nmax = 30, int quadrature_points = 20000) {
  // Midpoint rule on the shared domain.  The integrand is piecewise
  // constant, so the only error comes from cells straddling breakpoints.
  Complex z(0.0);
  Rational lo = f.lo(), len = f.length();
  for (int k = 0; k < quadrature_points; ++k) {
    Rational mid = lo + len * Rational(2 * k + 1, 2 * quadrature_points);
    const Value& a = f.value_at(mid);
    const Value& b = g.value_at(mid);
    Complex cell(0.0);
    for (std::size_t c = 0; c < a.size(); ++c) cell += std::conj(a[c]) * b[c];
    z += cell;
  }
  z *= len.to_double() / quadrature_points;

  Complex term(1.0), acc(1.0);
  for (int n = 1; n <= nmax; ++n) {
    term *= z / static_cast<double>(n);
    acc += term;
  }
  return acc;
}

// Same series, but with the exact piecewise pairing; isolates the series
// truncation from the quadrature error.
inline Complex exp_inner_series_exact_pairing(const StepFunction& f, const StepFunction& g,
                                              int nmax = 30) {
  Complex z = l2_inner(f, g);
  Complex term(1.0), acc(1.0);
  for (int n = 1; n <= nmax; ++n) {
    term *= z / static_cast<double>(n);
    acc += term;
  }
  return acc;
}

// Series with the pairing summed cell by cell on the 1/q grid.  Both
// functions must break only at grid points, so sampling each cell at its
// right endpoint is exact; this shares no code with the merge-walk pairing.
inline Complex exp_inner_series_grid(const StepFunction& f, const StepFunction& g,
                                     std::int64_t q, int nmax = 30) {
  Complex z(0.0);
  std::int64_t lo = (f.lo() * Rational(q)).num();
  std::int64_t hi = (f.hi() * Rational(q)).num();
  for (std::int64_t k = lo + 1; k <= hi; ++k) {
    Rational tick(k, q);
    const Value& a = f.value_at(tick);
    const Value& b = g.value_at(tick);
    Complex cell(0.0);
    for (std::size_t c = 0; c < a.size(); ++c) cell += std::conj(a[c]) * b[c];
    z += cell;
  }
  z /= static_cast<double>(q);
  Complex term(1.0), acc(1.0);
  for (int n = 1; n <= nmax; ++n) {
    term *= z / static_cast<double>(n);
    acc += term;
  }
  return acc;
}

// Integral of exp(a x + b) over (lo, hi] via the series
// e^{a lo + b} * dx * sum_n (a dx)^n / (n+1)!.
inline Complex exp_linear_integral_series(Complex a, Complex b, const Rational& lo,
                                          const Rational& hi, int nmax = 25) {
  double dx = (hi - lo).to_double();
  Complex z = a * dx;
  Complex term(1.0), acc(1.0);
  for (int n = 1; n <= nmax; ++n) {
    term *= z / static_cast<double>(n + 1);
    acc += term;
  }
  return std::exp(a * lo.to_double() + b) * dx * acc;
}

// Section pairing by brute-force midpoint quadrature in the parameter: the
// trajectory overlap at each sample is computed exactly, only the outer
// integral is approximated.
inline Complex section_inner_quadrature(const ElementarySection& s1, const ElementarySection& s2,
                                        int samples = 20000) {
  Interval overlap = intersect(s1.interval, s2.interval);
  if (overlap.empty()) return Complex(0.0);
  Rational len = overlap.length();
  Complex acc(0.0);
  for (int k = 0; k < samples; ++k) {
    Rational beta = overlap.lo + len * Rational(2 * k + 1, 2 * samples);
    acc += std::exp(detail::trajectory_overlap(s1, s2, beta));
  }
  return std::conj(s1.kappa) * s2.kappa * acc * (len.to_double() / samples);
}

// Smallest eigenvalue of the Gram matrix of a family of fiber vectors; a
// negative value beyond round-off falsifies positivity of the kernel.
inline double gram_min_eigenvalue(const Model& m, const std::vector<FiberVector>& xs) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = fiber_inner(m, xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g);
  return eig.eigenvalues()(0);
}

// Smallest eigenvalue of the Gram matrix of section vectors.
inline double kvector_gram_min_eigenvalue(const std::vector<KVector>& xs) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = kvector_inner(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g);
  return eig.eigenvalues()(0);
}

}  // namespace prodsys::oracle
