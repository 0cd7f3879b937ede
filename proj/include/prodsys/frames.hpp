#pragma once

// Finite frame families inside a fiber of the exponential system.  A family
// of generators {h_j} spans a subspace through its exponential vectors
// e(h_j); the Gram matrix G_jk = exp(<h_j, h_k>) and its clipped
// pseudo-inverse P turn forward applications of the dilations into matrix
// elements of the induced operators: sums A_j P_jk B_k approximate <.,.>
// against the projection onto the span.
//
// The pseudo-inverse clips eigenvalues below an absolute threshold.  If the
// kept spectrum still spans more than the condition limit, the family is
// rejected with a diagnostic instead of silently producing noise.

#include <complex>
#include <stdexcept>
#include <string>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "prodsys/product_system.hpp"

namespace prodsys {

struct FrameConditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FrameFamily {
  Rational t;
  std::vector<StepFunction> generators;  // each on (0, t]
  Eigen::MatrixXcd gram;
  Eigen::MatrixXcd pinv;
  double clip = 1e-10;
  double condition = 1.0;  // spread of the kept spectrum
  int kept = 0;

  std::size_t size() const { return generators.size(); }
};

inline FrameFamily make_frame(const Model& m, const Rational& t,
                              std::vector<StepFunction> generators,
                              double clip = 1e-10, double max_condition = 1e12) {
  if (m.kind != ModelKind::exponential)
    throw std::invalid_argument("make_frame: frames live in the exponential model");
  if (generators.empty())
    throw std::invalid_argument("make_frame: empty family");
  for (const auto& h : generators) {
    if (!(h.lo() == Rational(0)) || !(h.hi() == t))
      throw std::invalid_argument("make_frame: generator domain must be (0, t]");
    if (h.multiplicity() != m.dim)
      throw std::invalid_argument("make_frame: multiplicity mismatch");
    if (l2_norm(h) > kGeneratorNormBound)
      throw std::invalid_argument("make_frame: generator norm exceeds bound 8");
  }

  const auto n = static_cast<Eigen::Index>(generators.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      gram(j, k) = std::exp(l2_inner(generators[static_cast<std::size_t>(j)],
                                     generators[static_cast<std::size_t>(k)]));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("make_frame: eigendecomposition failed");
  const Eigen::VectorXd& lam = eig.eigenvalues();
  double lam_max = lam(n - 1);

  double lam_min_kept = 0.0;
  int kept = 0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lam(i) > clip) {
      inv(i) = 1.0 / lam(i);
      if (kept == 0) lam_min_kept = lam(i);
      ++kept;
    }
  }
  if (kept == 0)
    throw FrameConditionError("make_frame: no eigenvalue above the clip threshold");

  double condition = lam_max / lam_min_kept;
  if (condition > max_condition) {
    std::ostringstream msg;
    msg << "make_frame: ill-conditioned family rejected: size " << generators.size()
        << ", kept " << kept << ", spectrum [" << lam_min_kept << ", " << lam_max
        << "], condition " << condition << " > " << max_condition;
    throw FrameConditionError(msg.str());
  }

  FrameFamily fam;
  fam.t = t;
  fam.generators = std::move(generators);
  fam.gram = gram;
  fam.pinv = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().adjoint();
  fam.clip = clip;
  fam.condition = condition;
  fam.kept = kept;
  return fam;
}

// Default family at refinement level L: constants with values in the lattice
// {0, +-1/2, +-i/2} on each coordinate, together with one-piece bumps of the
// same lattice values on the 2^l dyadic subintervals for every level
// l = 1..L.  Families at successive levels are literally nested.
inline std::vector<StepFunction> default_frame_generators(const Model& m, const Rational& t,
                                                          int level) {
  if (m.kind != ModelKind::exponential)
    throw std::invalid_argument("default_frame_generators: exponential model only");
  if (level < 0) throw std::invalid_argument("default_frame_generators: negative level");
  if (!(Rational(0) < t)) throw std::invalid_argument("default_frame_generators: need t > 0");

  const std::vector<Complex> lattice = {Complex(0.5, 0.0), Complex(-0.5, 0.0),
                                        Complex(0.0, 0.5), Complex(0.0, -0.5)};
  std::vector<StepFunction> gens;
  gens.push_back(StepFunction::zero(Rational(0), t, m.dim));
  for (int c = 0; c < m.dim; ++c)
    for (const Complex& z : lattice) {
      Value v(m.dim, Complex(0.0));
      v[static_cast<std::size_t>(c)] = z;
      gens.push_back(StepFunction::constant(Rational(0), t, v));
    }
  for (int l = 1; l <= level; ++l) {
    std::int64_t pieces = std::int64_t(1) << l;
    for (std::int64_t p = 0; p < pieces; ++p) {
      Rational a = t * Rational(p, pieces);
      Rational b = t * Rational(p + 1, pieces);
      for (int c = 0; c < m.dim; ++c)
        for (const Complex& z : lattice) {
          Value v(m.dim, Complex(0.0));
          v[static_cast<std::size_t>(c)] = z;
          std::vector<Piece> ps;
          if (Rational(0) < a) ps.push_back(Piece{a, Value(m.dim, Complex(0.0))});
          ps.push_back(Piece{b, v});
          if (b < t) ps.push_back(Piece{t, Value(m.dim, Complex(0.0))});
          gens.push_back(StepFunction(Rational(0), std::move(ps), m.dim));
        }
    }
  }
  return gens;
}

inline FrameFamily default_frame(const Model& m, const Rational& t, int level,
                                 double clip = 1e-10, double max_condition = 1e12) {
  return make_frame(m, t, default_frame_generators(m, t, level), clip, max_condition);
}

}  // namespace prodsys
