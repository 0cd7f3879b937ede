#pragma once

// Finite-rank operators on the dilation space: sums of c |ket><bra| with
// section-vector legs.  Everything the semigroup machinery needs reduces to
// applying these forward and taking adjoints.

#include <complex>
#include <vector>
#include <stdexcept>

#include "prodsys/sections.hpp"

namespace prodsys {

struct FiniteRankOperator {
  struct Term {
    Complex coeff;
    KVector ket, bra;
  };
  int dim = 1;
  std::vector<Term> terms;
};

inline FiniteRankOperator make_finite_rank(int dim, std::vector<FiniteRankOperator::Term> terms) {
  for (const auto& term : terms)
    if (term.ket.dim != dim || term.bra.dim != dim)
      throw std::invalid_argument("make_finite_rank: leg dimension mismatch");
  return FiniteRankOperator{dim, std::move(terms)};
}

inline FiniteRankOperator adjoint(const FiniteRankOperator& a) {
  FiniteRankOperator out{a.dim, {}};
  out.terms.reserve(a.terms.size());
  for (const auto& term : a.terms)
    out.terms.push_back(FiniteRankOperator::Term{std::conj(term.coeff), term.bra, term.ket});
  return out;
}

// a k = sum_r c_r <bra_r, k> ket_r.
inline KVector operator_apply(const FiniteRankOperator& a, const KVector& k) {
  if (a.dim != k.dim) throw std::invalid_argument("operator_apply: dimension mismatch");
  KVector out{a.dim, {}};
  for (const auto& term : a.terms) {
    Complex w = term.coeff * kvector_inner(term.bra, k);
    if (w == Complex(0.0)) continue;
    KVector part = kv_scale(w, term.ket);
    out.sections.insert(out.sections.end(), part.sections.begin(), part.sections.end());
  }
  return out;
}

}  // namespace prodsys
