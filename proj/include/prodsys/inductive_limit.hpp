#pragma once

// Inductive limit over integer levels with respect to a fixed unit vector
// xi_1.  A vector at level m is identified with xi_k (*) v (left-oriented
// limits) or v (*) xi_k (right-oriented) at level m+k; inner products are
// taken after lifting both sides to a common level.  The two orientations
// carry the two dilation directions and are kept strictly apart.

#include <optional>
#include <stdexcept>
#include <cmath>

#include "prodsys/product_system.hpp"

namespace prodsys {

enum class Orientation { left, right };

struct IndLimVector {
  long level = 0;
  FiberVector rep;       // lives in the fiber at `level`
  Orientation orient = Orientation::left;
};

struct IndLimConfig {
  long level_cap = 16;              // refuse lifts beyond this level
  std::size_t dense_cap = 1u << 20; // refuse discrete tensors beyond this size
  std::optional<FiberVector> unit;  // unit at time 1; defaults to the vacuum unit
};

namespace detail {

inline void check_unit(const Model& m, const FiberVector& u) {
  if (!(u.t == Rational(1)))
    throw std::invalid_argument("inductive limit: unit must live at time 1");
  double n = fiber_norm(m, u);
  if (std::abs(n - 1.0) > 1e-9)
    throw std::invalid_argument("inductive limit: unit vector must have norm 1");
}

}  // namespace detail

inline FiberVector ind_unit(const Model& m, const IndLimConfig& cfg, long k) {
  if (k < 0) throw std::invalid_argument("ind_unit: negative level");
  FiberVector u1 = cfg.unit ? *cfg.unit : vacuum_unit(m, Rational(1));
  detail::check_unit(m, u1);
  FiberVector acc = vacuum_unit(m, Rational(0));
  for (long i = 0; i < k; ++i) acc = detail::concat_primal(m, acc, u1);
  return acc;
}

inline IndLimVector make_ind_vector(const Model& m, long level, FiberVector rep,
                                    Orientation orient) {
  if (level < 0) throw std::invalid_argument("make_ind_vector: negative level");
  if (!(rep.t == Rational(level)))
    throw std::invalid_argument("make_ind_vector: representative time must equal the level");
  (void)m;
  return IndLimVector{level, std::move(rep), orient};
}

inline IndLimVector scalar_ind_vector(const Model& m, Complex c, Orientation orient) {
  if (m.kind == ModelKind::exponential) {
    FiberVector rep = fiber_scale(m, c, vacuum_unit(m, Rational(0)));
    return IndLimVector{0, rep, orient};
  }
  return IndLimVector{0, make_dense_fiber(m, 0, {c}), orient};
}

// Lift by k levels: pad with units on the side the orientation dictates.
// Lifting preserves all inner products against lifted probes.
inline IndLimVector lift(const Model& m, const IndLimConfig& cfg, const IndLimVector& v, long k) {
  if (k < 0) throw std::invalid_argument("lift: negative step");
  long target = v.level + k;
  if (target > cfg.level_cap)
    throw std::length_error("lift: level cap exceeded");
  if (m.kind == ModelKind::discrete) {
    double projected = std::pow(static_cast<double>(m.dim), static_cast<double>(target));
    if (projected > static_cast<double>(cfg.dense_cap))
      throw std::length_error("lift: dense tensor cap exceeded");
  }
  if (k == 0) return v;
  FiberVector pad = ind_unit(m, cfg, k);
  FiberVector rep = (v.orient == Orientation::left)
                        ? detail::concat_primal(m, pad, v.rep)
                        : detail::concat_primal(m, v.rep, pad);
  return IndLimVector{target, std::move(rep), v.orient};
}

// Inner product in the limit space: lift both to the common level, then the
// fiber inner product.  Orientations must match.
inline Complex ind_inner(const Model& m, const IndLimConfig& cfg, const IndLimVector& v,
                         const IndLimVector& w) {
  if (v.orient != w.orient)
    throw std::invalid_argument("ind_inner: mixed orientations");
  long level = std::max(v.level, w.level);
  IndLimVector a = lift(m, cfg, v, level - v.level);
  IndLimVector b = lift(m, cfg, w, level - w.level);
  return fiber_inner(m, a.rep, b.rep);
}

inline double ind_norm(const Model& m, const IndLimConfig& cfg, const IndLimVector& v) {
  return std::sqrt(std::max(0.0, ind_inner(m, cfg, v, v).real()));
}

// The dilation move on the inductive limit.  Left orientation: v |-> v (*) y,
// raising the level by the (integer) time of y; right orientation: y (*) v.
// Against the unit-padding identification this is an isometry times the
// fiber product: <dilate(v,y), dilate(v',y')> = <v,v'> <y,y'>.
inline IndLimVector discrete_dilate(const Model& m, const IndLimConfig& cfg,
                                    const IndLimVector& v, const FiberVector& y,
                                    Orientation side) {
  if (side != v.orient)
    throw std::invalid_argument("discrete_dilate: side must match the vector's orientation");
  if (!y.t.is_integer() || y.t < Rational(0))
    throw std::invalid_argument("discrete_dilate: dilation step must live at an integer time");
  long n = y.t.num();
  long target = v.level + n;
  if (target > cfg.level_cap)
    throw std::length_error("discrete_dilate: level cap exceeded");
  if (m.kind == ModelKind::discrete) {
    double projected = std::pow(static_cast<double>(m.dim), static_cast<double>(target));
    if (projected > static_cast<double>(cfg.dense_cap))
      throw std::length_error("discrete_dilate: dense tensor cap exceeded");
  }
  FiberVector rep = (side == Orientation::left) ? detail::concat_primal(m, v.rep, y)
                                                : detail::concat_primal(m, y, v.rep);
  return IndLimVector{target, std::move(rep), v.orient};
}

}  // namespace prodsys
