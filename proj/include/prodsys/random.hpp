#pragma once

// Deterministic randomness for scenario generation.  The generator is
// splitmix64 (Steele/Lea/Flood mixing constants); every suite derives its
// own stream from the run seed xor the FNV-1a hash of the suite name, and
// draws all case inputs sequentially before any evaluation happens.  Equal
// seeds therefore give byte-identical scenarios regardless of --jobs.

#include <cstdint>
#include <string>
#include <vector>
#include <algorithm>
#include <stdexcept>

#include "prodsys/rational.hpp"
#include "prodsys/step_function.hpp"
#include "prodsys/product_system.hpp"
#include "prodsys/sections.hpp"

namespace prodsys {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1): 53 mantissa bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); plain modulo reduction (documented bias,
  // irrelevant at our ranges).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SplitMix64::below: empty range");
    return next() % n;
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive ends
    if (hi < lo) throw std::invalid_argument("SplitMix64::range: empty range");
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

inline SplitMix64 suite_stream(std::uint64_t seed, const std::string& suite) {
  return SplitMix64(seed ^ fnv1a64(suite));
}

namespace gen {

inline Complex complex_in_box(SplitMix64& rng, double bound) {
  return Complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound));
}

inline Value value_in_box(SplitMix64& rng, int dim, double bound) {
  Value v(static_cast<std::size_t>(dim));
  for (auto& c : v) c = complex_in_box(rng, bound);
  return v;
}

// k distinct grid ticks strictly inside (lo_ticks, hi_ticks), ascending.
inline std::vector<std::int64_t> interior_ticks(SplitMix64& rng, std::int64_t lo_ticks,
                                                std::int64_t hi_ticks, int k) {
  std::int64_t span = hi_ticks - lo_ticks - 1;
  if (span < k) k = static_cast<int>(span < 0 ? 0 : span);
  std::vector<std::int64_t> out;
  while (static_cast<int>(out.size()) < k) {
    std::int64_t c = lo_ticks + 1 + rng.range(0, span - 1);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Step function on (lo, hi] (grid ticks over denominator q) with at most
// max_pieces pieces, entries bounded by value_bound, and L^2 norm rescaled
// below norm_bound when necessary.
inline StepFunction step_function(SplitMix64& rng, std::int64_t q, std::int64_t lo_ticks,
                                  std::int64_t hi_ticks, int dim, int max_pieces,
                                  double value_bound, double norm_bound) {
  if (!(lo_ticks < hi_ticks))
    throw std::invalid_argument("gen::step_function: empty window");
  int pieces = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_pieces)));
  std::vector<std::int64_t> cuts = interior_ticks(rng, lo_ticks, hi_ticks, pieces - 1);
  cuts.push_back(hi_ticks);
  std::vector<Piece> ps;
  ps.reserve(cuts.size());
  for (std::int64_t c : cuts) ps.push_back(Piece{Rational(c, q), value_in_box(rng, dim, value_bound)});
  StepFunction f(Rational(lo_ticks, q), std::move(ps), dim);
  double n = l2_norm(f);
  if (n > norm_bound) {
    double scale = 0.9 * norm_bound / n;
    std::vector<Piece> scaled = f.pieces();
    for (auto& p : scaled)
      for (auto& c : p.value) c *= scale;
    f = StepFunction(f.lo(), std::move(scaled), dim);
  }
  return f;
}

// Fiber vector at time t (ticks over q) with 1..max_terms exponential terms.
inline FiberVector exp_fiber_vector(SplitMix64& rng, const Model& m, std::int64_t q,
                                    std::int64_t t_ticks, int max_terms, int max_pieces,
                                    double value_bound, double norm_bound,
                                    double coeff_bound = 1.0) {
  int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
  std::vector<FiberVector::Term> out;
  out.reserve(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) {
    Complex c = complex_in_box(rng, coeff_bound);
    StepFunction h = step_function(rng, q, 0, t_ticks, m.dim, max_pieces, value_bound, norm_bound);
    out.push_back(FiberVector::Term{c, ExpVector(std::move(h))});
  }
  return make_exp_fiber(m, std::move(out), Rational(t_ticks, q));
}

struct KVectorOptions {
  int max_sections = 3;
  int max_pieces = 3;
  std::int64_t max_depth_ticks = 0;  // defaults to 2q when 0
  double value_bound = 1.0;
  double coeff_bound = 1.0;
  double norm_bound = 2.0;
  bool allow_static_part = true;
};

// Section vector whose intervals partition (0,1].
inline KVector kvector(SplitMix64& rng, const Model& m, std::int64_t q,
                       const KVectorOptions& opt = {}) {
  std::int64_t max_depth = opt.max_depth_ticks > 0 ? opt.max_depth_ticks : 2 * q;
  int nsec = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_sections)));
  std::vector<std::int64_t> bounds = interior_ticks(rng, 0, q, nsec - 1);
  bounds.push_back(q);
  std::vector<ElementarySection> sections;
  std::int64_t lo = 0;
  for (std::int64_t hi : bounds) {
    Complex kappa = complex_in_box(rng, opt.coeff_bound);
    std::int64_t depth_ticks = rng.range(0, max_depth);
    Rational depth(depth_ticks, q);
    StepFunction f_rel =
        depth_ticks == 0
            ? StepFunction::empty(Rational(0), m.dim)
            : step_function(rng, q, -depth_ticks, 0, m.dim, opt.max_pieces, opt.value_bound,
                            opt.norm_bound);
    StepFunction f_abs = StepFunction::empty(Rational(0), m.dim);
    if (opt.allow_static_part && rng.below(4) != 0) {
      std::int64_t hi_abs = rng.range(-q, q / 2);
      std::int64_t width = rng.range(1, 2 * q);
      f_abs = step_function(rng, q, hi_abs - width, hi_abs, m.dim, opt.max_pieces,
                            opt.value_bound, opt.norm_bound);
    }
    sections.emplace_back(Interval{Rational(lo, q), Rational(hi, q)}, kappa, std::move(f_abs),
                          depth, std::move(f_rel));
    lo = hi;
  }
  return KVector{m.dim, std::move(sections)};
}

// Dense discrete fiber at level n with entries bounded by `bound`.
inline FiberVector dense_fiber(SplitMix64& rng, const Model& m, long n, double bound) {
  std::vector<Complex> amp(detail::pow_size(m.dim, n));
  for (auto& a : amp) a = complex_in_box(rng, bound);
  return make_dense_fiber(m, n, std::move(amp));
}

}  // namespace gen
}  // namespace prodsys
