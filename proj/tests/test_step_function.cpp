#include <catch2/catch_amalgamated.hpp>

#include <prodsys/step_function.hpp>
#include <prodsys/oracles.hpp>

#include <stdexcept>

using namespace prodsys;

namespace {

StepFunction two_piece() {
  // (0, 1/2] -> 1+2i, (1/2, 2] -> -1
  return StepFunction(Rational(0),
                      {Piece{Rational(1, 2), {Complex(1.0, 2.0)}},
                       Piece{Rational(2), {Complex(-1.0, 0.0)}}},
                      1);
}

}  // namespace

TEST_CASE("step function construction and canonical form", "[step_function]") {
  StepFunction f = two_piece();
  CHECK(f.lo() == Rational(0));
  CHECK(f.hi() == Rational(2));
  CHECK(f.length() == Rational(2));
  CHECK(f.multiplicity() == 1);
  CHECK(f.pieces().size() == 2);

  SECTION("equal neighbours merge on construction") {
    StepFunction g(Rational(0),
                   {Piece{Rational(1, 3), {Complex(4.0, 0.0)}},
                    Piece{Rational(2, 3), {Complex(4.0, 0.0)}},
                    Piece{Rational(1), {Complex(5.0, 0.0)}}},
                   1);
    REQUIRE(g.pieces().size() == 2);
    CHECK(g.pieces()[0].end == Rational(2, 3));
  }

  SECTION("validation") {
    CHECK_THROWS_AS(StepFunction(Rational(0),
                                 {Piece{Rational(1), {Complex(1.0)}},
                                  Piece{Rational(1), {Complex(2.0)}}},
                                 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(StepFunction(Rational(0), {Piece{Rational(1), {Complex(1.0), Complex(2.0)}}}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(StepFunction(Rational(0), {}, 0), std::invalid_argument);
  }

  SECTION("factories") {
    StepFunction e = StepFunction::empty(Rational(3), 2);
    CHECK(e.empty_domain());
    CHECK(e.lo() == Rational(3));
    CHECK(e.hi() == Rational(3));

    StepFunction z = StepFunction::zero(Rational(0), Rational(1), 2);
    CHECK(z.pieces().size() == 1);
    CHECK(z.value_at(Rational(1)) == Value{Complex(0.0), Complex(0.0)});
    CHECK(StepFunction::zero(Rational(1), Rational(1), 1).empty_domain());

    StepFunction c = StepFunction::constant(Rational(-1), Rational(1), {Complex(0.0, 1.0)});
    CHECK(c.multiplicity() == 1);
    CHECK(c.value_at(Rational(0)) == Value{Complex(0.0, 1.0)});
  }
}

TEST_CASE("value lookup respects the right-closed convention", "[step_function]") {
  StepFunction f = two_piece();
  // Breakpoints belong to the piece on their left.
  CHECK(f.value_at(Rational(1, 2)) == Value{Complex(1.0, 2.0)});
  CHECK(f.value_at(Rational(1, 4)) == Value{Complex(1.0, 2.0)});
  CHECK(f.value_at(Rational(3, 4)) == Value{Complex(-1.0, 0.0)});
  CHECK(f.value_at(Rational(2)) == Value{Complex(-1.0, 0.0)});
  // lo itself is excluded, hi is included.
  CHECK_THROWS_AS(f.value_at(Rational(0)), std::out_of_range);
  CHECK_THROWS_AS(f.value_at(Rational(21, 10)), std::out_of_range);
}

TEST_CASE("translate, slice, split, concat", "[step_function]") {
  StepFunction f = two_piece();

  SECTION("translate shifts the domain only") {
    StepFunction g = translate(f, Rational(3, 2));
    CHECK(g.lo() == Rational(3, 2));
    CHECK(g.hi() == Rational(7, 2));
    CHECK(g.value_at(Rational(7, 4)) == Value{Complex(1.0, 2.0)});
    CHECK(translate(g, Rational(-3, 2)) == f);
  }

  SECTION("slice restricts and keeps breakpoints") {
    StepFunction g = slice(f, Rational(1, 4), Rational(1));
    CHECK(g.lo() == Rational(1, 4));
    CHECK(g.hi() == Rational(1));
    REQUIRE(g.pieces().size() == 2);
    CHECK(g.pieces()[0].end == Rational(1, 2));
    CHECK(slice(f, Rational(1), Rational(1)).empty_domain());
    CHECK_THROWS_AS(slice(f, Rational(-1), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(slice(f, Rational(1), Rational(3)), std::invalid_argument);
  }

  SECTION("split inverts concat") {
    auto [a, b] = split(f, Rational(3, 4));
    CHECK(a.hi() == Rational(3, 4));
    CHECK(b.lo() == Rational(0));
    CHECK(b.hi() == Rational(5, 4));
    CHECK(concat(a, b) == f);

    // Splitting exactly at a breakpoint leaves both halves single-piece.
    auto [c, d] = split(f, Rational(1, 2));
    CHECK(c.pieces().size() == 1);
    CHECK(d.pieces().size() == 1);
    CHECK(concat(c, d) == f);

    CHECK_THROWS_AS(split(f, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(split(f, Rational(2)), std::invalid_argument);
    CHECK_THROWS_AS(split(translate(f, Rational(1)), Rational(3, 2)), std::invalid_argument);
  }

  SECTION("concat validates operands") {
    CHECK_THROWS_AS(concat(f, StepFunction::zero(Rational(0), Rational(1), 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(concat(f, translate(f, Rational(1))), std::invalid_argument);
    // Concatenating equal boundary values merges the seam.
    StepFunction u = StepFunction::constant(Rational(0), Rational(1), {Complex(2.0)});
    CHECK(concat(u, u).pieces().size() == 1);
    CHECK(concat(u, u).hi() == Rational(2));
  }
}

TEST_CASE("inner product is conjugate-linear in the first slot", "[step_function]") {
  StepFunction f = StepFunction::constant(Rational(0), Rational(1), {Complex(0.0, 1.0)});
  StepFunction g = StepFunction::constant(Rational(0), Rational(1), {Complex(1.0, 0.0)});
  // <i*1, 1> = conj(i) = -i under the first-slot convention.
  CHECK(l2_inner(f, g).imag() == Catch::Approx(-1.0));
  CHECK(l2_inner(g, f).imag() == Catch::Approx(1.0));

  StepFunction h = two_piece();
  // |1+2i|^2 * 1/2 + |-1|^2 * 3/2 = 5/2 + 3/2 = 4
  CHECK(l2_norm_sq(h) == Catch::Approx(4.0));
  CHECK(l2_norm(h) == Catch::Approx(2.0));

  SECTION("merge walk handles interleaved breakpoints") {
    StepFunction a(Rational(0),
                   {Piece{Rational(1, 3), {Complex(1.0, 1.0)}},
                    Piece{Rational(2), {Complex(0.5, -0.5)}}},
                   1);
    Complex direct = l2_inner(a, h);
    // Piecewise by hand over the joint breakpoints 1/3, 1/2, 2.
    Complex expect = Complex(1.0 / 3.0) * std::conj(Complex(1.0, 1.0)) * Complex(1.0, 2.0) +
                     Complex(1.0 / 6.0) * std::conj(Complex(0.5, -0.5)) * Complex(1.0, 2.0) +
                     Complex(3.0 / 2.0) * std::conj(Complex(0.5, -0.5)) * Complex(-1.0, 0.0);
    CHECK(std::abs(direct - expect) < 1e-15);
  }

  SECTION("domain checks") {
    CHECK_THROWS_AS(l2_inner(f, two_piece()), std::invalid_argument);
    CHECK_THROWS_AS(l2_inner(f, StepFunction::zero(Rational(0), Rational(1), 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("time reversal flips piece boundaries", "[step_function]") {
  StepFunction f = two_piece();
  StepFunction r = reverse(f);
  CHECK(r.lo() == f.lo());
  CHECK(r.hi() == f.hi());
  REQUIRE(r.pieces().size() == 2);
  // The long -1 piece now sits first: (0, 3/2] -> -1, (3/2, 2] -> 1+2i.
  CHECK(r.pieces()[0].end == Rational(3, 2));
  CHECK(r.value_at(Rational(1)) == Value{Complex(-1.0, 0.0)});
  CHECK(r.value_at(Rational(2)) == Value{Complex(1.0, 2.0)});
  CHECK(reverse(r) == f);
  CHECK(l2_norm_sq(r) == Catch::Approx(l2_norm_sq(f)));
  CHECK(reverse(StepFunction::empty(Rational(1), 1)).empty_domain());
}

TEST_CASE("closed-form exponential integral", "[step_function]") {
  Complex a(2.0, 1.0), b(0.3, -0.2);
  SECTION("generic arguments match the series oracle") {
    Complex got = exp_linear_integral(a, b, Rational(0), Rational(1));
    Complex want = oracle::exp_linear_integral_series(a, b, Rational(0), Rational(1));
    CHECK(std::abs(got - want) < 1e-12);

    got = exp_linear_integral(a, b, Rational(-1, 2), Rational(3, 4));
    want = oracle::exp_linear_integral_series(a, b, Rational(-1, 2), Rational(3, 4));
    CHECK(std::abs(got - want) < 1e-12);
  }

  SECTION("tiny slope takes the series branch without cancellation") {
    Complex eps(1e-12, -3e-13);
    Complex got = exp_linear_integral(eps, b, Rational(1, 4), Rational(3, 4));
    Complex want = oracle::exp_linear_integral_series(eps, b, Rational(1, 4), Rational(3, 4));
    CHECK(std::abs(got - want) < 1e-14);
  }

  SECTION("zero slope reduces to exp(b) times the length") {
    Complex got = exp_linear_integral(Complex(0.0), b, Rational(0), Rational(2));
    CHECK(std::abs(got - std::exp(b) * 2.0) < 1e-15);
  }

  CHECK_THROWS_AS(exp_linear_integral(a, b, Rational(1), Rational(1)), std::invalid_argument);
}
