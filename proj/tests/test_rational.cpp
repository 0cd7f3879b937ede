#include <catch2/catch_amalgamated.hpp>

#include <prodsys/rational.hpp>

#include <stdexcept>

using prodsys::Rational;

TEST_CASE("rational normalization and accessors", "[rational]") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).den() == 1);

  Rational r(10, 15);
  CHECK(r.num() == 2);
  CHECK(r.den() == 3);
  CHECK(r.to_double() == Catch::Approx(2.0 / 3.0));
  CHECK_FALSE(r.is_integer());
  CHECK(Rational(8, 4).is_integer());

  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic", "[rational]") {
  Rational a(1, 6), b(1, 10);
  CHECK(a + b == Rational(4, 15));
  CHECK(a - b == Rational(1, 15));
  CHECK(a * b == Rational(1, 60));
  CHECK(a / b == Rational(5, 3));
  CHECK(-a == Rational(-1, 6));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);

  SECTION("mixed with integers") {
    CHECK(Rational(3) * Rational(1, 3) == Rational(1));
    CHECK(Rational(7, 2) - Rational(3) == Rational(1, 2));
  }

  SECTION("ordering") {
    CHECK(Rational(2, 3) < Rational(3, 4));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(5, 5) <= Rational(1));
    CHECK(Rational(9, 8) > Rational(1));
    CHECK(prodsys::min(a, b) == b);
    CHECK(prodsys::max(a, b) == a);
  }
}

TEST_CASE("floor, ceil, and the unit-interval remainder", "[rational]") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(4).floor() == 4);
  CHECK(Rational(4).ceil() == 4);

  // frac_in_unit lands in (0, 1]: integers map to 1, not 0.
  CHECK(prodsys::frac_in_unit(Rational(5, 2)) == Rational(1, 2));
  CHECK(prodsys::frac_in_unit(Rational(2)) == Rational(1));
  CHECK(prodsys::frac_in_unit(Rational(1, 3)) == Rational(1, 3));
  CHECK(prodsys::frac_in_unit(Rational(-1, 4)) == Rational(3, 4));
  CHECK(prodsys::frac_in_unit(Rational(0)) == Rational(1));
}

TEST_CASE("grid membership", "[rational]") {
  CHECK(Rational(3, 4).on_grid(8));
  CHECK(Rational(5).on_grid(2));
  CHECK_FALSE(Rational(1, 3).on_grid(8));
  CHECK(Rational(1, 3).on_grid(9));
  CHECK_THROWS_AS(Rational(1, 3).on_grid(0), std::invalid_argument);
}

TEST_CASE("rational text round trip", "[rational]") {
  // str() is the wire format: always numerator slash denominator.
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(-3, 2).str() == "-3/2");
  CHECK(Rational(4).str() == "4/1");
  CHECK(Rational(0).str() == "0/1");

  CHECK(Rational(4).pretty() == "4");
  CHECK(Rational(3, 2).pretty() == "3/2");

  CHECK(Rational::parse("22/7") == Rational(22, 7));
  CHECK(Rational::parse("-9/12") == Rational(-3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("  5/8 ") == Rational(5, 8));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
  CHECK_THROWS_AS(Rational::parse("three"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("99999999999999999999"), std::invalid_argument);
}

TEST_CASE("overflow guard on wide intermediates", "[rational]") {
  // 3037000507^2 just exceeds the 64-bit range; the gcd cannot rescue it.
  Rational tiny(1, 3037000507LL);
  CHECK_THROWS_AS(tiny * tiny, std::overflow_error);
  // With a common factor the 128-bit intermediate reduces back into range.
  CHECK(Rational(3037000507LL, 2) * Rational(2, 3037000507LL) == Rational(1));

  // Products of deep grid points stay exact.
  Rational fine(1, 10080);
  CHECK(fine * fine == Rational(1, 101606400));
}
