#include <catch2/catch_amalgamated.hpp>

#include <prodsys/inductive_limit.hpp>

#include <stdexcept>

using namespace prodsys;

namespace {

FiberVector dense2(const Model& m, Complex a, Complex b) {
  return make_dense_fiber(m, 1, {a, b});
}

}  // namespace

TEST_CASE("lifting preserves inner products in both orientations", "[inductive_limit]") {
  IndLimConfig cfg;

  SECTION("discrete model") {
    Model m = discrete_model(2);
    FiberVector x = dense2(m, Complex(0.6), Complex(0.0, 0.8));
    FiberVector y = dense2(m, Complex(1.0 / 3.0), Complex(-2.0 / 3.0, 2.0 / 3.0));
    for (Orientation o : {Orientation::left, Orientation::right}) {
      IndLimVector v = make_ind_vector(m, 1, x, o);
      IndLimVector w = make_ind_vector(m, 1, y, o);
      Complex base = ind_inner(m, cfg, v, w);
      CHECK(std::abs(ind_inner(m, cfg, lift(m, cfg, v, 3), w) - base) < 1e-14);
      CHECK(std::abs(ind_inner(m, cfg, lift(m, cfg, v, 2), lift(m, cfg, w, 5)) - base) < 1e-14);
    }
  }

  SECTION("exponential model") {
    Model m = exponential_model(1);
    StepFunction f = StepFunction::constant(Rational(0), Rational(2), {Complex(0.4, -0.2)});
    StepFunction g(Rational(0),
                   {Piece{Rational(1, 2), {Complex(0.0, 0.9)}},
                    Piece{Rational(2), {Complex(-0.1, 0.0)}}},
                   1);
    IndLimVector v = make_ind_vector(m, 2, exp_fiber(m, f), Orientation::left);
    IndLimVector w = make_ind_vector(m, 2, exp_fiber(m, g), Orientation::left);
    Complex base = ind_inner(m, cfg, v, w);
    CHECK(std::abs(ind_inner(m, cfg, lift(m, cfg, v, 4), w) - base) < 1e-12 * std::abs(base));
  }
}

TEST_CASE("lift pads on the side the orientation dictates", "[inductive_limit]") {
  Model m = discrete_model(2);
  IndLimConfig cfg;
  FiberVector x = dense2(m, Complex(0.0), Complex(1.0));

  IndLimVector lv = lift(m, cfg, make_ind_vector(m, 1, x, Orientation::left), 1);
  // Left orientation: unit goes in front, so the representative is e0 (*) x.
  CHECK(lv.level == 2);
  CHECK(lv.rep.dense == std::vector<Complex>{Complex(0.0), Complex(1.0), Complex(0.0), Complex(0.0)});

  IndLimVector rv = lift(m, cfg, make_ind_vector(m, 1, x, Orientation::right), 1);
  // Right orientation: x (*) e0.
  CHECK(rv.rep.dense == std::vector<Complex>{Complex(0.0), Complex(0.0), Complex(1.0), Complex(0.0)});

  CHECK(lift(m, cfg, lv, 0).rep.dense == lv.rep.dense);
}

TEST_CASE("inductive limit guards", "[inductive_limit]") {
  Model m = discrete_model(2);
  IndLimConfig cfg;
  FiberVector x = dense2(m, Complex(1.0), Complex(0.0));
  IndLimVector v = make_ind_vector(m, 1, x, Orientation::left);
  IndLimVector w = make_ind_vector(m, 1, x, Orientation::right);

  CHECK_THROWS_AS(ind_inner(m, cfg, v, w), std::invalid_argument);
  CHECK_THROWS_AS(make_ind_vector(m, 2, x, Orientation::left), std::invalid_argument);
  CHECK_THROWS_AS(make_ind_vector(m, -1, x, Orientation::left), std::invalid_argument);
  CHECK_THROWS_AS(lift(m, cfg, v, -1), std::invalid_argument);

  SECTION("level cap") {
    IndLimConfig tight;
    tight.level_cap = 3;
    CHECK_THROWS_AS(lift(m, tight, v, 4), std::length_error);
    CHECK_NOTHROW(lift(m, tight, v, 2));
  }

  SECTION("dense size cap") {
    IndLimConfig tiny;
    tiny.dense_cap = 4;
    CHECK_THROWS_AS(lift(m, tiny, v, 2), std::length_error);
  }

  SECTION("units must be unit vectors at time 1") {
    IndLimConfig bad;
    bad.unit = dense2(m, Complex(2.0), Complex(0.0));
    CHECK_THROWS_AS(ind_unit(m, bad, 1), std::invalid_argument);
    bad.unit = make_dense_fiber(m, 0, {Complex(1.0)});
    CHECK_THROWS_AS(ind_unit(m, bad, 1), std::invalid_argument);
  }
}

TEST_CASE("a non-vacuum unit still gives isometric lifts", "[inductive_limit]") {
  Model m = discrete_model(2);
  IndLimConfig cfg;
  double r = 1.0 / std::sqrt(2.0);
  cfg.unit = dense2(m, Complex(r), Complex(0.0, r));

  FiberVector x = dense2(m, Complex(0.3, 0.4), Complex(-0.5, 0.0));
  FiberVector y = dense2(m, Complex(0.0, 1.0), Complex(0.2, 0.2));
  IndLimVector v = make_ind_vector(m, 1, x, Orientation::right);
  IndLimVector w = make_ind_vector(m, 1, y, Orientation::right);

  Complex base = ind_inner(m, cfg, v, w);
  CHECK(std::abs(ind_inner(m, cfg, lift(m, cfg, v, 3), lift(m, cfg, w, 1)) - base) < 1e-14);
}

TEST_CASE("the dilation move factorizes inner products", "[inductive_limit]") {
  IndLimConfig cfg;

  SECTION("discrete model, both sides") {
    Model m = discrete_model(3);
    FiberVector x = make_dense_fiber(m, 1, {Complex(0.1), Complex(0.5, -0.5), Complex(0.0, 0.7)});
    FiberVector xp = make_dense_fiber(m, 1, {Complex(0.9), Complex(0.0), Complex(-0.3, 0.1)});
    FiberVector y = make_dense_fiber(m, 1, {Complex(0.0, 0.4), Complex(0.6), Complex(0.2, 0.2)});
    FiberVector yp = make_dense_fiber(m, 1, {Complex(0.5), Complex(0.5, 0.5), Complex(0.0)});

    for (Orientation o : {Orientation::left, Orientation::right}) {
      IndLimVector v = make_ind_vector(m, 1, x, o);
      IndLimVector vp = make_ind_vector(m, 1, xp, o);
      Complex lhs = ind_inner(m, cfg, discrete_dilate(m, cfg, v, y, o),
                              discrete_dilate(m, cfg, vp, yp, o));
      Complex rhs = ind_inner(m, cfg, v, vp) * fiber_inner(m, y, yp);
      CHECK(std::abs(lhs - rhs) < 1e-14);
    }
  }

  SECTION("side must match orientation, time must be integral") {
    Model m = discrete_model(2);
    FiberVector x = dense2(m, Complex(1.0), Complex(0.0));
    IndLimVector v = make_ind_vector(m, 1, x, Orientation::left);
    CHECK_THROWS_AS(discrete_dilate(m, cfg, v, x, Orientation::right), std::invalid_argument);
    Model me = exponential_model(1);
    IndLimVector ve = scalar_ind_vector(me, Complex(1.0), Orientation::left);
    FiberVector half = vacuum_unit(me, Rational(1, 2));
    CHECK_THROWS_AS(discrete_dilate(me, cfg, ve, half, Orientation::left), std::invalid_argument);
  }

  SECTION("scalar fiber acts as the base level") {
    Model m = discrete_model(2);
    IndLimVector one = scalar_ind_vector(m, Complex(0.0, 1.0), Orientation::left);
    CHECK(one.level == 0);
    CHECK(std::abs(ind_norm(m, cfg, one) - 1.0) < 1e-15);
    FiberVector y = dense2(m, Complex(0.8), Complex(0.6));
    IndLimVector moved = discrete_dilate(m, cfg, one, y, Orientation::left);
    CHECK(moved.level == 1);
    CHECK(moved.rep.dense == std::vector<Complex>{Complex(0.0, 0.8), Complex(0.0, 0.6)});
  }
}
