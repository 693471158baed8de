#include "coprosim/errors.hpp"
#include "coprosim/incentive_curve.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace coprosim;

TEST_CASE("branch values at the anchors")
{
  CurveParams const p = calibrate(CurveParams{});
  CHECK(load_curve(p.b, p) == p.d);
  CHECK(load_curve(0.0, p) == doctest::Approx(p.a * std::exp(-1.0) - p.c));
  CHECK(load_curve_left_limit(p.b, p) == doctest::Approx(p.a - p.c));
  CHECK(p.d == doctest::Approx(p.a - p.c));
}

TEST_CASE("calibration sets both free constants")
{
  CurveParams p;
  p.a = 1.0;
  p.c = 0.2;
  p.b = 0.5;
  p.e = -1.0;
  p.f = 0.8;
  p.g = 5.0;
  p.h = 0.8;
  auto const q = calibrate(p);
  CHECK(q.d == doctest::Approx(0.8));
  CHECK(q.i == doctest::Approx(0.5));
  CHECK(std::abs(load_curve(q.f, q) - load_curve(std::nextafter(q.f, 1.0), q)) < 1e-9);
}

TEST_CASE("default constants are already calibrated")
{
  CurveParams const defaults;
  auto const        q = calibrate(defaults);
  CHECK(q.d == doctest::Approx(defaults.d).epsilon(1e-12));
  CHECK(q.i == doctest::Approx(defaults.i).epsilon(1e-12));
}

TEST_CASE("calibration fails when the knee value is negative")
{
  CurveParams p;
  p.e = -3.0;  // 0.8 - 0.4 * 3 < 0 at x = f
  CHECK_THROWS_AS(calibrate(p), CalibrationError);
}

TEST_CASE("invalid junctions and loads are rejected")
{
  CurveParams p;
  p.b = 0.8;
  p.f = 0.7;
  CHECK_THROWS_AS(calibrate(p), ConfigError);
  CHECK_THROWS_AS(load_curve(-0.01, CurveParams{}), std::domain_error);
  CHECK_THROWS_AS(load_curve(1.01, CurveParams{}), std::domain_error);
}

TEST_CASE("incentive multipliers split on the curve's sign")
{
  CurveParams flat;  // force chosen curve values through the middle branch
  flat.b = 0.5;
  flat.f = 0.9;
  flat.e = 0.0;

  flat.d    = 0.0;
  auto zero = incentive_multipliers(0.6, flat);
  CHECK(zero.reward_bonus == 0.0);
  CHECK(zero.slash_amplifier == 1.0);

  flat.d   = 0.8;
  auto pos = incentive_multipliers(0.6, flat);
  CHECK(pos.reward_bonus == doctest::Approx(0.8));
  CHECK(pos.slash_amplifier == 1.0);

  flat.d   = -0.5;
  auto neg = incentive_multipliers(0.6, flat);
  CHECK(neg.reward_bonus == 0.0);
  CHECK(neg.slash_amplifier == doctest::Approx(1.5));

  auto scaled = incentive_multipliers(0.6, flat, 0.1, 2.0);
  CHECK(scaled.slash_amplifier == doctest::Approx(2.0));
}

TEST_CASE("calibrated curves are continuous, clamped, and multipliers exclusive")
{
  std::mt19937_64                        rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int                                    calibrated = 0;
  for (int trial = 0; trial < 2000; ++trial)
  {
    CurveParams p;
    p.a = 2.0 * u(rng);
    p.c = u(rng);
    p.b = 0.05 + 0.8 * u(rng);
    p.f = p.b + (1.0 - p.b) * (0.05 + 0.95 * u(rng));
    p.e = -2.0 + 3.0 * u(rng);
    p.g = 10.0 * u(rng);
    p.h = u(rng);
    try
    {
      p = calibrate(p);
    }
    catch (CalibrationError const &)
    {
      continue;
    }
    ++calibrated;
    CHECK(std::abs(load_curve_left_limit(p.b, p) - load_curve(p.b, p)) < 1e-9);
    CHECK(std::abs(load_curve(p.f, p) - load_curve(std::nextafter(p.f, 2.0), p)) < 1e-9);
    for (int k = 0; k < 20; ++k)
    {
      double const x = u(rng);
      if (x > p.f)
      {
        CHECK(load_curve(x, p) >= 0.0);
      }
      auto const m = incentive_multipliers(x, p);
      CHECK(m.reward_bonus >= 0.0);
      CHECK(m.slash_amplifier >= 1.0);
      CHECK_FALSE((m.reward_bonus > 0.0 && m.slash_amplifier > 1.0));
    }
  }
  CHECK(calibrated > 500);
}
