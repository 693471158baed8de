#include "coprosim/errors.hpp"
#include "coprosim/reputation.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace coprosim;

TEST_CASE("bernoulli score")
{
  CHECK(score(true, 0.0) == 0.5);
  CHECK(score(false, 0.0) == -0.5);
  CHECK(score(true, 2.0) == doctest::Approx(0.11920292202211769).epsilon(1e-14));
}

TEST_CASE("scaling factor")
{
  for (double f : {-3.0, 0.0, 2.5})
  {
    CHECK(scaling_factor(f, Scaling::identity) == 1.0);
  }
  CHECK(scaling_factor(0.0, Scaling::inverse_fisher) == 4.0);
  CHECK(scaling_factor(2.0, Scaling::inverse_fisher) == doctest::Approx(9.524391382167254).epsilon(1e-13));
}

TEST_CASE("gas update")
{
  GasParams p;
  p.omega = 0.3;
  p.beta  = 0.5;
  p.alpha = 0.0;
  auto const next = gas_update(GasState{2.0, 4}, true, p);
  CHECK(next.f == 1.3);
  CHECK(next.t == 5);

  p.omega = 0.0;
  p.beta  = 1.0;  // allowed in the recursion even though config validation rejects it
  p.alpha = 1.0;
  CHECK(gas_update(GasState{0.0, 0}, true, p).f == 0.5);

  p.omega   = 0.25;
  p.beta    = 0.9;
  p.alpha   = 0.2;
  p.scaling = Scaling::inverse_fisher;
  CHECK(gas_update(GasState{0.0, 0}, true, p).f == doctest::Approx(0.25 + 2.0 * 0.2));
}

TEST_CASE("gas update rejects non-finite results")
{
  GasParams p;
  p.omega = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(gas_update(GasState{}, true, p), NumericError);
}

TEST_CASE("reputation of latent score")
{
  CHECK(reputation_of(GasState{0.0, 0}) == 0.5);
  CHECK(reputation_of(GasState{800.0, 0}) == 1.0);
  CHECK(reputation_of(GasState{-2.0, 0}) == doctest::Approx(0.11920292202211755).epsilon(1e-14));
}

TEST_CASE("alpha zero converges to omega / (1 - beta)")
{
  GasParams p;
  p.omega = 0.5;
  p.beta  = 0.9;
  p.alpha = 0.0;
  GasState s{};
  for (int k = 0; k < 400; ++k)
  {
    s = gas_update(s, k % 3 == 0, p);
  }
  CHECK(std::abs(s.f - 5.0) < 1e-9);
}

TEST_CASE("bounded latent score and outcome direction")
{
  GasParams p;  // defaults
  double const bound = p.stationary_bound();
  CHECK(bound == doctest::Approx(5.0));

  std::mt19937_64             rng(5);
  std::bernoulli_distribution coin(0.8);
  GasState                    s{};
  for (int k = 0; k < 100000; ++k)
  {
    bool const y    = coin(rng);
    auto const next = gas_update(s, y, p);
    // Compare against the pure autoregressive part to isolate the score term.
    double const drift = p.omega + p.beta * s.f;
    if (y)
    {
      CHECK(next.f >= drift);
    }
    else
    {
      CHECK(next.f <= drift);
    }
    s = next;
    REQUIRE(std::abs(s.f) <= bound);
  }
}

TEST_CASE("params validation")
{
  CHECK_NOTHROW(GasParams{}.validate());
  CHECK_THROWS_AS((GasParams{0.0, 1.0, 0.1, Scaling::identity}.validate()), ConfigError);
  CHECK_THROWS_AS((GasParams{0.0, 0.5, -0.1, Scaling::identity}.validate()), ConfigError);
  CHECK(scaling_from_string("inverse_fisher") == Scaling::inverse_fisher);
  CHECK_THROWS_AS(scaling_from_string("fisher"), ConfigError);
}

TEST_CASE("ema reputation")
{
  CHECK(ema_update(0.5, true, 0.05) == doctest::Approx(0.525));
  CHECK(ema_update(0.5, false, 0.05) == doctest::Approx(0.475));
  CHECK(ema_update(1.0, true, 0.05) == 1.0);
}
