#include "coprosim/auction.hpp"
#include "coprosim/errors.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace coprosim;

namespace {

Task task_with(double reward, double difficulty = 1.0)
{
  Task t;
  t.id         = 42;
  t.reward     = reward;
  t.difficulty = difficulty;
  return t;
}

AuctionParams params(double fraction, double decrement, std::size_t steps)
{
  AuctionParams p;
  p.start_price_fraction = fraction;
  p.decrement            = decrement;
  p.max_steps            = steps;
  return p;
}

CoprocessorState cop(CoprocessorId id, double resources, double reputation, double load = 0.0)
{
  CoprocessorState c;
  c.id                 = id;
  c.resources          = resources;
  c.reputation         = reputation;
  c.load               = load;
  c.collateral_balance = 100.0;
  return c;
}

// Picks cost_base so that `c` has exactly `threshold` on `task`.
AuctionParams with_threshold(AuctionParams p, CoprocessorState const &c, Task const &task,
                             double threshold)
{
  p.load_sensitivity = 0.0;
  p.cost_base        = threshold * c.resources / task.difficulty;
  return p;
}

}  // namespace

TEST_CASE("price schedule")
{
  CHECK(price_schedule(task_with(10.0), params(1.0, 1.0, 5)) == std::vector<double>{10, 9, 8, 7, 6});
  CHECK(price_schedule(task_with(10.0), params(1.0, 4.0, 5)) == std::vector<double>{10, 6, 2, 0});
  CHECK(price_schedule(task_with(0.0), params(1.0, 1.0, 5)).empty());
  CHECK(price_schedule(task_with(10.0), params(0.5, 1.0, 3)) == std::vector<double>{5, 4, 3});
}

TEST_CASE("acceptance threshold")
{
  AuctionParams p;
  p.cost_base        = 2.0;
  p.load_sensitivity = 1.0;
  auto const task    = task_with(10.0, 3.0);

  CHECK(acceptance_threshold(cop(1, 6.0, 0.5), task, p) == doctest::Approx(1.0));
  CHECK(acceptance_threshold(cop(1, 6.0, 0.5, 1.0), task, p) == doctest::Approx(2.0));
  CHECK(acceptance_threshold(cop(1, 6.0, 0.5), task_with(10.0, 0.0), p) == 0.0);
  // Zero resources hit the floor instead of dividing by zero.
  CHECK(std::isfinite(acceptance_threshold(cop(1, 0.0, 0.5), task, p)));
}

TEST_CASE("single coprocessor at the start price wins at step 0")
{
  auto const task = task_with(10.0, 2.0);
  auto const c    = cop(3, 10.0, 0.5);
  auto const p    = with_threshold(params(1.0, 1.0, 5), c, task, 10.0);
  std::vector<CoprocessorState> cops{c};
  auto const out = run_dutch_auction(task, cops, p, 1.0);
  REQUIRE(out.winner);
  CHECK(*out.winner == 3);
  CHECK(*out.step == 0);
  CHECK(*out.clearing_price == 10.0);
}

TEST_CASE("no winner when every threshold exceeds the schedule")
{
  auto const task = task_with(10.0, 2.0);
  auto const a    = cop(1, 10.0, 0.5);
  auto const p    = with_threshold(params(1.0, 1.0, 4), a, task, 11.0);
  std::vector<CoprocessorState> cops{a, cop(2, 10.0, 0.9)};
  auto const out = run_dutch_auction(task, cops, p, 1.0);
  CHECK_FALSE(out.winner);
  CHECK_FALSE(out.clearing_price);
  CHECK(out.schedule.size() == 4);
}

TEST_CASE("empty coprocessor set and zero reward produce no winner")
{
  std::vector<CoprocessorState> none;
  CHECK_FALSE(run_dutch_auction(task_with(10.0), none, AuctionParams{}, 0.0).winner);
  std::vector<CoprocessorState> one{cop(1, 10.0, 0.5)};
  CHECK_FALSE(run_dutch_auction(task_with(0.0), one, AuctionParams{}, 0.0).winner);
}

TEST_CASE("thresholds 7 and 9 on schedule 10,9,8,7")
{
  // threshold = cost_base * difficulty / resources = 1 / resources here.
  // Both thresholds sit at or below the opening price of 10, so both
  // coprocessors are willing at step 0 and reputation decides.
  Task          task = task_with(10.0, 0.01);
  AuctionParams p    = params(1.0, 1.0, 4);
  p.cost_base        = 100.0;
  p.load_sensitivity = 0.0;

  std::vector<CoprocessorState> cops{cop(1, 1.0 / 7.0, 0.6), cop(2, 1.0 / 9.0, 0.8)};
  REQUIRE(acceptance_threshold(cops[0], task, p) == doctest::Approx(7.0));
  REQUIRE(acceptance_threshold(cops[1], task, p) == doctest::Approx(9.0));
  REQUIRE(price_schedule(task, p) == std::vector<double>{10, 9, 8, 7});

  auto out = run_dutch_auction(task, cops, p, 1.0);
  REQUIRE(out.winner);
  CHECK(*out.winner == 2);
  CHECK(*out.step == 0);
  CHECK(*out.clearing_price == 10.0);

  // With reputations swapped the threshold-7 coprocessor takes it instead.
  std::swap(cops[0].reputation, cops[1].reputation);
  out = run_dutch_auction(task, cops, p, 1.0);
  REQUIRE(out.winner);
  CHECK(*out.winner == 1);
  CHECK(*out.clearing_price == 10.0);
}

TEST_CASE("reputation tie breaks to the lowest id")
{
  auto const                    task = task_with(10.0, 1.0);
  std::vector<CoprocessorState> cops{cop(5, 10.0, 0.7), cop(2, 10.0, 0.7), cop(9, 10.0, 0.6)};
  auto const out = run_dutch_auction(task, cops, params(1.0, 1.0, 5), 0.0);
  REQUIRE(out.winner);
  CHECK(*out.winner == 2);
}

TEST_CASE("capacity and collateral exclude coprocessors")
{
  auto const                    task = task_with(10.0, 4.0);
  std::vector<CoprocessorState> cops{cop(1, 10.0, 0.9, 0.7), cop(2, 10.0, 0.8), cop(3, 10.0, 0.7)};
  cops[1].collateral_balance = 0.5;
  auto const out = run_dutch_auction(task, cops, params(1.0, 1.0, 5), 1.0);
  REQUIRE(out.winner);
  CHECK(*out.winner == 3);  // 1 would exceed capacity, 2 lacks collateral

  // Exactly filling capacity is allowed.
  std::vector<CoprocessorState> full{cop(1, 10.0, 0.9, 0.6)};
  CHECK(run_dutch_auction(task, full, params(1.0, 1.0, 5), 0.0).winner);
}

TEST_CASE("auction properties on random markets")
{
  std::mt19937_64                        rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial)
  {
    Task task = task_with(1.0 + 20.0 * u(rng), 10.0 * u(rng));
    AuctionParams p;
    p.start_price_fraction = 0.5 + 0.5 * u(rng);
    p.decrement            = 0.1 + u(rng);
    p.max_steps            = 1 + static_cast<std::size_t>(30 * u(rng));
    p.cost_base            = 40.0 * u(rng);
    double const min_coll  = u(rng);

    std::vector<CoprocessorState> cops;
    for (CoprocessorId id = 0; id < 6; ++id)
    {
      auto c               = cop(id, 5.0 + 40.0 * u(rng), u(rng), u(rng));
      c.collateral_balance = 2.0 * u(rng);
      cops.push_back(c);
    }
    auto const out = run_dutch_auction(task, cops, p, min_coll);

    for (std::size_t k = 1; k < out.schedule.size(); ++k)
    {
      CHECK(out.schedule[k] < out.schedule[k - 1]);
    }
    CHECK(out.winner.has_value() == out.clearing_price.has_value());
    if (!out.winner)
    {
      continue;
    }
    auto const &w = cops[*out.winner];
    CHECK(*out.clearing_price >= acceptance_threshold(w, task, p));
    CHECK(w.collateral_balance >= min_coll);
    CHECK(w.load + load_share(w, task, p.resource_floor) <= 1.0);
    CHECK(out.schedule[*out.step] == *out.clearing_price);

    // Replay: no eligible coprocessor with higher reputation accepted at or
    // before the winning step.
    for (auto const &c : cops)
    {
      bool const eligible = c.collateral_balance >= min_coll &&
                            c.load + load_share(c, task, p.resource_floor) <= 1.0;
      if (!eligible || c.id == w.id)
      {
        continue;
      }
      for (std::size_t k = 0; k <= *out.step; ++k)
      {
        if (acceptance_threshold(c, task, p) <= out.schedule[k])
        {
          CHECK(k == *out.step);
          CHECK((c.reputation < w.reputation || (c.reputation == w.reputation && c.id > w.id)));
        }
      }
    }

    // Raising the winner's threshold never raises its clearing price.
    auto raised = cops;
    raised[*out.winner].load = std::min(1.0, raised[*out.winner].load + 0.2 * u(rng));
    auto const again = run_dutch_auction(task, raised, p, min_coll);
    if (again.winner && *again.winner == *out.winner)
    {
      CHECK(*again.clearing_price <= *out.clearing_price);
    }
  }
}

TEST_CASE("auction params validation")
{
  CHECK_NOTHROW(AuctionParams{}.validate());
  CHECK_THROWS_AS(params(0.0, 1.0, 5).validate(), ConfigError);
  CHECK_THROWS_AS(params(1.0, 0.0, 5).validate(), ConfigError);
  CHECK_THROWS_AS(params(1.0, 1.0, 0).validate(), ConfigError);
}
