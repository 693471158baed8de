#include "coprosim/auction.hpp"

#include "coprosim/errors.hpp"

#include <algorithm>
#include <limits>

namespace coprosim {

void AuctionParams::validate() const
{
  if (!(start_price_fraction > 0.0 && start_price_fraction <= 1.0))
  {
    throw ConfigError("auction.start_price_fraction must lie in (0, 1]");
  }
  if (!(decrement > 0.0))
  {
    throw ConfigError("auction.decrement must be positive");
  }
  if (max_steps < 1)
  {
    throw ConfigError("auction.max_steps must be at least 1");
  }
  if (cost_base < 0.0 || load_sensitivity < 0.0 || !(resource_floor > 0.0))
  {
    throw ConfigError("auction threshold parameters must be nonnegative with a positive floor");
  }
}

std::vector<double> price_schedule(Task const &task, AuctionParams const &params)
{
  std::vector<double> schedule;
  if (!(task.reward > 0.0))
  {
    return schedule;
  }
  double const start = params.start_price_fraction * task.reward;
  schedule.reserve(params.max_steps);
  for (std::size_t k = 0; k < params.max_steps; ++k)
  {
    double const price = std::max(0.0, start - static_cast<double>(k) * params.decrement);
    schedule.push_back(price);
    if (price == 0.0)
    {
      break;
    }
  }
  return schedule;
}

double load_share(CoprocessorState const &cop, Task const &task, double resource_floor)
{
  return task.difficulty / std::max(resource_floor, cop.resources);
}

double acceptance_threshold(CoprocessorState const &cop, Task const &task,
                            AuctionParams const &params)
{
  return params.cost_base * load_share(cop, task, params.resource_floor) *
         (1.0 + params.load_sensitivity * cop.load);
}

AuctionOutcome run_dutch_auction(Task const &task, std::span<CoprocessorState const> coprocessors,
                                 AuctionParams const &params, double min_collateral)
{
  AuctionOutcome outcome;
  outcome.schedule = price_schedule(task, params);

  // Thresholds and eligibility do not depend on the current price.
  std::vector<double> thresholds(coprocessors.size(), std::numeric_limits<double>::infinity());
  double              lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < coprocessors.size(); ++i)
  {
    auto const &cop      = coprocessors[i];
    bool const  fits     = cop.load + load_share(cop, task, params.resource_floor) <= 1.0;
    bool const  backed   = cop.collateral_balance >= min_collateral;
    if (fits && backed)
    {
      thresholds[i] = acceptance_threshold(cop, task, params);
      lowest        = std::min(lowest, thresholds[i]);
    }
  }

  for (std::size_t step = 0; step < outcome.schedule.size(); ++step)
  {
    double const price = outcome.schedule[step];
    if (lowest > price)
    {
      continue;
    }
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < coprocessors.size(); ++i)
    {
      if (thresholds[i] > price)
      {
        continue;
      }
      if (!best)
      {
        best = i;
        continue;
      }
      auto const &a = coprocessors[i];
      auto const &b = coprocessors[*best];
      if (a.reputation > b.reputation || (a.reputation == b.reputation && a.id < b.id))
      {
        best = i;
      }
    }
    outcome.winner           = coprocessors[*best].id;
    outcome.clearing_price   = price;
    outcome.step             = step;
    outcome.winner_threshold = thresholds[*best];
    break;
  }
  return outcome;
}

}  // namespace coprosim
