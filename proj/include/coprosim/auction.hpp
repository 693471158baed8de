#pragma once

#include "coprosim/types.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace coprosim {

struct AuctionParams
{
  double      start_price_fraction{0.85};  // start price = fraction * task.reward, (0, 1]
  double      decrement{0.05};             // absolute price step, > 0
  std::size_t max_steps{100};

  // Acceptance threshold: cost_base * difficulty / max(resource_floor, resources)
  // * (1 + load_sensitivity * load).
  double cost_base{10.0};
  double load_sensitivity{1.0};
  double resource_floor{1e-9};

  void validate() const;
};

struct AuctionOutcome
{
  std::optional<CoprocessorId> winner;
  std::optional<double>        clearing_price;
  std::optional<std::size_t>   step;
  std::vector<double>          schedule;
  /// Winner's acceptance threshold at the moment it accepted.
  std::optional<double> winner_threshold;
};

/// Descending prices p0, p0 - d, p0 - 2d, ... for at most max_steps entries,
/// clamped at zero and truncated after the first zero. Empty when the task
/// carries no reward.
std::vector<double> price_schedule(Task const &task, AuctionParams const &params);

/// Lowest price at which `cop` is willing to take `task`. Rises with load and
/// falls with resources.
double acceptance_threshold(CoprocessorState const &cop, Task const &task,
                            AuctionParams const &params);

/// Fraction of `cop`'s resources that `task` would occupy.
double load_share(CoprocessorState const &cop, Task const &task, double resource_floor);

/// Walks the schedule top-down. At each price a coprocessor is willing when
/// its threshold is at most the price, the task fits its remaining capacity,
/// and its collateral balance meets `min_collateral`. The first nonempty
/// willing set ends the auction; the highest-reputation member wins, ties to
/// the lowest id.
AuctionOutcome run_dutch_auction(Task const &task, std::span<CoprocessorState const> coprocessors,
                                 AuctionParams const &params, double min_collateral);

}  // namespace coprosim
