#pragma once

#include "coprosim/auction.hpp"
#include "coprosim/incentive_curve.hpp"
#include "coprosim/reputation.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace coprosim {

/// Task draw: difficulty ~ LogNormal(log_mean, log_sd); reward =
/// reward_per_difficulty * difficulty * (1 + U[-reward_noise, reward_noise]);
/// base_penalty = penalty_ratio * reward; risk ~ U[0, risk_max].
struct TaskGenParams
{
  double difficulty_log_mean{1.5};
  double difficulty_log_sd{0.6};
  double reward_per_difficulty{1.0};
  double reward_noise{0.2};
  double penalty_ratio{10.0};
  double risk_max{0.5};
};

/// Initial attribute ranges; every draw is uniform over [min, max].
struct PopulationParams
{
  double operator_resources_min{2.0};
  double operator_resources_max{10.0};
  double operator_reputation_min{0.3};
  double operator_reputation_max{0.9};
  double initial_stake{50.0};
  double coprocessor_resources_min{20.0};
  double coprocessor_resources_max{60.0};
  double initial_collateral{200.0};
  double gas_score_min{-1.0};
  double gas_score_max{1.0};
};

/// What happens to a won auction the operator releases.
enum class UnassignedPolicy
{
  drop,          // task yields no reward and no slash
  self_execute,  // operator runs it on its own resources
};

std::string_view to_string(UnassignedPolicy policy) noexcept;
UnassignedPolicy unassigned_policy_from_string(std::string_view name);

struct SimulationConfig
{
  std::size_t   n_operators{100};
  std::size_t   n_coprocessors{100};
  std::size_t   periods{1000};
  std::size_t   tasks_per_period{1000};
  double        slash_factor{0.1};
  double        min_collateral{1.0};
  std::uint64_t rng_seed{0};
  double        deactivation_threshold{0.0};

  double           success_gain{0.5};
  double           headroom_factor{1.0};
  double           operator_reputation_rate{0.05};
  double           delegated_operator_slash_fraction{0.25};
  double           collateral_rate{1.0};  // posted collateral = max(min, rate * reward)
  double           load_decay{1.0};       // per-period fraction of load released
  double           bonus_gain{0.1};
  double           slash_gain{1.0};
  UnassignedPolicy unassigned_policy{UnassignedPolicy::drop};

  TaskGenParams    tasks;
  PopulationParams population;
  CurveParams      curve;
  GasParams        gas;
  AuctionParams    auction;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

}  // namespace coprosim
