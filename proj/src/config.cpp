#include "coprosim/config.hpp"

#include "coprosim/errors.hpp"

#include <cmath>
#include <string>

namespace coprosim {

std::string_view to_string(UnassignedPolicy policy) noexcept
{
  return policy == UnassignedPolicy::drop ? "drop" : "self_execute";
}

UnassignedPolicy unassigned_policy_from_string(std::string_view name)
{
  if (name == "drop")
  {
    return UnassignedPolicy::drop;
  }
  if (name == "self_execute")
  {
    return UnassignedPolicy::self_execute;
  }
  throw ConfigError("unknown unassigned_policy '" + std::string(name) + "'");
}

namespace {

void require(bool ok, char const *what)
{
  if (!ok)
  {
    throw ConfigError(what);
  }
}

void require_range(double lo, double hi, char const *what)
{
  require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, what);
}

}  // namespace

void SimulationConfig::validate() const
{
  require(n_operators >= 1, "n_operators must be at least 1");
  require(n_coprocessors >= 1, "n_coprocessors must be at least 1");
  require(slash_factor >= 0.0 && std::isfinite(slash_factor), "slash_factor must be >= 0");
  require(min_collateral >= 0.0, "min_collateral must be >= 0");
  require(std::isfinite(deactivation_threshold), "deactivation_threshold must be finite");
  require(success_gain >= 0.0, "success_gain must be >= 0");
  require(headroom_factor > 0.0, "headroom_factor must be > 0");
  require(operator_reputation_rate >= 0.0 && operator_reputation_rate <= 1.0,
          "operator_reputation_rate must lie in [0, 1]");
  require(delegated_operator_slash_fraction >= 0.0,
          "delegated_operator_slash_fraction must be >= 0");
  require(collateral_rate >= 0.0, "collateral_rate must be >= 0");
  require(load_decay >= 0.0 && load_decay <= 1.0, "load_decay must lie in [0, 1]");
  require(bonus_gain >= 0.0 && slash_gain >= 0.0, "bonus_gain and slash_gain must be >= 0");

  require(tasks.difficulty_log_sd >= 0.0, "tasks.difficulty_log_sd must be >= 0");
  require(tasks.reward_per_difficulty >= 0.0, "tasks.reward_per_difficulty must be >= 0");
  require(tasks.reward_noise >= 0.0 && tasks.reward_noise <= 1.0,
          "tasks.reward_noise must lie in [0, 1]");
  require(tasks.penalty_ratio >= 0.0, "tasks.penalty_ratio must be >= 0");
  require(tasks.risk_max >= 0.0 && tasks.risk_max <= 1.0, "tasks.risk_max must lie in [0, 1]");

  auto const &pop = population;
  require_range(pop.operator_resources_min, pop.operator_resources_max,
                "population.operator_resources range invalid");
  require(pop.operator_resources_min >= 0.0, "population.operator_resources_min must be >= 0");
  require_range(pop.operator_reputation_min, pop.operator_reputation_max,
                "population.operator_reputation range invalid");
  require(pop.operator_reputation_min >= 0.0 && pop.operator_reputation_max <= 1.0,
          "population.operator_reputation must lie in [0, 1]");
  require_range(pop.coprocessor_resources_min, pop.coprocessor_resources_max,
                "population.coprocessor_resources range invalid");
  require(pop.coprocessor_resources_min >= 0.0,
          "population.coprocessor_resources_min must be >= 0");
  require(pop.initial_collateral >= 0.0, "population.initial_collateral must be >= 0");
  require(std::isfinite(pop.initial_stake), "population.initial_stake must be finite");
  require_range(pop.gas_score_min, pop.gas_score_max, "population.gas_score range invalid");

  curve.validate();
  gas.validate();
  auction.validate();
}

}  // namespace coprosim
