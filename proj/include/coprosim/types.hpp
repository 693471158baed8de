#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace coprosim {

using TaskId        = std::uint64_t;
using OperatorId    = std::uint32_t;
using CoprocessorId = std::uint32_t;

/// Numerically stable logistic function.
inline double logistic(double z) noexcept
{
  if (z >= 0.0)
  {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double const e = std::exp(z);
  return e / (1.0 + e);
}

/// One unit of service work. Rewards and penalties are in token units,
/// difficulty in abstract compute units.
struct Task
{
  TaskId id{0};
  double difficulty{0.0};
  double reward{0.0};
  double base_penalty{0.0};
  double risk_factor{0.0};  // [0, 1]

  bool valid() const noexcept;
};

struct OperatorState
{
  OperatorId id{0};
  double     resources{0.0};
  double     reputation{0.5};  // [0, 1], EMA of task outcomes
  double     stake{0.0};       // may dip below zero right before deactivation
  double     cumulative_reward{0.0};
  bool       active{true};
};

struct CoprocessorState
{
  CoprocessorId id{0};
  double        resources{0.0};
  double        load{0.0};  // fraction of resources committed, [0, 1]
  double        collateral_balance{0.0};
  double        gas_score{0.0};
  double        reputation{0.5};  // always logistic(gas_score)
  double        cumulative_reward{0.0};
};

/// A delegation decision for one task. `selected` is the binary decision
/// variable; an unselected record is a won auction the operator released.
struct Assignment
{
  OperatorId                   operator_id{0};
  std::optional<CoprocessorId> coprocessor_id;
  TaskId                       task_id{0};
  double                       bid_price{0.0};
  double                       collateral{0.0};
  bool                         selected{false};
};

/// Probability that `op` completes `task` on its own resources.
double success_probability(OperatorState const &op, Task const &task, double gain);

/// Probability that `cop` completes `task` delegated to it by `op`.
double success_probability(OperatorState const &op, CoprocessorState const &cop,
                           Task const &task, double gain);

/// Shared functional form: logistic in the capability gap, attenuated by
/// task risk scaled by the executor's missing reputation.
double success_probability(double capability, double reputation, Task const &task,
                           double gain);

}  // namespace coprosim
