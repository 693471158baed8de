#pragma once

#include "coprosim/allocation.hpp"
#include "coprosim/auction.hpp"
#include "coprosim/config.hpp"
#include "coprosim/frame.hpp"
#include "coprosim/reputation.hpp"
#include "coprosim/types.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace coprosim {

enum class Decision
{
  self_execute,
  auction,
};

/// An operator runs a task itself when resources * headroom cover the
/// difficulty (inclusive); otherwise the task goes to auction.
Decision operator_decide(OperatorState const &op, Task const &task, double headroom_factor);

/// Draws the period's tasks. Pure in (config.rng_seed, period): the stream
/// is seeded from both, independent of anything else the engine draws.
/// Task ids are period * tasks_per_period + index.
std::vector<Task> generate_tasks(SimulationConfig const &config, std::size_t period);

struct AuctionRecord
{
  OperatorId     operator_id{0};
  TaskId         task_id{0};
  AuctionOutcome outcome;
};

struct SelfExecution
{
  OperatorId operator_id{0};
  TaskId     task_id{0};
  bool       fallback{false};  // released delegation run under self_execute policy
};

/// Realized result of one executed task with its full token flow.
struct Outcome
{
  TaskId                       task_id{0};
  OperatorId                   operator_id{0};
  std::optional<CoprocessorId> coprocessor_id;
  bool                         success{false};
  double                       probability{0.0};

  double reward{0.0};        // task reward
  double base_penalty{0.0};  // task base penalty
  double bid_price{0.0};
  double reward_bonus{0.0};
  double slash_amplifier{1.0};

  double operator_reward{0.0};
  double coprocessor_reward{0.0};
  double operator_slash{0.0};
  double coprocessor_slash{0.0};

  double reward_paid() const noexcept { return operator_reward + coprocessor_reward; }
  double slash_applied() const noexcept { return operator_slash + coprocessor_slash; }
};

struct PeriodReport
{
  std::size_t                period{0};
  std::vector<Task>          tasks;
  std::vector<AuctionRecord> auctions;
  std::vector<Assignment>    assignments;  // won auctions, released ones unselected
  std::vector<SelfExecution> self_executions;
  std::vector<Outcome>       outcomes;  // task-id order
  std::vector<double>        coprocessor_load;  // after auctions and releases

  std::size_t delegated_executions() const noexcept;
};

struct SimulationState
{
  SimulationConfig              config;
  std::vector<OperatorState>    operators;
  std::vector<CoprocessorState> coprocessors;
  std::vector<GasState>         gas;  // parallel to coprocessors
  std::size_t                   period{0};
  std::mt19937_64               rng;

  double cumulative_reward_paid{0.0};
  double cumulative_slash_applied{0.0};
};

class Simulation
{
public:
  /// Validates the config and calibrates its curve. Throws ConfigError or
  /// CalibrationError.
  explicit Simulation(SimulationConfig config);

  /// Advances one period. Precondition: !finished().
  PeriodReport step();

  bool finished() const noexcept { return m_state.period >= m_state.config.periods; }

  SimulationState const &state() const noexcept { return m_state; }

  /// Snapshot of the state after `report`'s period.
  MetricsFrame capture(PeriodReport const &report) const;

private:
  void populate();
  void settle(Task const &task, OperatorState &op, CoprocessorState *cop, Assignment const *deal,
              PeriodReport &report);

  SimulationState m_state;
  CurveParams     m_curve;
};

using PeriodObserver = std::function<void(PeriodReport const &, MetricsFrame const &)>;

/// Runs every period and returns one frame per period.
std::vector<MetricsFrame> run_simulation(SimulationConfig const &config,
                                         PeriodObserver const  &observer = {});

}  // namespace coprosim
