#pragma once

#include "coprosim/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace coprosim {

struct AssignmentCount
{
  OperatorId    operator_id{0};
  CoprocessorId coprocessor_id{0};
  std::uint32_t count{0};
};

/// Per-period snapshot. Per-entity vectors are indexed by id.
struct MetricsFrame
{
  std::size_t period{0};
  std::size_t active_operators{0};
  double      cumulative_reward_total{0.0};
  double      cumulative_slash_total{0.0};

  std::vector<double> operator_reward;  // cumulative, per operator
  std::vector<double> coprocessor_load;
  std::vector<double> coprocessor_reward;  // cumulative, per coprocessor
  std::vector<double> coprocessor_reputation;

  /// Executed delegations this period, sorted by (operator, coprocessor).
  std::vector<AssignmentCount> assignment_counts;
};

}  // namespace coprosim
