#pragma once

#include "coprosim/types.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace coprosim {

/// Expected benefit of one task: reward weighted by success, slash weighted
/// by failure. Throws std::domain_error when p is outside [0, 1].
double expected_benefit(double reward, double slash, double p);

/// Expected benefit net of the coprocessor's bid.
double net_value(double reward, double slash, double p, double bid);

struct Candidate
{
  CoprocessorId coprocessor_id{0};
  double        p{0.0};
  double        bid_price{0.0};
  double        collateral{0.0};
};

/// One operator's assignment program for a period. `candidates[i]` lists the
/// coprocessors able to take `tasks[i]`.
struct AllocationInstance
{
  std::vector<Task>                   tasks;
  std::vector<std::vector<Candidate>> candidates;
  double                              slash_factor{0.0};
  double                              min_collateral{0.0};

  /// Throws std::invalid_argument on shape mismatch, p outside [0, 1], or
  /// negative prices or collateral.
  void validate() const;
};

struct AllocationResult
{
  std::map<TaskId, std::optional<CoprocessorId>> selected;
  double                                         objective_value{0.0};
};

inline constexpr std::size_t kDefaultExactCap = 1'000'000;

/// Enumerates every feasible assignment and returns the maximizer. Ties go
/// to the lexicographically smallest selection over tasks in id order, with
/// "none" ordered before any coprocessor id.
/// Throws AllocationTooLarge when prod(|candidates_a| + 1) exceeds `cap`.
AllocationResult solve_exact(AllocationInstance const &instance,
                             std::size_t               cap = kDefaultExactCap);

/// Per-task argmax of net value over collateral-feasible candidates; a task
/// stays unassigned unless its best net value is strictly positive. The
/// program has no cross-task coupling, so this matches solve_exact.
AllocationResult solve_greedy(AllocationInstance const &instance);

/// Sums net values of the selections in task-id order.
double recompute_objective(AllocationInstance const &instance, AllocationResult const &result);

}  // namespace coprosim
