#include "coprosim/allocation.hpp"

#include "coprosim/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coprosim {

double expected_benefit(double reward, double slash, double p)
{
  if (!(p >= 0.0 && p <= 1.0))
  {
    throw std::domain_error("success probability outside [0, 1]: " + std::to_string(p));
  }
  return reward * p - slash * (1.0 - p);
}

double net_value(double reward, double slash, double p, double bid)
{
  return expected_benefit(reward, slash, p) - bid;
}

void AllocationInstance::validate() const
{
  if (candidates.size() != tasks.size())
  {
    throw std::invalid_argument("allocation instance: candidates/tasks size mismatch");
  }
  if (slash_factor < 0.0 || min_collateral < 0.0)
  {
    throw std::invalid_argument("allocation instance: negative slash factor or collateral floor");
  }
  for (auto const &list : candidates)
  {
    for (auto const &c : list)
    {
      if (!(c.p >= 0.0 && c.p <= 1.0) || c.bid_price < 0.0 || c.collateral < 0.0)
      {
        throw std::invalid_argument("allocation instance: invalid candidate for coprocessor " +
                                    std::to_string(c.coprocessor_id));
      }
    }
  }
}

namespace {

// Task indices sorted by task id.
std::vector<std::size_t> id_order(AllocationInstance const &instance)
{
  std::vector<std::size_t> order(instance.tasks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.tasks[a].id < instance.tasks[b].id;
  });
  return order;
}

double candidate_value(AllocationInstance const &instance, Task const &task, Candidate const &c)
{
  return net_value(task.reward, instance.slash_factor * task.base_penalty, c.p, c.bid_price);
}

// Feasible candidates of one task sorted by coprocessor id. Choice 0 is "none".
struct TaskChoices
{
  std::vector<CoprocessorId> ids;
  std::vector<double>        values;
};

std::vector<TaskChoices> feasible_choices(AllocationInstance const &instance,
                                          std::vector<std::size_t> const &order)
{
  std::vector<TaskChoices> out;
  out.reserve(order.size());
  for (auto idx : order)
  {
    auto feasible = instance.candidates[idx];
    std::erase_if(feasible,
                  [&](Candidate const &c) { return c.collateral < instance.min_collateral; });
    std::stable_sort(feasible.begin(), feasible.end(), [](auto const &a, auto const &b) {
      return a.coprocessor_id < b.coprocessor_id;
    });
    TaskChoices choices;
    for (auto const &c : feasible)
    {
      choices.ids.push_back(c.coprocessor_id);
      choices.values.push_back(candidate_value(instance, instance.tasks[idx], c));
    }
    out.push_back(std::move(choices));
  }
  return out;
}

AllocationResult make_result(AllocationInstance const &instance,
                             std::vector<std::size_t> const &order,
                             std::vector<TaskChoices> const &choices,
                             std::vector<std::size_t> const &pick)
{
  AllocationResult result;
  for (std::size_t k = 0; k < order.size(); ++k)
  {
    TaskId const id = instance.tasks[order[k]].id;
    if (pick[k] == 0)
    {
      result.selected[id] = std::nullopt;
    }
    else
    {
      result.selected[id] = choices[k].ids[pick[k] - 1];
      result.objective_value += choices[k].values[pick[k] - 1];
    }
  }
  return result;
}

}  // namespace

AllocationResult solve_exact(AllocationInstance const &instance, std::size_t cap)
{
  instance.validate();

  std::size_t space = 1;
  for (auto const &list : instance.candidates)
  {
    std::size_t const width = list.size() + 1;
    if (space > cap / width)
    {
      throw AllocationTooLarge("allocation instance exceeds exhaustive search cap of " +
                               std::to_string(cap) + " assignments");
    }
    space *= width;
  }

  auto const order   = id_order(instance);
  auto const choices = feasible_choices(instance, order);

  // Odometer over feasible choices; the last task varies fastest, so the
  // first maximizer seen is the lexicographically smallest one.
  std::vector<std::size_t> pick(order.size(), 0);
  std::vector<std::size_t> best = pick;
  double                   best_value = 0.0;

  while (true)
  {
    double value = 0.0;
    for (std::size_t k = 0; k < pick.size(); ++k)
    {
      if (pick[k] != 0)
      {
        value += choices[k].values[pick[k] - 1];
      }
    }
    if (value > best_value)
    {
      best_value = value;
      best       = pick;
    }

    std::size_t k = pick.size();
    while (k > 0)
    {
      --k;
      if (++pick[k] <= choices[k].ids.size())
      {
        break;
      }
      pick[k] = 0;
      if (k == 0)
      {
        return make_result(instance, order, choices, best);
      }
    }
    if (pick.empty())
    {
      return make_result(instance, order, choices, best);
    }
  }
}

AllocationResult solve_greedy(AllocationInstance const &instance)
{
  instance.validate();

  auto const order   = id_order(instance);
  auto const choices = feasible_choices(instance, order);

  std::vector<std::size_t> pick(order.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k)
  {
    double best_value = 0.0;
    for (std::size_t j = 0; j < choices[k].ids.size(); ++j)
    {
      if (choices[k].values[j] > best_value)
      {
        best_value = choices[k].values[j];
        pick[k]    = j + 1;
      }
    }
  }
  return make_result(instance, order, choices, pick);
}

double recompute_objective(AllocationInstance const &instance, AllocationResult const &result)
{
  double total = 0.0;
  for (auto idx : id_order(instance))
  {
    Task const &task = instance.tasks[idx];
    auto        it   = result.selected.find(task.id);
    if (it == result.selected.end() || !it->second)
    {
      continue;
    }
    for (auto const &c : instance.candidates[idx])
    {
      if (c.coprocessor_id == *it->second)
      {
        total += candidate_value(instance, task, c);
        break;
      }
    }
  }
  return total;
}

}  // namespace coprosim
