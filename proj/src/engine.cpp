#include "coprosim/engine.hpp"

#include "coprosim/errors.hpp"
#include "coprosim/incentive_curve.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace coprosim {

namespace {

// Independent streams per (seed, period, purpose).
enum class Stream : std::uint32_t
{
  population = 1,
  tasks      = 2,
  engine     = 3,
};

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t period, Stream stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(period), static_cast<std::uint32_t>(period >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64 &rng, double lo, double hi)
{
  if (lo == hi)
  {
    return lo;
  }
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

Decision operator_decide(OperatorState const &op, Task const &task, double headroom_factor)
{
  return op.resources * headroom_factor >= task.difficulty ? Decision::self_execute
                                                           : Decision::auction;
}

std::vector<Task> generate_tasks(SimulationConfig const &config, std::size_t period)
{
  auto        rng = make_stream(config.rng_seed, period, Stream::tasks);
  auto const &p   = config.tasks;

  std::lognormal_distribution<double> difficulty(p.difficulty_log_mean, p.difficulty_log_sd);

  std::vector<Task> tasks;
  tasks.reserve(config.tasks_per_period);
  for (std::size_t k = 0; k < config.tasks_per_period; ++k)
  {
    Task task;
    task.id           = static_cast<TaskId>(period) * config.tasks_per_period + k;
    task.difficulty   = p.difficulty_log_sd > 0.0 ? difficulty(rng) : std::exp(p.difficulty_log_mean);
    double const mult = 1.0 + uniform(rng, -p.reward_noise, p.reward_noise);
    task.reward       = std::max(0.0, p.reward_per_difficulty * task.difficulty * mult);
    task.base_penalty = p.penalty_ratio * task.reward;
    task.risk_factor  = uniform(rng, 0.0, p.risk_max);
    tasks.push_back(task);
  }
  return tasks;
}

std::size_t PeriodReport::delegated_executions() const noexcept
{
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                [](Outcome const &o) { return o.coprocessor_id.has_value(); }));
}

Simulation::Simulation(SimulationConfig config)
{
  config.validate();
  m_curve        = calibrate(config.curve);
  m_state.config = std::move(config);
  m_state.rng    = make_stream(m_state.config.rng_seed, 0, Stream::engine);
  populate();
}

void Simulation::populate()
{
  auto const &cfg = m_state.config;
  auto const &pop = cfg.population;
  auto        rng = make_stream(cfg.rng_seed, 0, Stream::population);

  m_state.operators.resize(cfg.n_operators);
  for (std::size_t i = 0; i < cfg.n_operators; ++i)
  {
    auto &op      = m_state.operators[i];
    op.id         = static_cast<OperatorId>(i);
    op.resources  = uniform(rng, pop.operator_resources_min, pop.operator_resources_max);
    op.reputation = uniform(rng, pop.operator_reputation_min, pop.operator_reputation_max);
    op.stake      = pop.initial_stake;
    op.active     = true;
  }

  m_state.coprocessors.resize(cfg.n_coprocessors);
  m_state.gas.resize(cfg.n_coprocessors);
  for (std::size_t j = 0; j < cfg.n_coprocessors; ++j)
  {
    auto &cop              = m_state.coprocessors[j];
    cop.id                 = static_cast<CoprocessorId>(j);
    cop.resources          = uniform(rng, pop.coprocessor_resources_min, pop.coprocessor_resources_max);
    cop.collateral_balance = pop.initial_collateral;
    m_state.gas[j]         = GasState{uniform(rng, pop.gas_score_min, pop.gas_score_max), 0};
    cop.gas_score          = m_state.gas[j].f;
    cop.reputation         = reputation_of(m_state.gas[j]);
  }
}

void Simulation::settle(Task const &task, OperatorState &op, CoprocessorState *cop,
                        Assignment const *deal, PeriodReport &report)
{
  auto const &cfg = m_state.config;

  Outcome out;
  out.task_id      = task.id;
  out.operator_id  = op.id;
  out.reward       = task.reward;
  out.base_penalty = task.base_penalty;
  out.probability  = cop != nullptr ? success_probability(op, *cop, task, cfg.success_gain)
                                    : success_probability(op, task, cfg.success_gain);
  out.success =
      std::uniform_real_distribution<double>(0.0, 1.0)(m_state.rng) < out.probability;

  double const slash = cfg.slash_factor * task.base_penalty;

  if (cop == nullptr)
  {
    if (out.success)
    {
      out.operator_reward = task.reward;
    }
    else
    {
      out.operator_slash = slash;
    }
  }
  else
  {
    out.coprocessor_id  = cop->id;
    out.bid_price       = deal->bid_price;
    auto const mult     = incentive_multipliers(std::clamp(cop->load, 0.0, 1.0), m_curve,
                                                cfg.bonus_gain, cfg.slash_gain);
    out.reward_bonus    = mult.reward_bonus;
    out.slash_amplifier = mult.slash_amplifier;
    if (out.success)
    {
      out.coprocessor_reward = deal->bid_price * (1.0 + mult.reward_bonus);
      out.operator_reward    = task.reward - deal->bid_price;
    }
    else
    {
      double const amount   = slash * mult.slash_amplifier;
      out.coprocessor_slash = std::min(amount, cop->collateral_balance);
      out.operator_slash    = cfg.delegated_operator_slash_fraction * amount;
    }
    cop->collateral_balance += out.coprocessor_reward - out.coprocessor_slash;
    cop->cumulative_reward += out.coprocessor_reward;
  }

  op.stake += out.operator_reward - out.operator_slash;
  op.cumulative_reward += out.operator_reward;

  m_state.cumulative_reward_paid += out.reward_paid();
  m_state.cumulative_slash_applied += out.slash_applied();
  report.outcomes.push_back(out);
}

PeriodReport Simulation::step()
{
  auto &cfg  = m_state.config;
  auto &ops  = m_state.operators;
  auto &cops = m_state.coprocessors;

  PeriodReport report;
  report.period = m_state.period;

  std::vector<OperatorId> active;
  for (auto const &op : ops)
  {
    if (op.active)
    {
      active.push_back(op.id);
    }
  }

  if (!active.empty())
  {
    report.tasks = generate_tasks(cfg, m_state.period);
    auto const &tasks = report.tasks;

    std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
    std::vector<OperatorId>                    owner(tasks.size());
    for (auto &o : owner)
    {
      o = active[pick(m_state.rng)];
    }

    // Per task: index into report.assignments, or none.
    std::vector<std::optional<std::size_t>> deal_of(tasks.size());
    std::vector<bool>                       self_run(tasks.size(), false);
    std::vector<bool>                       fallback(tasks.size(), false);

    for (std::size_t k = 0; k < tasks.size(); ++k)
    {
      auto const &task = tasks[k];
      auto const &op   = ops[owner[k]];
      if (operator_decide(op, task, cfg.headroom_factor) == Decision::self_execute)
      {
        self_run[k] = true;
        continue;
      }
      AuctionRecord record{op.id, task.id,
                           run_dutch_auction(task, cops, cfg.auction, cfg.min_collateral)};
      if (record.outcome.winner)
      {
        auto &cop = cops[*record.outcome.winner];
        cop.load += load_share(cop, task, cfg.auction.resource_floor);

        Assignment deal;
        deal.operator_id    = op.id;
        deal.coprocessor_id = cop.id;
        deal.task_id        = task.id;
        deal.bid_price      = *record.outcome.clearing_price;
        deal.collateral     = std::min(cop.collateral_balance,
                                       std::max(cfg.min_collateral, cfg.collateral_rate * task.reward));
        deal.selected       = true;
        deal_of[k]          = report.assignments.size();
        report.assignments.push_back(deal);
      }
      report.auctions.push_back(std::move(record));
    }

    // Each operator vets its won auctions against its own objective.
    std::map<OperatorId, std::vector<std::size_t>> won_by;
    for (std::size_t k = 0; k < tasks.size(); ++k)
    {
      if (deal_of[k])
      {
        won_by[owner[k]].push_back(k);
      }
    }
    for (auto const &[op_id, task_idx] : won_by)
    {
      auto const        &op = ops[op_id];
      AllocationInstance instance;
      instance.slash_factor   = cfg.slash_factor;
      instance.min_collateral = cfg.min_collateral;
      for (auto k : task_idx)
      {
        auto const &deal = report.assignments[*deal_of[k]];
        auto const &cop  = cops[*deal.coprocessor_id];
        instance.tasks.push_back(tasks[k]);
        instance.candidates.push_back({Candidate{cop.id,
                                                 success_probability(op, cop, tasks[k], cfg.success_gain),
                                                 deal.bid_price, deal.collateral}});
      }
      auto const result = solve_greedy(instance);
      for (auto k : task_idx)
      {
        if (result.selected.at(tasks[k].id))
        {
          continue;
        }
        auto &deal    = report.assignments[*deal_of[k]];
        auto &cop     = cops[*deal.coprocessor_id];
        deal.selected = false;
        cop.load      = std::max(0.0, cop.load - load_share(cop, tasks[k], cfg.auction.resource_floor));
        deal_of[k].reset();
        if (cfg.unassigned_policy == UnassignedPolicy::self_execute)
        {
          self_run[k] = true;
          fallback[k] = true;
        }
      }
    }

    report.coprocessor_load.reserve(cops.size());
    for (auto const &cop : cops)
    {
      report.coprocessor_load.push_back(cop.load);
    }

    for (std::size_t k = 0; k < tasks.size(); ++k)
    {
      auto &op = ops[owner[k]];
      if (self_run[k])
      {
        report.self_executions.push_back(SelfExecution{op.id, tasks[k].id, fallback[k]});
        settle(tasks[k], op, nullptr, nullptr, report);
      }
      else if (deal_of[k])
      {
        auto const &deal = report.assignments[*deal_of[k]];
        settle(tasks[k], op, &cops[*deal.coprocessor_id], &deal, report);
      }
    }

    // Reputation moves only after every task of the period has executed.
    for (auto const &out : report.outcomes)
    {
      auto &op      = ops[out.operator_id];
      op.reputation = ema_update(op.reputation, out.success, cfg.operator_reputation_rate);
      if (out.coprocessor_id)
      {
        auto &gas      = m_state.gas[*out.coprocessor_id];
        auto &cop      = cops[*out.coprocessor_id];
        gas            = gas_update(gas, out.success, cfg.gas);
        cop.gas_score  = gas.f;
        cop.reputation = reputation_of(gas);
      }
    }

    for (auto &op : ops)
    {
      if (op.active && op.stake < cfg.deactivation_threshold)
      {
        op.active = false;
      }
    }
  }
  else
  {
    report.coprocessor_load.reserve(cops.size());
    for (auto const &cop : cops)
    {
      report.coprocessor_load.push_back(cop.load);
    }
  }

  for (auto &cop : cops)
  {
    cop.load *= 1.0 - cfg.load_decay;
  }
  ++m_state.period;
  return report;
}

MetricsFrame Simulation::capture(PeriodReport const &report) const
{
  MetricsFrame frame;
  frame.period                  = report.period;
  frame.cumulative_reward_total = m_state.cumulative_reward_paid;
  frame.cumulative_slash_total  = m_state.cumulative_slash_applied;

  frame.operator_reward.reserve(m_state.operators.size());
  for (auto const &op : m_state.operators)
  {
    frame.active_operators += op.active ? 1 : 0;
    frame.operator_reward.push_back(op.cumulative_reward);
  }
  frame.coprocessor_load = report.coprocessor_load;
  frame.coprocessor_reward.reserve(m_state.coprocessors.size());
  frame.coprocessor_reputation.reserve(m_state.coprocessors.size());
  for (auto const &cop : m_state.coprocessors)
  {
    frame.coprocessor_reward.push_back(cop.cumulative_reward);
    frame.coprocessor_reputation.push_back(cop.reputation);
  }

  std::map<std::pair<OperatorId, CoprocessorId>, std::uint32_t> counts;
  for (auto const &out : report.outcomes)
  {
    if (out.coprocessor_id)
    {
      ++counts[{out.operator_id, *out.coprocessor_id}];
    }
  }
  frame.assignment_counts.reserve(counts.size());
  for (auto const &[key, n] : counts)
  {
    frame.assignment_counts.push_back(AssignmentCount{key.first, key.second, n});
  }
  return frame;
}

std::vector<MetricsFrame> run_simulation(SimulationConfig const &config,
                                         PeriodObserver const  &observer)
{
  Simulation                sim(config);
  std::vector<MetricsFrame> frames;
  frames.reserve(config.periods);
  while (!sim.finished())
  {
    auto report = sim.step();
    frames.push_back(sim.capture(report));
    if (observer)
    {
      observer(report, frames.back());
    }
  }
  return frames;
}

}  // namespace coprosim
