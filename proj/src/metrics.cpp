#include "coprosim/metrics.hpp"

#include "coprosim/engine.hpp"
#include "coprosim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace coprosim {

namespace {

std::vector<double> average_ranks(std::span<double const> xs)
{
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });

  std::vector<double> ranks(xs.size());
  std::size_t         i = 0;
  while (i < order.size())
  {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]])
    {
      ++j;
    }
    double const rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
    {
      ranks[order[k]] = rank;
    }
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<double const> xs, std::span<double const> ys)
{
  if (xs.size() != ys.size())
  {
    throw std::invalid_argument("spearman: series lengths differ");
  }
  if (xs.size() < 2)
  {
    throw std::invalid_argument("spearman: need at least two observations");
  }
  auto const rx = average_ranks(xs);
  auto const ry = average_ranks(ys);

  double const n    = static_cast<double>(xs.size());
  double const mean = (n + 1.0) / 2.0;
  double       sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k)
  {
    double const dx = rx[k] - mean;
    double const dy = ry[k] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
  {
    return 0.0;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

RunSummary summarize(SimulationConfig const &config, std::span<MetricsFrame const> frames)
{
  RunSummary s;
  s.slash_factor = config.slash_factor;
  s.seed         = config.rng_seed;
  s.periods      = frames.size();
  if (frames.empty())
  {
    s.final_active_operators = config.n_operators;
    return s;
  }
  auto const &last         = frames.back();
  s.total_rewards          = last.cumulative_reward_total;
  s.total_slashes          = last.cumulative_slash_total;
  s.final_active_operators = last.active_operators;
  if (last.coprocessor_reputation.size() >= 2)
  {
    s.reputation_reward_spearman = spearman(last.coprocessor_reputation, last.coprocessor_reward);
  }
  return s;
}

nlohmann::json summary_to_json(RunSummary const &s)
{
  return nlohmann::json{
      {"slash_factor", s.slash_factor},
      {"seed", s.seed},
      {"periods", s.periods},
      {"total_rewards", s.total_rewards},
      {"total_slashes", s.total_slashes},
      {"final_active_operators", s.final_active_operators},
      {"reputation_reward_spearman", s.reputation_reward_spearman},
  };
}

SweepTable run_sweep(SimulationConfig const &base, std::span<double const> slash_factors,
                     std::span<std::uint64_t const> seeds, std::size_t jobs)
{
  if (slash_factors.empty() || seeds.empty())
  {
    throw std::invalid_argument("run_sweep: slash factors and seeds must be nonempty");
  }

  SweepTable table;
  for (double s : slash_factors)
  {
    for (auto seed : seeds)
    {
      SweepCell cell;
      cell.slash_factor = s;
      cell.seed         = seed;
      table.cells.push_back(std::move(cell));
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex               failure_mutex;
  std::exception_ptr       failure;
  std::size_t              failed_at = table.cells.size();

  auto worker = [&] {
    for (std::size_t k = next++; k < table.cells.size(); k = next++)
    {
      auto &cell = table.cells[k];
      try
      {
        SimulationConfig config = base;
        config.slash_factor     = cell.slash_factor;
        config.rng_seed         = cell.seed;
        cell.frames             = run_simulation(config);
        cell.summary            = summarize(config, cell.frames);
      }
      catch (std::exception const &e)
      {
        std::lock_guard lock(failure_mutex);
        if (k < failed_at)
        {
          failed_at = k;
          failure   = std::make_exception_ptr(std::runtime_error(
              "sweep cell s=" + format_value(cell.slash_factor) +
              " seed=" + std::to_string(cell.seed) + " failed: " + e.what()));
        }
      }
    }
  };

  std::size_t const        n_threads = std::clamp<std::size_t>(jobs, 1, table.cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t)
  {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool)
  {
    t.join();
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }
  return table;
}

std::string format_value(double value)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

// Emits every (metric, entity, value) row of one frame, preceded by `prefix`.
void write_frame_rows(std::ostream &out, std::string const &prefix, MetricsFrame const &frame)
{
  std::string const head = prefix + std::to_string(frame.period) + ",";
  out << head << "active_operators,," << frame.active_operators << '\n';
  out << head << "cumulative_reward_total,," << format_value(frame.cumulative_reward_total) << '\n';
  out << head << "cumulative_slash_total,," << format_value(frame.cumulative_slash_total) << '\n';

  auto series = [&](char const *metric, std::vector<double> const &values) {
    for (std::size_t k = 0; k < values.size(); ++k)
    {
      out << head << metric << ',' << k << ',' << format_value(values[k]) << '\n';
    }
  };
  series("operator_reward", frame.operator_reward);
  series("coprocessor_load", frame.coprocessor_load);
  series("coprocessor_reward", frame.coprocessor_reward);
  series("coprocessor_reputation", frame.coprocessor_reputation);
}

template <class Writer>
void write_file(std::filesystem::path const &path, Writer &&writer)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  writer(out);
  out.flush();
  if (!out)
  {
    throw IoError("write to '" + path.string() + "' failed");
  }
}

}  // namespace

void write_metrics_csv(std::ostream &out, std::span<MetricsFrame const> frames)
{
  out << "period,metric,entity,value\n";
  for (auto const &frame : frames)
  {
    write_frame_rows(out, "", frame);
  }
}

void write_edges_csv(std::ostream &out, std::span<MetricsFrame const> frames)
{
  out << "period,operator_id,coprocessor_id,count\n";
  for (auto const &frame : frames)
  {
    for (auto const &edge : frame.assignment_counts)
    {
      out << frame.period << ',' << edge.operator_id << ',' << edge.coprocessor_id << ','
          << edge.count << '\n';
    }
  }
}

void write_sweep_csv(std::ostream &out, SweepTable const &table)
{
  out << "s,seed,period,metric,entity,value\n";
  for (auto const &cell : table.cells)
  {
    std::string const prefix = format_value(cell.slash_factor) + "," + std::to_string(cell.seed) + ",";
    for (auto const &frame : cell.frames)
    {
      write_frame_rows(out, prefix, frame);
    }
  }
}

void export_csv(std::span<MetricsFrame const> frames, std::filesystem::path const &path)
{
  write_file(path, [&](std::ostream &out) { write_metrics_csv(out, frames); });
}

void export_edges_csv(std::span<MetricsFrame const> frames, std::filesystem::path const &path)
{
  write_file(path, [&](std::ostream &out) { write_edges_csv(out, frames); });
}

void export_csv(SweepTable const &table, std::filesystem::path const &path)
{
  write_file(path, [&](std::ostream &out) { write_sweep_csv(out, table); });
}

void export_json(nlohmann::json const &doc, std::filesystem::path const &path)
{
  write_file(path, [&](std::ostream &out) { out << doc.dump(2) << '\n'; });
}

}  // namespace coprosim
