#pragma once

#include "coprosim/config.hpp"
#include "coprosim/frame.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace coprosim {

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either series is constant. Throws std::invalid_argument on a length
/// mismatch or fewer than two points.
double spearman(std::span<double const> xs, std::span<double const> ys);

struct RunSummary
{
  double        slash_factor{0.0};
  std::uint64_t seed{0};
  std::size_t   periods{0};
  double        total_rewards{0.0};
  double        total_slashes{0.0};
  std::size_t   final_active_operators{0};
  /// Final coprocessor reputation vs cumulative coprocessor reward.
  double reputation_reward_spearman{0.0};
};

RunSummary     summarize(SimulationConfig const &config, std::span<MetricsFrame const> frames);
nlohmann::json summary_to_json(RunSummary const &summary);

struct SweepCell
{
  double                    slash_factor{0.0};
  std::uint64_t             seed{0};
  std::vector<MetricsFrame> frames;
  RunSummary                summary;
};

struct SweepTable
{
  std::vector<SweepCell> cells;  // s-major, seeds in the given order
};

/// One run per (s, seed) pair, at most `jobs` at a time. Cell order does not
/// depend on `jobs`. A failing run is rethrown as std::runtime_error naming
/// its cell.
SweepTable run_sweep(SimulationConfig const &base, std::span<double const> slash_factors,
                     std::span<std::uint64_t const> seeds, std::size_t jobs = 1);

/// Float formatting shared by every export: 12 significant digits (%.12g).
std::string format_value(double value);

// Long-format CSV. Run files have columns period,metric,entity,value; sweep
// files prepend s,seed. Scalar metrics leave entity empty. Per-frame metric
// order: active_operators, cumulative_reward_total, cumulative_slash_total,
// operator_reward*, coprocessor_load*, coprocessor_reward*,
// coprocessor_reputation*.

void write_metrics_csv(std::ostream &out, std::span<MetricsFrame const> frames);
void write_edges_csv(std::ostream &out, std::span<MetricsFrame const> frames);
void write_sweep_csv(std::ostream &out, SweepTable const &table);

/// File variants. Throw IoError naming the path on failure.
void export_csv(std::span<MetricsFrame const> frames, std::filesystem::path const &path);
void export_edges_csv(std::span<MetricsFrame const> frames, std::filesystem::path const &path);
void export_csv(SweepTable const &table, std::filesystem::path const &path);
void export_json(nlohmann::json const &doc, std::filesystem::path const &path);

}  // namespace coprosim
