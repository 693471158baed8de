// coprosim command-line entry point: run, sweep, curve.

#include "coprosim/config_io.hpp"
#include "coprosim/engine.hpp"
#include "coprosim/errors.hpp"
#include "coprosim/incentive_curve.hpp"
#include "coprosim/metrics.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace coprosim;

namespace {

enum ExitCode : int
{
  kOk          = 0,
  kConfigError = 1,
  kRuntimeError = 2,
  kIoError     = 3,
};

void ensure_dir(fs::path const &dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
  {
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
}

int cmd_run(fs::path const &config_path, std::vector<std::string> overrides,
            std::optional<std::uint64_t> seed, fs::path const &out_dir)
{
  if (seed)
  {
    overrides.push_back("rng_seed=" + std::to_string(*seed));
  }
  auto const config = load_config(config_path, overrides, /*require_seed=*/true);
  auto const frames = run_simulation(config);

  ensure_dir(out_dir);
  export_csv(frames, out_dir / "metrics.csv");
  export_edges_csv(frames, out_dir / "edges.csv");
  auto doc      = summary_to_json(summarize(config, frames));
  doc["config"] = config_to_json(config);
  export_json(doc, out_dir / "summary.json");
  return kOk;
}

int cmd_sweep(fs::path const &config_path, std::vector<std::string> const &overrides,
              std::vector<double> const &slash_factors, std::vector<std::uint64_t> const &seeds,
              std::size_t jobs, fs::path const &out_dir)
{
  if (slash_factors.empty() || seeds.empty())
  {
    throw ConfigError("sweep needs at least one slash factor and one seed");
  }
  auto const config = load_config(config_path, overrides, /*require_seed=*/false);
  auto const table  = run_sweep(config, slash_factors, seeds, jobs);

  ensure_dir(out_dir);
  export_csv(table, out_dir / "sweep.csv");
  auto runs = nlohmann::json::array();
  for (auto const &cell : table.cells)
  {
    runs.push_back(summary_to_json(cell.summary));
  }
  export_json(nlohmann::json{{"runs", runs}, {"config", config_to_json(config)}},
              out_dir / "summary.json");
  return kOk;
}

int cmd_curve(std::vector<std::string> const &params, std::size_t samples, fs::path const &out)
{
  if (samples < 2)
  {
    throw ConfigError("--samples must be at least 2");
  }
  CurveParams curve;
  std::map<std::string, double *> const slots{
      {"a", &curve.a}, {"b", &curve.b}, {"c", &curve.c}, {"d", &curve.d}, {"e", &curve.e},
      {"f", &curve.f}, {"g", &curve.g}, {"h", &curve.h}, {"i", &curve.i}};
  for (auto const &kv : params)
  {
    auto const eq = kv.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("curve parameter '" + kv + "' is not of the form key=value");
    }
    std::string key = kv.substr(0, eq);
    for (auto &ch : key)
    {
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    auto it = slots.find(key);
    if (it == slots.end())
    {
      throw ConfigError("unknown curve parameter '" + kv.substr(0, eq) + "'");
    }
    try
    {
      *it->second = std::stod(kv.substr(eq + 1));
    }
    catch (std::exception const &)
    {
      throw ConfigError("curve parameter '" + kv + "' has a non-numeric value");
    }
  }
  curve = calibrate(curve);

  if (out.has_parent_path())
  {
    ensure_dir(out.parent_path());
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file)
  {
    throw IoError("cannot open '" + out.string() + "' for writing");
  }
  file << "x,value\n";
  for (std::size_t k = 0; k < samples; ++k)
  {
    double const x = k + 1 == samples ? 1.0 : static_cast<double>(k) / static_cast<double>(samples - 1);
    file << format_value(x) << ',' << format_value(load_curve(x, curve)) << '\n';
  }
  file.flush();
  if (!file)
  {
    throw IoError("write to '" + out.string() + "' failed");
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Operator/coprocessor task-delegation simulator"};
  app.require_subcommand(1);

  std::string                  config_path;
  std::string                  out_dir = "out";
  std::vector<std::string>     overrides;
  std::optional<std::uint64_t> seed;
  std::vector<double>          slash_factors{0.01, 0.03, 0.1, 0.2, 0.5};
  std::vector<std::uint64_t>   seeds;
  std::size_t                  jobs = 1;
  std::vector<std::string>     curve_params;
  std::size_t                  samples  = 101;
  std::string                  curve_out = "curve.csv";

  auto *run = app.add_subcommand("run", "Run one simulation and export its metrics");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "RNG seed (overrides the config file)");
  run->add_option("--override", overrides, "Dotted key=value override, e.g. gas.beta=0.9");

  auto *sweep = app.add_subcommand("sweep", "Run a slash-factor x seed grid");
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--slash-factors", slash_factors, "Slash factors to sweep")->delimiter(',');
  sweep->add_option("--seeds", seeds, "Seeds, paired across slash factors")
      ->delimiter(',')
      ->required();
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--override", overrides, "Dotted key=value override");

  auto *curve = app.add_subcommand("curve", "Sample the calibrated load curve as CSV");
  curve->add_option("--params", curve_params, "Curve constants as key=value (a..i)");
  curve->add_option("--samples", samples, "Number of evenly spaced samples on [0, 1]");
  curve->add_option("--out", curve_out, "Output CSV path");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try
  {
    if (*run)
    {
      return cmd_run(config_path, overrides, seed, out_dir);
    }
    if (*sweep)
    {
      return cmd_sweep(config_path, overrides, slash_factors, seeds, jobs, out_dir);
    }
    return cmd_curve(curve_params, samples, curve_out);
  }
  catch (IoError const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
  catch (ConfigError const &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  catch (CalibrationError const &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  catch (nlohmann::json::exception const &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
