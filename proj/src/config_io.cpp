#include "coprosim/config_io.hpp"

#include "coprosim/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace coprosim {

using nlohmann::json;

namespace {

// Visits every config field as (dotted path, reference).
template <class F>
void for_each_field(SimulationConfig &c, F &&f)
{
  f("n_operators", c.n_operators);
  f("n_coprocessors", c.n_coprocessors);
  f("periods", c.periods);
  f("tasks_per_period", c.tasks_per_period);
  f("slash_factor", c.slash_factor);
  f("min_collateral", c.min_collateral);
  f("rng_seed", c.rng_seed);
  f("deactivation_threshold", c.deactivation_threshold);
  f("success_gain", c.success_gain);
  f("headroom_factor", c.headroom_factor);
  f("operator_reputation_rate", c.operator_reputation_rate);
  f("delegated_operator_slash_fraction", c.delegated_operator_slash_fraction);
  f("collateral_rate", c.collateral_rate);
  f("load_decay", c.load_decay);
  f("bonus_gain", c.bonus_gain);
  f("slash_gain", c.slash_gain);
  f("unassigned_policy", c.unassigned_policy);

  f("tasks.difficulty_log_mean", c.tasks.difficulty_log_mean);
  f("tasks.difficulty_log_sd", c.tasks.difficulty_log_sd);
  f("tasks.reward_per_difficulty", c.tasks.reward_per_difficulty);
  f("tasks.reward_noise", c.tasks.reward_noise);
  f("tasks.penalty_ratio", c.tasks.penalty_ratio);
  f("tasks.risk_max", c.tasks.risk_max);

  f("population.operator_resources_min", c.population.operator_resources_min);
  f("population.operator_resources_max", c.population.operator_resources_max);
  f("population.operator_reputation_min", c.population.operator_reputation_min);
  f("population.operator_reputation_max", c.population.operator_reputation_max);
  f("population.initial_stake", c.population.initial_stake);
  f("population.coprocessor_resources_min", c.population.coprocessor_resources_min);
  f("population.coprocessor_resources_max", c.population.coprocessor_resources_max);
  f("population.initial_collateral", c.population.initial_collateral);
  f("population.gas_score_min", c.population.gas_score_min);
  f("population.gas_score_max", c.population.gas_score_max);

  f("curve.a", c.curve.a);
  f("curve.b", c.curve.b);
  f("curve.c", c.curve.c);
  f("curve.d", c.curve.d);
  f("curve.e", c.curve.e);
  f("curve.f", c.curve.f);
  f("curve.g", c.curve.g);
  f("curve.h", c.curve.h);
  f("curve.i", c.curve.i);

  f("gas.omega", c.gas.omega);
  f("gas.beta", c.gas.beta);
  f("gas.alpha", c.gas.alpha);
  f("gas.scaling", c.gas.scaling);

  f("auction.start_price_fraction", c.auction.start_price_fraction);
  f("auction.decrement", c.auction.decrement);
  f("auction.max_steps", c.auction.max_steps);
  f("auction.cost_base", c.auction.cost_base);
  f("auction.load_sensitivity", c.auction.load_sensitivity);
  f("auction.resource_floor", c.auction.resource_floor);
}

json::json_pointer pointer_of(std::string_view dotted)
{
  std::string ptr = "/";
  for (char ch : dotted)
  {
    ptr.push_back(ch == '.' ? '/' : ch);
  }
  return json::json_pointer(ptr);
}

void to_value(json &slot, double v) { slot = v; }
void to_value(json &slot, std::size_t v) { slot = v; }
void to_value(json &slot, Scaling v) { slot = std::string(to_string(v)); }
void to_value(json &slot, UnassignedPolicy v) { slot = std::string(to_string(v)); }

[[noreturn]] void type_error(std::string_view key, char const *expected)
{
  throw ConfigError("config key '" + std::string(key) + "' expects " + expected);
}

void from_value(json const &v, std::string_view key, double &out)
{
  if (!v.is_number())
  {
    type_error(key, "a number");
  }
  out = v.get<double>();
}

void from_value(json const &v, std::string_view key, std::size_t &out)
{
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
  {
    type_error(key, "a nonnegative integer");
  }
  out = v.get<std::size_t>();
}

void from_value(json const &v, std::string_view key, Scaling &out)
{
  if (!v.is_string())
  {
    type_error(key, "a string");
  }
  out = scaling_from_string(v.get<std::string>());
}

void from_value(json const &v, std::string_view key, UnassignedPolicy &out)
{
  if (!v.is_string())
  {
    type_error(key, "a string");
  }
  out = unassigned_policy_from_string(v.get<std::string>());
}

std::set<std::string> const &known_groups()
{
  static std::set<std::string> const groups{"tasks", "population", "curve", "gas", "auction"};
  return groups;
}

void collect_keys(json const &doc, std::string const &prefix, std::set<std::string> &keys)
{
  for (auto const &[key, value] : doc.items())
  {
    std::string const path = prefix.empty() ? key : prefix + "." + key;
    if (prefix.empty() && value.is_object() && known_groups().count(key) != 0)
    {
      collect_keys(value, path, keys);
    }
    else
    {
      keys.insert(path);
    }
  }
}

}  // namespace

json config_to_json(SimulationConfig const &config)
{
  SimulationConfig copy = config;
  json             doc  = json::object();
  for_each_field(copy, [&](std::string_view key, auto &field) { to_value(doc[pointer_of(key)], field); });
  return doc;
}

SimulationConfig config_from_json(json const &doc)
{
  if (!doc.is_object())
  {
    throw ConfigError("config document must be a JSON object");
  }

  std::set<std::string> present;
  collect_keys(doc, "", present);

  SimulationConfig      config;
  std::set<std::string> known;
  for_each_field(config, [&](std::string_view key, auto &field) {
    known.emplace(key);
    auto const ptr = pointer_of(key);
    if (doc.contains(ptr))
    {
      from_value(doc.at(ptr), key, field);
    }
  });

  for (auto const &key : present)
  {
    if (known.count(key) == 0)
    {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  config.validate();
  return config;
}

void apply_override(json &doc, std::string_view assignment)
{
  auto const eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
  {
    throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
  }
  std::string_view const key  = assignment.substr(0, eq);
  std::string const      text(assignment.substr(eq + 1));

  json value = json::parse(text, nullptr, false);
  if (value.is_discarded())
  {
    value = text;
  }
  if (!doc.is_object())
  {
    doc = json::object();
  }
  doc[pointer_of(key)] = std::move(value);
}

json read_config_document(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot read config file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc = json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded())
  {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON");
  }
  return doc;
}

SimulationConfig load_config(std::filesystem::path const &path,
                             std::vector<std::string> const &overrides, bool require_seed)
{
  json doc = path.empty() ? json::object() : read_config_document(path);
  for (auto const &o : overrides)
  {
    apply_override(doc, o);
  }
  if (require_seed && !(doc.is_object() && doc.contains("rng_seed")))
  {
    throw ConfigError("config must set rng_seed (in the file or via --seed)");
  }
  return config_from_json(doc);
}

}  // namespace coprosim
