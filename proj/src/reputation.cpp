#include "coprosim/reputation.hpp"

#include "coprosim/errors.hpp"
#include "coprosim/types.hpp"

#include <cmath>
#include <string>

namespace coprosim {

std::string_view to_string(Scaling scaling) noexcept
{
  switch (scaling)
  {
  case Scaling::identity:
    return "identity";
  case Scaling::inverse_fisher:
    return "inverse_fisher";
  }
  return "identity";
}

Scaling scaling_from_string(std::string_view name)
{
  if (name == "identity")
  {
    return Scaling::identity;
  }
  if (name == "inverse_fisher")
  {
    return Scaling::inverse_fisher;
  }
  throw ConfigError("unknown gas scaling '" + std::string(name) + "'");
}

void GasParams::validate() const
{
  if (!(std::abs(beta) < 1.0))
  {
    throw ConfigError("gas.beta must satisfy |beta| < 1");
  }
  if (!(alpha >= 0.0))
  {
    throw ConfigError("gas.alpha must be nonnegative");
  }
  if (!std::isfinite(omega))
  {
    throw ConfigError("gas.omega must be finite");
  }
}

double GasParams::stationary_bound() const noexcept
{
  return (std::abs(omega) + alpha) / (1.0 - std::abs(beta));
}

double score(bool y, double f) noexcept
{
  return (y ? 1.0 : 0.0) - logistic(f);
}

double scaling_factor(double f, Scaling scaling) noexcept
{
  if (scaling == Scaling::identity)
  {
    return 1.0;
  }
  double const s = logistic(f);
  return 1.0 / (s * (1.0 - s));
}

GasState gas_update(GasState const &state, bool y, GasParams const &params)
{
  double const next = params.omega + params.beta * state.f +
                      params.alpha * scaling_factor(state.f, params.scaling) * score(y, state.f);
  if (!std::isfinite(next))
  {
    throw NumericError("gas_update produced a non-finite score at t=" + std::to_string(state.t));
  }
  return GasState{next, state.t + 1};
}

double reputation_of(GasState const &state) noexcept
{
  return logistic(state.f);
}

double ema_update(double reputation, bool success, double rate) noexcept
{
  return reputation + rate * ((success ? 1.0 : 0.0) - reputation);
}

}  // namespace coprosim
