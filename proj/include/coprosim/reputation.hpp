#pragma once

#include <cstdint>
#include <string_view>

namespace coprosim {

// Score-driven (GAS) reputation. The latent score f follows
//
//   f' = omega + beta * f + alpha * S(f) * d/df log p(y | f)
//
// with a Bernoulli observation density p(y = 1 | f) = logistic(f), so the
// score term is y - logistic(f). Reputation is logistic(f).

enum class Scaling
{
  identity,
  inverse_fisher,
};

std::string_view to_string(Scaling scaling) noexcept;
/// Throws ConfigError on an unknown name.
Scaling scaling_from_string(std::string_view name);

struct GasParams
{
  double  omega{0.0};
  double  beta{0.98};
  double  alpha{0.1};
  Scaling scaling{Scaling::identity};

  /// Requires |beta| < 1 and alpha >= 0.
  void validate() const;

  /// Bound on |f| under identity scaling: (|omega| + alpha) / (1 - |beta|).
  double stationary_bound() const noexcept;
};

struct GasState
{
  double        f{0.0};
  std::uint64_t t{0};
};

double score(bool y, double f) noexcept;

double scaling_factor(double f, Scaling scaling) noexcept;

/// One recursion step. Throws NumericError if the new score is not finite.
GasState gas_update(GasState const &state, bool y, GasParams const &params);

double reputation_of(GasState const &state) noexcept;

/// Exponential moving average toward the latest binary outcome.
double ema_update(double reputation, bool success, double rate) noexcept;

}  // namespace coprosim
