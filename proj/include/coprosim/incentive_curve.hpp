#pragma once

namespace coprosim {

/// Constants of the piecewise load curve
///
///   f(x) = a * exp(-((x - b) / b)^2) - c        x < b
///          d + (x - b) * e                      b <= x <= f
///          max(g * (x - h)^2 + i, 0)            x > f
///
/// `b` and `f` are the two junction loads. `d` and `i` are normally derived
/// by calibrate().
struct CurveParams
{
  double a{1.0};
  double b{0.3};
  double c{0.2};
  double d{0.8};
  double e{-1.0};
  double f{0.7};
  double g{6.0};
  double h{0.95};
  double i{0.025};

  /// Requires 0 < b < f <= 1 and finite constants.
  void validate() const;
};

/// Throws std::domain_error for x outside [0, 1].
double load_curve(double x, CurveParams const &p);

/// Returns `p` with d and i set for continuity at both junctions. Throws
/// CalibrationError when the middle branch is negative at x = f, where the
/// clamped third branch cannot follow it.
CurveParams calibrate(CurveParams p);

/// Left limit of the curve at `x` (the branch that applies just below x).
double load_curve_left_limit(double x, CurveParams const &p);

struct IncentiveMultipliers
{
  double reward_bonus{0.0};     // >= 0
  double slash_amplifier{1.0};  // >= 1
};

/// Positive curve values pay a bonus, negative values amplify slashing.
IncentiveMultipliers incentive_multipliers(double x, CurveParams const &p, double bonus_gain = 1.0,
                                           double slash_gain = 1.0);

}  // namespace coprosim
