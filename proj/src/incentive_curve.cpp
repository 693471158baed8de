#include "coprosim/incentive_curve.hpp"

#include "coprosim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coprosim {

void CurveParams::validate() const
{
  for (double v : {a, b, c, d, e, f, g, h, i})
  {
    if (!std::isfinite(v))
    {
      throw ConfigError("curve constants must be finite");
    }
  }
  if (!(b > 0.0 && b < f && f <= 1.0))
  {
    throw ConfigError("curve junctions must satisfy 0 < b < f <= 1");
  }
}

namespace {

double bell_branch(double x, CurveParams const &p)
{
  double const z = (x - p.b) / p.b;
  return p.a * std::exp(-z * z) - p.c;
}

double linear_branch(double x, CurveParams const &p)
{
  return p.d + (x - p.b) * p.e;
}

double quadratic_branch(double x, CurveParams const &p)
{
  return std::max(p.g * (x - p.h) * (x - p.h) + p.i, 0.0);
}

}  // namespace

double load_curve(double x, CurveParams const &p)
{
  if (!(x >= 0.0 && x <= 1.0))
  {
    throw std::domain_error("load outside [0, 1]: " + std::to_string(x));
  }
  if (x < p.b)
  {
    return bell_branch(x, p);
  }
  if (x <= p.f)
  {
    return linear_branch(x, p);
  }
  return quadratic_branch(x, p);
}

double load_curve_left_limit(double x, CurveParams const &p)
{
  if (x <= p.b)
  {
    return bell_branch(x, p);
  }
  if (x <= p.f)
  {
    return linear_branch(x, p);
  }
  return quadratic_branch(x, p);
}

CurveParams calibrate(CurveParams p)
{
  p.validate();
  p.d                  = p.a - p.c;
  double const at_knee = p.d + (p.f - p.b) * p.e;
  if (at_knee < 0.0)
  {
    throw CalibrationError("load curve discontinuous at x=f=" + std::to_string(p.f) +
                           ": middle branch reaches " + std::to_string(at_knee) +
                           " but the clamped branch cannot go below 0");
  }
  p.i = at_knee - p.g * (p.f - p.h) * (p.f - p.h);
  return p;
}

IncentiveMultipliers incentive_multipliers(double x, CurveParams const &p, double bonus_gain,
                                           double slash_gain)
{
  double const value = load_curve(x, p);
  return IncentiveMultipliers{bonus_gain * std::max(value, 0.0),
                              1.0 + slash_gain * std::max(-value, 0.0)};
}

}  // namespace coprosim
