#include "coprosim/types.hpp"

#include <algorithm>

namespace coprosim {

bool Task::valid() const noexcept
{
  return difficulty >= 0.0 && reward >= 0.0 && base_penalty >= 0.0 && risk_factor >= 0.0 &&
         risk_factor <= 1.0;
}

double success_probability(double capability, double reputation, Task const &task, double gain)
{
  double const completion  = logistic(gain * (capability - task.difficulty));
  double const attenuation = 1.0 - task.risk_factor * (1.0 - reputation);
  return std::clamp(completion * attenuation, 0.0, 1.0);
}

double success_probability(OperatorState const &op, Task const &task, double gain)
{
  return success_probability(op.resources, op.reputation, task, gain);
}

double success_probability(OperatorState const & /*op*/, CoprocessorState const &cop,
                           Task const &task, double gain)
{
  return success_probability(cop.resources, cop.reputation, task, gain);
}

}  // namespace coprosim
