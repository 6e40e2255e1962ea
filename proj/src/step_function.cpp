#include "choicetree/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctree {

void validate(const StepFunction& f) {
  if (f.breakpoints.empty() || f.breakpoints.size() != f.values.size()) {
    throw std::invalid_argument("step function needs matching non-empty breakpoints and values");
  }
  if (f.breakpoints.front() != 0.0) {
    throw std::invalid_argument("step function must start at t = 0");
  }
  for (std::size_t i = 1; i < f.breakpoints.size(); ++i) {
    if (!(f.breakpoints[i] > f.breakpoints[i - 1])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
}

double step_eval(const StepFunction& f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("step_eval: t must be >= 0");
  validate(f);
  // last breakpoint <= t, so evaluation at a breakpoint is post-jump
  const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), t);
  const auto idx = static_cast<std::size_t>(it - f.breakpoints.begin()) - 1;
  return f.values[idx] + f.slope_between * (t - f.breakpoints[idx]);
}

void write_step_csv(std::ostream& os, const StepFunction& f, const char* t_name,
                    const char* value_name) {
  os << t_name << ',' << value_name << '\n';
  os.precision(17);
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    os << f.breakpoints[i] << ',' << f.values[i] << '\n';
  }
}

}  // namespace ctree
