#pragma once

#include <ostream>
#include <vector>

namespace ctree {

/// Cadlag record: value[i] holds on [breakpoints[i], breakpoints[i+1]),
/// growing at `slope_between` per unit time after each breakpoint.
struct StepFunction {
  std::vector<double> breakpoints;  // strictly increasing, starts at 0
  std::vector<double> values;
  double slope_between = 0.0;
};

/// Throws std::invalid_argument if the record is malformed.
void validate(const StepFunction& f);

double step_eval(const StepFunction& f, double t);

/// CSV with header `t,value`, one row per breakpoint.
void write_step_csv(std::ostream& os, const StepFunction& f, const char* t_name = "t",
                    const char* value_name = "value");

}  // namespace ctree
