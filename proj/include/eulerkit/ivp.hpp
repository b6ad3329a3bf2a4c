#pragma once

#include <functional>
#include <vector>

namespace eulerkit::ivp {

using State = std::vector<double>;
using Rhs = std::function<State(double, const State&)>;
/// Called after every accepted step with the new abscissa and state.
using Observer = std::function<void(double, const State&)>;

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 picks a step from the interval length
  long max_steps = 1000000;
};

struct Result {
  State y;
  long accepted = 0;
  long rejected = 0;
};

/// Dormand-Prince 5(4) with local error control. x1 may lie on either side of x0.
Result dopri5(const Rhs& f, double x0, State y0, double x1, const Options& opts = {},
              const Observer& observer = {});

}  // namespace eulerkit::ivp
