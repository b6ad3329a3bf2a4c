#include "eulerkit/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eulerkit/error.hpp"

namespace eulerkit::ivp {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out(y);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (const auto& [c, k] : terms) s += c * (*k)[i];
    out[i] += h * s;
  }
  return out;
}

}  // namespace

Result dopri5(const Rhs& f, double x0, State y0, double x1, const Options& opts, const Observer& observer) {
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol >= 0.0)) throw InvalidInput("IVP tolerances must be positive");
  if (!std::isfinite(x0) || !std::isfinite(x1)) throw InvalidInput("IVP interval must be finite");
  for (double v : y0) {
    if (!std::isfinite(v)) throw InvalidInput("IVP initial state must be finite");
  }
  Result res;
  res.y = std::move(y0);
  if (x0 == x1) return res;

  const double dir = x1 > x0 ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  double h = opts.initial_step > 0.0 ? opts.initial_step : span * 1e-3;
  double x = x0;
  State& y = res.y;
  State k1 = f(x, y);

  while (dir * (x1 - x) > 0.0) {
    if (res.accepted + res.rejected >= opts.max_steps) {
      throw NumericFailure("IVP step budget exhausted at x = " + std::to_string(x));
    }
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      throw StepSizeUnderflow("IVP step size underflow at x = " + std::to_string(x), x);
    }
    const bool last = h >= std::abs(x1 - x);
    const double hs = last ? x1 - x : dir * h;

    const State k2 = f(x + c2 * hs, axpy(y, hs, {{a21, &k1}}));
    const State k3 = f(x + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
    const State k4 = f(x + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = f(x + c5 * hs, axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = f(x + hs, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State yn = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = f(x + hs, yn);

    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(yn[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();

    if (err <= 1.0) {
      x = last ? x1 : x + hs;
      y = yn;
      k1 = k7;
      ++res.accepted;
      if (observer) observer(x, y);
    } else {
      ++res.rejected;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = std::abs(hs) * (err <= 1.0 ? factor : std::min(factor, 1.0));
  }
  return res;
}

}  // namespace eulerkit::ivp
