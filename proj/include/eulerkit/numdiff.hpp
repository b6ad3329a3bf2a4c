#pragma once

// Central finite-difference stencils. Used wherever the library works with
// black-box evaluables and as independent derivative oracles in tests.

#include <algorithm>
#include <cmath>

namespace eulerkit::numdiff {

/// Value and first two derivatives of a scalar function at a point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Second-order central difference.
template <class F>
double central(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Fourth-order central difference for the first derivative.
template <class F>
double central4(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

/// Sixth-order jet: value plus first and second derivatives from a 7-point stencil.
template <class F>
Jet jet6(F&& f, double x, double h) {
  const double m3 = f(x - 3 * h), m2 = f(x - 2 * h), m1 = f(x - h);
  const double c = f(x);
  const double p1 = f(x + h), p2 = f(x + 2 * h), p3 = f(x + 3 * h);
  Jet j;
  j.value = c;
  j.d1 = (-m3 + 9 * m2 - 45 * m1 + 45 * p1 - 9 * p2 + p3) / (60.0 * h);
  j.d2 = (2 * m3 - 27 * m2 + 270 * m1 - 490 * c + 270 * p1 - 27 * p2 + 2 * p3) / (180.0 * h * h);
  return j;
}

/// Step scaled to the argument magnitude, about cbrt(eps) for central differences.
inline double scaled_step(double x, double base = 6e-6) {
  return base * std::max(1.0, std::abs(x));
}

}  // namespace eulerkit::numdiff
