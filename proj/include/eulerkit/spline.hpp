#pragma once

#include <span>
#include <vector>

#include "eulerkit/numdiff.hpp"

namespace eulerkit {

/// Natural cubic interpolant (zero second derivative at both ends) through
/// samples on a uniform grid.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(double t0, double t1, std::span<const double> values);

  numdiff::Jet operator()(double t) const;
  double t0() const { return t0_; }
  double t1() const { return t1_; }

 private:
  double t0_, t1_, h_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the nodes
};

}  // namespace eulerkit
