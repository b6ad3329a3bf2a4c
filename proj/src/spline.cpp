#include "eulerkit/spline.hpp"

#include <algorithm>
#include <cmath>

#include "eulerkit/error.hpp"

namespace eulerkit {

NaturalCubicSpline::NaturalCubicSpline(double t0, double t1, std::span<const double> values)
    : t0_(t0), t1_(t1), y_(values.begin(), values.end()) {
  const std::size_t n = y_.size();
  if (n < 3) throw InvalidInput("spline needs at least three samples");
  if (!(t1 > t0)) throw InvalidInput("spline interval must satisfy t0 < t1");
  h_ = (t1 - t0) / static_cast<double>(n - 1);

  // Thomas algorithm on the interior equations m[k-1] + 4 m[k] + m[k+1] = rhs.
  m_.assign(n, 0.0);
  const std::size_t inner = n - 2;
  std::vector<double> diag(inner, 4.0), rhs(inner);
  for (std::size_t k = 0; k < inner; ++k) {
    rhs[k] = 6.0 * (y_[k + 2] - 2.0 * y_[k + 1] + y_[k]) / (h_ * h_);
  }
  for (std::size_t k = 1; k < inner; ++k) {
    const double w = 1.0 / diag[k - 1];
    diag[k] -= w;
    rhs[k] -= w * rhs[k - 1];
  }
  m_[inner] = rhs[inner - 1] / diag[inner - 1];
  for (std::size_t k = inner - 1; k-- > 0;) {
    m_[k + 1] = (rhs[k] - m_[k + 2]) / diag[k];
  }
}

numdiff::Jet NaturalCubicSpline::operator()(double t) const {
  const std::size_t n = y_.size();
  double s = (t - t0_) / h_;
  auto k = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, static_cast<double>(n - 2)));
  const double a = t0_ + static_cast<double>(k) * h_;
  const double u = t - a;        // distance from left node
  const double v = h_ - u;       // distance to right node
  const double ml = m_[k], mr = m_[k + 1];
  const double yl = y_[k], yr = y_[k + 1];

  numdiff::Jet j;
  j.value = ml * v * v * v / (6 * h_) + mr * u * u * u / (6 * h_) + (yl / h_ - ml * h_ / 6) * v +
            (yr / h_ - mr * h_ / 6) * u;
  j.d1 = -ml * v * v / (2 * h_) + mr * u * u / (2 * h_) - (yl / h_ - ml * h_ / 6) +
         (yr / h_ - mr * h_ / 6);
  j.d2 = ml * v / h_ + mr * u / h_;
  return j;
}

}  // namespace eulerkit
