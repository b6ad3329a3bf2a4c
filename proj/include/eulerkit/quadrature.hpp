#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature for real- and complex-valued
// integrands, plus a variant for integrands with algebraic endpoint
// singularities (x-a)^alpha (b-x)^beta.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "eulerkit/error.hpp"

namespace eulerkit::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

namespace detail {

// Kronrod abscissae (positive half, descending) and weights; Gauss weights on
// the even-indexed Kronrod nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
};

template <class T, class F>
Segment<T> kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

template <class T>
struct WorstFirst {
  bool operator()(const Segment<T>& l, const Segment<T>& r) const {
    if (l.error != r.error) return l.error < r.error;
    return l.a > r.a;  // deterministic tie-break
  }
};

}  // namespace detail

/// Integrate f over [a, b]. Never throws on non-convergence; inspect
/// Result::converged. Reversed bounds give the negated integral.
template <class F>
auto gauss_kronrod(F&& f, double a, double b, const Options& opts = {})
    -> Result<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b) return out;
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::vector<detail::Segment<T>> heap;
  const detail::WorstFirst<T> cmp;
  heap.push_back(detail::kronrod15<T>(f, a, b));
  out.evaluations = 15;
  T total = heap.front().value;
  double total_err = heap.front().error;

  auto done = [&] {
    return total_err <= std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(total));
  };

  while (!done()) {
    if (out.subdivisions >= opts.max_subdivisions) {
      out.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const auto worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::push_heap(heap.begin(), heap.end(), cmp);
      out.converged = false;
      break;
    }
    heap.back() = detail::kronrod15<T>(f, worst.a, mid);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(detail::kronrod15<T>(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), cmp);
    out.evaluations += 30;
    ++out.subdivisions;

    // Full re-sum keeps the totals free of running-update drift.
    total = T{};
    total_err = 0.0;
    for (const auto& s : heap) {
      total += s.value;
      total_err += s.error;
    }
  }
  out.value = total * sign;
  out.error = total_err;
  if (!std::isfinite(detail::magnitude(out.value))) out.converged = false;
  return out;
}

/// Like gauss_kronrod, but throws QuadratureFailure when the tolerance is missed.
template <class F>
auto integrate(F&& f, double a, double b, const Options& opts = {}) {
  auto r = gauss_kronrod(std::forward<F>(f), a, b, opts);
  if (!r.converged) {
    throw QuadratureFailure("adaptive quadrature did not reach tolerance", r.error);
  }
  return r;
}

/// Integral of (x-a)^alpha (b-x)^beta g(x) over [a, b] with alpha, beta > -1
/// and g smooth. Each half-interval carrying a negative exponent is mapped by
/// x - a = u^{1/(alpha+1)} (resp. b - x = w^{1/(beta+1)}), which turns the
/// weight times dx into a constant multiple of du.
template <class G>
Result<double> integrate_endpoint_power(G&& g, double a, double b, double alpha, double beta,
                                        const Options& opts = {}) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw InvalidInput("endpoint exponents must exceed -1");
  }
  if (!(a < b)) throw InvalidInput("integrate_endpoint_power requires a < b");
  const double mid = 0.5 * (a + b);
  Options half = opts;
  half.abs_tol = 0.5 * opts.abs_tol;

  Result<double> left;
  if (alpha < 0.0) {
    const double e = alpha + 1.0;
    const double upper = std::pow(mid - a, e);
    left = gauss_kronrod(
        [&](double u) {
          const double x = a + std::pow(u, 1.0 / e);
          return std::pow(b - x, beta) * g(x) / e;
        },
        0.0, upper, half);
  } else {
    left = gauss_kronrod(
        [&](double x) { return std::pow(x - a, alpha) * std::pow(b - x, beta) * g(x); }, a, mid, half);
  }

  Result<double> right;
  if (beta < 0.0) {
    const double e = beta + 1.0;
    const double upper = std::pow(b - mid, e);
    right = gauss_kronrod(
        [&](double w) {
          const double x = b - std::pow(w, 1.0 / e);
          return std::pow(x - a, alpha) * g(x) / e;
        },
        0.0, upper, half);
  } else {
    right = gauss_kronrod(
        [&](double x) { return std::pow(x - a, alpha) * std::pow(b - x, beta) * g(x); }, mid, b, half);
  }

  Result<double> out;
  out.value = left.value + right.value;
  out.error = left.error + right.error;
  out.evaluations = left.evaluations + right.evaluations;
  out.subdivisions = left.subdivisions + right.subdivisions;
  out.converged = left.converged && right.converged;
  return out;
}

}  // namespace eulerkit::quad
