#include "eulerkit/linode.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eulerkit/error.hpp"
#include "eulerkit/quadrature.hpp"

namespace eulerkit::linode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double falling(int j, int i) {
  double r = 1.0;
  for (int q = 0; q < i; ++q) r *= j - q;
  return r;
}

// h * e^{r x}, going through logarithms when the exponential alone would overflow.
Complex scaled_exp(Complex h, Complex r, double x) {
  const double lg = r.real() * x;
  if (std::abs(lg) < 700.0) return h * std::exp(r * x);
  if (h == Complex(0.0)) return 0.0;
  return std::polar(std::exp(std::log(std::abs(h)) + lg), std::arg(h) + r.imag() * x);
}

std::string condition_label(const Condition& c) {
  std::ostringstream os;
  os.precision(17);
  os << 'y';
  if (c.order <= 3) {
    os << std::string(c.order, '\'');
  } else {
    os << "^(" << c.order << ')';
  }
  os << '(' << c.at << ")=" << c.equals;
  return os.str();
}

Evaluation finish(std::vector<double> values) {
  Evaluation e;
  for (double& v : values) {
    if (!std::isfinite(v)) {
      e.overflow = true;
      v = kInf;
    }
  }
  e.derivatives = std::move(values);
  return e;
}

}  // namespace

ConstCoeffODE::ConstCoeffODE(std::vector<double> coeffs, Forcing forcing)
    : coeffs_(std::move(coeffs)), forcing_(std::move(forcing)) {
  if (coeffs_.size() < 2) throw InvalidInput("an ODE needs order >= 1");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidInput("ODE coefficients must be finite");
  }
  if (coeffs_.back() == 0.0) throw InvalidInput("highest-order ODE coefficient must be nonzero");
}

GeneralSolution::GeneralSolution(std::vector<polyroots::RootCluster> clusters)
    : clusters_(std::move(clusters)) {
  if (clusters_.empty()) throw InvalidInput("a general solution needs at least one mode");
  std::sort(clusters_.begin(), clusters_.end(), [](const auto& l, const auto& r) {
    if (l.value.real() != r.value.real()) return l.value.real() < r.value.real();
    return l.value.imag() < r.value.imag();
  });
  for (const auto& c : clusters_) {
    if (c.multiplicity < 1) throw InvalidInput("mode multiplicity must be positive");
    if (!std::isfinite(c.value.real()) || !std::isfinite(c.value.imag())) {
      throw InvalidInput("mode roots must be finite");
    }
    if (c.value.imag() == 0.0) {
      for (int j = 0; j < c.multiplicity; ++j) real_form_.push_back({c.value.real(), 0.0, j, false});
      continue;
    }
    const bool paired = std::any_of(clusters_.begin(), clusters_.end(), [&](const auto& o) {
      return o.value == std::conj(c.value) && o.multiplicity == c.multiplicity;
    });
    if (!paired) throw InvalidInput("complex modes must come in conjugate pairs");
    if (c.value.imag() < 0.0) continue;
    for (int j = 0; j < c.multiplicity; ++j) {
      real_form_.push_back({c.value.real(), c.value.imag(), j, false});
      real_form_.push_back({c.value.real(), c.value.imag(), j, true});
    }
  }
}

std::vector<Mode> GeneralSolution::modes(std::span<const double> constants) const {
  if (static_cast<int>(constants.size()) != free_constants()) {
    throw InvalidInput("expected " + std::to_string(free_constants()) + " constants, got " +
                       std::to_string(constants.size()));
  }
  std::vector<Mode> out;
  for (const auto& c : clusters_) {
    Mode m{c.value, std::vector<Complex>(c.multiplicity, 0.0)};
    for (int j = 0; j < c.multiplicity; ++j) {
      if (c.value.imag() == 0.0) {
        m.poly[j] = constants[find_basis(c.value.real(), 0.0, j, false, 0.0)];
        continue;
      }
      const double b = std::abs(c.value.imag());
      const double cc = constants[find_basis(c.value.real(), b, j, false, 0.0)];
      const double cs = constants[find_basis(c.value.real(), b, j, true, 0.0)];
      // cc cos + cs sin = Re[(cc - i cs) e^{i b x}]
      m.poly[j] = c.value.imag() > 0.0 ? Complex(cc, -cs) / 2.0 : Complex(cc, cs) / 2.0;
    }
    out.push_back(std::move(m));
  }
  return out;
}

int GeneralSolution::find_basis(double a, double b, int power, bool sine, double tol) const {
  for (std::size_t i = 0; i < real_form_.size(); ++i) {
    const auto& m = real_form_[i];
    if (m.power == power && m.sine == sine && std::abs(m.a - a) <= tol && std::abs(m.b - b) <= tol) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<std::vector<double>> GeneralSolution::basis_derivatives(double x, int up_to_order) const {
  if (up_to_order < 0) throw InvalidInput("derivative order must be non-negative");
  std::vector<std::vector<double>> out;
  for (const auto& m : real_form_) {
    const double rho = std::hypot(m.a, m.b);
    const double theta = std::atan2(m.b, m.a);
    // Derivatives of e^{ax} cos(bx) (or sin): rho^l e^{ax} cos(bx + l theta).
    std::vector<double> e(up_to_order + 1);
    const double ex = std::exp(m.a * x);
    for (int l = 0; l <= up_to_order; ++l) {
      if (m.b == 0.0) {
        e[l] = std::pow(m.a, l) * ex;
      } else {
        const double phase = m.b * x + l * theta;
        e[l] = std::pow(rho, l) * ex * (m.sine ? std::sin(phase) : std::cos(phase));
      }
    }
    std::vector<double> d(up_to_order + 1);
    for (int order = 0; order <= up_to_order; ++order) {
      double acc = 0.0;
      for (int i = 0; i <= std::min(order, m.power); ++i) {
        acc += binomial(order, i) * falling(m.power, i) * std::pow(x, m.power - i) * e[order - i];
      }
      d[order] = acc;
    }
    out.push_back(std::move(d));
  }
  return out;
}

polyroots::RealPolynomial characteristic_polynomial(const ConstCoeffODE& ode) {
  return polyroots::RealPolynomial(std::vector<double>(ode.coeffs().begin(), ode.coeffs().end()));
}

GeneralSolution solve_homogeneous(const ConstCoeffODE& ode, double root_tol) {
  if (!ode.homogeneous()) throw InvalidInput("solve_homogeneous needs an equation without forcing");
  return GeneralSolution(polyroots::find_roots(characteristic_polynomial(ode), root_tol));
}

ParticularSolution fit_constants(const GeneralSolution& gs, std::span<const Condition> conditions) {
  const int n = gs.free_constants();
  if (static_cast<int>(conditions.size()) != n) {
    throw InvalidInput("need " + std::to_string(n) + " conditions, got " +
                       std::to_string(conditions.size()));
  }
  Eigen::MatrixXd M(n, n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const auto& c = conditions[i];
    if (c.order < 0) throw InvalidInput("condition derivative order must be non-negative");
    if (!std::isfinite(c.at) || !std::isfinite(c.equals)) throw InvalidInput("conditions must be finite");
    const auto d = gs.basis_derivatives(c.at, c.order);
    for (int j = 0; j < n; ++j) M(i, j) = d[j][c.order];
    rhs(i) = c.equals;
  }
  if (!M.allFinite()) throw NumericFailure("condition matrix overflowed");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cond = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : kInf;
  if (!(cond < 1e12)) {
    const Eigen::VectorXd u = svd.matrixU().col(n - 1).cwiseAbs();
    std::vector<int> offending;
    for (int i = 0; i < n; ++i) {
      if (u(i) >= 0.1 * u.maxCoeff()) offending.push_back(i);
    }
    std::string names;
    for (int i : offending) names += (names.empty() ? "" : ", ") + condition_label(conditions[i]);
    throw SingularSystem("condition matrix is singular (condition " + std::to_string(cond) +
                             "); dependent conditions: " + names,
                         offending, cond);
  }
  const Eigen::VectorXd c = svd.solve(rhs);

  std::string provenance;
  for (int i = 0; i < n; ++i) {
    const double got = M.row(i).dot(c);
    const double scale = std::max({std::abs(conditions[i].equals), (M.row(i).transpose().cwiseAbs().array() * c.cwiseAbs().array()).sum(),
                                   std::numeric_limits<double>::min()});
    if (std::abs(got - conditions[i].equals) > 1e-9 * scale) {
      throw NumericFailure("fitted constants miss condition " + condition_label(conditions[i]));
    }
    provenance += (provenance.empty() ? "" : "; ") + condition_label(conditions[i]);
  }
  return {gs, std::vector<double>(c.data(), c.data() + n), provenance, cond};
}

Evaluation evaluate_modes(std::span<const Mode> modes, double x, int up_to_order) {
  if (up_to_order < 0) throw InvalidInput("derivative order must be non-negative");
  std::vector<Complex> acc(up_to_order + 1, 0.0);
  for (const auto& m : modes) {
    // d/dx [e^{rx} Q(x)] = e^{rx} (r Q + Q').
    std::vector<Complex> q(m.poly);
    for (int order = 0; order <= up_to_order; ++order) {
      Complex h = 0.0;
      for (std::size_t i = q.size(); i-- > 0;) h = h * x + q[i];
      acc[order] += scaled_exp(h, m.root, x);
      for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = m.root * q[i] + (i + 1 < q.size() ? static_cast<double>(i + 1) * q[i + 1] : Complex(0.0));
      }
    }
  }
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].real();
  return finish(std::move(out));
}

Evaluation evaluate(const GeneralSolution& gs, std::span<const double> constants, double x, int up_to_order) {
  const auto modes = gs.modes(constants);
  return evaluate_modes(modes, x, up_to_order);
}

Evaluation evaluate(const ParticularSolution& sol, double x, int up_to_order) {
  return evaluate(sol.general, sol.constants, x, up_to_order);
}

Evaluation evaluate_real_form(const GeneralSolution& gs, std::span<const double> constants, double x,
                              int up_to_order) {
  if (static_cast<int>(constants.size()) != gs.free_constants()) {
    throw InvalidInput("constant count does not match the solution basis");
  }
  const auto d = gs.basis_derivatives(x, up_to_order);
  std::vector<double> out(up_to_order + 1, 0.0);
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (constants[j] == 0.0) continue;
    for (int m = 0; m <= up_to_order; ++m) out[m] += constants[j] * d[j][m];
  }
  return finish(std::move(out));
}

double residual(const ConstCoeffODE& ode, const ParticularSolution& sol, std::span<const double> grid) {
  if (grid.empty()) throw InvalidInput("residual needs a nonempty grid");
  const auto c = ode.coeffs();
  double worst = 0.0;
  for (double x : grid) {
    const auto e = evaluate(sol, x, ode.order());
    if (e.overflow) return kInf;
    double r = 0.0;
    for (int k = 0; k <= ode.order(); ++k) r += c[k] * e.derivatives[k];
    if (!ode.homogeneous()) r -= ode.forcing()(x);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double beam_b(double K, double l) {
  const double u = l / K;
  return (std::sin(u) + std::sinh(u)) / (std::cos(u) + std::cosh(u));
}

ParticularSolution solve_beam(double K, double l, double A) {
  if (!(K > 0.0) || !(l > 0.0) || !std::isfinite(K) || !std::isfinite(l)) {
    throw InvalidInput("beam needs finite K > 0 and l > 0");
  }
  if (!std::isfinite(A)) throw InvalidInput("beam amplitude must be finite");
  const ConstCoeffODE ode({-1.0, 0.0, 0.0, 0.0, K * K * K * K});
  const std::vector<Condition> conds{{2, 0.0, 0.0}, {3, 0.0, 0.0}, {0, 0.0, 2.0 * A}, {0, l, 0.0}};
  auto sol = fit_constants(solve_homogeneous(ode), conds);
  sol.provenance = "cantilever K^4 y''''=y: " + sol.provenance;
  return sol;
}

Multipliers euler_multipliers(double C, double B, double A) {
  if (C == 0.0 || !std::isfinite(C) || !std::isfinite(B) || !std::isfinite(A)) {
    throw InvalidInput("reduction needs finite coefficients with C != 0");
  }
  const Complex s = std::sqrt(Complex(B * B - 4.0 * A * C, 0.0));
  const Complex q = std::abs(B + s) >= std::abs(B - s) ? (B + s) / 2.0 : (B - s) / 2.0;
  Complex r1 = q / C;
  Complex r2 = q == Complex(0.0) ? Complex(0.0) : A / q;
  if (r2.real() > r1.real() || (r2.real() == r1.real() && r2.imag() > r1.imag())) std::swap(r1, r2);
  return {r1, B / C - r1};
}

double reduce_nonhomogeneous_2nd(double C, double B, double A, const Forcing& X, double x0, double y0,
                                 double yp0, double x, const ReductionOptions& opts) {
  if (!std::isfinite(x0) || !std::isfinite(x) || !std::isfinite(y0) || !std::isfinite(yp0)) {
    throw InvalidInput("reduction needs finite initial data and endpoint");
  }
  const auto [alpha, beta] = euler_multipliers(C, B, A);
  quad::Options qo;
  qo.abs_tol = opts.abs_tol;
  qo.rel_tol = opts.rel_tol;
  qo.max_subdivisions = opts.max_subdivisions;

  // A' y + C y' = w with w' + alpha w = X, A' = B - alpha C.
  const Complex w0 = (B - alpha * C) * y0 + C * yp0;
  auto w = [&](double s) -> Complex {
    Complex v = w0 * std::exp(-alpha * (s - x0));
    if (X) {
      v += quad::integrate([&](double u) { return std::exp(-alpha * (s - u)) * X(u); }, x0, s, qo).value;
    }
    return v;
  };
  const Complex outer =
      quad::integrate([&](double s) { return std::exp(-beta * (x - s)) * w(s); }, x0, x, qo).value;
  const Complex y = std::exp(-beta * (x - x0)) * y0 + outer / C;
  if (!std::isfinite(y.real())) throw NumericFailure("reduction produced a non-finite value");
  return y.real();
}

OscillatorResponse forced_oscillator(double M, double K, double F, double w_a, double t) {
  if (!(M > 0.0) || !(K > 0.0)) throw InvalidInput("oscillator needs M > 0 and K > 0");
  if (!std::isfinite(F) || !std::isfinite(w_a) || !std::isfinite(t) || !std::isfinite(M) || !std::isfinite(K)) {
    throw InvalidInput("oscillator parameters must be finite");
  }
  OscillatorResponse r;
  const double w = std::sqrt(K / M);
  r.natural_frequency = w;
  // sin(w_a t) = sign(w_a) sin(|w_a| t)
  const double Fe = w_a < 0.0 ? -F : F;
  const double wa = std::abs(w_a);
  if (std::abs(wa - w) / w < kResonanceThreshold) {
    r.resonant = true;
    r.steady_amplitude = F == 0.0 ? 0.0 : kInf;
    r.value = Fe / (2.0 * M * w * w) * (std::sin(w * t) - w * t * std::cos(w * t));
    return r;
  }
  const double a = Fe / (K - M * wa * wa);
  r.steady_amplitude = std::abs(a);
  r.value = a * (std::sin(wa * t) - (wa / w) * std::sin(w * t));
  return r;
}

}  // namespace eulerkit::linode
