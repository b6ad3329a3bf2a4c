#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eulerkit/polyroots.hpp"

namespace eulerkit::linode {

using Complex = std::complex<double>;
using Forcing = std::function<double(double)>;

/// sum_k coeffs[k] * y^(k) = X(x). Coefficients are listed from y upward.
class ConstCoeffODE {
 public:
  explicit ConstCoeffODE(std::vector<double> coeffs, Forcing forcing = {});

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  const Forcing& forcing() const noexcept { return forcing_; }
  bool homogeneous() const noexcept { return !forcing_; }

 private:
  std::vector<double> coeffs_;
  Forcing forcing_;
};

/// x^power * e^{a x} * cos(b x), or sin(b x) when `sine` is set.
struct RealMode {
  double a = 0.0;
  double b = 0.0;
  int power = 0;
  bool sine = false;
};

/// e^{root x} * (poly[0] + poly[1] x + ...).
struct Mode {
  Complex root;
  std::vector<Complex> poly;
};

/// Derivatives y, y', ..., with an explicit flag when the exponential overflowed.
struct Evaluation {
  std::vector<double> derivatives;
  bool overflow = false;
};

/// Span of the exponential modes of a homogeneous equation. Constants are
/// indexed by the real basis `real_form()`.
class GeneralSolution {
 public:
  /// Clusters must be closed under conjugation.
  explicit GeneralSolution(std::vector<polyroots::RootCluster> clusters);

  int free_constants() const noexcept { return static_cast<int>(real_form_.size()); }
  const std::vector<polyroots::RootCluster>& clusters() const noexcept { return clusters_; }
  const std::vector<RealMode>& real_form() const noexcept { return real_form_; }

  /// Complex modes with the real constants folded into their polynomials.
  std::vector<Mode> modes(std::span<const double> constants) const;

  /// out[i][m] is the m-th derivative of basis function i at x.
  std::vector<std::vector<double>> basis_derivatives(double x, int up_to_order) const;

  /// Index of the basis function matching (a, b, power, sine) to within `tol`, or -1.
  int find_basis(double a, double b, int power, bool sine, double tol = 1e-9) const;

 private:
  std::vector<polyroots::RootCluster> clusters_;
  std::vector<RealMode> real_form_;
};

struct ParticularSolution {
  GeneralSolution general;
  std::vector<double> constants;
  std::string provenance;
  double condition_number = 1.0;
};

/// A value or derivative condition y^(order)(at) = equals.
struct Condition {
  int order = 0;
  double at = 0.0;
  double equals = 0.0;
};

polyroots::RealPolynomial characteristic_polynomial(const ConstCoeffODE& ode);

GeneralSolution solve_homogeneous(const ConstCoeffODE& ode, double root_tol = 1e-12);

/// Throws SingularSystem when the condition matrix is numerically singular.
ParticularSolution fit_constants(const GeneralSolution& gs, std::span<const Condition> conditions);

/// Analytic derivatives through the complex modes (Horner on each mode polynomial).
Evaluation evaluate(const GeneralSolution& gs, std::span<const double> constants, double x,
                    int up_to_order);
Evaluation evaluate(const ParticularSolution& sol, double x, int up_to_order);
Evaluation evaluate_modes(std::span<const Mode> modes, double x, int up_to_order);

/// Same quantity through the real cos/sin basis.
Evaluation evaluate_real_form(const GeneralSolution& gs, std::span<const double> constants, double x,
                              int up_to_order);

/// max over grid of |sum_k coeffs[k] y^(k)(x) - X(x)|.
double residual(const ConstCoeffODE& ode, const ParticularSolution& sol, std::span<const double> grid);

/// Cantilever K^4 y'''' = y with y''(0) = y'''(0) = 0, y(0) = 2A and y(l) = 0.
ParticularSolution solve_beam(double K, double l, double A);

/// b = (sin l/K + sinh l/K) / (cos l/K + cosh l/K).
double beam_b(double K, double l);

/// Exponential multipliers for C y'' + B y' + A y = X: alpha solves A - B alpha + C alpha^2 = 0,
/// beta = B/C - alpha. These are the negated characteristic roots.
struct Multipliers {
  Complex alpha;
  Complex beta;
};
Multipliers euler_multipliers(double C, double B, double A);

struct ReductionOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
};

/// y(x) for C y'' + B y' + A y = X with y(x0) = y0, y'(x0) = yp0, by two nested
/// integrating-factor quadratures.
double reduce_nonhomogeneous_2nd(double C, double B, double A, const Forcing& X, double x0, double y0,
                                 double yp0, double x, const ReductionOptions& opts = {});

struct OscillatorResponse {
  double value = 0.0;
  double steady_amplitude = 0.0;
  double natural_frequency = 0.0;
  bool resonant = false;
};

inline constexpr double kResonanceThreshold = 1e-8;

/// M x'' + K x = F sin(w_a t), x(0) = x'(0) = 0.
OscillatorResponse forced_oscillator(double M, double K, double F, double w_a, double t);

}  // namespace eulerkit::linode
