#pragma once

// Roots of real-coefficient polynomials, grouped into roots-with-multiplicity.

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace eulerkit::polyroots {

using Complex = std::complex<double>;

/// Real polynomial stored with ascending powers: coeffs[k] multiplies r^k.
/// Trailing zero coefficients are trimmed; the zero polynomial is rejected.
class RealPolynomial {
 public:
  explicit RealPolynomial(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double leading() const { return coeffs_.back(); }

  /// Copy divided through by the leading coefficient.
  RealPolynomial monic() const;

  double operator()(double x) const;
  Complex operator()(Complex z) const;

  /// Taylor coefficients about z: entry j is p^{(j)}(z) / j!.
  std::vector<Complex> taylor(Complex z) const;

  /// Rounding-error scale of the Taylor coefficients about z:
  /// entry j is sum_i |a_i| C(i, j) |z|^{i-j}.
  std::vector<double> taylor_bound(Complex z) const;

 private:
  std::vector<double> coeffs_;
};

struct RootCluster {
  Complex value;
  int multiplicity = 1;
};

struct ClusterResult {
  std::vector<RootCluster> clusters;
  /// Set when some point could have joined more than one cluster at the
  /// given tolerance; the lexicographic tie-break decided.
  bool ambiguous = false;
};

struct RootOptions {
  /// Residual tolerance, relative to the coefficient-magnitude bound
  /// sum_i |a_i| |r|^i. Also gates merging of clusters into a multiple root.
  double tol = 1e-12;
  /// Distance tolerance for the first clustering pass. Defaults to
  /// 1e-7 * max(1, largest root magnitude).
  std::optional<double> cluster_tol;
  int max_iterations = 500;
};

/// All roots at once by Aberth-Ehrlich iteration on the monic polynomial.
/// Throws ConvergenceFailure (carrying the best iterate) when the budget runs out.
std::vector<Complex> simultaneous_roots(const RealPolynomial& poly, int max_iterations = 500);

/// Greedy distance clustering in lexicographic (real, imag) order.
ClusterResult cluster_multiplicities(std::span<const Complex> raw_roots, double cluster_tol);

/// Roots with multiplicity. The result is closed under conjugation (pairs are
/// exact conjugates, real roots have zero imaginary part), multiplicities sum
/// to the degree, and clusters come sorted by (real, imag).
std::vector<RootCluster> find_roots(const RealPolynomial& poly, const RootOptions& opts);
std::vector<RootCluster> find_roots(const RealPolynomial& poly, double tol);

/// Coefficients (ascending) of prod (r - value)^multiplicity.
std::vector<Complex> expand(std::span<const RootCluster> clusters);

}  // namespace eulerkit::polyroots
