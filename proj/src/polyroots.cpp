#include "eulerkit/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eulerkit/error.hpp"

namespace eulerkit::polyroots {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// p^{(m)}(z) / m! by Horner on the scaled coefficients.
Complex scaled_derivative(std::span<const double> a, int m, Complex z) {
  const int n = static_cast<int>(a.size()) - 1;
  if (m > n) return 0.0;
  Complex acc = 0.0;
  for (int i = n; i >= m; --i) acc = acc * z + a[i] * binomial(i, m);
  return acc;
}

double abs_bound(std::span<const double> a, double r) {
  double acc = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * r + std::abs(a[i]);
  return acc;
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidInput("polynomial coefficients must be finite");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) throw InvalidInput("the zero polynomial has no roots to find");
}

RealPolynomial RealPolynomial::monic() const {
  std::vector<double> c(coeffs_);
  const double lead = c.back();
  for (double& v : c) v /= lead;
  c.back() = 1.0;
  return RealPolynomial(std::move(c));
}

double RealPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Complex RealPolynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

std::vector<Complex> RealPolynomial::taylor(Complex z) const {
  // Repeated synthetic division by (r - z).
  std::vector<Complex> work(coeffs_.begin(), coeffs_.end());
  const int n = degree();
  std::vector<Complex> out(n + 1);
  for (int j = 0; j <= n; ++j) {
    for (int i = n - 1; i >= j; --i) work[i] += z * work[i + 1];
    out[j] = work[j];
  }
  return out;
}

std::vector<double> RealPolynomial::taylor_bound(Complex z) const {
  const int n = degree();
  const double r = std::abs(z);
  std::vector<double> out(n + 1);
  for (int j = 0; j <= n; ++j) {
    double acc = 0.0;
    for (int i = n; i >= j; --i) acc = acc * r + std::abs(coeffs_[i]) * binomial(i, j);
    out[j] = acc;
  }
  return out;
}

std::vector<Complex> simultaneous_roots(const RealPolynomial& poly, int max_iterations) {
  const RealPolynomial m = poly.monic();
  const auto a = m.coeffs();
  const int n = m.degree();
  if (n < 1) throw InvalidInput("root finding needs degree >= 1");
  if (n == 1) return {Complex(-a[0], 0.0)};

  // Start on a circle about the root centroid whose radius tracks the
  // Fujiwara-style coefficient bound; the angular offset avoids symmetric starts.
  const Complex center(-a[n - 1] / n, 0.0);
  double radius = 0.0;
  for (int k = 1; k <= n; ++k) radius = std::max(radius, std::pow(std::abs(a[n - k]), 1.0 / k));
  radius = std::max(radius, 1e-3);
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * M_PI * k / n + 0.7;
    z[k] = center + radius * Complex(std::cos(theta), std::sin(theta));
  }

  std::vector<bool> done(n, false);
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p = 1.0, dp = 0.0;
      for (int i = n - 1; i >= 0; --i) {
        dp = dp * z[k] + p;
        p = p * z[k] + a[i];
      }
      if (std::abs(p) <= 4.0 * n * kEps * abs_bound(a, std::abs(z[k]))) {
        done[k] = true;
        continue;
      }
      all_done = false;
      if (dp == Complex(0.0)) {
        z[k] *= Complex(1.0 + 1e-8, 1e-8);
        continue;
      }
      const Complex w = p / dp;
      Complex s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      const Complex corr = w / (1.0 - w * s);
      z[k] -= corr;
      if (std::abs(corr) <= 2.0 * kEps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) return z;
  }
  throw ConvergenceFailure("Aberth iteration did not converge within " +
                               std::to_string(max_iterations) + " iterations",
                           z, max_iterations);
}

ClusterResult cluster_multiplicities(std::span<const Complex> raw_roots, double cluster_tol) {
  if (raw_roots.empty()) throw InvalidInput("cluster_multiplicities needs at least one root");
  if (!(cluster_tol > 0.0)) throw InvalidInput("cluster tolerance must be positive");

  std::vector<Complex> pts(raw_roots.begin(), raw_roots.end());
  std::sort(pts.begin(), pts.end(), lex_less);

  struct Group {
    std::vector<Complex> members;
    Complex mean;
  };
  std::vector<Group> groups;
  ClusterResult out;

  for (const Complex& p : pts) {
    int chosen = -1;
    int reachable = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (std::abs(p - groups[g].mean) > cluster_tol) continue;
      ++reachable;
      if (chosen >= 0) continue;
      Complex sum = p;
      for (const auto& m : groups[g].members) sum += m;
      const Complex mean = sum / static_cast<double>(groups[g].members.size() + 1);
      bool fits = std::abs(p - mean) <= cluster_tol;
      for (const auto& m : groups[g].members) fits = fits && std::abs(m - mean) <= cluster_tol;
      if (fits) chosen = static_cast<int>(g);
    }
    if (reachable > 1 || (reachable == 1 && chosen < 0)) out.ambiguous = true;
    if (chosen < 0) {
      groups.push_back({{p}, p});
    } else {
      auto& g = groups[chosen];
      g.members.push_back(p);
      Complex sum = 0.0;
      for (const auto& m : g.members) sum += m;
      g.mean = sum / static_cast<double>(g.members.size());
    }
  }

  // A member that also sits within tolerance of a foreign cluster could have
  // been placed there instead.
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (i == j) continue;
      if (std::abs(groups[i].mean - groups[j].mean) <= cluster_tol) out.ambiguous = true;
      for (const auto& m : groups[i].members) {
        if (std::abs(m - groups[j].mean) <= cluster_tol) out.ambiguous = true;
      }
    }
  }
  for (const auto& g : groups) {
    out.clusters.push_back({g.mean, static_cast<int>(g.members.size())});
  }
  return out;
}

namespace {

// Newton on p^{(k-1)}, which has a simple root at a k-fold root of p.
Complex polish(const RealPolynomial& p, Complex c, int k) {
  const auto a = p.coeffs();
  Complex best = c;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 8; ++it) {
    const Complex f = scaled_derivative(a, k - 1, best);
    const Complex df = static_cast<double>(k) * scaled_derivative(a, k, best);
    if (df == Complex(0.0)) break;
    const Complex step = f / df;
    if (!(std::abs(step) < last_step) || !std::isfinite(std::abs(step))) break;
    best -= step;
    last_step = std::abs(step);
    if (last_step <= kEps * std::max(1.0, std::abs(best))) break;
  }
  return best;
}

bool is_k_fold(const RealPolynomial& p, Complex c, int k, double tol) {
  const auto t = p.taylor(c);
  const auto b = p.taylor_bound(c);
  for (int j = 0; j < k; ++j) {
    if (std::abs(t[j]) > tol * b[j]) return false;
  }
  return true;
}

// Second pass: merge distance clusters whose combined center is numerically a
// multiple root, i.e. p and its first k-1 derivatives vanish there to within
// the rounding bound.
std::vector<RootCluster> merge_validated(const RealPolynomial& p, std::vector<RootCluster> in,
                                         double tol, double cluster_tol) {
  std::sort(in.begin(), in.end(), [](const auto& l, const auto& r) { return lex_less(l.value, r.value); });
  std::vector<bool> used(in.size(), false);
  std::vector<RootCluster> out;

  for (std::size_t i = 0; i < in.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (j != i && !used[j]) others.push_back(j);
    }
    std::stable_sort(others.begin(), others.end(), [&](std::size_t l, std::size_t r) {
      return std::abs(in[l].value - in[i].value) < std::abs(in[r].value - in[i].value);
    });

    std::size_t take = 0;
    Complex center = polish(p, in[i].value, in[i].multiplicity);
    if (std::abs(center - in[i].value) > cluster_tol) center = in[i].value;
    for (std::size_t m = others.size(); m >= 1; --m) {
      int k = in[i].multiplicity;
      Complex weighted = in[i].value * static_cast<double>(in[i].multiplicity);
      for (std::size_t q = 0; q < m; ++q) {
        k += in[others[q]].multiplicity;
        weighted += in[others[q]].value * static_cast<double>(in[others[q]].multiplicity);
      }
      if (k > p.degree()) continue;
      const Complex start = weighted / static_cast<double>(k);
      double spread = std::abs(in[i].value - start);
      for (std::size_t q = 0; q < m; ++q) spread = std::max(spread, std::abs(in[others[q]].value - start));
      const Complex c = polish(p, start, k);
      // Newton on a derivative can wander to a different multiple root; the
      // polished point must stay with the members it claims to represent.
      const double drift = std::abs(c - start);
      bool local = drift <= spread + 1e-14 * std::max(1.0, std::abs(start));
      for (std::size_t q = m; q < others.size() && local; ++q) {
        local = std::abs(c - in[others[q]].value) > drift;
      }
      for (std::size_t j = 0; j < in.size() && local; ++j) {
        if (used[j]) local = std::abs(c - in[j].value) > drift;
      }
      if (local && is_k_fold(p, c, k, tol)) {
        take = m;
        center = c;
        break;
      }
    }

    int k = in[i].multiplicity;
    used[i] = true;
    for (std::size_t q = 0; q < take; ++q) {
      used[others[q]] = true;
      k += in[others[q]].multiplicity;
    }
    out.push_back({center, k});
  }
  return out;
}

void enforce_conjugate_closure(std::vector<RootCluster>& cs) {
  const std::size_t n = cs.size();
  std::vector<std::size_t> partner(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex target = std::conj(cs[i].value);
    std::size_t best = i;
    double dist = std::abs(cs[i].value - target);
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(cs[j].value - target);
      if (d < dist) {
        dist = d;
        best = j;
      }
    }
    partner[i] = best;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = partner[i];
    if (j == i) {
      cs[i].value = Complex(cs[i].value.real(), 0.0);
      continue;
    }
    if (partner[j] != i || cs[j].multiplicity != cs[i].multiplicity) {
      throw NumericFailure("root clusters are not closed under complex conjugation");
    }
    if (cs[i].value.imag() > 0.0) {
      const Complex avg = 0.5 * (cs[i].value + std::conj(cs[j].value));
      cs[i].value = avg;
      cs[j].value = std::conj(avg);
    }
  }
}

}  // namespace

std::vector<RootCluster> find_roots(const RealPolynomial& poly, const RootOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidInput("root tolerance must be positive");
  if (poly.degree() < 1) throw InvalidInput("root finding needs degree >= 1");
  const RealPolynomial m = poly.monic();

  if (m.degree() == 1) return {{Complex(-m.coeffs()[0], 0.0), 1}};

  const auto raw = simultaneous_roots(m, opts.max_iterations);
  double largest = 0.0;
  for (const auto& r : raw) largest = std::max(largest, std::abs(r));
  const double ctol = opts.cluster_tol.value_or(1e-7 * std::max(1.0, largest));

  auto clusters = merge_validated(m, cluster_multiplicities(raw, ctol).clusters, opts.tol, ctol);
  enforce_conjugate_closure(clusters);
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& l, const auto& r) { return lex_less(l.value, r.value); });

  int total = 0;
  for (const auto& c : clusters) {
    total += c.multiplicity;
    const double scale = abs_bound(m.coeffs(), std::abs(c.value));
    if (std::abs(m(c.value)) > opts.tol * scale) {
      throw NumericFailure("root residual exceeds tolerance after clustering");
    }
  }
  if (total != m.degree()) throw NumericFailure("multiplicities do not sum to the degree");
  return clusters;
}

std::vector<RootCluster> find_roots(const RealPolynomial& poly, double tol) {
  RootOptions opts;
  opts.tol = tol;
  return find_roots(poly, opts);
}

std::vector<Complex> expand(std::span<const RootCluster> clusters) {
  std::vector<Complex> c{1.0};
  for (const auto& cl : clusters) {
    for (int k = 0; k < cl.multiplicity; ++k) {
      std::vector<Complex> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= cl.value * c[i];
      }
      c = std::move(next);
    }
  }
  return c;
}

}  // namespace eulerkit::polyroots
