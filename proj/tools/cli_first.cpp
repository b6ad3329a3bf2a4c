#include <array>
#include <cmath>
#include <memory>

#include "cli.hpp"
#include "eulerkit/error.hpp"
#include "eulerkit/firstorder.hpp"

namespace eulerkit::cli {

namespace {

// sum of c x^i y^j over "c,i,j" terms
struct Terms {
  std::vector<std::array<double, 3>> t;
  double operator()(double x, double y) const {
    double s = 0.0;
    for (const auto& k : t) s += k[0] * std::pow(x, k[1]) * std::pow(y, k[2]);
    return s;
  }
};

Terms parse_terms(const std::vector<std::string>& items, const std::string& what) {
  Terms out;
  for (const auto& item : items) {
    const auto v = parse_numbers(item, what);
    if (v.size() != 3 || v[1] < 0 || v[2] < 0 || v[1] != std::floor(v[1]) || v[2] != std::floor(v[2])) {
      throw InvalidInput(what + " takes COEF,I,J with non-negative integer powers");
    }
    out.t.push_back({v[0], v[1], v[2]});
  }
  return out;
}

firstorder::Rect parse_rect(const std::string& text) {
  const auto v = parse_numbers(text, "--domain");
  if (v.size() != 4) throw InvalidInput("--domain takes XLO,XHI,YLO,YHI");
  return {v[0], v[1], v[2], v[3]};
}

struct ExactArgs {
  std::vector<std::string> M, N;
  std::string domain = "-1,1,-1,1";
};

struct SeparableArgs {
  std::string f = "1", g = "1";
  double x0 = 0.0, y0 = 0.0, x_lo = -1.0, x_hi = 1.0;
};

struct ClairautArgs {
  std::string g;
  double p_lo = -1.0, p_hi = 1.0;
};

struct RiccatiArgs {
  double a = 0.0, n = 0.0;
  std::string v;
  double x0 = 0.0, z0 = 0.0, x = 1.0;
};

io::Json exact(Session& s, const ExactArgs& a) {
  const auto M = parse_terms(a.M, "--M"), N = parse_terms(a.N, "--N");
  const double tol = s.tol_or(1e-6);
  s.tolerance("exactness_tol", tol);
  const auto rep = firstorder::exactness_check({M, N, parse_rect(a.domain)}, s.grid_n_or(21), tol);
  io::Json excluded = io::Json::array();
  for (const auto& p : rep.excluded) excluded.push_back({io::number(p.x), io::number(p.y)});
  return {{"exact", rep.exact},
          {"max_deviation", io::number(rep.max_deviation)},
          {"step_x", io::number(rep.step_x)},
          {"step_y", io::number(rep.step_y)},
          {"evaluated", rep.evaluated},
          {"excluded", excluded}};
}

io::Json separable(Session& s, const SeparableArgs& a) {
  const Poly f{parse_numbers(a.f, "--f")}, g{parse_numbers(a.g, "--g")};
  const auto sol = firstorder::solve_separable(f, g, a.x0, a.y0);
  const auto pts = firstorder::trace_level_set(sol, a.x_lo, a.x_hi, s.grid_n_or(101));
  double drift = 0.0;
  std::vector<std::vector<double>> rows;
  for (const auto& p : pts) {
    drift = std::max(drift, std::abs(sol.H(p.x, p.y) - sol.level));
    rows.push_back({p.x, p.y});
  }
  s.csv("level_set.csv", {"x", "y"}, rows);
  return {{"level", io::number(sol.level)}, {"samples", pts.size()}, {"max_level_drift", io::number(drift)}};
}

io::Json clairaut(Session& s, const ClairautArgs& a) {
  if (a.g.empty()) throw InvalidInput("first clairaut needs --g");
  const Poly g{parse_numbers(a.g, "--g")};
  const Poly gp = g.derivative(), gpp = gp.derivative();
  const auto env = firstorder::clairaut_envelope({g, gp, gpp}, a.p_lo, a.p_hi, s.grid_n_or(101));
  s.tolerance("degeneracy", firstorder::kEnvelopeDegeneracy);
  std::vector<std::vector<double>> rows;
  int degenerate = 0;
  for (const auto& p : env.points) {
    rows.push_back({p.p, p.x, p.y, p.degenerate ? 1.0 : 0.0});
    degenerate += p.degenerate ? 1 : 0;
  }
  s.csv("envelope.csv", {"p", "x", "y", "degenerate"}, rows);
  return {{"degenerate", env.degenerate}, {"samples", env.points.size()}, {"degenerate_samples", degenerate}};
}

io::Json riccati(Session& s, const RiccatiArgs& a) {
  if (a.v.empty()) throw InvalidInput("first riccati needs a particular solution --v");
  const Poly v{parse_numbers(a.v, "--v")};
  const Poly vp = v.derivative();
  firstorder::RiccatiOptions o;
  if (s.globals().tol) o.abs_tol = o.rel_tol = *s.globals().tol;
  s.tolerance("abs_tol", o.abs_tol);
  s.tolerance("rel_tol", o.rel_tol);
  s.tolerance("particular_gate", firstorder::kRiccatiGate);
  io::Json r;
  r["value"] = io::number(firstorder::riccati_solve(a.a, a.n, v, vp, a.x0, a.z0, a.x, o));
  if (s.globals().grid_n) {
    std::vector<std::vector<double>> rows;
    for (double x : grid(a.x0, a.x, s.grid_n_or(2))) {
      rows.push_back({x, firstorder::riccati_solve(a.a, a.n, v, vp, a.x0, a.z0, x, o)});
    }
    s.csv("riccati.csv", {"x", "z"}, rows);
  }
  return r;
}

}  // namespace

void register_first(CLI::App& root, Registry& reg) {
  auto* first = root.add_subcommand("first", "First-order equations")->require_subcommand(1);

  auto ea = std::make_shared<ExactArgs>();
  auto* ex = first->add_subcommand("exact", "Test M dx + N dy = 0 for exactness on a grid");
  ex->add_option("--M", ea->M, "COEF,I,J term COEF x^I y^J of M (repeatable)")->required();
  ex->add_option("--N", ea->N, "COEF,I,J term of N (repeatable)")->required();
  ex->add_option("--domain", ea->domain, "XLO,XHI,YLO,YHI");
  reg.push_back({ex, "first exact", [ea](Session& s) { return exact(s, *ea); }});

  auto sa = std::make_shared<SeparableArgs>();
  auto* sep = first->add_subcommand("separable", "dx / f(x) = g(y) dy through (x0, y0)");
  sep->add_option("--f", sa->f, "Polynomial coefficients of f(x)");
  sep->add_option("--g", sa->g, "Polynomial coefficients of g(y)");
  sep->add_option("--x0", sa->x0);
  sep->add_option("--y0", sa->y0);
  sep->add_option("--x-lo", sa->x_lo);
  sep->add_option("--x-hi", sa->x_hi);
  reg.push_back({sep, "first separable", [sa](Session& s) { return separable(s, *sa); }});

  auto ca = std::make_shared<ClairautArgs>();
  auto* cl = first->add_subcommand("clairaut", "Singular solution of y = x p + g(p)");
  cl->add_option("--g", ca->g, "Polynomial coefficients of g(p)")->required();
  cl->add_option("--p-lo", ca->p_lo);
  cl->add_option("--p-hi", ca->p_hi);
  reg.push_back({cl, "first clairaut", [ca](Session& s) { return clairaut(s, *ca); }});

  auto ra = std::make_shared<RiccatiArgs>();
  auto* ri = first->add_subcommand("riccati", "z' + z^2 = a x^n from a known particular solution v");
  ri->add_option("--a", ra->a)->required();
  ri->add_option("--n", ra->n)->required();
  ri->add_option("--v", ra->v, "Polynomial coefficients of v(x)")->required();
  ri->add_option("--x0", ra->x0);
  ri->add_option("--z0", ra->z0)->required();
  ri->add_option("--x", ra->x, "Evaluation point");
  reg.push_back({ri, "first riccati", [ra](Session& s) { return riccati(s, *ra); }});
}

}  // namespace eulerkit::cli
