#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eulerkit/serialize.hpp"

namespace eulerkit::acceptance {

/// One measured quantity compared against a pinned threshold.
struct Check {
  std::string name;
  double measured = 0.0;
  std::string relation;  // "<=", ">=" or ">"
  double threshold = 0.0;
  bool pass = false;
};

struct Criterion {
  int id = 0;
  std::string group;
  std::string title;
  std::vector<Check> checks;
  double budget_seconds = 0.0;
  double seconds = 0.0;  // wall time, never written to the report
  bool within_budget = true;
  bool pass = false;
};

/// Groups in canonical order: linode, firstorder, specfun, variational, determinism.
const std::vector<std::string>& group_names();

struct Config {
  std::uint64_t seed = 20240917;
  std::vector<std::string> groups = group_names();
};

/// {"seed": uint, "groups": [names]}. Both keys optional; anything else is InvalidInput.
Config load_config(const io::Json& doc);
io::Json config_to_json(const Config& cfg);

/// Runs the selected groups in configuration order, criteria ascending within a group.
std::vector<Criterion> run(const Config& cfg);

/// Deterministic report: manifest without timestamp, criteria, pass counts.
io::Json report(const Config& cfg, const std::vector<Criterion>& results);

/// "PASS  5 specfun identities  gamma_half_rel=1.2e-16 <= 1e-12 ..."
std::string summary_line(const Criterion& c);

/// Shooting solution of y'' = -(1 + y'^2)/(2y), y(0) = y0, y(1) = y1, sampled at k/N.
std::vector<double> brachistochrone_shooting(double y0, double y1, int N);

}  // namespace eulerkit::acceptance
