#include <memory>

#include "cli.hpp"
#include "eulerkit/acceptance.hpp"
#include "eulerkit/error.hpp"

namespace eulerkit::cli {

namespace {

struct SuiteArgs {
  std::string config;
};

io::Json acceptance_suite(Session& s, const SuiteArgs& a) {
  auto cfg = acceptance::load_config(io::parse(read_file(a.config)));
  if (s.globals().seed) cfg.seed = *s.globals().seed;
  s.parameter("resolved", acceptance::config_to_json(cfg));
  const auto results = acceptance::run(cfg);
  const auto report = acceptance::report(cfg, results);
  for (const auto& [name, value] : report["manifest"]["tolerances"].items()) s.tolerance(name, value.get<double>());
  return report;
}

}  // namespace

void register_suite(CLI::App& root, Registry& reg) {
  auto* suite = root.add_subcommand("suite", "Experiment runner")->require_subcommand(1);
  auto sa = std::make_shared<SuiteArgs>();
  auto* acc = suite->add_subcommand("acceptance", "Run the acceptance criteria selected by a config file");
  acc->add_option("CONFIG", sa->config, "JSON {seed, groups}")->required();
  reg.push_back({acc, "suite acceptance", [sa](Session& s) { return acceptance_suite(s, *sa); }});
}

}  // namespace eulerkit::cli
