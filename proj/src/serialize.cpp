#include "eulerkit/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace eulerkit::io {

namespace {

void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void write(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(key).dump() << sep;
        write(os, value, indent, depth + 1);
      }
      os << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad;
        write(os, value, indent, depth + 1);
      }
      os << nl << close << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

Json complex_pair(const std::complex<double>& z) { return Json::array({number(z.real()), number(z.imag())}); }

double require_number(const Json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string dump(const Json& doc, int indent) {
  std::ostringstream os;
  write(os, doc, indent, 0);
  return os.str();
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Json solution_to_json(const linode::ParticularSolution& sol) {
  Json doc;
  doc["order"] = sol.general.free_constants();
  Json modes = Json::array();
  for (const auto& m : sol.general.modes(sol.constants)) {
    Json poly = Json::array();
    for (const auto& c : m.poly) poly.push_back(complex_pair(c));
    modes.push_back({{"re", number(m.root.real())}, {"im", number(m.root.imag())}, {"poly", poly}});
  }
  doc["modes"] = modes;
  Json constants = Json::array();
  for (double c : sol.constants) constants.push_back(number(c));
  doc["constants"] = constants;
  return doc;
}

linode::ParticularSolution solution_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("solution must be a JSON object");
  for (const char* key : {"order", "modes", "constants"}) {
    if (!doc.contains(key)) throw InvalidInput(std::string("solution is missing \"") + key + "\"");
  }
  if (!doc["order"].is_number_integer()) throw InvalidInput("order must be an integer");
  const int order = doc["order"].get<int>();
  if (!doc["modes"].is_array() || !doc["constants"].is_array()) {
    throw InvalidInput("modes and constants must be arrays");
  }

  std::vector<polyroots::RootCluster> clusters;
  std::vector<linode::Mode> stored;
  for (const auto& m : doc["modes"]) {
    if (!m.is_object() || !m.contains("re") || !m.contains("im") || !m.contains("poly") || !m["poly"].is_array()) {
      throw InvalidInput("each mode needs re, im and poly");
    }
    const std::complex<double> root(require_number(m["re"], "mode re"), require_number(m["im"], "mode im"));
    linode::Mode mode{root, {}};
    for (const auto& c : m["poly"]) {
      if (!c.is_array() || c.size() != 2) throw InvalidInput("poly entries are [re, im] pairs");
      mode.poly.emplace_back(require_number(c[0], "poly re"), require_number(c[1], "poly im"));
    }
    if (mode.poly.empty()) throw InvalidInput("mode poly must not be empty");
    clusters.push_back({root, static_cast<int>(mode.poly.size())});
    stored.push_back(std::move(mode));
  }
  std::vector<double> constants;
  for (const auto& c : doc["constants"]) constants.push_back(require_number(c, "constant"));

  linode::GeneralSolution gs(std::move(clusters));
  if (gs.free_constants() != order || static_cast<int>(constants.size()) != order) {
    throw InvalidInput("order, mode multiplicities and constant count disagree");
  }
  const auto regenerated = gs.modes(constants);
  bool same = regenerated.size() == stored.size();
  for (std::size_t i = 0; same && i < stored.size(); ++i) {
    same = regenerated[i].root == stored[i].root && regenerated[i].poly == stored[i].poly;
  }
  if (!same) throw InvalidInput("mode polynomials are inconsistent with the constants");
  return {std::move(gs), std::move(constants), "json", 1.0};
}

Json roots_to_json(std::span<const polyroots::RootCluster> clusters) {
  Json out = Json::array();
  for (const auto& c : clusters) {
    out.push_back({{"re", number(c.value.real())}, {"im", number(c.value.imag())}, {"mult", c.multiplicity}});
  }
  return out;
}

Json error_to_json(const Error& err) {
  Json j;
  j["kind"] = err.kind();
  j["message"] = err.what();
  if (const auto* e = dynamic_cast<const ResidualCheckFailed*>(&err)) {
    j["residual"] = number(e->residual());
    j["at"] = number(e->at());
  } else if (const auto* e = dynamic_cast<const ConvergenceFailure*>(&err)) {
    j["iterations"] = e->iterations();
    Json best = Json::array();
    for (const auto& z : e->best_iterate()) best.push_back(complex_pair(z));
    j["best_iterate"] = best;
  } else if (const auto* e = dynamic_cast<const QuadratureFailure*>(&err)) {
    j["achieved_error"] = number(e->achieved_error());
  } else if (const auto* e = dynamic_cast<const SingularIntegrand*>(&err)) {
    j["lo"] = number(e->lo());
    j["hi"] = number(e->hi());
  } else if (const auto* e = dynamic_cast<const SingularSystem*>(&err)) {
    j["offending_conditions"] = e->offending_conditions();
    j["condition_number"] = number(e->condition_number());
  } else if (const auto* e = dynamic_cast<const PoleDetected*>(&err)) {
    j["lo"] = number(e->lo());
    j["hi"] = number(e->hi());
  } else if (const auto* e = dynamic_cast<const StepSizeUnderflow*>(&err)) {
    j["at"] = number(e->location());
  } else if (const auto* e = dynamic_cast<const NonFiniteIterate*>(&err)) {
    j["iterate"] = e->iterate();
  }
  return j;
}

}  // namespace eulerkit::io
