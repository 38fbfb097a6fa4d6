#include "hessianls_cli/spec.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

namespace hessianls::cli {

namespace {

using json = nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw SpecError(join(where, item.key()), "unknown field");
    }
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path, "expected an object");
  return j;
}

double number(const json& j, const std::string& key, const std::string& where,
              std::optional<double> fallback = std::nullopt) {
  const auto path = join(where, key);
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw SpecError(path, "missing required field");
  }
  const auto& v = j.at(key);
  if (!v.is_number()) throw SpecError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SpecError(path, "must be finite");
  return x;
}

int integer(const json& j, const std::string& key, const std::string& where,
            std::optional<int> fallback = std::nullopt) {
  const auto path = join(where, key);
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw SpecError(path, "missing required field");
  }
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw SpecError(path, "expected an integer");
  return v.get<int>();
}

std::string text(const json& j, const std::string& key, const std::string& where) {
  const auto path = join(where, key);
  if (!j.contains(key)) throw SpecError(path, "missing required field");
  if (!j.at(key).is_string()) throw SpecError(path, "expected a string");
  return j.at(key).get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& key, const std::string& where) {
  const auto path = join(where, key);
  const auto& v = j.at(key);
  if (!v.is_array()) throw SpecError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw SpecError(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

CoefficientSpec::Kind parse_kind(const std::string& s, const std::string& path) {
  using K = CoefficientSpec::Kind;
  for (K k : {K::constant, K::power_tail, K::tabulated, K::field, K::oscillating_power,
              K::envelopes}) {
    if (s == to_string(k)) return k;
  }
  throw SpecError(path, "unknown coefficient kind '" + s + "'");
}

CoefficientSpec parse_coefficient(const json& j, const std::string& where) {
  require_object(j, where);
  CoefficientSpec c;
  c.kind = parse_kind(text(j, "kind", where), join(where, "kind"));
  using K = CoefficientSpec::Kind;
  switch (c.kind) {
    case K::constant:
      reject_unknown(j, where, {"kind", "value"});
      c.value = number(j, "value", where, 1.0);
      break;
    case K::power_tail:
      reject_unknown(j, where, {"kind", "l", "m", "amplitude", "r0"});
      c.l = number(j, "l", where);
      c.m = number(j, "m", where, 0.0);
      c.amplitude = number(j, "amplitude", where, 0.0);
      c.r0 = number(j, "r0", where, 1.0);
      break;
    case K::oscillating_power:
      reject_unknown(j, where, {"kind", "l", "m", "amplitude", "r0"});
      c.l = number(j, "l", where);
      c.m = number(j, "m", where);
      c.amplitude = number(j, "amplitude", where, 1.0);
      c.r0 = number(j, "r0", where, 1.0);
      break;
    case K::tabulated:
      reject_unknown(j, where, {"kind", "path", "r", "b", "tail_exponent"});
      if (j.contains("path")) c.path = text(j, "path", where);
      if (j.contains("r")) c.r = numbers(j, "r", where);
      if (j.contains("b")) c.b = numbers(j, "b", where);
      if (j.contains("tail_exponent") && !j.at("tail_exponent").is_null()) {
        c.tail_exponent = number(j, "tail_exponent", where);
      }
      break;
    case K::field:
      reject_unknown(j, where, {"kind", "name", "sphere_points"});
      c.name = text(j, "name", where);
      c.sphere_points = static_cast<std::size_t>(std::max(0, integer(j, "sphere_points", where, 256)));
      break;
    case K::envelopes: {
      reject_unknown(j, where, {"kind", "lower", "upper", "oscillation_tail"});
      for (const char* side : {"lower", "upper"}) {
        const auto path = join(where, side);
        if (!j.contains(side)) throw SpecError(path, "missing required field");
        c.envelopes.push_back(parse_coefficient(j.at(side), path));
      }
      if (j.contains("oscillation_tail") && !j.at("oscillation_tail").is_null()) {
        c.oscillation_tail = number(j, "oscillation_tail", where);
      }
      break;
    }
  }
  return c;
}

void validate_coefficient(const CoefficientSpec& c, const std::string& where) {
  using K = CoefficientSpec::Kind;
  switch (c.kind) {
    case K::constant:
      if (!(c.value > 0.0)) throw SpecError(join(where, "value"), "must be positive");
      break;
    case K::power_tail:
    case K::oscillating_power:
      if (!(c.r0 > 0.0)) throw SpecError(join(where, "r0"), "must be positive");
      if (c.kind == K::oscillating_power && !(c.amplitude >= 0.0)) {
        throw SpecError(join(where, "amplitude"), "must be nonnegative");
      }
      break;
    case K::tabulated:
      if (c.path.empty() == c.r.empty()) {
        throw SpecError(join(where, "path"), "give either a CSV path or inline r and b samples");
      }
      if (!c.path.empty() && !c.b.empty()) {
        throw SpecError(join(where, "b"), "inline samples cannot be combined with a path");
      }
      if (c.path.empty()) {
        if (c.r.size() != c.b.size()) throw SpecError(join(where, "b"), "length differs from r");
        if (c.r.size() < 2) throw SpecError(join(where, "r"), "need at least two samples");
      }
      break;
    case K::field: {
      if (!builtin_field(c.name)) {
        std::string names;
        for (const auto& n : builtin_field_names()) names += (names.empty() ? "" : ", ") + n;
        throw SpecError(join(where, "name"), "unknown field '" + c.name + "' (known: " + names + ")");
      }
      if (c.sphere_points < 32) throw SpecError(join(where, "sphere_points"), "must be at least 32");
      break;
    }
    case K::envelopes:
      if (c.envelopes.size() != 2) throw SpecError(where, "needs lower and upper envelopes");
      for (std::size_t i = 0; i < 2; ++i) {
        const auto path = join(where, i == 0 ? "lower" : "upper");
        if (!c.envelopes[i].radial()) throw SpecError(path, "must be a radial coefficient");
        validate_coefficient(c.envelopes[i], path);
      }
      break;
  }
}

RadialProfile make_profile(const CoefficientSpec& c, const std::string& base_dir,
                           const std::string& where) {
  using K = CoefficientSpec::Kind;
  switch (c.kind) {
    case K::constant:
      return RadialProfile::constant(c.value);
    case K::power_tail:
      return RadialProfile::power_tail(c.l, c.amplitude, c.m, c.r0);
    case K::tabulated: {
      if (c.path.empty()) return RadialProfile::tabulated(c.r, c.b, c.tail_exponent);
      std::filesystem::path p(c.path);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      try {
        return load_profile_csv(p.string(), c.tail_exponent);
      } catch (const InvalidArgument& e) {
        throw SpecError(join(where, "path"), e.what());
      }
    }
    default:
      throw SpecError(join(where, "kind"),
                      std::string("'") + to_string(c.kind) + "' is not a radial coefficient");
  }
}

}  // namespace

bool CoefficientSpec::radial() const {
  return kind == Kind::constant || kind == Kind::power_tail || kind == Kind::tabulated;
}

const char* to_string(CoefficientSpec::Kind kind) {
  switch (kind) {
    case CoefficientSpec::Kind::constant: return "constant";
    case CoefficientSpec::Kind::power_tail: return "power_tail";
    case CoefficientSpec::Kind::tabulated: return "tabulated";
    case CoefficientSpec::Kind::field: return "field";
    case CoefficientSpec::Kind::oscillating_power: return "oscillating_power";
    case CoefficientSpec::Kind::envelopes: return "envelopes";
  }
  return "?";
}

void validate(const ProblemSpec& spec) {
  try {
    spec.params.validate();
  } catch (const InvalidArgument& e) {
    const std::string what = e.what();
    const auto prefix = e.field() + ": ";
    throw SpecError(e.field(), what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what);
  }
  validate_coefficient(spec.coefficient, "coefficient");
  const auto& g = spec.grid;
  if (!(g.r_lin > 0.0)) throw SpecError("grid.r_lin", "must be positive");
  if (!(g.r_max > 0.0) || !std::isfinite(g.r_max)) throw SpecError("grid.r_max", "must be positive");
  if (g.nodes_per_decade < 1) throw SpecError("grid.nodes_per_decade", "must be at least 1");
  if (g.linear_nodes < 1) throw SpecError("grid.linear_nodes", "must be at least 1");
  if (!(spec.tolerances.rel > 0.0)) throw SpecError("tolerances.rel", "must be positive");
  if (!(spec.tolerances.abs > 0.0)) throw SpecError("tolerances.abs", "must be positive");
}

ProblemSpec parse_spec(const json& j, const std::string& base_dir) {
  require_object(j, "");
  reject_unknown(j, "", {"n", "k", "gamma", "a", "coefficient", "grid", "tolerances"});
  ProblemSpec spec;
  spec.base_dir = base_dir;
  spec.params.n = integer(j, "n", "");
  spec.params.k = integer(j, "k", "");
  spec.params.gamma = number(j, "gamma", "");
  spec.params.a = number(j, "a", "", 1.0);
  if (!j.contains("coefficient")) throw SpecError("coefficient", "missing required field");
  spec.coefficient = parse_coefficient(j.at("coefficient"), "coefficient");
  if (j.contains("grid")) {
    const auto& g = require_object(j.at("grid"), "grid");
    reject_unknown(g, "grid", {"r_lin", "r_max", "nodes_per_decade", "linear_nodes"});
    spec.grid.r_lin = number(g, "r_lin", "grid", spec.grid.r_lin);
    spec.grid.r_max = number(g, "r_max", "grid", spec.grid.r_max);
    spec.grid.nodes_per_decade = integer(g, "nodes_per_decade", "grid", spec.grid.nodes_per_decade);
    spec.grid.linear_nodes = integer(g, "linear_nodes", "grid", spec.grid.linear_nodes);
  }
  if (j.contains("tolerances")) {
    const auto& t = require_object(j.at("tolerances"), "tolerances");
    reject_unknown(t, "tolerances", {"rel", "abs"});
    spec.tolerances.rel = number(t, "rel", "tolerances", spec.tolerances.rel);
    spec.tolerances.abs = number(t, "abs", "tolerances", spec.tolerances.abs);
  }
  validate(spec);
  return spec;
}

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("", "cannot open spec file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_spec(j, std::filesystem::path(path).parent_path().string());
}

json to_json(const CoefficientSpec& c) {
  using K = CoefficientSpec::Kind;
  json j{{"kind", to_string(c.kind)}};
  switch (c.kind) {
    case K::constant:
      j["value"] = c.value;
      break;
    case K::power_tail:
    case K::oscillating_power:
      j["l"] = c.l;
      j["m"] = c.m;
      j["amplitude"] = c.amplitude;
      j["r0"] = c.r0;
      break;
    case K::tabulated:
      if (!c.path.empty()) {
        j["path"] = c.path;
      } else {
        j["r"] = c.r;
        j["b"] = c.b;
      }
      j["tail_exponent"] = c.tail_exponent ? json(*c.tail_exponent) : json(nullptr);
      break;
    case K::field:
      j["name"] = c.name;
      j["sphere_points"] = c.sphere_points;
      break;
    case K::envelopes:
      j["lower"] = to_json(c.envelopes.at(0));
      j["upper"] = to_json(c.envelopes.at(1));
      j["oscillation_tail"] = c.oscillation_tail ? json(*c.oscillation_tail) : json(nullptr);
      break;
  }
  return j;
}

json to_json(const ProblemSpec& spec) {
  return {{"n", spec.params.n},
          {"k", spec.params.k},
          {"gamma", spec.params.gamma},
          {"a", spec.params.a},
          {"coefficient", to_json(spec.coefficient)},
          {"grid",
           {{"r_lin", spec.grid.r_lin},
            {"r_max", spec.grid.r_max},
            {"nodes_per_decade", spec.grid.nodes_per_decade},
            {"linear_nodes", spec.grid.linear_nodes}}},
          {"tolerances", {{"rel", spec.tolerances.rel}, {"abs", spec.tolerances.abs}}}};
}

RadialGrid ProblemSpec::make_grid() const {
  return RadialGrid::hybrid(grid.r_lin, grid.r_max, grid.nodes_per_decade, grid.linear_nodes);
}

SolverOptions ProblemSpec::solver_options() const {
  SolverOptions o;
  o.rel_tol = tolerances.rel;
  o.abs_tol = tolerances.abs;
  return o;
}

RadialProfile ProblemSpec::radial_profile() const {
  return make_profile(coefficient, base_dir, "coefficient");
}

NonRadialField ProblemSpec::field() const {
  if (coefficient.kind != CoefficientSpec::Kind::field) {
    throw SpecError("coefficient.kind", "expected a non-radial field");
  }
  return *builtin_field(coefficient.name);
}

RadializedTriple ProblemSpec::triple(const RadialGrid& g) const {
  using K = CoefficientSpec::Kind;
  const auto& c = coefficient;
  switch (c.kind) {
    case K::field: {
      const auto f = field();
      if (f.dim != params.n) {
        throw SpecError("n", "field '" + c.name + "' lives in dimension " + std::to_string(f.dim));
      }
      return radialize(f, g, c.sphere_points);
    }
    case K::oscillating_power:
      return oscillating_power_triple(c.l, c.m, c.amplitude, c.r0);
    case K::envelopes:
      return envelope_triple(make_profile(c.envelopes[0], base_dir, "coefficient.lower"),
                             make_profile(c.envelopes[1], base_dir, "coefficient.upper"),
                             c.oscillation_tail);
    default:
      return radial_triple(radial_profile());
  }
}

}  // namespace hessianls::cli
