#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "hessianls/asymptotics.hpp"
#include "hessianls/criteria.hpp"
#include "hessianls_cli/commands.hpp"

namespace hessianls::cli {

namespace {

const std::vector<std::string>& axis_names() {
  static const std::vector<std::string> names{"k", "n", "gamma", "a", "l", "m", "r_max"};
  return names;
}

double parse_number(const std::string& token, const std::string& axis) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || !std::isfinite(x)) {
    throw SpecError("vary." + axis, "cannot parse '" + token + "' as a number");
  }
  return x;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

void apply(ProblemSpec& spec, const std::string& name, double value) {
  auto as_int = [&](const char* field) {
    if (value != std::round(value)) throw SpecError(field, "must be an integer");
    return static_cast<int>(value);
  };
  if (name == "k") {
    spec.params.k = as_int("k");
  } else if (name == "n") {
    spec.params.n = as_int("n");
  } else if (name == "gamma") {
    spec.params.gamma = value;
  } else if (name == "a") {
    spec.params.a = value;
  } else if (name == "r_max") {
    spec.grid.r_max = value;
  } else {
    using K = CoefficientSpec::Kind;
    if (spec.coefficient.kind != K::power_tail && spec.coefficient.kind != K::oscillating_power) {
      throw SpecError("coefficient." + name, "only power-law coefficients have an exponent to vary");
    }
    (name == "l" ? spec.coefficient.l : spec.coefficient.m) = value;
  }
}

SweepRow run_cell(ProblemSpec spec, const std::vector<std::pair<std::string, double>>& cell) {
  SweepRow row;
  try {
    for (const auto& [name, value] : cell) apply(spec, name, value);
  } catch (const Error& e) {
    row.error = e.what();
  }
  row.k = spec.params.k;
  row.n = spec.params.n;
  row.gamma = spec.params.gamma;
  using K = CoefficientSpec::Kind;
  if (spec.coefficient.kind == K::power_tail || spec.coefficient.kind == K::oscillating_power) {
    row.l = spec.coefficient.l;
  }
  if (!row.error.empty()) return row;

  try {
    validate(spec);
    const auto grid = spec.make_grid();
    const auto triple = spec.triple(grid);
    if (!row.l) {
      if (const auto tail = triple.b_star.tail()) row.l = tail->exponent;
    }
    CriteriaOptions criteria;
    criteria.r_max = spec.grid.r_max;
    criteria.nodes_per_decade = spec.grid.nodes_per_decade;
    const auto verdict = classify_existence(triple.b_star, spec.params, criteria);
    row.verdict = to_string(verdict.verdict);
    const double k = spec.params.k;
    if (verdict.verdict == Verdict::large && row.l) {
      row.expected_alpha = (2.0 * k - *row.l) / (k - spec.params.gamma);
    }
    if (verdict.verdict == Verdict::large && row.l && *row.l <= k - 1.0 + 1e-12 &&
        spec.coefficient.radial()) {
      const auto curve =
          solve_cauchy(spec.params, triple.b_star, grid, spec.solver_options());
      const auto rates = verify_rates(curve, spec.params, *row.l);
      row.fitted_alpha = rates.u.exponent;
      row.amplitude_ratio = rates.amplitude_ratio;
      if (rates.inconclusive) row.error = "fit window not asymptotic";
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::string optional_field(const std::optional<double>& x) {
  return x ? format_double(*x) : "";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw SpecError("vary", "expected name=values, got '" + text + "'");
  SweepAxis axis;
  axis.name = trim(text.substr(0, eq));
  const auto& names = axis_names();
  if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
    throw SpecError("vary." + axis.name, "unknown sweep parameter");
  }
  const auto rhs = trim(text.substr(eq + 1));
  if (rhs.empty()) return axis;
  if (rhs.find(':') != std::string::npos) {
    const auto c1 = rhs.find(':');
    const auto c2 = rhs.find(':', c1 + 1);
    if (c2 == std::string::npos) throw SpecError("vary." + axis.name, "range needs start:stop:step");
    const double start = parse_number(trim(rhs.substr(0, c1)), axis.name);
    const double stop = parse_number(trim(rhs.substr(c1 + 1, c2 - c1 - 1)), axis.name);
    const double step = parse_number(trim(rhs.substr(c2 + 1)), axis.name);
    if (!(step > 0.0)) throw SpecError("vary." + axis.name, "step must be positive");
    const double span = (stop - start) / step;
    if (span > 1e6) throw SpecError("vary." + axis.name, "range is too long");
    for (long i = 0; start + static_cast<double>(i) * step <= stop + 1e-9 * step; ++i) {
      axis.values.push_back(start + static_cast<double>(i) * step);
    }
    return axis;
  }
  std::size_t pos = 0;
  while (pos <= rhs.size()) {
    const auto comma = rhs.find(',', pos);
    const auto token = trim(rhs.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    axis.values.push_back(parse_number(token, axis.name));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return axis;
}

std::vector<SweepRow> run_sweep(const ProblemSpec& base, const std::vector<SweepAxis>& axes,
                                int jobs) {
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();
  std::vector<std::vector<std::pair<std::string, double>>> cells(total);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t rest = c;
    for (std::size_t i = axes.size(); i-- > 0;) {
      const auto& values = axes[i].values;
      cells[c].insert(cells[c].begin(), {axes[i].name, values[rest % values.size()]});
      rest /= values.size();
    }
  }

  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < total; c = next++) rows[c] = run_cell(base, cells[c]);
  };
  const auto threads = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, total); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "k,n,gamma,l,verdict,fitted_alpha,expected_alpha,amplitude_ratio,error\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.n << ',' << format_double(r.gamma) << ',' << optional_field(r.l) << ','
        << r.verdict << ',' << optional_field(r.fitted_alpha) << ','
        << optional_field(r.expected_alpha) << ',' << optional_field(r.amplitude_ratio) << ','
        << csv_escape(r.error) << '\n';
  }
}

int cmd_sweep(const SweepOptions& options, std::ostream& out) {
  const auto spec = load_spec(options.spec_path);
  std::vector<SweepAxis> axes;
  for (const auto& v : options.vary) axes.push_back(parse_axis(v));
  int jobs = options.jobs;
  if (const char* env = std::getenv("HESSIANLS_JOBS"); env && *env) {
    try {
      jobs = std::stoi(env);
    } catch (const std::exception&) {
      throw SpecError("HESSIANLS_JOBS", std::string("not an integer: ") + env);
    }
  }
  if (jobs < 1) throw SpecError("jobs", "must be at least 1");
  const auto rows = run_sweep(spec, axes, jobs);
  if (options.output_path.empty()) {
    write_sweep_csv(out, rows);
  } else {
    std::ofstream file(options.output_path);
    if (!file) throw Error("cannot write " + options.output_path);
    write_sweep_csv(file, rows);
  }
  return kOk;
}

}  // namespace hessianls::cli
