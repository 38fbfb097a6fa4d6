#include "hessianls/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "hessianls/errors.hpp"
#include "hessianls/loglog_fit.hpp"

namespace hessianls {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double eval_tabulated(const Tabulated& t, double r) {
  const auto& rs = t.r;
  const auto& bs = t.b;
  if (r < rs.front()) {
    throw OutOfRange("tabulated profile queried at r = " + std::to_string(r) +
                     " below its first sample " + std::to_string(rs.front()));
  }
  if (r > rs.back()) {
    if (!t.tail_exponent) {
      throw OutOfRange("tabulated profile queried at r = " + std::to_string(r) +
                       " beyond its range with no declared tail exponent");
    }
    return bs.back() * std::pow(r / rs.back(), -*t.tail_exponent);
  }
  auto it = std::upper_bound(rs.begin(), rs.end(), r);
  if (it == rs.end()) return bs.back();
  const auto hi = static_cast<std::size_t>(it - rs.begin());
  const std::size_t lo = hi - 1;
  const double r0 = rs[lo], r1 = rs[hi];
  if (r0 <= 0.0) {
    const double w = (r - r0) / (r1 - r0);
    return bs[lo] + w * (bs[hi] - bs[lo]);
  }
  const double w = std::log(r / r0) / std::log(r1 / r0);
  return std::exp(std::log(bs[lo]) + w * (std::log(bs[hi]) - std::log(bs[lo])));
}

}  // namespace

RadialProfile RadialProfile::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("coefficient.value", "constant coefficient must be positive");
  }
  return RadialProfile(ConstantProfile{value});
}

RadialProfile RadialProfile::power_tail(double l, double amplitude, double m, double r0) {
  if (!std::isfinite(l)) throw InvalidArgument("coefficient.l", "must be finite");
  if (!std::isfinite(m)) throw InvalidArgument("coefficient.m", "must be finite");
  if (!std::isfinite(amplitude)) throw InvalidArgument("coefficient.A", "must be finite");
  if (!(r0 > 0.0)) throw InvalidArgument("coefficient.r0", "must be positive");
  if (amplitude < 0.0) {
    // b = rho^{-l} (1 + A rho^{l-m}) with rho = sqrt(r0^2 + r^2) >= r0.
    const bool positive = (m > l) ? (1.0 + amplitude * std::pow(r0, l - m) > 0.0)
                                  : (m == l && 1.0 + amplitude > 0.0);
    if (!positive) {
      throw InvalidArgument("coefficient.A", "negative amplitude makes the coefficient non-positive");
    }
  }
  return RadialProfile(PowerTail{l, m, amplitude, r0});
}

RadialProfile RadialProfile::tabulated(std::vector<double> r, std::vector<double> b,
                                       std::optional<double> tail_exponent) {
  if (r.size() != b.size()) throw InvalidArgument("coefficient.table", "r and b differ in length");
  if (r.size() < 2) throw InvalidArgument("coefficient.table", "needs at least two samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0.0) || !std::isfinite(r[i])) {
      throw InvalidArgument("coefficient.table", "radii must be finite and nonnegative");
    }
    if (i > 0 && !(r[i] > r[i - 1])) {
      throw InvalidArgument("coefficient.table", "radii must be strictly increasing");
    }
    if (!(b[i] > 0.0) || !std::isfinite(b[i])) {
      throw InvalidArgument("coefficient.table", "values must be positive");
    }
  }
  return RadialProfile(Tabulated{std::move(r), std::move(b), tail_exponent});
}

RadialProfile RadialProfile::callable(RealFn fn, std::optional<double> tail_exponent,
                                      std::string label) {
  if (!fn) throw InvalidArgument("coefficient", "empty callable");
  return RadialProfile(CallableProfile{std::move(fn), tail_exponent, std::move(label)});
}

RadialProfile::Kind RadialProfile::kind() const {
  return static_cast<Kind>(rep_.index());
}

double RadialProfile::operator()(double r) const {
  if (!(r >= 0.0)) throw InvalidArgument("r", "coefficient evaluated at negative radius");
  const double value = std::visit(
      Overloaded{
          [r](const PowerTail& p) {
            const double rho2 = p.r0 * p.r0 + r * r;
            double v = std::pow(rho2, -0.5 * p.l);
            if (p.amplitude != 0.0) v += p.amplitude * std::pow(rho2, -0.5 * p.m);
            return v;
          },
          [r](const Tabulated& t) { return eval_tabulated(t, r); },
          [](const ConstantProfile& c) { return c.value; },
          [r](const CallableProfile& c) { return c.fn(r); },
      },
      rep_);
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidCoefficient("coefficient is not positive at r = " + std::to_string(r) +
                             " (value " + std::to_string(value) + ")");
  }
  return value;
}

std::optional<double> RadialProfile::declared_tail() const {
  return std::visit(Overloaded{
                        [](const PowerTail& p) -> std::optional<double> {
                          if (p.amplitude > 0.0) return std::min(p.l, p.m);
                          return p.l;
                        },
                        [](const Tabulated& t) { return t.tail_exponent; },
                        [](const ConstantProfile&) -> std::optional<double> { return 0.0; },
                        [](const CallableProfile& c) { return c.tail_exponent; },
                    },
                    rep_);
}

std::optional<TailInfo> RadialProfile::tail() const {
  if (auto declared = declared_tail()) return TailInfo{*declared, 0.0, false};
  const auto* table = std::get_if<Tabulated>(&rep_);
  if (!table || !(table->r.back() > 0.0)) return std::nullopt;
  try {
    const auto fit = fit_loglog(table->r, table->b, FitWindow::last_decades(table->r.back()), 5);
    return TailInfo{-fit.exponent, fit.std_error, true};
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

double RadialProfile::table_end() const {
  if (const auto* t = std::get_if<Tabulated>(&rep_)) {
    return t->tail_exponent ? std::numeric_limits<double>::infinity() : t->r.back();
  }
  return std::numeric_limits<double>::infinity();
}

RealFn RadialProfile::as_function() const {
  return [self = *this](double r) { return self(r); };
}

RadialProfile load_profile_csv(const std::string& path, std::optional<double> tail_exponent) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("coefficient.path", "cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> r, b;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y;
    if (!(row >> x >> y)) throw InvalidArgument("coefficient.path", "malformed row: " + line);
    r.push_back(x);
    b.push_back(y);
  }
  return RadialProfile::tabulated(std::move(r), std::move(b), tail_exponent);
}

void save_profile_csv(const std::string& path, const RadialProfile& profile,
                      const RadialGrid& grid) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "r,b\n" << std::setprecision(17);
  for (double r : grid.nodes()) out << r << ',' << profile(r) << '\n';
}

const char* to_string(RadialProfile::Kind kind) {
  switch (kind) {
    case RadialProfile::Kind::power_tail: return "power_tail";
    case RadialProfile::Kind::tabulated: return "tabulated";
    case RadialProfile::Kind::constant: return "constant";
    case RadialProfile::Kind::callable: return "callable";
  }
  return "unknown";
}

}  // namespace hessianls
