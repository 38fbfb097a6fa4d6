#include "hessianls/field.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>

#include "hessianls/errors.hpp"
#include "hessianls/loglog_fit.hpp"

namespace hessianls {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Root of x^{d+1} = x + 1; its inverse powers give a low-discrepancy
// additive recurrence in d dimensions.
double generalized_golden(int d) {
  double x = 2.0;
  for (int it = 0; it < 64; ++it) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

std::optional<TailInfo> fit_tail(const RadialGrid& grid, const std::vector<double>& values) {
  try {
    const auto fit = fit_loglog(grid.nodes(), values, FitWindow::last_decades(grid.r_max()), 5);
    return TailInfo{-fit.exponent, fit.std_error, true};
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

}  // namespace

NonRadialField anisotropic_quadratic_field() {
  NonRadialField f;
  f.dim = 3;
  f.name = "anisotropic_quadratic";
  f.value = [](std::span<const double> x) {
    return 8.0 / std::sqrt(2.0 * x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + 1.0);
  };
  f.lower_tail = 1.0;
  f.oscillation_tail = 1.0;
  f.known_solution = [](std::span<const double> x) {
    return 2.0 * x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + 1.0;
  };
  return f;
}

std::optional<NonRadialField> builtin_field(std::string_view name) {
  if (name == "anisotropic_quadratic") return anisotropic_quadratic_field();
  return std::nullopt;
}

std::vector<std::string> builtin_field_names() { return {"anisotropic_quadratic"}; }

std::vector<std::vector<double>> sphere_points(int dim, std::size_t count) {
  if (dim < 2) throw InvalidArgument("dim", "sphere sampling needs dim >= 2");
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  for (int axis = 0; axis < dim && pts.size() < count; ++axis) {
    for (double sign : {1.0, -1.0}) {
      if (pts.size() == count) break;
      std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
      p[static_cast<std::size_t>(axis)] = sign;
      pts.push_back(std::move(p));
    }
  }

  // dim == 3 uses the area-preserving cylinder map on a 2D sequence; other
  // dimensions push a dim-dimensional sequence through the normal quantile and
  // project, which is rotation invariant in distribution.
  const int seq_dim = (dim == 3) ? 2 : dim;
  const double g = generalized_golden(seq_dim);
  std::vector<double> alpha(static_cast<std::size_t>(seq_dim));
  for (int j = 0; j < seq_dim; ++j) alpha[static_cast<std::size_t>(j)] = std::pow(g, -(j + 1));

  for (std::size_t i = 1; pts.size() < count; ++i) {
    std::vector<double> t(static_cast<std::size_t>(seq_dim));
    for (std::size_t j = 0; j < t.size(); ++j) {
      t[j] = std::fmod(0.5 + static_cast<double>(i) * alpha[j], 1.0);
    }
    std::vector<double> p(static_cast<std::size_t>(dim));
    if (dim == 3) {
      const double z = 1.0 - 2.0 * t[0];
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.0 * kPi * t[1];
      p = {rho * std::cos(phi), rho * std::sin(phi), z};
    } else {
      double norm = 0.0;
      for (std::size_t j = 0; j < p.size(); ++j) {
        const double clamped = std::clamp(t[j], 1e-12, 1.0 - 1e-12);
        p[j] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * clamped - 1.0);
        norm += p[j] * p[j];
      }
      norm = std::sqrt(norm);
      if (norm == 0.0) continue;
      for (double& c : p) c /= norm;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

OscillationProfile OscillationProfile::zero() {
  OscillationProfile p;
  p.zero_ = true;
  p.fn_ = [](double) { return 0.0; };
  return p;
}

OscillationProfile::OscillationProfile(RealFn fn, std::optional<TailInfo> tail)
    : fn_(std::move(fn)), tail_(tail) {}

double OscillationProfile::operator()(double r) const {
  if (zero_) return 0.0;
  return std::max(0.0, fn_(r));
}

RadializedTriple radialize(const NonRadialField& field, const RadialGrid& grid,
                           std::size_t sphere_point_count) {
  if (sphere_point_count < 32) throw InvalidArgument("sphere_points", "must be >= 32");
  if (!field.value) throw InvalidArgument("field", "empty field");
  if (field.dim < 3) throw InvalidArgument("field.dim", "must be >= 3");

  const auto dirs = sphere_points(field.dim, sphere_point_count);
  std::vector<double> lo(grid.size()), hi(grid.size()), osc(grid.size());
  std::vector<double> x(static_cast<std::size_t>(field.dim));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (const auto& d : dirs) {
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = r * d[j];
      const double v = field.value(x);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidCoefficient("field '" + field.name + "' is not positive at radius " +
                                 std::to_string(r));
      }
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      if (r == 0.0) break;
    }
    lo[i] = mn;
    hi[i] = mx;
    osc[i] = mx - mn;
  }

  const auto lower_tail = field.lower_tail ? std::optional<TailInfo>(TailInfo{*field.lower_tail, 0.0, false})
                                           : fit_tail(grid, lo);
  const auto upper_tail = field.lower_tail ? lower_tail : fit_tail(grid, hi);

  bool zero = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (osc[i] > 1e-12 * hi[i]) zero = false;
  }

  std::vector<double> nodes(grid.nodes().begin(), grid.nodes().end());
  RadializedTriple triple{
      RadialProfile::tabulated(nodes, lo, lower_tail ? std::optional(lower_tail->exponent) : std::nullopt),
      RadialProfile::tabulated(nodes, hi, upper_tail ? std::optional(upper_tail->exponent) : std::nullopt),
      OscillationProfile::zero()};
  if (zero) return triple;

  std::optional<TailInfo> osc_tail;
  if (field.oscillation_tail) {
    osc_tail = TailInfo{*field.oscillation_tail, 0.0, false};
  } else {
    osc_tail = fit_tail(grid, osc);
  }
  // Piecewise-linear between nodes, power-law beyond the last one.
  auto osc_fn = [nodes, osc, osc_tail](double r) {
    if (r >= nodes.back()) {
      if (!osc_tail) return osc.back();
      return osc.back() * std::pow(r / nodes.back(), -osc_tail->exponent);
    }
    auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
    const auto h = static_cast<std::size_t>(it - nodes.begin());
    const std::size_t l = h - 1;
    const double w = (r - nodes[l]) / (nodes[h] - nodes[l]);
    return osc[l] + w * (osc[h] - osc[l]);
  };
  triple.b_osc = OscillationProfile(osc_fn, osc_tail);
  return triple;
}

RadializedTriple radial_triple(const RadialProfile& b) {
  return {b, b, OscillationProfile::zero()};
}

RadializedTriple oscillating_power_triple(double l, double m, double amplitude, double r0) {
  if (!(amplitude >= 0.0)) throw InvalidArgument("coefficient.A", "oscillation amplitude must be >= 0");
  auto lower = RadialProfile::power_tail(l, 0.0, 0.0, r0);
  if (amplitude == 0.0) return radial_triple(lower);
  auto upper = RadialProfile::power_tail(l, amplitude, m, r0);
  auto osc = [amplitude, m, r0](double r) { return amplitude * std::pow(r0 * r0 + r * r, -0.5 * m); };
  return {lower, upper, OscillationProfile(osc, TailInfo{m, 0.0, false})};
}

RadializedTriple envelope_triple(RadialProfile b_star, RadialProfile b_upper,
                                 std::optional<double> oscillation_tail) {
  auto osc = [lo = b_star, hi = b_upper](double r) { return hi(r) - lo(r); };
  std::optional<TailInfo> tail;
  if (oscillation_tail) tail = TailInfo{*oscillation_tail, 0.0, false};
  return {std::move(b_star), std::move(b_upper), OscillationProfile(osc, tail)};
}

}  // namespace hessianls
