#include "hessianls/cauchy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hessianls/quadrature.hpp"

namespace hessianls {

namespace {

struct State {
  double u;
  double m;
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms) {
    out.u += h * c * k->u;
    out.m += h * c * k->m;
  }
  return out;
}

class CauchySystem {
 public:
  CauchySystem(const ProblemParams& p, const RadialProfile& b)
      : p_(p), b_(b), flux_prefactor_(p.n / binomial_real(p.n, p.k)),
        c_mixed_(binomial_real(p.n - 1, p.k - 1)),
        c_pure_(p.k <= p.n - 1 ? binomial_real(p.n - 1, p.k) : 0.0) {}

  double slope(double r, double m) const {
    if (r <= 0.0) return 0.0;
    const double base = flux_prefactor_ * std::pow(r, p_.k - p_.n) * std::max(m, 0.0);
    return std::pow(base, 1.0 / p_.k);
  }

  State rhs(double r, const State& y) const {
    const double u = std::max(y.u, std::numeric_limits<double>::min());
    return {slope(r, y.m), std::pow(r, p_.n - 1) * b_(r) * std::pow(u, p_.gamma)};
  }

  // u'' from the equation itself, given u' > 0 at r > 0.
  double second_derivative(double r, double u, double du) const {
    const double q = du / r;
    const double f = b_(r) * std::pow(u, p_.gamma);
    return (f - c_pure_ * std::pow(q, p_.k)) / (c_mixed_ * std::pow(q, p_.k - 1));
  }

 private:
  const ProblemParams& p_;
  const RadialProfile& b_;
  double flux_prefactor_;
  double c_mixed_;
  double c_pure_;
};

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<double> cauchy_rhs(const ProblemParams& params, const RadialProfile& b,
                               const RadialCurve& curve) {
  std::vector<double> f(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    f[i] = b(curve.r(i)) * std::pow(curve.u[i], params.gamma);
  }
  return f;
}

RadialCurve solve_cauchy(const ProblemParams& params, const RadialProfile& b,
                         const RadialGrid& grid, const SolverOptions& options) {
  params.validate();
  const CauchySystem sys(params, b);
  const std::size_t count = grid.size();
  RadialCurve curve{grid, std::vector<double>(count), std::vector<double>(count),
                    std::vector<double>(count), std::vector<double>(count)};

  const double r_series =
      options.r_series > 0.0 ? options.r_series : 1e-4 * std::min(10.0, grid.r_max());
  const double a_gamma = std::pow(params.a, params.gamma);
  const double curvature = std::pow(b(0.0) * a_gamma / binomial_real(params.n, params.k),
                                    1.0 / params.k);
  const int n = params.n;
  auto series_moment = [&](double r) {
    return a_gamma * integrate([&](double s) { return std::pow(s, n - 1) * b(s); }, 0.0, r);
  };

  std::size_t i = 0;
  for (; i < count && grid[i] <= r_series; ++i) {
    const double r = grid[i];
    curve.u[i] = params.a + 0.5 * curvature * r * r;
    curve.du[i] = curvature * r;
    curve.d2u[i] = curvature;
    curve.moment[i] = series_moment(r);
  }
  if (i == count) return curve;

  double r = r_series;
  State y{params.a + 0.5 * curvature * r * r, series_moment(r)};
  State k1 = sys.rhs(r, y);
  double h = r_series;
  std::size_t steps = 0;

  for (; i < count; ++i) {
    const double target = grid[i];
    while (r < target) {
      if (++steps > options.max_steps) {
        throw IntegrationFailure("step budget exhausted", {r, y.u, y.m});
      }
      const bool land = r + h >= target * (1.0 - 1e-14);
      const double step = land ? target - r : h;
      const State k2 = sys.rhs(r + c2 * step, axpy(y, step, {{a21, &k1}}));
      const State k3 = sys.rhs(r + c3 * step, axpy(y, step, {{a31, &k1}, {a32, &k2}}));
      const State k4 =
          sys.rhs(r + c4 * step, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 = sys.rhs(
          r + c5 * step, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const double r_next = land ? target : r + step;
      const State k6 = sys.rhs(
          r_next, axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const State y_next =
          axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const State k7 = sys.rhs(r_next, y_next);
      const State err = axpy(State{0.0, 0.0}, step,
                             {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});

      const double tiny = std::numeric_limits<double>::min();
      const double sc_u =
          options.abs_tol + options.rel_tol * std::max(std::abs(y.u), std::abs(y_next.u));
      const double sc_m = tiny + options.rel_tol * std::max(std::abs(y.m), std::abs(y_next.m));
      const double norm = std::max(std::abs(err.u) / sc_u, std::abs(err.m) / sc_m);

      if (std::isfinite(norm) && norm <= 1.0) {
        r = r_next;
        y = y_next;
        k1 = k7;
        if (y.u > options.overflow_guard) {
          throw FiniteBlowUp("solution exceeded the overflow guard at r = " + std::to_string(r),
                             {r, y.u, y.m});
        }
        const double grow = norm > 0.0 ? std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0) : 5.0;
        // A step shortened to hit a node says nothing about the natural size.
        h = land ? std::max(h, step * grow) : step * grow;
        continue;
      }
      if (!std::isfinite(y_next.u) || y_next.u > options.overflow_guard) {
        if (step < 1e-13 * r) {
          throw FiniteBlowUp("solution overflowed near r = " + std::to_string(r_next),
                             {r, y.u, y.m});
        }
      }
      h = step * (std::isfinite(norm) ? std::clamp(0.9 * std::pow(norm, -0.2), 0.1, 0.9) : 0.2);
      if (h < 1e-13 * r) {
        throw IntegrationFailure("step size underflow at r = " + std::to_string(r), {r, y.u, y.m});
      }
    }
    curve.u[i] = y.u;
    curve.moment[i] = y.m;
    curve.du[i] = sys.slope(r, y.m);
    curve.d2u[i] = sys.second_derivative(r, y.u, curve.du[i]);
  }
  return curve;
}

RadialCurve solve_linear_rhs(OperatorShape shape, const RadialProfile& b, const RadialGrid& grid) {
  shape.validate();
  const KellerOssermanTransform transform(shape, b.as_function(), grid);
  const std::size_t count = grid.size();
  RadialCurve curve{grid, std::vector<double>(count), std::vector<double>(count),
                    std::vector<double>(count), {}};
  const auto potential = transform.potential_at_nodes();
  const double c_mixed = binomial_real(shape.n - 1, shape.k - 1);
  const double c_pure = shape.k <= shape.n - 1 ? binomial_real(shape.n - 1, shape.k) : 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = grid[i];
    curve.u[i] = potential[i];
    if (r == 0.0) {
      curve.du[i] = 0.0;
      curve.d2u[i] = std::pow(b(0.0) / binomial_real(shape.n, shape.k), 1.0 / shape.k);
      continue;
    }
    curve.du[i] = transform.flux(r);
    const double q = curve.du[i] / r;
    curve.d2u[i] = (b(r) - c_pure * std::pow(q, shape.k)) / (c_mixed * std::pow(q, shape.k - 1));
  }
  return curve;
}

}  // namespace hessianls
