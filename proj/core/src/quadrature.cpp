#include "hessianls/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "hessianls/errors.hpp"

namespace hessianls {

double integrate(const RealFn& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  // Boost 1.74 compares the unscaled [-1, 1] error estimate against a scaled
  // tolerance, which forces full-depth recursion on short intervals. Mapping
  // to [-1, 1] first keeps the two on the same scale.
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      [&](double t) { return half * f(mid + half * t); }, -1.0, 1.0, 12, rel_tol, &error);
}

CumulativeIntegral::CumulativeIntegral(RealFn integrand, RadialGrid grid, double rel_tol)
    : integrand_(std::move(integrand)), grid_(std::move(grid)), rel_tol_(rel_tol) {
  cumulative_.resize(grid_.size(), 0.0);
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + integrate(integrand_, grid_[i - 1], grid_[i], rel_tol_);
  }
}

double CumulativeIntegral::operator()(double r) const {
  const double r_max = grid_.r_max();
  if (r <= 0.0) return 0.0;
  if (r > r_max) {
    if (r > r_max * (1.0 + 1e-12)) {
      throw OutOfRange("cumulative integral queried at r = " + std::to_string(r) +
                       " beyond r_max = " + std::to_string(r_max));
    }
    r = r_max;
  }
  const std::size_t i = grid_.segment(r);
  if (r == grid_[i]) return cumulative_[i];
  if (r == grid_[i + 1]) return cumulative_[i + 1];
  return cumulative_[i] + integrate(integrand_, grid_[i], r, rel_tol_);
}

struct KellerOssermanTransform::Impl {
  OperatorShape shape;
  double prefactor;  // n / C_n^k
  CumulativeIntegral inner;
  std::unique_ptr<CumulativeIntegral> potential;

  Impl(OperatorShape s, RealFn weight, const RadialGrid& grid, double tol)
      : shape(s),
        prefactor(s.n / binomial_real(s.n, s.k)),
        inner(
            [w = std::move(weight), n = s.n](double r) {
              return std::pow(r, n - 1) * w(r);
            },
            grid, tol) {}

  double flux(double r) const {
    if (r <= 0.0) return 0.0;
    const double m = inner(r);
    const double base = prefactor * std::pow(r, shape.k - shape.n) * m;
    return std::pow(std::max(base, 0.0), 1.0 / shape.k);
  }
};

KellerOssermanTransform::KellerOssermanTransform(OperatorShape shape, RealFn weight,
                                                 const RadialGrid& grid, double rel_tol) {
  shape.validate();
  auto impl = std::make_shared<Impl>(shape, std::move(weight), grid, rel_tol);
  const Impl* raw = impl.get();
  impl->potential = std::make_unique<CumulativeIntegral>(
      [raw](double r) { return raw->flux(r); }, grid, rel_tol);
  impl_ = std::move(impl);
}

double KellerOssermanTransform::inner(double r) const { return impl_->inner(r); }
double KellerOssermanTransform::flux(double r) const { return impl_->flux(r); }
double KellerOssermanTransform::potential(double r) const { return (*impl_->potential)(r); }
std::span<const double> KellerOssermanTransform::potential_at_nodes() const {
  return impl_->potential->node_values();
}
const RadialGrid& KellerOssermanTransform::grid() const { return impl_->inner.grid(); }
OperatorShape KellerOssermanTransform::shape() const { return impl_->shape; }

}  // namespace hessianls
