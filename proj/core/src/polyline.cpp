#include "hessianls/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hessianls/cauchy.hpp"
#include "hessianls/quadrature.hpp"

namespace hessianls {

namespace {

constexpr int kDefectSamples = 8;
constexpr int kMaxSegments = 1 << 16;

class BreakLineBuilder {
 public:
  BreakLineBuilder(const ProblemParams& p, const RadialProfile& b)
      : p_(p), b_(b), prefactor_(p.n / binomial_real(p.n, p.k)) {}

  // Moment of the current (partial) polyline from 0 to x, where x lies in the
  // last completed segment or the one being extended.
  double segment_moment(double r0, double r1, double psi0, double slope) const {
    return integrate(
        [&](double s) {
          return std::pow(s, p_.n - 1) * b_(s) * std::pow(psi0 + slope * (s - r0), p_.gamma);
        },
        r0, r1, 1e-13);
  }

  double functional(double r, double moment) const {
    if (r <= 0.0) return 0.0;
    return std::pow(prefactor_ * std::pow(r, p_.k - p_.n) * moment, 1.0 / p_.k);
  }

  Polyline build(double R, double r1, int segments, double epsilon) const {
    Polyline line;
    line.epsilon = epsilon;
    line.r.push_back(0.0);
    line.psi.push_back(p_.a);
    line.r.push_back(r1);
    line.psi.push_back(p_.a);

    // Flat first segment: psi' = 0, so the defect is F itself.
    double moment = segment_moment(0.0, r1, p_.a, 0.0);
    double defect = 0.0;
    for (int j = 1; j <= kDefectSamples; ++j) {
      const double x = r1 * j / kDefectSamples;
      defect = std::max(defect, functional(x, segment_moment(0.0, x, p_.a, 0.0)));
    }
    line.segment_defect.push_back(defect);

    const double h = (R - r1) / segments;
    for (int i = 0; i < segments; ++i) {
      const double r0 = line.r.back();
      const double x1 = (i + 1 == segments) ? R : r1 + h * (i + 1);
      const double psi0 = line.psi.back();
      const double slope = functional(r0, moment);
      const double psi1 = psi0 + slope * (x1 - r0);
      if (psi1 >= 2.0 * p_.a) {
        throw RadiusTooLarge("break line reaches 2a = " + std::to_string(2.0 * p_.a) +
                             " at r = " + std::to_string(x1) + " before R = " +
                             std::to_string(R) + "; choose a smaller R");
      }
      double seg_defect = 0.0;
      for (int j = 1; j <= kDefectSamples; ++j) {
        const double x = r0 + (x1 - r0) * j / kDefectSamples;
        const double m = moment + segment_moment(r0, x, psi0, slope);
        seg_defect = std::max(seg_defect, std::abs(slope - functional(x, m)));
      }
      line.segment_defect.push_back(seg_defect);
      moment += segment_moment(r0, x1, psi0, slope);
      line.r.push_back(x1);
      line.psi.push_back(psi1);
    }
    line.max_defect = *std::max_element(line.segment_defect.begin(), line.segment_defect.end());
    return line;
  }

  double max_coefficient(double R) const {
    double mx = 0.0;
    constexpr int samples = 2048;
    for (int i = 0; i <= samples; ++i) mx = std::max(mx, b_(R * i / samples));
    return mx;
  }

 private:
  const ProblemParams& p_;
  const RadialProfile& b_;
  double prefactor_;
};

}  // namespace

double Polyline::operator()(double x) const {
  if (x <= r.front()) return psi.front();
  if (x >= r.back()) return psi.back();
  auto it = std::upper_bound(r.begin(), r.end(), x);
  const auto hi = static_cast<std::size_t>(it - r.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - r[lo]) / (r[hi] - r[lo]);
  return psi[lo] + w * (psi[hi] - psi[lo]);
}

Polyline euler_polyline(const ProblemParams& params, const RadialProfile& b, double R,
                        double epsilon) {
  params.validate();
  if (!(R > 0.0)) throw InvalidArgument("R", "must be positive");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon", "must be positive");

  const BreakLineBuilder builder(params, b);
  const double b_max = builder.max_coefficient(R);
  const double r_bar = std::pow(binomial_real(params.n, params.k), 1.0 / params.k) * epsilon /
                       (std::pow(b_max, 1.0 / params.k) *
                        std::pow(2.0 * params.a, params.gamma / params.k));
  const double r1 = std::min(r_bar, 0.5 * R);

  for (int segments = 4; segments <= kMaxSegments; segments *= 2) {
    Polyline line = builder.build(R, r1, segments, epsilon);
    if (line.max_defect < epsilon) return line;
  }
  throw IntegrationFailure("break line did not reach defect < epsilon within " +
                               std::to_string(kMaxSegments) + " segments",
                           CauchyState{});
}

}  // namespace hessianls
