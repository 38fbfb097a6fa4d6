#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hessianls/profile.hpp"

namespace hessianls {

using ScalarField = std::function<double(std::span<const double>)>;

/// A coefficient b(x) on R^dim that need not be radial.
struct NonRadialField {
  int dim = 3;
  ScalarField value;
  std::string name;
  /// Known decay exponents of the envelopes, when available in closed form.
  std::optional<double> lower_tail;
  std::optional<double> oscillation_tail;
  /// An exact entire solution for this coefficient, if one is known.
  ScalarField known_solution;
};

/// b(x) = 8 (2 x1^2 + x2^2 + x3^2 + 1)^{-1/2} on R^3. With k = 1 and
/// gamma = 1/2 it has the entire solution u = 2 x1^2 + x2^2 + x3^2 + 1 while
/// its oscillation decays only like 1/r.
NonRadialField anisotropic_quadratic_field();

/// Looks up a built-in field by name ("anisotropic_quadratic").
std::optional<NonRadialField> builtin_field(std::string_view name);
std::vector<std::string> builtin_field_names();

/// The first `count` points of a deterministic nested point sequence on the
/// unit sphere S^{dim-1}: the 2*dim coordinate directions, then a Kronecker
/// (generalized golden ratio) sequence mapped to the sphere. A prefix of the
/// sequence is always a subset of a longer one.
std::vector<std::vector<double>> sphere_points(int dim, std::size_t count);

/// b_osc = b_upper - b_star >= 0, with its own evaluation so closed forms can
/// avoid cancellation.
class OscillationProfile {
 public:
  static OscillationProfile zero();
  OscillationProfile(RealFn fn, std::optional<TailInfo> tail);

  double operator()(double r) const;
  bool identically_zero() const { return zero_; }
  const std::optional<TailInfo>& tail() const { return tail_; }

 private:
  OscillationProfile() = default;
  RealFn fn_;
  std::optional<TailInfo> tail_;
  bool zero_ = false;
};

/// Sphere-wise infimum, supremum and oscillation of a coefficient.
struct RadializedTriple {
  RadialProfile b_star;
  RadialProfile b_upper;
  OscillationProfile b_osc;
};

/// Tabulates min and max of `field` over `sphere_points` points on each grid
/// sphere. Throws InvalidArgument when sphere_points < 32 or the dimensions
/// disagree, InvalidCoefficient when the field is not positive somewhere.
RadializedTriple radialize(const NonRadialField& field, const RadialGrid& grid,
                           std::size_t sphere_points);

/// A radial coefficient: both envelopes equal b and b_osc vanishes.
RadializedTriple radial_triple(const RadialProfile& b);

/// b_star = power_tail(l), b_upper = b_star + A (r0^2 + r^2)^{-m/2}.
RadializedTriple oscillating_power_triple(double l, double m, double amplitude, double r0 = 1.0);

/// Generic envelopes; b_osc is their difference with an optional declared tail.
RadializedTriple envelope_triple(RadialProfile b_star, RadialProfile b_upper,
                                 std::optional<double> oscillation_tail = std::nullopt);

}  // namespace hessianls
