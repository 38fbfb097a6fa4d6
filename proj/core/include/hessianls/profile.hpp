#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hessianls/quadrature.hpp"

namespace hessianls {

/// (r0^2 + r^2)^{-l/2} + amplitude (r0^2 + r^2)^{-m/2}: behaves like
/// r^{-l} + A r^{-m} at infinity and stays regular at the origin.
struct PowerTail {
  double l = 0.0;
  double m = 0.0;
  double amplitude = 0.0;
  double r0 = 1.0;
};

/// Samples (r_i, b_i), interpolated linearly in (log r, log b) and
/// extrapolated beyond the last sample as b_last (r / r_last)^{-tail}.
struct Tabulated {
  std::vector<double> r;
  std::vector<double> b;
  std::optional<double> tail_exponent;
};

struct ConstantProfile {
  double value = 1.0;
};

struct CallableProfile {
  RealFn fn;
  std::optional<double> tail_exponent;
  std::string label;
};

/// Asymptotic decay rate b ~ r^{-exponent} together with how it was obtained.
struct TailInfo {
  double exponent = 0.0;
  double std_error = 0.0;
  bool fitted = false;
};

/// A positive radial coefficient b(r). Immutable once built.
class RadialProfile {
 public:
  enum class Kind { power_tail, tabulated, constant, callable };
  using Representation = std::variant<PowerTail, Tabulated, ConstantProfile, CallableProfile>;

  static RadialProfile constant(double value);
  static RadialProfile power_tail(double l, double amplitude = 0.0, double m = 0.0, double r0 = 1.0);
  static RadialProfile tabulated(std::vector<double> r, std::vector<double> b,
                                 std::optional<double> tail_exponent = std::nullopt);
  static RadialProfile callable(RealFn fn, std::optional<double> tail_exponent = std::nullopt,
                                std::string label = "callable");

  Kind kind() const;
  const Representation& representation() const { return rep_; }

  /// b(r) > 0. Throws InvalidArgument for r < 0, OutOfRange for tabulated
  /// queries outside the data with no tail, InvalidCoefficient when the value
  /// is not positive and finite.
  double operator()(double r) const;

  /// Tail exponent declared by construction (closed forms, explicit tails).
  std::optional<double> declared_tail() const;

  /// Declared tail if any, else a log-log fit over the last two decades of
  /// tabulated data (at least five samples), else nothing.
  std::optional<TailInfo> tail() const;

  /// Upper end of the tabulated range; +inf for the other kinds.
  double table_end() const;

  /// Convenience for callers that need a plain callable.
  RealFn as_function() const;

 private:
  explicit RadialProfile(Representation rep) : rep_(std::move(rep)) {}
  Representation rep_;
};

inline double eval(const RadialProfile& profile, double r) { return profile(r); }

/// Two-column CSV with a header line `r,b`.
RadialProfile load_profile_csv(const std::string& path,
                               std::optional<double> tail_exponent = std::nullopt);
void save_profile_csv(const std::string& path, const RadialProfile& profile,
                      const RadialGrid& grid);

const char* to_string(RadialProfile::Kind kind);

}  // namespace hessianls
