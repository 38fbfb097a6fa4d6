#pragma once

#include <optional>
#include <string>

namespace hessianls {

/// Asymptotic shape c r^power (log r)^log_power of a positive function as
/// r -> infinity. A function tending to a positive constant is {0, 0}.
struct PowerLogTail {
  double power = 0.0;
  double log_power = 0.0;

  static PowerLogTail constant() { return {0.0, 0.0}; }
  static PowerLogTail monomial(double power) { return {power, 0.0}; }

  PowerLogTail operator*(const PowerLogTail& other) const {
    return {power + other.power, log_power + other.log_power};
  }
  /// (c r^p (log r)^q)^e.
  PowerLogTail pow(double e) const { return {power * e, log_power * e}; }

  /// Tends to infinity.
  bool grows() const;

  std::string describe() const;
};

/// Exponent comparisons are made with this absolute slack.
inline constexpr double kTailTolerance = 1e-12;

/// Whether int^infinity of the tail is finite.
bool tail_integral_converges(const PowerLogTail& f);

/// Shape of int_0^r f for a positive f with the given tail: the antiderivative
/// tail when it diverges, the constant shape when it converges. Returns
/// nullopt for the doubly logarithmic case r^{-1} (log r)^{-1}.
std::optional<PowerLogTail> integrate_tail(const PowerLogTail& f);

/// Shape of (1 + g)^e for positive g.
PowerLogTail one_plus_pow(const PowerLogTail& g, double e);

}  // namespace hessianls
