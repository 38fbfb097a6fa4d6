#include "hessianls/tail.hpp"

#include <cmath>
#include <sstream>

namespace hessianls {

namespace {
bool near(double x, double y) { return std::abs(x - y) <= kTailTolerance; }
}  // namespace

bool PowerLogTail::grows() const {
  if (near(power, 0.0)) return log_power > kTailTolerance;
  return power > 0.0;
}

std::string PowerLogTail::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << "r^" << power;
  if (!near(log_power, 0.0)) os << " (log r)^" << log_power;
  return os.str();
}

bool tail_integral_converges(const PowerLogTail& f) {
  if (near(f.power, -1.0)) return f.log_power < -1.0 - kTailTolerance;
  return f.power < -1.0;
}

std::optional<PowerLogTail> integrate_tail(const PowerLogTail& f) {
  if (near(f.power, -1.0)) {
    if (near(f.log_power, -1.0)) return std::nullopt;
    if (f.log_power > -1.0) return PowerLogTail{0.0, f.log_power + 1.0};
    return PowerLogTail::constant();
  }
  if (f.power > -1.0) return PowerLogTail{f.power + 1.0, f.log_power};
  return PowerLogTail::constant();
}

PowerLogTail one_plus_pow(const PowerLogTail& g, double e) {
  if (!g.grows()) return PowerLogTail::constant();
  return g.pow(e);
}

}  // namespace hessianls
