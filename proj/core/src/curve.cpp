#include "hessianls/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "hessianls/errors.hpp"
#include "hessianls/spectrum.hpp"

namespace hessianls {

std::vector<double> sigma_k_residual(const RadialCurve& curve, int n, int k,
                                     const std::vector<double>& rhs) {
  std::vector<double> res(curve.size(), 0.0);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double r = curve.r(i);
    const double q = (r > 0.0) ? curve.du[i] / r : curve.d2u[i];
    const double pure = (k <= n - 1) ? binomial_real(n - 1, k) * std::pow(q, k) : 0.0;
    const double mixed = binomial_real(n - 1, k - 1) * curve.d2u[i] * std::pow(q, k - 1);
    const double lhs = pure + mixed;
    const double scale = std::max({std::abs(rhs[i]), std::abs(pure) + std::abs(mixed),
                                   std::numeric_limits<double>::min()});
    res[i] = std::abs(lhs - rhs[i]) / scale;
  }
  return res;
}

void write_curve_csv(std::ostream& out, const RadialCurve& curve,
                     const std::vector<double>& residual) {
  out << "r,u,du,d2u,sigma_k_residual\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << curve.r(i) << ',' << curve.u[i] << ',' << curve.du[i] << ',' << curve.d2u[i] << ','
        << (i < residual.size() ? residual[i] : 0.0) << '\n';
  }
}

void write_curve_csv(const std::string& path, const RadialCurve& curve,
                     const std::vector<double>& residual) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_curve_csv(out, curve, residual);
}

RadialCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("csv", "empty curve file");
  std::vector<double> r, u, du, d2u;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double cols[4];
    if (!(row >> cols[0] >> cols[1] >> cols[2] >> cols[3])) {
      throw InvalidArgument("csv", "malformed curve row: " + line);
    }
    r.push_back(cols[0]);
    u.push_back(cols[1]);
    du.push_back(cols[2]);
    d2u.push_back(cols[3]);
  }
  return RadialCurve{RadialGrid::from_nodes(std::move(r)), std::move(u), std::move(du),
                     std::move(d2u), {}};
}

}  // namespace hessianls
