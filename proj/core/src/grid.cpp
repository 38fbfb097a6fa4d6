#include "hessianls/grid.hpp"

#include <algorithm>
#include <cmath>

#include "hessianls/errors.hpp"

namespace hessianls {

RadialGrid RadialGrid::hybrid(double r_lin, double r_max, int nodes_per_decade,
                              int linear_intervals) {
  if (!(r_lin > 0.0)) throw InvalidArgument("grid.r_lin", "must be positive");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw InvalidArgument("grid.r_max", "must be positive and finite");
  if (nodes_per_decade < 1) throw InvalidArgument("grid.nodes_per_decade", "must be >= 1");
  if (linear_intervals < 1) throw InvalidArgument("grid.linear_nodes", "must be >= 1");

  std::vector<double> nodes;
  const double lin_end = std::min(r_lin, r_max);
  nodes.reserve(static_cast<std::size_t>(linear_intervals) + 1);
  for (int i = 0; i <= linear_intervals; ++i) {
    nodes.push_back(lin_end * static_cast<double>(i) / linear_intervals);
  }
  if (r_max > lin_end) {
    const double decades = std::log10(r_max / lin_end);
    const int count = std::max(1, static_cast<int>(std::ceil(decades * nodes_per_decade - 1e-9)));
    for (int i = 1; i < count; ++i) {
      nodes.push_back(lin_end * std::pow(10.0, decades * i / count));
    }
    nodes.push_back(r_max);
  }
  return RadialGrid(std::move(nodes));
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) throw InvalidArgument("grid", "needs at least two nodes");
  if (nodes.front() != 0.0) throw InvalidArgument("grid", "first node must be 0");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1]) || !std::isfinite(nodes[i])) {
      throw InvalidArgument("grid", "nodes must be finite and strictly increasing");
    }
  }
  return RadialGrid(std::move(nodes));
}

std::size_t RadialGrid::segment(double r) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  if (it == nodes_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(idx, nodes_.size() - 2);
}

std::vector<std::size_t> RadialGrid::window(double r_lo, double r_hi) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] >= r_lo && nodes_[i] <= r_hi) out.push_back(i);
  }
  return out;
}

}  // namespace hessianls
