#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hessianls {

/// Radial nodes 0 = r_0 < r_1 < ... < r_max. The usual construction is
/// linear on [0, r_lin] and log-spaced beyond, so that tail fits see several
/// decades of evenly weighted data.
class RadialGrid {
 public:
  /// Empty grid; a placeholder until assigned.
  RadialGrid() = default;

  /// Linear spacing with `linear_intervals` cells on [0, min(r_lin, r_max)],
  /// then `nodes_per_decade` log-spaced nodes per decade up to r_max.
  static RadialGrid hybrid(double r_lin, double r_max, int nodes_per_decade,
                           int linear_intervals = 100);

  /// Validates and adopts explicit nodes.
  static RadialGrid from_nodes(std::vector<double> nodes);

  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double r_max() const { return nodes_.back(); }

  /// Index of the segment [r_i, r_{i+1}] containing r (clamped to the range).
  std::size_t segment(double r) const;

  /// Nodes with r_lo <= r <= r_hi.
  std::vector<std::size_t> window(double r_lo, double r_hi) const;

 private:
  explicit RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {}
  std::vector<double> nodes_;
};

}  // namespace hessianls
