#pragma once

#include "cointreg/dgp.hpp"
#include "cointreg/kernels.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cointreg {

/// Evaluation nodes, strictly increasing. A node a sits at x = scale * a;
/// grids built from a path use scale = d_n, so nodes are in the standardised
/// units of the signal process. Nodes lie on the lattice {j * mesh} but need
/// not be contiguous: stretches of the line where every kernel summand
/// vanishes may be skipped.
struct EvalGrid {
  std::vector<double> nodes;
  double mesh = 0.0;
  double scale = 1.0;

  std::size_t size() const { return nodes.size(); }
  double x(std::size_t i) const { return scale * nodes[i]; }
  void validate() const;
};

/// Lattice resolution policy. mesh = min(h / (resolution * d_n), range / range_nodes),
/// where range is the padded sample range in grid units.
struct GridPolicy {
  double resolution = 512.0;
  std::size_t range_nodes = 16384;
};

/// Lattice nodes within c_K h of some x_t (plus the first node beyond on each
/// side, where every summand is zero), in units of d_n.
EvalGrid make_grid(const SamplePath& path, const Kernel& kernel, double h, const GridPolicy& policy = {});

/// Contiguous lattice lo, lo + mesh, ..., up to hi (inclusive within rounding).
EvalGrid uniform_grid(double lo, double hi, double mesh, double scale = 1.0);

/// Sample values in ascending order with their time indices.
struct SortedSample {
  std::vector<double> x;
  std::vector<std::size_t> order; ///< order[i] = time index of x[i]

  explicit SortedSample(std::span<const double> values);

  /// Gathers a time-indexed series into sorted order.
  std::vector<double> gather(std::span<const double> series) const;
};

/// Calls visit(i, center, begin, end) for each grid node i with center =
/// scale * node, where [begin, end) indexes the sorted sample values within
/// `radius` of the center. Both pointers only move forward.
template <class Visit>
void for_each_window(const SortedSample& sample,
                     const EvalGrid& grid,
                     double scale,
                     double radius,
                     Visit&& visit)
{
  const auto& xs = sample.x;
  const std::size_t n = xs.size();
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double center = scale * grid.nodes[i];
    while (lo < n && xs[lo] < center - radius)
      ++lo;
    if (hi < lo)
      hi = lo;
    while (hi < n && xs[hi] <= center + radius)
      ++hi;
    visit(i, center, lo, hi);
  }
}

/// Trapezoid rule over consecutive nodes (in grid units).
double trapezoid(const EvalGrid& grid, std::span<const double> values);

} // namespace cointreg
