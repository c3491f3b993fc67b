#include "cointreg/grid.hpp"

#include "cointreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cointreg {

void EvalGrid::validate() const
{
  require(mesh > 0.0, "grid mesh must be positive");
  require(scale > 0.0, "grid scale must be positive");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    require(nodes[i] > nodes[i - 1], "grid nodes must be strictly increasing");
}

SortedSample::SortedSample(std::span<const double> values)
{
  order.resize(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  x.resize(values.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    x[i] = values[order[i]];
}

std::vector<double> SortedSample::gather(std::span<const double> series) const
{
  std::vector<double> out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    out[i] = series[order[i]];
  return out;
}

EvalGrid make_grid(const SamplePath& path, const Kernel& kernel, double h, const GridPolicy& policy)
{
  require(path.n >= 1, "path must be nonempty");
  require(h > 0.0, "bandwidth must be positive");
  require(policy.resolution > 0.0 && policy.range_nodes > 0, "grid policy must be positive");

  const double d = path.norming.d;
  const double radius = kernel.support_radius() * h / d;
  const auto [min_it, max_it] = std::minmax_element(path.x.begin(), path.x.end());
  const double range = (*max_it - *min_it) / d + 2.0 * radius;

  EvalGrid grid;
  grid.scale = d;
  grid.mesh = std::min(h / (policy.resolution * d), range / static_cast<double>(policy.range_nodes));

  std::vector<double> a(path.x.begin(), path.x.end());
  std::sort(a.begin(), a.end());
  for (double& v : a)
    v /= d;

  bool open = false;
  long long run_lo = 0, run_hi = 0;
  auto flush = [&] {
    for (long long j = run_lo; j <= run_hi; ++j)
      grid.nodes.push_back(static_cast<double>(j) * grid.mesh);
  };
  for (double v : a) {
    const auto jlo = static_cast<long long>(std::floor((v - radius) / grid.mesh));
    const auto jhi = static_cast<long long>(std::ceil((v + radius) / grid.mesh));
    if (open && jlo <= run_hi + 1) {
      run_hi = std::max(run_hi, jhi);
    } else {
      if (open)
        flush();
      run_lo = jlo;
      run_hi = jhi;
      open = true;
    }
  }
  if (open)
    flush();
  return grid;
}

EvalGrid uniform_grid(double lo, double hi, double mesh, double scale)
{
  require(mesh > 0.0 && hi >= lo, "uniform grid needs mesh > 0 and hi >= lo");
  EvalGrid grid;
  grid.mesh = mesh;
  grid.scale = scale;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / mesh + 1e-9)) + 1;
  grid.nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    grid.nodes.push_back(lo + static_cast<double>(i) * mesh);
  return grid;
}

double trapezoid(const EvalGrid& grid, std::span<const double> values)
{
  double total = 0.0;
  for (std::size_t i = 1; i < grid.nodes.size(); ++i)
    total += 0.5 * (grid.nodes[i] - grid.nodes[i - 1]) * (values[i] + values[i - 1]);
  return total;
}

} // namespace cointreg
