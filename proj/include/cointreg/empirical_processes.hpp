#pragma once

#include "cointreg/dgp.hpp"
#include "cointreg/grid.hpp"
#include "cointreg/kernels.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cointreg {

struct SupStatistic {
  double value = 0.0;    ///< >= 0
  double argmax_a = 0.0; ///< grid node attaining the sup
  std::size_t n = 0;
  double h = 0.0;
  double scaled_by_log = 0.0; ///< value / log n (0 when n = 1)
};

/// (e_n h)^(-1/2) max_a |sum_t f((x_t - d_n a) / h) u_t| over the grid nodes.
SupStatistic covariance_sup(const SamplePath& path, const KernelFunction& f, double h, const EvalGrid& grid);

/// (e_n h)^(-1/2) max_a |sum_t g((x_t - d_n a) / h)| for a zero-mean g.
/// Throws InvalidParameter if |int g| > 1e-9 (Simpson, 10^5 intervals).
SupStatistic zero_energy_sup(const SamplePath& path, const KernelFunction& g, double h, const EvalGrid& grid);

/// Reference versions of the two statistics by direct double loops.
SupStatistic covariance_sup_direct(const SamplePath& path, const KernelFunction& f, double h,
                                   const EvalGrid& grid);
SupStatistic zero_energy_sup_direct(const SamplePath& path, const KernelFunction& g, double h,
                                    const EvalGrid& grid);

/// int g over its support.
double function_integral(const KernelFunction& g);

/// eta_t 1{|eta_t| <= n^(1/q0)} minus the sample mean of that truncated
/// series (the sample mean stands in for E[eta 1{|eta| <= n^(1/q0)}]).
std::vector<double> truncate_eta(std::span<const double> eta, std::size_t n, double q0);

} // namespace cointreg
