#pragma once

#include "cointreg/dgp.hpp"
#include "cointreg/grid.hpp"
#include "cointreg/kernels.hpp"
#include "cointreg/regression_functions.hpp"
#include "cointreg/signal_domains.hpp"

#include <cstdint>
#include <ostream>
#include <vector>

namespace cointreg {

/// Estimates at the nodes of a grid. Undefined estimates are NaN with
/// degenerate[i] = 1; for Nadaraya-Watson that means a zero denominator,
/// for local linear a design with fewer than two support points or a
/// condition number above local_linear_max_condition.
struct EstimateSheet {
  EvalGrid grid;
  std::vector<double> m_hat;
  std::vector<double> denom; ///< Psi_3(x) = sum_t K_h(x_t - x)
  std::vector<double> slope; ///< local-linear slope; NaN for Nadaraya-Watson
  std::vector<std::uint8_t> degenerate;

  std::size_t degenerate_count() const;
};

inline constexpr double local_linear_max_condition = 1e12;

EstimateSheet nadaraya_watson(const SamplePath& path, const Kernel& kernel, double h, const EvalGrid& grid);

/// Kernel-weighted least squares of y on (1, x_t - x) at each node. The
/// 2x2 normal equations are formed in the standardised offset (x_t - x) / h,
/// so the condition number does not depend on the units of x.
EstimateSheet local_linear(const SamplePath& path, const Kernel& kernel, double h, const EvalGrid& grid);

/// m_hat - m0 = Psi_1 / Psi_3 + Psi_2 / Psi_3 at every node.
struct NwDecomposition {
  std::vector<double> psi1; ///< sum K_h(x_t - x) (m0(x_t) - m0(x))
  std::vector<double> psi2; ///< sum K_h(x_t - x) u_t
  std::vector<double> psi3; ///< sum K_h(x_t - x)
};

NwDecomposition decompose_nw(const SamplePath& path, const Kernel& kernel, double h, const EvalGrid& grid,
                             const RegressionFunction& m0);

/// max |m_hat(x) - m0(x)| over the grid nodes lying in `domain`.
/// Throws NumericError if no node lies in the domain ("empty evaluation
/// set") or if a node in the domain has no defined estimate.
double sup_error(const EstimateSheet& sheet, const RegressionFunction& m0, const DomainSet& domain);

struct DerivativeBounds {
  double m1; ///< sup |m0'|
  double m2; ///< sup |m0''|
};

/// Suprema over each interval of `domain`, sampled at spacing mesh / 10
/// (endpoints included). Infinite intervals are rejected.
DerivativeBounds derivative_bounds(const RegressionFunction& m0, const DomainSet& domain, double mesh);

/// CSV "x,m_hat,denom,slope,degenerate".
void write_estimate_csv(std::ostream& os, const EstimateSheet& sheet);

} // namespace cointreg
