#pragma once

#include "cointreg/innovations.hpp"
#include "cointreg/norming.hpp"
#include "cointreg/regression_functions.hpp"
#include "cointreg/rng.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

namespace cointreg {

struct DgpConfig {
  InnovationConfig innov;
  RegressorCoeffSpec coeff;
  ThetaCoefficients theta{build_theta({ThetaKind::geometric, 0.5, {}}, 199)};
  bool waive_theta_check = false;
  RegressionFunction m0 = RegressionFunction::zero();
  /// Pre-sample length B; defaults to max(M, len(theta)).
  std::optional<std::size_t> burn_in;
  /// Constant standing in for the slowly varying rho_k; defaults to
  /// scale^(1/alpha) of the innovation law.
  std::optional<double> rho_scale;

  void validate() const;
  std::size_t resolved_burn_in() const;
  double resolved_rho_scale() const;
  NormingSequences norming(std::size_t n) const;
};

/// x_t = sum_{s=1}^t v_s on N(0,1) increments (alpha = 2, scale 1/2),
/// exogenous i.i.d. N(0,1) disturbances, m0 = 0, d_n = (n/2)^(1/2).
DgpConfig unit_root_gaussian();

struct SamplePath {
  std::size_t n = 0;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> y;
  std::vector<double> epsilon; ///< in-sample eps_1..eps_n
  std::vector<double> eta;     ///< in-sample eta_1..eta_n
  NormingConstants norming{};  ///< c_n, d_n, e_n
  double rho_scale = 1.0;
};

/// Draws (eps_t, eta_t) for t = 1-(B+M), ..., n from one stream, then
/// v_t = sum_{k<=M} phi_k eps_{t-k}, x_t = sum_{s=1}^t v_s,
/// u_t = sum_k theta_k eta_{t-k}, y_t = m0(x_t) + u_t.
SamplePath simulate_path(const DgpConfig& cfg, std::size_t n, const StreamId& stream);

/// CSV with header "t,x,u,y".
void write_path_csv(std::ostream& os, const SamplePath& path);

} // namespace cointreg
