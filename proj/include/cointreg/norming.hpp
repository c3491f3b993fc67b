#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cointreg {

/// Memory regime of the regressor increments v_t = sum_k phi_k eps_{t-k}.
enum class Regime {
  short_memory,  ///< summable phi with nonzero sum, alpha in (1,2]
  long_memory,   ///< phi_k ~ k^(H-1-1/alpha), H > 1/alpha
  antipersistent ///< phi_k ~ k^(H-1-1/alpha), H < 1/alpha, sum phi = 0
};

Regime parse_regime(const std::string& name);
std::string to_string(Regime regime);

struct RegressorCoeffSpec {
  Regime regime = Regime::short_memory;
  double H = 0.5;
  double alpha = 2.0;
  std::vector<double> sm_phi{1.0};
  std::size_t max_lag = 10'000;

  void validate() const;

  /// Self-similarity index of the limit process; 1/alpha in the short-memory case.
  double memory_index() const { return regime == Regime::short_memory ? 1.0 / alpha : H; }

  /// Highest lag actually carried by build_phi.
  std::size_t effective_lag() const
  {
    return regime == Regime::short_memory ? sm_phi.size() - 1 : max_lag;
  }
};

/// Coefficients phi_0..phi_M.
///
/// Long memory uses phi_k = k^(H-1-1/alpha) for k >= 1 and
/// phi_0 = -zeta(1 + 1/alpha - H), which removes the constant offset
/// between the partial sums and c_k (Euler-Maclaurin), so a_i / c_i -> 1
/// at rate i^(H-1/alpha-1) instead of i^(1/alpha-H).
/// Antipersistent uses phi_0 = -sum_{k=1}^M phi_k, so the list sums to zero.
std::vector<double> build_phi(const RegressorCoeffSpec& spec);

/// sum_{k>M} |phi_k| dropped by the lag cap; +infinity in the long-memory case.
double phi_tail_mass(const RegressorCoeffSpec& spec);

/// c_0 = 1; c_k = sum(phi) (short memory) or |H - 1/alpha|^-1 k^(H - 1/alpha).
double build_c(const RegressorCoeffSpec& spec, std::size_t k);

struct NormingConstants {
  double c;
  double d;
  double e;
};

/// The norming sequences c_k, d_k = k^(1/alpha) c_k rho, e_k = k / d_k,
/// with the slowly varying factor fixed to the constant rho_scale.
class NormingSequences {
public:
  NormingSequences(RegressorCoeffSpec spec, double rho_scale, std::size_t horizon);

  double c(std::size_t k) const { return build_c(spec_, k); }
  double d(std::size_t k) const;
  double e(std::size_t k) const { return static_cast<double>(k) / d(k); }
  NormingConstants at(std::size_t k) const { return {c(k), d(k), e(k)}; }

  double rho_scale() const { return rho_; }
  std::size_t horizon() const { return horizon_; }
  const RegressorCoeffSpec& spec() const { return spec_; }

private:
  RegressorCoeffSpec spec_;
  double rho_;
  std::size_t horizon_;
};

NormingSequences build_norming(const RegressorCoeffSpec& spec, double rho_scale, std::size_t n);

/// rho for exact stable innovations of the given scale: scale^(1/alpha).
double natural_rho_scale(double alpha, double scale);

// Disturbance coefficients --------------------------------------------------

enum class ThetaKind { geometric, polynomial, explicit_list };

struct ThetaSpec {
  ThetaKind kind = ThetaKind::geometric;
  double parameter = 0.5; ///< ratio r (geometric) or decay power p (polynomial)
  std::vector<double> coefficients; ///< explicit list
};

struct ThetaCoefficients {
  std::vector<double> theta;
  /// Whether sum |theta_k| k^(7/6) is finite: always for geometric, p > 13/6
  /// for polynomial, and a numerical Cauchy check for explicit lists
  /// (mass over the last decade of lags below 1e-6 of the total; lists
  /// with fewer than 11 entries pass).
  bool admissible;
};

/// theta_0..theta_M. Polynomial uses theta_0 = 1, theta_k = k^-p.
/// Explicit lists are returned as given (M ignored) and flagged, not rejected.
ThetaCoefficients build_theta(const ThetaSpec& spec, std::size_t M);

bool explicit_theta_admissible(const std::vector<double>& theta);

} // namespace cointreg
