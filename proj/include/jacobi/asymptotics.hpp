#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "jacobi/model.hpp"
#include "jacobi/recurrence.hpp"

namespace jacobi {

using Complex = std::complex<double>;

/// Leading coefficients of P1(k) ~ a0 + a1/k and P2(k) ~ b0 + b1/k.
struct BACoefficients {
  double a0 = 0.0;
  double a1 = 0.0;
  double b0 = 1.0;
  double b1 = -1.0;
};

BACoefficients ba_coefficients(const ModulationParams& p, double lambda);

/// Roots of x^2 + a0 x + b0 = 0, ordered |plus| >= |minus|; a complex pair is
/// ordered with the positive imaginary part first.
std::pair<Complex, Complex> characteristic_roots(const BACoefficients& coeffs);

enum class AsymptoticVariant { PowerLaw, ExpSqrt };

/// Growth data of the two solutions
///   PowerLaw:  u_{2k-1} ~ alpha^k k^beta
///   ExpSqrt:   u_{2k-1} ~ alpha^k k^{-1/4} exp(delta sqrt(k))
/// with u_{2k} ~ coupling * u_{2k-1}.
struct AsymptoticDescriptor {
  AsymptoticVariant variant = AsymptoticVariant::PowerLaw;
  Complex alpha_plus;
  Complex alpha_minus;
  Complex beta_plus;
  Complex beta_minus;
  std::optional<Complex> delta_plus;
  std::optional<Complex> delta_minus;
  Complex coupling_plus;
  Complex coupling_minus;
  bool subordinate_exists = false;
  /// Set when |a0| is within 1e-6 of 2 but outside the regime tolerance; the
  /// beta formula is ill-conditioned there.
  bool near_degenerate_roots = false;
};

std::string_view to_string(AsymptoticVariant v);

AsymptoticDescriptor descriptor(const ModulationParams& p, double lambda,
                                double tol = kLineTolerance);

struct PowerFit {
  double log_alpha = 0.0;
  double beta = 0.0;
};

/// Least squares log|v_k| = k log|alpha| + beta log k + c over the last half of
/// the odd subsequence. Needs at least 64 trace entries.
PowerFit fit_power_growth(const SolutionTrace& trace);

/// Least squares log|v_k| + log(k)/4 = delta sqrt(k) + c over the last half of
/// the odd subsequence. Needs at least 256 trace entries.
double fit_expsqrt(const SolutionTrace& trace);

/// Limit of u_{2k}/u_{2k-1}, extrapolated from the last half of the trace in
/// 1/k (PowerLaw) or 1/sqrt(k) (ExpSqrt).
double coupling_check(const SolutionTrace& trace, const AsymptoticDescriptor& desc);

}  // namespace jacobi
