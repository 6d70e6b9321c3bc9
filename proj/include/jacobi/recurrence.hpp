#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "jacobi/model.hpp"

namespace jacobi {

/// Real number stored as sign and natural log of magnitude. Zero is
/// represented by sign 0 and logmag = -inf.
struct LogScaledValue {
  int sign = 0;
  double logmag = -std::numeric_limits<double>::infinity();

  static LogScaledValue from_double(double x);
  /// sign * exp(logmag + shift); shift lets callers de-scale into a window.
  double to_double(double shift = 0.0) const;
  bool is_zero() const noexcept { return sign == 0; }

  friend LogScaledValue operator*(const LogScaledValue& a, const LogScaledValue& b);
  friend LogScaledValue operator+(const LogScaledValue& a, const LogScaledValue& b);
  LogScaledValue operator-() const noexcept { return {-sign, logmag}; }
  LogScaledValue scaled(double x) const;
};

enum class Direction { Forward, Backward };

/// u_1..u_N of a solution of
///   w_{n-1} u_{n-1} + (q_n - lambda) u_n + w_n u_{n+1} = 0,  n >= 2.
struct SolutionTrace {
  ModulationParams params;
  double lambda = 0.0;
  std::vector<LogScaledValue> values;  // values[i] holds u_{i+1}
  Direction direction = Direction::Forward;

  std::size_t size() const noexcept { return values.size(); }
  /// 1-based access.
  const LogScaledValue& u(std::size_t n) const { return values.at(n - 1); }
  /// u_n / u_m computed in log space; NaN when u_m == 0.
  double ratio(std::size_t n, std::size_t m) const;
};

/// One step (u_{n-1}, u_n) -> (u_n, u_{n+1}).
struct TransferStep {
  std::array<std::array<double, 2>, 2> m{};

  double det() const noexcept { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  std::array<double, 2> apply(std::array<double, 2> x) const noexcept {
    return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]};
  }
};

TransferStep transfer_step(const ModulationParams& p, double lambda, std::int64_t n);

SolutionTrace forward_solve(const ModulationParams& p, double lambda, double u1, double u2,
                            std::size_t N);

/// Minimal (subordinate) solution by backward recursion from a start index
/// M = 2N, 4N, ... up to 64N. Normalized so that the larger of u_{N-1}, u_N is +1.
SolutionTrace backward_minimal(const ModulationParams& p, double lambda, std::size_t N,
                               double rel_tol = 1e-10);

/// Largest relative residual of the three-term recurrence over all interior
/// indices, scaled by max(|w_{n-1} u_{n-1}|, |w_n u_{n+1}|). Zero triples are skipped.
double max_residual(const SolutionTrace& trace);

/// Coefficients of the decoupled odd recurrence
///   v_{k+2} + P1(k) v_{k+1} + P2(k) v_k = 0,  v_k = u_{2k-1},
/// and the even recurrence with R_i(k) = P_i(k + 1/2), w_k = u_{2k}.
struct DecoupledCoeffs {
  double p1 = 0.0;
  double p2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

DecoupledCoeffs decoupled_coeffs(const ModulationParams& p, double lambda, std::int64_t k);

struct OddEvenSplit {
  std::vector<LogScaledValue> v;  // v_k = u_{2k-1}
  std::vector<LogScaledValue> w;  // w_k = u_{2k}
};

OddEvenSplit odd_even_split(const SolutionTrace& trace);

enum class Parity { Odd, Even };

/// Largest relative residual of the decoupled recurrence for the odd (v) or
/// even (w) subsequence. Indices where a coefficient has a pole are skipped.
double max_decoupled_residual(const SolutionTrace& trace, Parity parity);

/// Discrete Wronskian w_n (a_n b_{n+1} - a_{n+1} b_n) for n = 1..N-1.
std::vector<LogScaledValue> wronskian(const SolutionTrace& a, const SolutionTrace& b);

}  // namespace jacobi
