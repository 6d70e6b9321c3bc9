#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <utility>
#include <vector>

#include "jacobi/eigensolve.hpp"

namespace jacobi::testing {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// Value and derivative of det(T - x I) for a symmetric tridiagonal T, in 50-digit arithmetic.
inline std::pair<HighPrecision, HighPrecision> char_poly(const Truncation& t, const HighPrecision& x) {
  HighPrecision p_prev = 1, p = t.diag[0] - x;
  HighPrecision dp_prev = 0, dp = -1;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const HighPrecision b2 = HighPrecision(t.offdiag[k - 1]) * HighPrecision(t.offdiag[k - 1]);
    const HighPrecision dk = HighPrecision(t.diag[k]) - x;
    const HighPrecision p_next = dk * p - b2 * p_prev;
    const HighPrecision dp_next = -p + dk * dp - b2 * dp_prev;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp};
}

/// Dense eigenvalues from Eigen, each polished by Newton steps on the characteristic polynomial.
inline std::vector<double> dense_oracle(const Truncation& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      m(i, i + 1) = m(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    HighPrecision x = solver.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const auto [p, dp] = char_poly(t, x);
      if (dp == 0) break;
      const HighPrecision step = p / dp;
      x -= step;
      if (abs(step) < HighPrecision(1e-40) * (1 + abs(x))) break;
    }
    out.push_back(static_cast<double>(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Eigenvalues of a symmetric 2x2 matrix evaluated in long double.
inline std::pair<long double, long double> symmetric_2x2(long double a, long double b, long double d) {
  const long double mean = (a + d) / 2;
  const long double half_gap = std::hypot((a - d) / 2, b);
  const long double plus = mean + half_gap;
  const long double minus = (a * d - b * b) / plus;
  return {minus, plus};
}

}  // namespace jacobi::testing
