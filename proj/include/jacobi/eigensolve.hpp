#pragma once

#include <cstddef>
#include <vector>

#include "jacobi/model.hpp"

namespace jacobi {

inline constexpr double kBisectionTolerance = 1e-10;
inline constexpr int kBisectionMaxIter = 200;

/// Principal N x N section of the operator: diag q_1..q_N, offdiag w_1..w_{N-1}.
struct Truncation {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const noexcept { return diag.size(); }
};

Truncation truncation(const ModulationParams& p, std::size_t N);

/// Number of eigenvalues strictly below x (Sturm / LDL^T inertia).
std::size_t count_below(const Truncation& t, double x);

/// Same count for the N x N section of the operator without materializing it.
std::size_t count_below(const ModulationParams& p, std::size_t N, double x);

struct EigenvalueSet {
  std::vector<double> values;
  std::vector<double> widths;  // final bisection bracket width per value

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
};

/// All eigenvalues in [lo, hi), each bracketed to width <= tol.
/// `threads` > 1 splits the eigenvalue indices across worker threads; the
/// result does not depend on the thread count.
EigenvalueSet eigenvalues_in(const Truncation& t, double lo, double hi,
                             double tol = kBisectionTolerance, unsigned threads = 1);

double smallest_eigenvalue(const Truncation& t, double tol = kBisectionTolerance);

}  // namespace jacobi
