#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "jacobi/model.hpp"

namespace jacobi {

enum class DegenerateVariant {
  C2Zero,  // c1 != 0, c2 = 0: blocks on (2n-1, 2n)
  C1Zero,  // c1 = 0, c2 != 0: a 1x1 block [1], then blocks on (2n-2, 2n-1)
};

/// When c1*c2 = 0 the operator splits into an orthogonal sum of 2x2 blocks
/// (plus a leading 1x1 block when c1 = 0). Only c = max(|c1|, |c2|) matters.
struct DegenerateSpec {
  DegenerateVariant variant = DegenerateVariant::C2Zero;
  double c = 1.0;

  static DegenerateSpec from_params(const ModulationParams& p);
};

/// Block J_n. A 1x1 block is reported with dim == 1 and only m[0][0] set.
struct SmallMatrix {
  int dim = 2;
  std::array<std::array<double, 2>, 2> m{};
};

SmallMatrix block(const DegenerateSpec& spec, std::int64_t n);

/// Eigenvalues (minus, plus) of block n. For C1Zero, n = 1 is the 1x1 block
/// and raises IndexOutOfRange.
std::pair<double, double> eigenvalue_pair(const DegenerateSpec& spec, std::int64_t n);

/// Sorted eigenvalues of blocks 1..n_max.
std::vector<double> spectrum(const DegenerateSpec& spec, std::int64_t n_max);

/// |minus eigenvalue - (2(1-c)n + const - 1/(16 c n))| with const = c - 1/2
/// (C2Zero) or 2c - 3/2 (C1Zero).
double expansion_residual(const DegenerateSpec& spec, std::int64_t n);

}  // namespace jacobi
