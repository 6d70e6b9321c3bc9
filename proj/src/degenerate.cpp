#include "jacobi/degenerate.hpp"

#include <algorithm>
#include <cmath>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

void check_spec(const DegenerateSpec& spec) {
  if (!(spec.c > 0.0) || !std::isfinite(spec.c)) {
    throw Error(ErrorKind::InvalidArgument, "degenerate spec needs finite c > 0");
  }
}

// First diagonal entry of block n; the block is [[a, c a], [c a, a + 1]].
double block_base(const DegenerateSpec& spec, std::int64_t n) {
  return spec.variant == DegenerateVariant::C2Zero ? 2.0 * n - 1.0 : 2.0 * n - 2.0;
}

}  // namespace

DegenerateSpec DegenerateSpec::from_params(const ModulationParams& p) {
  validate(p);
  if (!p.degenerate()) throw Error(ErrorKind::InvalidArgument, "parameters are not degenerate");
  const double c = std::max(std::abs(p.c1), std::abs(p.c2));
  if (c == 0.0) throw Error(ErrorKind::InvalidArgument, "c1 = c2 = 0 leaves a diagonal operator");
  return {p.c2 == 0.0 ? DegenerateVariant::C2Zero : DegenerateVariant::C1Zero, c};
}

SmallMatrix block(const DegenerateSpec& spec, std::int64_t n) {
  check_spec(spec);
  if (n < 1) throw Error(ErrorKind::IndexOutOfRange, "block index must be >= 1");
  SmallMatrix out;
  if (spec.variant == DegenerateVariant::C1Zero && n == 1) {
    out.dim = 1;
    out.m[0][0] = 1.0;
    return out;
  }
  const double a = block_base(spec, n);
  out.m = {{{a, spec.c * a}, {spec.c * a, a + 1.0}}};
  return out;
}

std::pair<double, double> eigenvalue_pair(const DegenerateSpec& spec, std::int64_t n) {
  check_spec(spec);
  if (n < 1 || (spec.variant == DegenerateVariant::C1Zero && n == 1)) {
    throw Error(ErrorKind::IndexOutOfRange, "no 2x2 block at this index");
  }
  // (T +- sqrt(4 c^2 a^2 + 1)) / 2 with T = 2a + 1; the minus branch comes
  // from det / plus to avoid cancellation.
  const double a = block_base(spec, n);
  const double trace = 2.0 * a + 1.0;
  const double root = std::sqrt(4.0 * spec.c * spec.c * a * a + 1.0);
  const double plus = 0.5 * (trace + root);
  const double det = a * ((a + 1.0) - spec.c * spec.c * a);
  return {det / plus, plus};
}

std::vector<double> spectrum(const DegenerateSpec& spec, std::int64_t n_max) {
  check_spec(spec);
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * n_max));
  std::int64_t n = 1;
  if (spec.variant == DegenerateVariant::C1Zero) {
    out.push_back(1.0);
    n = 2;
  }
  for (; n <= n_max; ++n) {
    const auto [lo, hi] = eigenvalue_pair(spec, n);
    out.push_back(lo);
    out.push_back(hi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double expansion_residual(const DegenerateSpec& spec, std::int64_t n) {
  const double minus = eigenvalue_pair(spec, n).first;
  const double c = spec.c;
  const double nd = static_cast<double>(n);
  const double shift = spec.variant == DegenerateVariant::C2Zero ? c - 0.5 : 2.0 * c - 1.5;
  const double approx = 2.0 * (1.0 - c) * nd + shift - 1.0 / (16.0 * c * nd);
  return std::abs(minus - approx);
}

}  // namespace jacobi
