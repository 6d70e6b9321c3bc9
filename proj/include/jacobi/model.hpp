#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

namespace jacobi {

/// Default absolute tolerance for membership on the critical lines.
inline constexpr double kLineTolerance = 1e-9;

/// Modulation pair (c1, c2). The weights are w_n = c1*n for odd n and c2*n
/// for even n; the diagonal is q_n = n.
struct ModulationParams {
  double c1 = 0.0;
  double c2 = 0.0;

  bool degenerate() const noexcept { return c1 * c2 == 0.0; }
  ModulationParams normalize() const noexcept;

  /// Periodic modulation c_n (1-based index).
  double c(std::int64_t n) const noexcept { return (n % 2 != 0) ? c1 : c2; }
  double diag(std::int64_t n) const noexcept { return static_cast<double>(n); }
  /// Off-diagonal weight between n and n+1; zero for n <= 0.
  double weight(std::int64_t n) const noexcept {
    return n <= 0 ? 0.0 : c(n) * static_cast<double>(n);
  }
};

/// Throws InvalidArgument unless both parameters are finite.
void validate(const ModulationParams& p);

struct MatrixEntry {
  std::int64_t n = 1;
  double q = 1.0;
  double w = 0.0;
};

MatrixEntry entries(const ModulationParams& p, std::int64_t n);

/// Discriminant of the period-2 comparison operator,
/// d(x) = ((x-1)^2 - c1^2 - c2^2) / (c1 c2).
double discriminant(const ModulationParams& p, double x);

/// Edges of the two bands of the comparison operator:
/// [lo_minus, lo_plus] U [hi_minus, hi_plus].
struct BandStructure {
  double lo_minus = 0.0;  // 1 - (|c1|+|c2|)
  double lo_plus = 0.0;   // 1 - ||c1|-|c2||
  double hi_minus = 0.0;  // 1 + ||c1|-|c2||
  double hi_plus = 0.0;   // 1 + (|c1|+|c2|)

  bool contains(double x) const noexcept {
    return (x >= lo_minus && x <= lo_plus) || (x >= hi_minus && x <= hi_plus);
  }
};

BandStructure bands(const ModulationParams& p);

/// |d(x)| <= 2, evaluated without dividing by c1 c2.
bool in_ac_band(const ModulationParams& p, double x);

/// Real interval with possibly infinite ends; `lo_open`/`hi_open` mark
/// excluded endpoints.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  bool contains(double x) const noexcept {
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
  }
};

enum class RegionTag { PureAC, CriticalB, CriticalC, Discrete, Degenerate };

std::string_view to_string(RegionTag tag);
/// Single-letter code used in phase diagrams: a, b, c, d, x.
char region_code(RegionTag tag);

struct SpectralRegion {
  RegionTag tag = RegionTag::PureAC;
  std::optional<Interval> ac_interval;
  std::optional<Interval> pp_interval;

  /// The spectral type at x = 1/2 on the critical lines is not decided.
  bool classifies(double x) const noexcept;
};

SpectralRegion classify(const ModulationParams& p, double tol = kLineTolerance);

}  // namespace jacobi
