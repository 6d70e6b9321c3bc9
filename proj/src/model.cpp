#include "jacobi/model.hpp"

#include <cmath>
#include <string>

#include "jacobi/error.hpp"

namespace jacobi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateParams: return "DegenerateParams";
    case ErrorKind::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorKind::DegenerateWeight: return "DegenerateWeight";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PoleAtDiagonal: return "PoleAtDiagonal";
    case ErrorKind::HalfLineResonance: return "HalfLineResonance";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::WrongRegion: return "WrongRegion";
    case ErrorKind::UnstableCount: return "UnstableCount";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ModulationParams ModulationParams::normalize() const noexcept {
  return {std::abs(c1), std::abs(c2)};
}

void validate(const ModulationParams& p) {
  if (!std::isfinite(p.c1) || !std::isfinite(p.c2)) {
    throw Error(ErrorKind::InvalidArgument, "modulation parameters must be finite");
  }
}

MatrixEntry entries(const ModulationParams& p, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "index must be >= 1");
  return {n, p.diag(n), p.weight(n)};
}

double discriminant(const ModulationParams& p, double x) {
  validate(p);
  if (p.degenerate()) {
    throw Error(ErrorKind::DegenerateParams, "discriminant needs c1*c2 != 0");
  }
  const double s = x - 1.0;
  return (s * s - p.c1 * p.c1 - p.c2 * p.c2) / (p.c1 * p.c2);
}

BandStructure bands(const ModulationParams& p) {
  validate(p);
  const double a = std::abs(p.c1);
  const double b = std::abs(p.c2);
  const double sum = a + b;
  const double gap = std::abs(a - b);
  return {1.0 - sum, 1.0 - gap, 1.0 + gap, 1.0 + sum};
}

bool in_ac_band(const ModulationParams& p, double x) {
  validate(p);
  if (p.degenerate()) {
    throw Error(ErrorKind::DegenerateParams, "band test needs c1*c2 != 0");
  }
  const double s = x - 1.0;
  const double sq = s * s;
  const double c11 = p.c1 * p.c1;
  const double c22 = p.c2 * p.c2;
  const double num = sq - c11 - c22;
  const double bound = 2.0 * std::abs(p.c1 * p.c2);
  // Bands are closed; absorb the rounding of the numerator at the edges.
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (sq + c11 + c22);
  return std::abs(num) <= bound + slack;
}

std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::PureAC: return "pure-ac";
    case RegionTag::CriticalB: return "critical-b";
    case RegionTag::CriticalC: return "critical-c";
    case RegionTag::Discrete: return "discrete";
    case RegionTag::Degenerate: return "degenerate";
  }
  return "unknown";
}

char region_code(RegionTag tag) {
  switch (tag) {
    case RegionTag::PureAC: return 'a';
    case RegionTag::CriticalB: return 'b';
    case RegionTag::CriticalC: return 'c';
    case RegionTag::Discrete: return 'd';
    case RegionTag::Degenerate: return 'x';
  }
  return '?';
}

bool SpectralRegion::classifies(double x) const noexcept {
  if (tag == RegionTag::CriticalB || tag == RegionTag::CriticalC) return x != 0.5;
  return true;
}

SpectralRegion classify(const ModulationParams& p, double tol) {
  validate(p);
  if (!(tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be >= 0");

  const Interval whole{};
  const Interval below_half{-std::numeric_limits<double>::infinity(), 0.5, true, true};
  const Interval above_half{0.5, std::numeric_limits<double>::infinity(), true, true};

  if (p.degenerate()) return {RegionTag::Degenerate, std::nullopt, whole};

  const double a = std::abs(p.c1);
  const double b = std::abs(p.c2);
  const bool on_b = std::abs(std::abs(a - b) - 1.0) <= tol;
  const bool on_c = std::abs(a + b - 1.0) <= tol;
  if (on_b && on_c) {
    throw Error(ErrorKind::AmbiguousClassification,
                "point lies within tolerance of both critical lines");
  }
  if (on_b) return {RegionTag::CriticalB, below_half, above_half};
  if (on_c) return {RegionTag::CriticalC, above_half, below_half};

  if (std::abs(discriminant(p, 0.0)) < 2.0) return {RegionTag::PureAC, whole, std::nullopt};
  return {RegionTag::Discrete, std::nullopt, whole};
}

}  // namespace jacobi
