#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jacobi/model.hpp"

namespace jacobi {

/// Finitely supported real vector u_1..u_L (stored 0-based).
using FiniteVector = std::vector<double>;

/// (Ju, u) = sum n u_n^2 + 2 sum w_n u_n u_{n+1}.
double quadratic_form(const ModulationParams& p, std::span<const double> u);

/// ((J - I/2) u, u).
double shifted_form(const ModulationParams& p, std::span<const double> u);

enum class WitnessBranch { C1GreaterBranch, C1LessBranch };

std::string_view to_string(WitnessBranch b);

/// lhs < rhs is the sufficient inequality for a negative direction of J - I/2.
struct WitnessReport {
  std::size_t N = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  WitnessBranch branch = WitnessBranch::C1GreaterBranch;
};

struct Witness {
  FiniteVector u;
  WitnessReport report;
};

/// Explicit test vector built from the tail sums v_n = sum_{k=n}^{N} 1/k on the
/// line |c1| + |c2| = 1. Signs of c1, c2 are absorbed by the diagonal unitary
/// that maps the operator to the one with (|c1|, |c2|).
Witness witness_vector(const ModulationParams& p, std::size_t N, double tol = kLineTolerance);

struct WitnessEvaluation {
  WitnessReport report;
  double shifted_form = 0.0;
};

/// Same witness, but ((J - I/2)u, u) is accumulated while the entries are
/// generated, so N is limited by time rather than memory.
WitnessEvaluation evaluate_witness(const ModulationParams& p, std::size_t N,
                                   double tol = kLineTolerance);

struct Certificate {
  std::optional<std::size_t> found_n;
  WitnessEvaluation last;          // at found_n, or at the largest N tried
  std::size_t truncation_dim = 0;  // 2N + 2 when found
  std::size_t count_below_half = 0;
  bool cross_check_ok = false;
};

/// Doubling search N = 1, 2, 4, ... <= N_max for a witness with negative
/// shifted form; cross-checks the 2N+2 section has an eigenvalue below 1/2.
Certificate pp_nonempty_certificate(const ModulationParams& p, std::size_t N_max,
                                    double tol = kLineTolerance);

struct CountBound {
  std::size_t count = 0;
  std::size_t count_doubled = 0;
  double bound = 0.0;
  bool ok = false;
};

/// Eigenvalues below 1/2 - eps of the N and 2N sections on the line
/// |c1| + |c2| = 1, compared with 1/eps. Throws UnstableCount if the two
/// counts differ.
CountBound count_bound_check(const ModulationParams& p, double eps, std::size_t N,
                             double tol = kLineTolerance);

enum class SemiboundVerdict { SemiboundedBelow, NotSemibounded, Inconclusive };

std::string_view to_string(SemiboundVerdict v);

struct SemiboundReport {
  SemiboundVerdict verdict = SemiboundVerdict::Inconclusive;
  std::vector<std::size_t> sizes;
  std::vector<double> minima;
  /// Only on |c1| + |c2| = 1: every minimum >= min(|c1|, |c2|) - 1e-8.
  std::optional<bool> estimate_ok;
};

SemiboundReport semibounded_check(const ModulationParams& p, std::span<const std::size_t> sizes,
                                  double tol = kLineTolerance);

struct SubordinacyPoint {
  std::size_t length = 0;
  double ratio = 0.0;  // min_theta ||u^theta||_L / median_theta ||u^theta||_L
};

/// Heuristic: a ratio that keeps falling with L points to a subordinate
/// solution; a ratio bounded away from zero points to absence of one.
std::vector<SubordinacyPoint> subordinacy_diagnostic(const ModulationParams& p, double lambda,
                                                     std::size_t N, std::size_t theta_steps);

}  // namespace jacobi
