#include "jacobi/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

constexpr double kNearDegenerate = 1e-6;

void require_nondegenerate(const ModulationParams& p) {
  validate(p);
  if (p.degenerate()) throw Error(ErrorKind::DegenerateParams, "needs c1*c2 != 0");
}

struct Sample {
  double k;
  double y;
};

// (k, log|v_k|) for the nonzero entries of the last half of the odd chain.
std::vector<Sample> odd_tail(const SolutionTrace& trace, std::size_t min_len) {
  if (trace.size() < min_len) {
    throw Error(ErrorKind::InsufficientData,
                "trace has " + std::to_string(trace.size()) + " entries, need " +
                    std::to_string(min_len));
  }
  const auto split = odd_even_split(trace);
  const std::size_t K = split.v.size();
  std::vector<Sample> out;
  for (std::size_t k = K / 2; k <= K; ++k) {
    if (k == 0) continue;
    const auto& v = split.v[k - 1];
    if (v.is_zero()) continue;
    out.push_back({static_cast<double>(k), v.logmag});
  }
  if (out.size() < 8) throw Error(ErrorKind::InsufficientData, "too few nonzero entries to fit");
  return out;
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  return A.colPivHouseholderQr().solve(b);
}

}  // namespace

std::string_view to_string(AsymptoticVariant v) {
  return v == AsymptoticVariant::PowerLaw ? "power-law" : "exp-sqrt";
}

BACoefficients ba_coefficients(const ModulationParams& p, double lambda) {
  require_nondegenerate(p);
  const double prod = p.c1 * p.c2;
  const double a0 = (p.c1 * p.c1 + p.c2 * p.c2 - 1.0) / prod;
  const double a1 = -a0 / 2.0 + (lambda - 0.5) / prod;
  return {a0, a1, 1.0, -1.0};
}

std::pair<Complex, Complex> characteristic_roots(const BACoefficients& c) {
  const double disc = c.a0 * c.a0 - 4.0 * c.b0;
  if (disc > 0.0) {
    // Larger root without cancellation, smaller from the product b0.
    const double big = (-c.a0 - std::copysign(std::sqrt(disc), c.a0)) / 2.0;
    return {Complex(big, 0.0), Complex(c.b0 / big, 0.0)};
  }
  const double re = -c.a0 / 2.0;
  const double im = std::sqrt(-disc) / 2.0;
  return {Complex(re, im), Complex(re, -im)};
}

AsymptoticDescriptor descriptor(const ModulationParams& p, double lambda, double tol) {
  const auto coeffs = ba_coefficients(p, lambda);
  const double prod = p.c1 * p.c2;
  AsymptoticDescriptor d;
  const double off = std::abs(std::abs(coeffs.a0) - 2.0);

  if (off <= tol) {
    const double a0 = std::copysign(2.0, coeffs.a0);
    if (std::abs(lambda - 0.5) <= tol) {
      throw Error(ErrorKind::HalfLineResonance,
                  "on a critical line the point lambda = 1/2 is excluded (a1*alpha + b1 = 0)");
    }
    d.variant = AsymptoticVariant::ExpSqrt;
    const Complex alpha(-a0 / 2.0, 0.0);
    d.alpha_plus = d.alpha_minus = alpha;
    d.beta_plus = d.beta_minus = Complex(-0.25, 0.0);
    const Complex delta = 2.0 * std::sqrt(Complex(a0 * (lambda - 0.5) / (2.0 * prod), 0.0));
    d.delta_plus = delta;
    d.delta_minus = -delta;
    d.coupling_plus = d.coupling_minus = -(p.c1 + alpha * p.c2);
    d.subordinate_exists = delta.imag() == 0.0 && delta.real() != 0.0;
    return d;
  }

  d.variant = AsymptoticVariant::PowerLaw;
  const auto [ap, am] = characteristic_roots(coeffs);
  d.alpha_plus = ap;
  d.alpha_minus = am;
  auto beta = [&](Complex a) {
    return (coeffs.a1 * a + coeffs.b1) / (coeffs.a0 * a + 2.0 * coeffs.b0);
  };
  d.beta_plus = beta(ap);
  d.beta_minus = beta(am);
  d.coupling_plus = -(p.c1 + ap * p.c2);
  d.coupling_minus = -(p.c1 + am * p.c2);
  d.subordinate_exists = std::abs(coeffs.a0) > 2.0;
  d.near_degenerate_roots = off < kNearDegenerate;
  return d;
}

PowerFit fit_power_growth(const SolutionTrace& trace) {
  const auto samples = odd_tail(trace, 64);
  const auto m = static_cast<Eigen::Index>(samples.size());
  // Centered columns keep the normal system well conditioned.
  const double k0 = samples.front().k;
  Eigen::MatrixXd A(m, 3);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double k = samples[static_cast<std::size_t>(i)].k;
    A(i, 0) = k - k0;
    A(i, 1) = std::log(k / k0);
    A(i, 2) = 1.0;
    b(i) = samples[static_cast<std::size_t>(i)].y;
  }
  const auto x = least_squares(A, b);
  return {x(0), x(1)};
}

double fit_expsqrt(const SolutionTrace& trace) {
  const auto samples = odd_tail(trace, 256);
  const auto m = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    A(i, 0) = std::sqrt(s.k);
    A(i, 1) = 1.0;
    b(i) = s.y + 0.25 * std::log(s.k);
  }
  return least_squares(A, b)(0);
}

double coupling_check(const SolutionTrace& trace, const AsymptoticDescriptor& desc) {
  if (trace.size() < 64) throw Error(ErrorKind::InsufficientData, "coupling fit needs 64 entries");
  const std::size_t K = trace.size() / 2;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = K / 2; k <= K; ++k) {
    if (k == 0) continue;
    const double r = trace.ratio(2 * k, 2 * k - 1);
    if (std::isfinite(r)) pts.emplace_back(static_cast<double>(k), r);
  }
  if (pts.size() < 8) throw Error(ErrorKind::InsufficientData, "too few usable ratios");
  const auto m = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd A(m, 2);
  Eigen::VectorXd b(m);
  const bool sqrt_corr = desc.variant == AsymptoticVariant::ExpSqrt;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto [k, r] = pts[static_cast<std::size_t>(i)];
    A(i, 0) = 1.0;
    A(i, 1) = sqrt_corr ? 1.0 / std::sqrt(k) : 1.0 / k;
    b(i) = r;
  }
  return least_squares(A, b)(0);
}

}  // namespace jacobi
