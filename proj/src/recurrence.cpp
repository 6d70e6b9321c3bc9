#include "jacobi/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jacobi/error.hpp"

namespace jacobi {

LogScaledValue LogScaledValue::from_double(double x) {
  if (x == 0.0) return {};
  return {x > 0.0 ? 1 : -1, std::log(std::abs(x))};
}

double LogScaledValue::to_double(double shift) const {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag + shift);
}

LogScaledValue operator*(const LogScaledValue& a, const LogScaledValue& b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.logmag + b.logmag};
}

LogScaledValue operator+(const LogScaledValue& a, const LogScaledValue& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const double top = std::max(a.logmag, b.logmag);
  const double s = a.to_double(-top) + b.to_double(-top);
  if (s == 0.0) return {};
  return {s > 0.0 ? 1 : -1, top + std::log(std::abs(s))};
}

LogScaledValue LogScaledValue::scaled(double x) const {
  return *this * from_double(x);
}

double SolutionTrace::ratio(std::size_t n, std::size_t m) const {
  const auto& a = u(n);
  const auto& b = u(m);
  if (b.is_zero()) return std::numeric_limits<double>::quiet_NaN();
  if (a.is_zero()) return 0.0;
  return a.sign * b.sign * std::exp(a.logmag - b.logmag);
}

namespace {

void require_weight(const ModulationParams& p, std::int64_t n) {
  if (p.weight(n) == 0.0) {
    throw Error(ErrorKind::DegenerateWeight, "weight at n=" + std::to_string(n) + " vanishes");
  }
}

// Running pair (x0, x1) = (u_{n-1}, u_n) * exp(-scale), renormalized every step.
struct ScaledPair {
  double x0 = 0.0;
  double x1 = 0.0;
  double scale = 0.0;

  void push(double next) {
    x0 = x1;
    x1 = next;
    const double m = std::max(std::abs(x0), std::abs(x1));
    if (m > 0.0 && std::isfinite(m)) {
      x0 /= m;
      x1 /= m;
      scale += std::log(m);
    }
  }
  LogScaledValue current() const {
    auto v = LogScaledValue::from_double(x1);
    if (!v.is_zero()) v.logmag += scale;
    return v;
  }
};

// Runs the recurrence downward from (u_{M+1}, u_M) = (0, 1) and keeps u_1..u_N.
std::vector<LogScaledValue> backward_run(const ModulationParams& p, double lambda,
                                         std::size_t N, std::size_t M) {
  std::vector<LogScaledValue> out(N);
  ScaledPair pair;  // here x0 = u_{n+1}, x1 = u_n
  pair.x0 = 0.0;
  pair.x1 = 1.0;
  if (M <= N) out[M - 1] = pair.current();
  for (std::size_t n = M; n >= 2; --n) {
    const auto ni = static_cast<std::int64_t>(n);
    const double prev = -((p.diag(ni) - lambda) * pair.x1 + p.weight(ni) * pair.x0) /
                        p.weight(ni - 1);
    pair.push(prev);
    if (n - 1 <= N) out[n - 2] = pair.current();
  }
  return out;
}

// Normalize so that the larger of the last two entries is +1.
void normalize_tail(std::vector<LogScaledValue>& vals) {
  const std::size_t N = vals.size();
  const auto& a = vals[N - 1];
  const auto& b = vals[N - 2];
  const LogScaledValue& ref = (a.is_zero() || (!b.is_zero() && b.logmag > a.logmag)) ? b : a;
  if (ref.is_zero()) return;
  const int s = ref.sign;
  const double shift = ref.logmag;
  for (auto& v : vals) {
    if (v.is_zero()) continue;
    v.sign *= s;
    v.logmag -= shift;
  }
}

// max_n |a_n - b_n| / max(|b_n|, |b_{n+1}|)
double max_pair_discrepancy(const std::vector<LogScaledValue>& a,
                            const std::vector<LogScaledValue>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::size_t j = (i + 1 < b.size()) ? i + 1 : i - 1;
    const double ref = std::max(b[i].logmag, b[j].logmag);
    if (!std::isfinite(ref)) {
      if (!a[i].is_zero()) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double d = std::abs(a[i].to_double(-ref) - b[i].to_double(-ref));
    worst = std::max(worst, d);
  }
  return worst;
}

// P1, P2 of the decoupled recurrence built on the three equations at
// n = m, m+1, m+2 (m = 2k for the odd chain, m = 2k+1 for the even chain).
std::array<double, 2> decoupled_pair(const ModulationParams& p, double lambda, std::int64_t m) {
  const double d0 = p.diag(m) - lambda;
  const double d1 = p.diag(m + 1) - lambda;
  const double d2 = p.diag(m + 2) - lambda;
  if (d0 == 0.0) {
    throw Error(ErrorKind::PoleAtDiagonal,
                "lambda equals q_" + std::to_string(m) + "; decoupled coefficients have a pole");
  }
  const double wm1 = p.weight(m - 1);
  const double w0 = p.weight(m);
  const double w1 = p.weight(m + 1);
  const double w2 = p.weight(m + 2);
  const double w12 = w1 * w2;
  const double p1 = (d2 / d0) * (w0 * w0 / w12) - d1 * d2 / w12 + w1 / w2;
  const double p2 = (d2 / d0) * (wm1 * w0 / w12);
  return {p1, p2};
}

}  // namespace

TransferStep transfer_step(const ModulationParams& p, double lambda, std::int64_t n) {
  validate(p);
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "index must be >= 1");
  require_weight(p, n);
  const double wn = p.weight(n);
  TransferStep t;
  t.m[0] = {0.0, 1.0};
  t.m[1] = {-p.weight(n - 1) / wn, (lambda - p.diag(n)) / wn};
  return t;
}

SolutionTrace forward_solve(const ModulationParams& p, double lambda, double u1, double u2,
                            std::size_t N) {
  validate(p);
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "forward_solve needs N >= 2");
  for (std::size_t n = 1; n + 1 <= N; ++n) require_weight(p, static_cast<std::int64_t>(n));

  SolutionTrace trace{p, lambda, {}, Direction::Forward};
  trace.values.reserve(N);
  trace.values.push_back(LogScaledValue::from_double(u1));
  trace.values.push_back(LogScaledValue::from_double(u2));

  ScaledPair pair;
  pair.x1 = u1;
  pair.push(u2);
  for (std::size_t n = 2; n < N; ++n) {
    const auto ni = static_cast<std::int64_t>(n);
    const double next = -(p.weight(ni - 1) * pair.x0 + (p.diag(ni) - lambda) * pair.x1) /
                        p.weight(ni);
    pair.push(next);
    trace.values.push_back(pair.current());
  }
  return trace;
}

SolutionTrace backward_minimal(const ModulationParams& p, double lambda, std::size_t N,
                               double rel_tol) {
  validate(p);
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "backward_minimal needs N >= 2");
  if (!(rel_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "rel_tol must be positive");
  constexpr std::size_t kMaxFactor = 64;
  for (std::size_t n = 1; n < kMaxFactor * N; ++n) require_weight(p, static_cast<std::int64_t>(n));

  auto previous = backward_run(p, lambda, N, 2 * N);
  normalize_tail(previous);
  double last_gap = std::numeric_limits<double>::infinity();
  for (std::size_t factor = 4; factor <= kMaxFactor; factor *= 2) {
    auto current = backward_run(p, lambda, N, factor * N);
    normalize_tail(current);
    last_gap = max_pair_discrepancy(previous, current);
    if (last_gap <= rel_tol) {
      return SolutionTrace{p, lambda, std::move(current), Direction::Backward};
    }
    previous = std::move(current);
  }
  throw Error(ErrorKind::NoConvergence,
              "backward recursion did not stabilize up to M=" + std::to_string(kMaxFactor * N) +
                  " (discrepancy " + std::to_string(last_gap) +
                  "); no minimal solution, lambda is likely in the absolutely continuous spectrum");
}

double max_residual(const SolutionTrace& trace) {
  const auto& p = trace.params;
  double worst = 0.0;
  for (std::size_t n = 2; n + 1 <= trace.size(); ++n) {
    const auto ni = static_cast<std::int64_t>(n);
    const auto& a = trace.u(n - 1);
    const auto& b = trace.u(n);
    const auto& c = trace.u(n + 1);
    const double top = std::max({a.logmag, b.logmag, c.logmag});
    if (!std::isfinite(top)) continue;
    const double left = p.weight(ni - 1) * a.to_double(-top);
    const double mid = (p.diag(ni) - trace.lambda) * b.to_double(-top);
    const double right = p.weight(ni) * c.to_double(-top);
    const double scale = std::max(std::abs(left), std::abs(right));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(left + mid + right) / scale);
  }
  return worst;
}

DecoupledCoeffs decoupled_coeffs(const ModulationParams& p, double lambda, std::int64_t k) {
  validate(p);
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (p.degenerate()) throw Error(ErrorKind::DegenerateWeight, "decoupling needs c1*c2 != 0");
  const auto odd = decoupled_pair(p, lambda, 2 * k);
  const auto even = decoupled_pair(p, lambda, 2 * k + 1);
  return {odd[0], odd[1], even[0], even[1]};
}

OddEvenSplit odd_even_split(const SolutionTrace& trace) {
  OddEvenSplit out;
  out.v.reserve((trace.size() + 1) / 2);
  out.w.reserve(trace.size() / 2);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    (i % 2 == 0 ? out.v : out.w).push_back(trace.values[i]);
  }
  return out;
}

double max_decoupled_residual(const SolutionTrace& trace, Parity parity) {
  const auto& p = trace.params;
  const auto split = odd_even_split(trace);
  const auto& seq = parity == Parity::Odd ? split.v : split.w;
  double worst = 0.0;
  for (std::size_t k = 1; k + 2 <= seq.size(); ++k) {
    const auto m = static_cast<std::int64_t>(parity == Parity::Odd ? 2 * k : 2 * k + 1);
    std::array<double, 2> coeffs;
    try {
      coeffs = decoupled_pair(p, trace.lambda, m);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PoleAtDiagonal) continue;
      throw;
    }
    const auto& x0 = seq[k - 1];
    const auto& x1 = seq[k];
    const auto& x2 = seq[k + 1];
    const double top = std::max({x0.logmag, x1.logmag, x2.logmag});
    if (!std::isfinite(top)) continue;
    const double t2 = x2.to_double(-top);
    const double t1 = coeffs[0] * x1.to_double(-top);
    const double t0 = coeffs[1] * x0.to_double(-top);
    const double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(t0 + t1 + t2) / scale);
  }
  return worst;
}

std::vector<LogScaledValue> wronskian(const SolutionTrace& a, const SolutionTrace& b) {
  const std::size_t N = std::min(a.size(), b.size());
  std::vector<LogScaledValue> out;
  if (N < 2) return out;
  out.reserve(N - 1);
  for (std::size_t n = 1; n < N; ++n) {
    const auto cross = a.u(n) * b.u(n + 1) + -(a.u(n + 1) * b.u(n));
    out.push_back(cross.scaled(a.params.weight(static_cast<std::int64_t>(n))));
  }
  return out;
}

}  // namespace jacobi
