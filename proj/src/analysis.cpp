#include "jacobi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "jacobi/eigensolve.hpp"
#include "jacobi/error.hpp"
#include "jacobi/recurrence.hpp"

namespace jacobi {

namespace {

// Neumaier compensated sum in long double.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

struct LineParams {
  double a;  // |c1|
  double b;  // |c2|
};

LineParams require_line(const ModulationParams& p, double tol, bool distinct) {
  validate(p);
  const double a = std::abs(p.c1);
  const double b = std::abs(p.c2);
  if (p.degenerate() || std::abs(a + b - 1.0) > tol) {
    throw Error(ErrorKind::WrongRegion, "needs |c1| + |c2| = 1 with c1*c2 != 0");
  }
  if (distinct && std::abs(a - b) <= tol) {
    throw Error(ErrorKind::WrongRegion, "needs |c1| != |c2|");
  }
  return {a, b};
}

// D_n of the diagonal unitary with D J(|c1|,|c2|) D = J(c1, c2); period 4.
double unitary_sign(const ModulationParams& p, std::size_t n) {
  const double s1 = p.c1 < 0.0 ? -1.0 : 1.0;
  const double s2 = p.c2 < 0.0 ? -1.0 : 1.0;
  switch ((n - 1) % 4) {
    case 0: return 1.0;
    case 1: return s1;
    case 2: return s1 * s2;
    default: return s2;
  }
}

WitnessBranch branch_for(const LineParams& lp) {
  return lp.a > lp.b ? WitnessBranch::C1GreaterBranch : WitnessBranch::C1LessBranch;
}

std::size_t witness_length(WitnessBranch br, std::size_t N) {
  return br == WitnessBranch::C1GreaterBranch ? 2 * N - 1 : 2 * N;
}

// Emits (n, u_n) for n = L down to 1, for the |c1|, |c2| operator, and returns
// the (lhs, rhs) of the sufficient inequality.
std::pair<double, double> generate_witness(const LineParams& lp, std::size_t N,
                                           const std::function<void(std::size_t, double)>& emit) {
  const WitnessBranch br = branch_for(lp);
  CompensatedSum lhs;
  long double v_next = 0.0L;  // v_{k+1}
  long double v_k = 0.0L;
  for (std::size_t k = N; k >= 1; --k) {
    v_k = v_next + 1.0L / static_cast<long double>(k);
    const long double diff = v_k - v_next;
    if (br == WitnessBranch::C1GreaterBranch) {
      // u_{2k-1} = v_k, u_{2k} = -v_{k+1}
      if (k <= N - 1) emit(2 * k, static_cast<double>(-v_next));
      emit(2 * k - 1, static_cast<double>(v_k));
      lhs.add(static_cast<long double>(2 * k - 1) * diff * diff);
    } else {
      // u_{2k-1} = w_k, u_{2k} = -w_k, u_1 = t w_1 with t = 2|c1|
      emit(2 * k, static_cast<double>(-v_k));
      const long double t = k == 1 ? 2.0L * lp.a : 1.0L;
      emit(2 * k - 1, static_cast<double>(t * v_k));
      lhs.add(static_cast<long double>(2 * k) * diff * diff);
    }
    v_next = v_k;
  }
  const long double v1 = v_k;
  if (br == WitnessBranch::C1GreaterBranch) {
    return {static_cast<double>(lp.a * lhs.value()),
            static_cast<double>((lp.a - lp.b) / 2.0L * v1 * v1)};
  }
  const long double gap = lp.a - lp.b;
  return {static_cast<double>(lp.b * lhs.value()), static_cast<double>(gap * gap / 2.0L * v1 * v1)};
}

WitnessReport make_report(const LineParams& lp, std::size_t N, std::pair<double, double> lr) {
  return {N, lr.first, lr.second, lr.first < lr.second, branch_for(lp)};
}

}  // namespace

double quadratic_form(const ModulationParams& p, std::span<const double> u) {
  validate(p);
  CompensatedSum s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    s.add(static_cast<long double>(p.diag(n)) * u[i] * u[i]);
    if (i + 1 < u.size()) s.add(2.0L * p.weight(n) * u[i] * u[i + 1]);
  }
  return static_cast<double>(s.value());
}

double shifted_form(const ModulationParams& p, std::span<const double> u) {
  validate(p);
  CompensatedSum s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    s.add((static_cast<long double>(p.diag(n)) - 0.5L) * u[i] * u[i]);
    if (i + 1 < u.size()) s.add(2.0L * p.weight(n) * u[i] * u[i + 1]);
  }
  return static_cast<double>(s.value());
}

std::string_view to_string(WitnessBranch b) {
  return b == WitnessBranch::C1GreaterBranch ? "c1-greater" : "c1-less";
}

Witness witness_vector(const ModulationParams& p, std::size_t N, double tol) {
  const auto lp = require_line(p, tol, true);
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "witness needs N >= 1");
  Witness out;
  out.u.assign(witness_length(branch_for(lp), N), 0.0);
  const auto lr = generate_witness(lp, N, [&](std::size_t n, double x) {
    out.u[n - 1] = unitary_sign(p, n) * x;
  });
  out.report = make_report(lp, N, lr);
  return out;
}

WitnessEvaluation evaluate_witness(const ModulationParams& p, std::size_t N, double tol) {
  const auto lp = require_line(p, tol, true);
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "witness needs N >= 1");
  CompensatedSum form;
  double above = 0.0;  // u_{n+1}
  const auto lr = generate_witness(lp, N, [&](std::size_t n, double x) {
    const auto ni = static_cast<std::int64_t>(n);
    const double un = unitary_sign(p, n) * x;
    form.add((static_cast<long double>(p.diag(ni)) - 0.5L) * un * un);
    form.add(2.0L * p.weight(ni) * un * above);
    above = un;
  });
  return {make_report(lp, N, lr), static_cast<double>(form.value())};
}

Certificate pp_nonempty_certificate(const ModulationParams& p, std::size_t N_max, double tol) {
  require_line(p, tol, true);
  if (N_max < 1) throw Error(ErrorKind::InvalidArgument, "N_max must be >= 1");
  Certificate cert;
  for (std::size_t N = 1; N <= N_max; N *= 2) {
    cert.last = evaluate_witness(p, N, tol);
    if (cert.last.shifted_form < 0.0) {
      cert.found_n = N;
      cert.truncation_dim = 2 * N + 2;
      cert.count_below_half = count_below(p, cert.truncation_dim, 0.5);
      cert.cross_check_ok = cert.count_below_half >= 1;
      break;
    }
  }
  return cert;
}

CountBound count_bound_check(const ModulationParams& p, double eps, std::size_t N, double tol) {
  require_line(p, tol, false);
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1/2)");
  }
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be >= 1");
  CountBound out;
  const double x = 0.5 - eps;
  out.count = count_below(p, N, x);
  out.count_doubled = count_below(p, 2 * N, x);
  out.bound = 1.0 / eps;
  out.ok = static_cast<double>(out.count) <= out.bound;
  if (out.count != out.count_doubled) {
    throw Error(ErrorKind::UnstableCount, "count below 1/2-eps changed from " +
                                              std::to_string(out.count) + " to " +
                                              std::to_string(out.count_doubled) +
                                              " when doubling N");
  }
  return out;
}

std::string_view to_string(SemiboundVerdict v) {
  switch (v) {
    case SemiboundVerdict::SemiboundedBelow: return "semibounded-below";
    case SemiboundVerdict::NotSemibounded: return "not-semibounded";
    case SemiboundVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

SemiboundReport semibounded_check(const ModulationParams& p, std::span<const std::size_t> sizes,
                                  double tol) {
  validate(p);
  if (sizes.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw Error(ErrorKind::InvalidArgument, "sizes must increase");
  }
  SemiboundReport rep;
  rep.sizes.assign(sizes.begin(), sizes.end());
  for (std::size_t s : sizes) rep.minima.push_back(smallest_eigenvalue(truncation(p, s)));

  bool runaway = true;
  for (std::size_t i = 1; i < rep.minima.size(); ++i) {
    const double prev = rep.minima[i - 1];
    if (!(prev < 0.0 && rep.minima[i] < 2.0 * prev)) runaway = false;
  }
  const double last = rep.minima.back();
  const double prev = rep.minima[rep.minima.size() - 2];
  const double change = std::abs(last - prev) / std::max(std::abs(last), 1e-300);

  const double a = std::abs(p.c1);
  const double b = std::abs(p.c2);
  if (!p.degenerate() && std::abs(a + b - 1.0) <= tol) {
    const double floor = std::min(a, b) - 1e-8;
    rep.estimate_ok = std::all_of(rep.minima.begin(), rep.minima.end(),
                                  [&](double m) { return m >= floor; });
  }

  if (runaway) {
    rep.verdict = SemiboundVerdict::NotSemibounded;
  } else if (change < 1e-6 || rep.estimate_ok.value_or(false)) {
    rep.verdict = SemiboundVerdict::SemiboundedBelow;
  }
  return rep;
}

std::vector<SubordinacyPoint> subordinacy_diagnostic(const ModulationParams& p, double lambda,
                                                     std::size_t N, std::size_t theta_steps) {
  if (theta_steps < 8) throw Error(ErrorKind::InvalidArgument, "theta_steps must be >= 8");
  if (N < 8) throw Error(ErrorKind::InvalidArgument, "N must be >= 8");
  const auto U = forward_solve(p, lambda, 1.0, 0.0, N);
  const auto V = forward_solve(p, lambda, 0.0, 1.0, N);
  const std::array<std::size_t, 3> lengths{N / 4, N / 2, N};

  // log ||cos(t) U + sin(t) V|| over the first L entries, for each L.
  auto log_norms = [&](double theta) {
    const auto c = LogScaledValue::from_double(std::cos(theta));
    const auto s = LogScaledValue::from_double(std::sin(theta));
    std::array<double, 3> out{};
    double acc = -std::numeric_limits<double>::infinity();  // log sum u^2
    std::size_t next = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      const auto u = c * U.u(n) + s * V.u(n);
      if (!u.is_zero()) {
        const double l2 = 2.0 * u.logmag;
        const double top = std::max(acc, l2);
        acc = top + std::log(std::exp(acc - top) + std::exp(l2 - top));
      }
      while (next < lengths.size() && lengths[next] == n) out[next++] = 0.5 * acc;
    }
    return out;
  };

  const double pi = std::numbers::pi;
  const double h = pi / static_cast<double>(theta_steps);
  std::vector<std::array<double, 3>> grid(theta_steps);
  for (std::size_t j = 0; j < theta_steps; ++j) grid[j] = log_norms(h * static_cast<double>(j));

  std::vector<SubordinacyPoint> out;
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    std::vector<double> col(theta_steps);
    for (std::size_t j = 0; j < theta_steps; ++j) col[j] = grid[j][li];
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(col.begin(), col.end()) - col.begin());
    auto sorted = col;
    std::nth_element(sorted.begin(), sorted.begin() + theta_steps / 2, sorted.end());
    const double median = sorted[theta_steps / 2];

    // Golden-section refinement of the minimum inside the neighbouring grid cells.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = h * static_cast<double>(best) - h;
    double hi = h * static_cast<double>(best) + h;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = log_norms(x1)[li];
    double f2 = log_norms(x2)[li];
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = log_norms(x1)[li];
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = log_norms(x2)[li];
      }
    }
    const double fmin = std::min({col[best], f1, f2});
    out.push_back({lengths[li], std::exp(fmin - median)});
  }
  return out;
}

}  // namespace jacobi
