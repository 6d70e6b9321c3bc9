#include "jacobi/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "jacobi/error.hpp"

namespace jacobi {

namespace {

// Pivots with |d| below this are replaced by +pivmin, which amounts to
// counting eigenvalues strictly below x.
template <class Diag, class Off>
std::size_t sturm_count(std::size_t n, double x, Diag diag, Off off, double max_off2) {
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, max_off2);
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double o = i == 0 ? 0.0 : off(i - 1);
    d = (diag(i) - x) - (i == 0 ? 0.0 : o * o / d);
    if (std::abs(d) < pivmin) d = pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

struct Bracket {
  double lo;
  double hi;
};

// Smallest x with count_below(x) > index, assuming count(b.lo) <= index < count(b.hi).
std::pair<double, double> bisect_index(const Truncation& t, std::size_t index, Bracket b,
                                       double tol) {
  for (int it = 0; it < kBisectionMaxIter && b.hi - b.lo > tol; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    if (count_below(t, mid) > index) {
      b.hi = mid;
    } else {
      b.lo = mid;
    }
  }
  return {0.5 * (b.lo + b.hi), b.hi - b.lo};
}

}  // namespace

Truncation truncation(const ModulationParams& p, std::size_t N) {
  validate(p);
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "truncation needs N >= 1");
  Truncation t;
  t.diag.resize(N);
  t.offdiag.resize(N - 1);
  for (std::size_t i = 0; i < N; ++i) t.diag[i] = p.diag(static_cast<std::int64_t>(i + 1));
  for (std::size_t i = 0; i + 1 < N; ++i) t.offdiag[i] = p.weight(static_cast<std::int64_t>(i + 1));
  return t;
}

std::size_t count_below(const Truncation& t, double x) {
  double max_off2 = 0.0;
  for (double o : t.offdiag) max_off2 = std::max(max_off2, o * o);
  return sturm_count(
      t.size(), x, [&](std::size_t i) { return t.diag[i]; },
      [&](std::size_t i) { return t.offdiag[i]; }, max_off2);
}

std::size_t count_below(const ModulationParams& p, std::size_t N, double x) {
  validate(p);
  const double cmax = std::max(std::abs(p.c1), std::abs(p.c2));
  const double wmax = cmax * static_cast<double>(N);
  return sturm_count(
      N, x, [&](std::size_t i) { return p.diag(static_cast<std::int64_t>(i + 1)); },
      [&](std::size_t i) { return p.weight(static_cast<std::int64_t>(i + 1)); }, wmax * wmax);
}

EigenvalueSet eigenvalues_in(const Truncation& t, double lo, double hi, double tol,
                             unsigned threads) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  if (!(lo <= hi)) throw Error(ErrorKind::InvalidArgument, "interval needs lo <= hi");
  EigenvalueSet out;
  if (lo == hi) return out;
  const std::size_t first = count_below(t, lo);
  const std::size_t last = count_below(t, hi);
  const std::size_t n = last - first;
  out.values.resize(n);
  out.widths.resize(n);
  if (n == 0) return out;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const auto [value, width] = bisect_index(t, first + j, {lo, hi}, tol);
      out.values[j] = value;
      out.widths[j] = width;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(work, n * w / workers, n * (w + 1) / workers);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

double smallest_eigenvalue(const Truncation& t, double tol) {
  if (t.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty truncation");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  double hi = t.diag[0];
  double step = 1.0;
  while (count_below(t, hi) == 0) {
    hi += step;
    step *= 2.0;
  }
  double lo = hi - 1.0;
  step = 1.0;
  while (count_below(t, lo) > 0) {
    step *= 2.0;
    lo = hi - step;
  }
  return bisect_index(t, 0, {lo, hi}, tol).first;
}

}  // namespace jacobi
