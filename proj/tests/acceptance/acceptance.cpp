// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jacobi/analysis.hpp"
#include "jacobi/asymptotics.hpp"
#include "jacobi/degenerate.hpp"
#include "jacobi/eigensolve.hpp"
#include "jacobi/error.hpp"
#include "jacobi/model.hpp"
#include "jacobi/recurrence.hpp"
#include "oracles.hpp"

using namespace jacobi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, or <= 0 for none
  std::function<Outcome()> body;
};

const double kGolden = (3.0 + std::sqrt(5.0)) / 2.0;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

Outcome band_equivalence() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> cdist(-3.0, 3.0);
  std::uniform_real_distribution<double> ldist(-8.0, 10.0);
  int disagreements = 0;
  int tested = 0;
  while (tested < 10000) {
    const ModulationParams p{cdist(rng), cdist(rng)};
    if (p.degenerate()) continue;
    const double x = ldist(rng);
    const auto b = bands(p);
    const double dist = std::min({std::abs(x - b.lo_minus), std::abs(x - b.lo_plus),
                                  std::abs(x - b.hi_minus), std::abs(x - b.hi_plus)});
    if (dist <= 1e-6) continue;
    ++tested;
    const bool by_disc = std::abs(discriminant(p, x)) <= 2.0;
    if (by_disc != b.contains(x) || in_ac_band(p, x) != b.contains(x)) ++disagreements;
  }
  std::ostringstream os;
  os << tested << " samples, " << disagreements << " disagreements";
  return {disagreements == 0, os.str()};
}

Outcome classification_map() {
  int layout_mismatch = 0;
  int flip_mismatch = 0;
  for (int i = -40; i <= 40; ++i) {
    for (int j = -40; j <= 40; ++j) {
      const double c1 = 0.05 * i;
      const double c2 = 0.05 * j;
      const int a = std::abs(i);
      const int b = std::abs(j);
      char expect;
      if (a == 0 || b == 0) {
        expect = 'x';
      } else if (std::abs(a - b) == 20) {
        expect = 'b';
      } else if (a + b == 20) {
        expect = 'c';
      } else {
        expect = (std::abs(a - b) < 20 && a + b > 20) ? 'a' : 'd';
      }
      const char got = region_code(classify({c1, c2}).tag);
      if (got != expect) ++layout_mismatch;
      for (const auto& q : {ModulationParams{-c1, c2}, ModulationParams{c1, -c2},
                            ModulationParams{-c1, -c2}}) {
        if (region_code(classify(q).tag) != got) ++flip_mismatch;
      }
    }
  }
  int circle_bad = 0;
  double worst_d0 = 0.0;
  for (int k = 0; k < 720; ++k) {
    const double t = (k + 0.5) * M_PI / 360.0;
    const ModulationParams p{std::cos(t), std::sin(t)};
    worst_d0 = std::max(worst_d0, std::abs(discriminant(p, 0.0)));
    if (classify(p).tag != RegionTag::PureAC) ++circle_bad;
  }
  std::ostringstream os;
  os << "layout mismatches " << layout_mismatch << ", sign-flip mismatches " << flip_mismatch
     << ", circle points outside (a) " << circle_bad << ", max |d(0)| on circle " << worst_d0;
  return {layout_mismatch == 0 && flip_mismatch == 0 && circle_bad == 0 && worst_d0 < 1e-12,
          os.str()};
}

Outcome degenerate_spectra() {
  double worst_pair = 0.0;
  bool residual_ok = true;
  std::ostringstream os;
  for (double c : {0.5, 1.0, 2.0}) {
    for (auto v : {DegenerateVariant::C2Zero, DegenerateVariant::C1Zero}) {
      const DegenerateSpec spec{v, c};
      const std::int64_t first = v == DegenerateVariant::C1Zero ? 2 : 1;
      for (std::int64_t n = first; n <= 10000; ++n) {
        const auto b = block(spec, n);
        const auto [om, op] = testing::symmetric_2x2(b.m[0][0], b.m[0][1], b.m[1][1]);
        const auto [m, p] = eigenvalue_pair(spec, n);
        const double scale = std::max(1.0, static_cast<double>(op));
        worst_pair = std::max({worst_pair, std::abs(m - static_cast<double>(om)) / scale,
                               std::abs(p - static_cast<double>(op)) / scale});
      }
      const double at100 = 1e4 * expansion_residual(spec, 100);
      double worst = 0.0;
      for (std::int64_t n = 10; n <= 10000; ++n) {
        const double nd = static_cast<double>(n);
        worst = std::max(worst, nd * nd * expansion_residual(spec, n));
      }
      if (!(worst < 10.0 * at100)) {
        residual_ok = false;
        os << "[c=" << c << (v == DegenerateVariant::C2Zero ? " c2=0" : " c1=0")
           << " max n^2 r=" << worst << " vs 10x" << at100 << "] ";
      }
    }
  }
  const double m2 = eigenvalue_pair({DegenerateVariant::C2Zero, 1.0}, 10000).first;
  const double m1 = eigenvalue_pair({DegenerateVariant::C1Zero, 1.0}, 10000).first;
  const bool half_ok = std::abs(m2 - 0.5) < 1e-4 && std::abs(m1 - 0.5) < 1e-4;
  os << "max scaled pair error " << worst_pair << ", c=1 minus at n=1e4: " << m2 << ", " << m1;
  return {worst_pair <= 1e-12 && residual_ok && half_ok, os.str()};
}

Outcome discrete_exponents() {
  const ModulationParams p{3.0, 1.0};
  const auto fwd = forward_solve(p, 0.0, 1.0, 1.0, 800);
  const auto bwd = backward_minimal(p, 0.0, 800);
  const double lf = fit_power_growth(fwd).log_alpha;
  const double lb = fit_power_growth(bwd).log_alpha;
  const double coup = coupling_check(bwd, descriptor(p, 0.0));
  const double target = std::log(kGolden);
  std::ostringstream os;
  os << "forward " << lf << ", backward " << lb << " (target +-" << target << "), coupling "
     << coup;
  return {rel_err(lf, target) < 0.01 && rel_err(lb, -target) < 0.01 &&
              rel_err(coup, -kGolden) < 0.02,
          os.str()};
}

Outcome critical_exponents() {
  const double dc = fit_expsqrt(backward_minimal({0.3, 0.7}, 0.0, 4096));
  const double db = fit_expsqrt(backward_minimal({1.5, 0.5}, 1.0, 4096));
  std::ostringstream os;
  os << "delta_hat (0.3,0.7) " << dc << ", (1.5,0.5) " << db;
  return {rel_err(dc, -3.0861) < 0.05 && rel_err(db, -1.63299) < 0.05, os.str()};
}

Outcome beta_identity() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> cdist(-2.0, 2.0);
  std::uniform_real_distribution<double> ldist(-10.0, 10.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 1000) {
    const ModulationParams p{cdist(rng), cdist(rng)};
    if (p.degenerate() || std::abs(discriminant(p, 0.0)) >= 2.0) continue;
    ++tested;
    const auto d = descriptor(p, ldist(rng));
    worst = std::max({worst, std::abs(d.beta_plus.real() + 0.5),
                      std::abs(d.beta_minus.real() + 0.5)});
  }
  std::ostringstream os;
  os << "max |Re beta + 1/2| = " << worst;
  return {worst <= 1e-10, os.str()};
}

Outcome semibounded_case_c() {
  const ModulationParams p{0.3, 0.7};
  bool ok = true;
  std::ostringstream os;
  for (std::size_t N : {100u, 200u, 400u, 800u, 1600u}) {
    const auto t = truncation(p, N);
    const double m = smallest_eigenvalue(t);
    const auto below = count_below(t, 0.3);
    os << "N=" << N << ": min " << m << ", count " << below << "; ";
    if (m < 0.3 - 1e-8 || below != 0) ok = false;
  }
  return {ok, os.str()};
}

Outcome not_semibounded() {
  bool ok = true;
  std::ostringstream os;
  for (const ModulationParams p : {ModulationParams{1.5, 0.5}, ModulationParams{3.0, 1.0}}) {
    std::vector<double> minima;
    for (std::size_t N : {100u, 200u, 400u, 800u, 1600u}) {
      minima.push_back(smallest_eigenvalue(truncation(p, N)));
    }
    for (std::size_t i = 1; i < minima.size(); ++i) {
      if (!(minima[i - 1] < 0.0 && minima[i] < 2.0 * minima[i - 1])) ok = false;
    }
    if (!(minima.back() < -10.0)) ok = false;
    os << "(" << p.c1 << "," << p.c2 << ") min at 1600 " << minima.back() << "; ";
  }
  return {ok, os.str()};
}

Outcome witness_certificate() {
  bool ok = true;
  std::ostringstream os;
  for (const ModulationParams p : {ModulationParams{0.7, 0.3}, ModulationParams{0.3, 0.7}}) {
    const auto cert = pp_nonempty_certificate(p, 4096);
    const auto r256 = evaluate_witness(p, 256).report;
    const auto r4096 = evaluate_witness(p, 4096).report;
    const double q256 = r256.lhs / r256.rhs;
    const double q4096 = r4096.lhs / r4096.rhs;
    os << "(" << p.c1 << "," << p.c2 << ") ";
    if (cert.found_n) {
      os << "found N=" << *cert.found_n << " count_below(1/2)=" << cert.count_below_half;
      if (*cert.found_n > 1024 || cert.count_below_half < 1) ok = false;
    } else {
      os << "no N <= 4096";
      ok = false;
    }
    os << ", lhs/rhs " << q256 << " -> " << q4096 << "; ";
    if (!(q4096 < 0.5 * q256)) ok = false;
  }
  return {ok, os.str()};
}

Outcome count_bound() {
  bool ok = true;
  std::ostringstream os;
  for (double eps : {0.05, 0.1, 0.2}) {
    try {
      const auto r = count_bound_check({0.3, 0.7}, eps, 2000);
      os << "eps=" << eps << ": " << r.count << " <= " << r.bound << "; ";
      if (!r.ok) ok = false;
    } catch (const Error& e) {
      os << "eps=" << eps << ": " << e.what() << "; ";
      ok = false;
    }
  }
  return {ok, os.str()};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cdist(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> ndist(1, 12);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const auto t = truncation({cdist(rng), cdist(rng)}, ndist(rng));
    const auto ref = testing::dense_oracle(t);
    const auto got = eigenvalues_in(t, ref.front() - 1.0, ref.back() + 1.0, 1e-12);
    if (got.size() != ref.size()) return {false, "eigenvalue count mismatch"};
    for (std::size_t i = 0; i < ref.size(); ++i) {
      worst = std::max(worst, std::abs(got.values[i] - ref[i]));
    }
  }
  std::ostringstream os;
  os << "max deviation " << worst;
  return {worst <= 1e-9, os.str()};
}

Outcome decoupled_expansion() {
  bool ok = true;
  std::ostringstream os;
  for (const ModulationParams p : {ModulationParams{0.3, 0.7}, ModulationParams{3.0, 1.0}}) {
    for (double lambda : {0.0, 1.0}) {
      const auto ba = ba_coefficients(p, lambda);
      auto e1 = [&](std::int64_t k) {
        const double kd = static_cast<double>(k);
        return std::abs(kd * (decoupled_coeffs(p, lambda, k).p1 - ba.a0) - ba.a1);
      };
      auto e2 = [&](std::int64_t k) {
        const double kd = static_cast<double>(k);
        return std::abs(kd * (decoupled_coeffs(p, lambda, k).p2 - ba.b0) - ba.b1);
      };
      const double C1 = 100.0 * e1(100);
      const double C2 = 100.0 * e2(100);
      std::int64_t bad = 0;
      for (std::int64_t k = 100; k <= 10000; ++k) {
        const double kd = static_cast<double>(k);
        if (e1(k) > 2.0 * C1 / kd || e2(k) > 2.0 * C2 / kd) ++bad;
      }
      os << "(" << p.c1 << "," << p.c2 << ",l=" << lambda << ") C1=" << C1 << " C2=" << C2
         << " violations " << bad << "; ";
      if (bad != 0) ok = false;
    }
  }
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "band/discriminant equivalence", 1.0, band_equivalence},
      {2, "classification map", 1.0, classification_map},
      {3, "degenerate spectra", 5.0, degenerate_spectra},
      {4, "discrete-region exponents", 2.0, discrete_exponents},
      {5, "critical-line exponents", 5.0, critical_exponents},
      {6, "pure-ac beta identity", 0.0, beta_identity},
      {7, "semiboundedness on the c line", 10.0, semibounded_case_c},
      {8, "non-semiboundedness off the c line", 10.0, not_semibounded},
      {9, "witness certificate", 5.0, witness_certificate},
      {10, "eigenvalue count bound", 20.0, count_bound},
      {11, "oracle equivalence", 0.0, oracle_equivalence},
      {12, "decoupled-coefficient expansion", 0.0, decoupled_expansion},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = out.pass;
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      pass = false;
      out.detail += " [over time limit]";
    }
    if (!pass) ++failures;
    std::printf("%s  %2d  %-38s %7.3fs  %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                out.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
