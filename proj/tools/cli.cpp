#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "jacobi/analysis.hpp"
#include "jacobi/asymptotics.hpp"
#include "jacobi/degenerate.hpp"
#include "jacobi/eigensolve.hpp"
#include "jacobi/error.hpp"
#include "jacobi/model.hpp"
#include "jacobi/recurrence.hpp"
#include "json_writer.hpp"

namespace jacobi::cli {

namespace {

struct Options {
  double c1 = 0.0;
  double c2 = 0.0;
  double tol = kLineTolerance;
  double lambda = 0.0;
  std::size_t n = 0;
  std::string mode = "forward";
  double u1 = 1.0;
  double u2 = 0.0;
  double rel_tol = 1e-10;
  std::size_t size = 0;
  double lo = 0.0;
  double hi = 0.0;
  double eig_tol = kBisectionTolerance;
  double grid_min = -2.0;
  double grid_max = 2.0;
  double grid_step = 0.05;
  std::size_t n_max = 4096;
  double eps = 0.1;
  double c = 1.0;
  std::string zero = "c2";
  std::vector<std::size_t> sizes{100, 200, 400, 800, 1600};
  std::size_t theta_steps = 32;
  unsigned threads = 0;
};

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json interval_json(const std::optional<Interval>& iv) {
  if (!iv) return nullptr;
  return Json::array({iv->lo, iv->hi});
}

unsigned resolve_threads(unsigned requested) {
  if (const char* env = std::getenv("SPECTRAL_PHASE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_classify(const Options& o, std::ostream& out) {
  const ModulationParams p{o.c1, o.c2};
  const auto region = classify(p, o.tol);
  const auto b = bands(p);
  Json j;
  j["region"] = to_string(region.tag);
  if (p.degenerate()) {
    j["d0"] = nullptr;
    j["a0"] = nullptr;
  } else {
    j["d0"] = discriminant(p, 0.0);
    j["a0"] = ba_coefficients(p, 0.0).a0;
  }
  j["bands"] = Json::array({b.lo_minus, b.lo_plus, b.hi_minus, b.hi_plus});
  j["ac_interval"] = interval_json(region.ac_interval);
  j["pp_interval"] = interval_json(region.pp_interval);
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const ModulationParams p{o.c1, o.c2};
  if (o.n < 2) throw Error(ErrorKind::InvalidArgument, "--n must be >= 2");
  SolutionTrace trace;
  if (o.mode == "forward") {
    trace = forward_solve(p, o.lambda, o.u1, o.u2, o.n);
  } else {
    trace = backward_minimal(p, o.lambda, o.n, o.rel_tol);
  }
  out << "n,sign,log10_abs\n";
  for (std::size_t n = 1; n <= trace.size(); ++n) {
    const auto& v = trace.u(n);
    out << n << ',' << v.sign << ',' << format_real(v.logmag / std::log(10.0)) << '\n';
  }
  return kExitOk;
}

int cmd_asym(const Options& o, std::ostream& out) {
  const auto d = descriptor({o.c1, o.c2}, o.lambda, o.tol);
  Json j;
  j["variant"] = to_string(d.variant);
  j["alpha_plus"] = complex_json(d.alpha_plus);
  j["alpha_minus"] = complex_json(d.alpha_minus);
  j["beta_plus"] = complex_json(d.beta_plus);
  j["beta_minus"] = complex_json(d.beta_minus);
  j["delta_plus"] = d.delta_plus ? complex_json(*d.delta_plus) : Json(nullptr);
  j["coupling_plus"] = complex_json(d.coupling_plus);
  j["coupling_minus"] = complex_json(d.coupling_minus);
  j["subordinate_exists"] = d.subordinate_exists;
  j["near_degenerate_roots"] = d.near_degenerate_roots;
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  if (o.size < 1) throw Error(ErrorKind::InvalidArgument, "--size must be >= 1");
  if (!(o.lo <= o.hi)) throw Error(ErrorKind::InvalidArgument, "--lo must not exceed --hi");
  const auto t = truncation({o.c1, o.c2}, o.size);
  const auto set = eigenvalues_in(t, o.lo, o.hi, o.eig_tol, resolve_threads(o.threads));
  out << "eigenvalue\n";
  for (double v : set.values) out << format_real(v) << '\n';
  return kExitOk;
}

int cmd_phase_diagram(const Options& o, std::ostream& out) {
  if (!(o.grid_step > 0.0) || !(o.grid_min <= o.grid_max) || !std::isfinite(o.grid_max) ||
      !std::isfinite(o.grid_min)) {
    throw Error(ErrorKind::InvalidArgument, "bad grid: need min <= max and step > 0");
  }
  const auto cells =
      static_cast<std::size_t>(std::floor((o.grid_max - o.grid_min) / o.grid_step + 1e-9)) + 1;
  std::vector<double> axis(cells);
  const double start_units = o.grid_min / o.grid_step;
  const bool on_lattice = std::abs(start_units - std::round(start_units)) < 1e-9;
  for (std::size_t i = 0; i < cells; ++i) {
    double v = on_lattice ? (std::round(start_units) + static_cast<double>(i)) * o.grid_step
                          : o.grid_min + static_cast<double>(i) * o.grid_step;
    if (std::abs(v) < 1e-9 * o.grid_step) v = 0.0;
    axis[i] = v;
  }
  std::vector<char> codes(cells * cells);
  auto work = [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t r = row_begin; r < row_end; ++r) {
      for (std::size_t col = 0; col < cells; ++col) {
        char code = '?';
        try {
          code = region_code(classify({axis[col], axis[r]}, o.tol).tag);
        } catch (const Error&) {
        }
        codes[r * cells + col] = code;
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(resolve_threads(o.threads), 1, cells);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(work, cells * w / workers, cells * (w + 1) / workers);
  }
  for (auto& th : pool) th.join();

  out << "c1,c2,region_code\n";
  for (std::size_t r = 0; r < cells; ++r) {
    for (std::size_t col = 0; col < cells; ++col) {
      out << format_real(axis[col]) << ',' << format_real(axis[r]) << ','
          << codes[r * cells + col] << '\n';
    }
  }
  return kExitOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const auto cert = pp_nonempty_certificate({o.c1, o.c2}, o.n_max, o.tol);
  Json j;
  j["found_n"] = cert.found_n ? Json(*cert.found_n) : Json(nullptr);
  j["branch"] = to_string(cert.last.report.branch);
  j["n"] = cert.last.report.N;
  j["lhs"] = cert.last.report.lhs;
  j["rhs"] = cert.last.report.rhs;
  j["shifted_form"] = cert.last.shifted_form;
  if (cert.found_n) {
    j["truncation_dim"] = cert.truncation_dim;
    j["count_below_half"] = cert.count_below_half;
    j["cross_check_ok"] = cert.cross_check_ok;
  } else {
    j["truncation_dim"] = nullptr;
    j["count_below_half"] = nullptr;
    j["cross_check_ok"] = nullptr;
  }
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_count(const Options& o, std::ostream& out) {
  const auto res = count_bound_check({o.c1, o.c2}, o.eps, o.size, o.tol);
  Json j;
  j["count"] = res.count;
  j["count_doubled"] = res.count_doubled;
  j["bound"] = res.bound;
  j["ok"] = res.ok;
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_degenerate(const Options& o, std::ostream& out) {
  if (o.zero != "c1" && o.zero != "c2") {
    throw Error(ErrorKind::InvalidArgument, "--zero must be c1 or c2");
  }
  const DegenerateSpec spec{o.zero == "c2" ? DegenerateVariant::C2Zero : DegenerateVariant::C1Zero,
                            o.c};
  const auto values = spectrum(spec, static_cast<std::int64_t>(o.n_max));
  out << "eigenvalue\n";
  for (double v : values) out << format_real(v) << '\n';
  return kExitOk;
}

int cmd_semibounded(const Options& o, std::ostream& out) {
  const auto rep = semibounded_check({o.c1, o.c2}, o.sizes, o.tol);
  Json j;
  j["verdict"] = to_string(rep.verdict);
  j["sizes"] = rep.sizes;
  j["minima"] = rep.minima;
  j["estimate_ok"] = rep.estimate_ok ? Json(*rep.estimate_ok) : Json(nullptr);
  out << dump(j) << '\n';
  return kExitOk;
}

int cmd_subordinacy(const Options& o, std::ostream& out) {
  const auto pts = subordinacy_diagnostic({o.c1, o.c2}, o.lambda, o.n, o.theta_steps);
  Json j;
  j["heuristic"] = true;
  j["points"] = Json::array();
  for (const auto& pt : pts) {
    Json e;
    e["length"] = pt.length;
    e["ratio"] = pt.ratio;
    j["points"].push_back(e);
  }
  out << dump(j) << '\n';
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::UnstableCount:
      return kExitNoConvergence;
    case ErrorKind::HalfLineResonance:
      return kExitExcludedPoint;
    default:
      return kExitUsage;
  }
}

void add_params(CLI::App* sub, Options& o) {
  sub->add_option("--c1", o.c1, "modulation parameter c1")->required();
  sub->add_option("--c2", o.c2, "modulation parameter c2")->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis of Jacobi matrices with q_n = n and 2-periodically modulated "
               "weights w_n = c_n n"};
  app.require_subcommand(1);
  Options o;

  auto* classify_cmd = app.add_subcommand("classify", "region of the (c1, c2) plane");
  add_params(classify_cmd, o);
  classify_cmd->add_option("--tol", o.tol, "critical line tolerance");

  auto* solve_cmd = app.add_subcommand("solve", "generalized eigenvector u_1..u_n as CSV");
  add_params(solve_cmd, o);
  solve_cmd->add_option("--lambda", o.lambda, "spectral parameter")->required();
  solve_cmd->add_option("--n", o.n, "number of entries")->required();
  solve_cmd->add_option("--mode", o.mode, "forward or backward")
      ->check(CLI::IsMember({"forward", "backward"}));
  solve_cmd->add_option("--u1", o.u1, "initial u_1 (forward)");
  solve_cmd->add_option("--u2", o.u2, "initial u_2 (forward)");
  solve_cmd->add_option("--rel-tol", o.rel_tol, "backward convergence tolerance");

  auto* asym_cmd = app.add_subcommand("asym", "asymptotic descriptor of generalized eigenvectors");
  add_params(asym_cmd, o);
  asym_cmd->add_option("--lambda", o.lambda, "spectral parameter")->required();
  asym_cmd->add_option("--tol", o.tol, "critical line tolerance");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of the size x size section");
  add_params(spectrum_cmd, o);
  spectrum_cmd->add_option("--size", o.size, "section dimension")->required();
  spectrum_cmd->add_option("--lo", o.lo, "interval start (inclusive)")->required();
  spectrum_cmd->add_option("--hi", o.hi, "interval end (exclusive)")->required();
  spectrum_cmd->add_option("--tol", o.eig_tol, "bisection width");
  spectrum_cmd->add_option("--threads", o.threads, "worker threads (0 = all)");

  auto* phase_cmd = app.add_subcommand("phase-diagram", "region codes on a square grid");
  phase_cmd->add_option("--min", o.grid_min, "grid start");
  phase_cmd->add_option("--max", o.grid_max, "grid end");
  phase_cmd->add_option("--step", o.grid_step, "grid spacing");
  phase_cmd->add_option("--tol", o.tol, "critical line tolerance");
  phase_cmd->add_option("--threads", o.threads, "worker threads (0 = all)");

  auto* witness_cmd = app.add_subcommand("witness", "certificate of spectrum below 1/2");
  add_params(witness_cmd, o);
  witness_cmd->add_option("--n-max", o.n_max, "largest witness size");
  witness_cmd->add_option("--tol", o.tol, "critical line tolerance");

  auto* count_cmd = app.add_subcommand("count", "eigenvalue count below 1/2 - eps vs 1/eps");
  add_params(count_cmd, o);
  count_cmd->add_option("--eps", o.eps, "distance below 1/2")->required();
  count_cmd->add_option("--size", o.size, "section dimension")->required();
  count_cmd->add_option("--tol", o.tol, "critical line tolerance");

  auto* degenerate_cmd = app.add_subcommand("degenerate", "closed-form spectrum when c1 c2 = 0");
  degenerate_cmd->add_option("--c", o.c, "nonzero parameter magnitude")->required();
  degenerate_cmd->add_option("--zero", o.zero, "which parameter vanishes")
      ->check(CLI::IsMember({"c1", "c2"}));
  degenerate_cmd->add_option("--n-max", o.n_max, "number of blocks")->required();

  auto* semibounded_cmd = app.add_subcommand("semibounded", "smallest eigenvalue per section size");
  add_params(semibounded_cmd, o);
  semibounded_cmd->add_option("--sizes", o.sizes, "increasing section sizes")->delimiter(',');
  semibounded_cmd->add_option("--tol", o.tol, "critical line tolerance");

  auto* subordinacy_cmd =
      app.add_subcommand("subordinacy", "heuristic subordinate-solution diagnostic");
  add_params(subordinacy_cmd, o);
  subordinacy_cmd->add_option("--lambda", o.lambda, "spectral parameter")->required();
  subordinacy_cmd->add_option("--n", o.n, "trace length")->required();
  subordinacy_cmd->add_option("--theta-steps", o.theta_steps, "angular grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(o, out);
    if (*solve_cmd) return cmd_solve(o, out);
    if (*asym_cmd) return cmd_asym(o, out);
    if (*spectrum_cmd) return cmd_spectrum(o, out);
    if (*phase_cmd) return cmd_phase_diagram(o, out);
    if (*witness_cmd) return cmd_witness(o, out);
    if (*count_cmd) return cmd_count(o, out);
    if (*degenerate_cmd) return cmd_degenerate(o, out);
    if (*semibounded_cmd) return cmd_semibounded(o, out);
    if (*subordinacy_cmd) return cmd_subordinacy(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace jacobi::cli
