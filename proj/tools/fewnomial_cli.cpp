#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fewnomial/fewnomial.hpp"

namespace fw = fewnomial;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

fw::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return fw::Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw UsageError(path + ": " + ex.what());
  }
}

void print_json(const fw::Json& j) { std::cout << j.dump(2) << '\n'; }

std::string fmt(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

struct DDArgs {
  std::size_t n = 1;
  bool trace = false;
  bool json = false;
  bool checkpoint = false;
  std::size_t every = 1000;
  std::size_t max_steps = 0;
};

int cmd_dd(const DDArgs& args) {
  if (args.n == 0) throw UsageError("--n must be >= 1");
  if (args.checkpoint) {
    const char* env = std::getenv("FEWNOMIAL_CHECKPOINT_DIR");
    fw::CheckpointOptions opts;
    opts.directory = env && *env ? env : "dd-checkpoints";
    opts.every = args.every;
    if (args.max_steps > 0) opts.max_steps = args.max_steps;
    const auto res = fw::compute_dd_n_checkpointed(args.n, opts);
    const std::size_t steps = res.trace.step_count();
    if (args.json) {
      fw::Json j;
      j["n"] = args.n;
      j["complete"] = res.trace.complete;
      j["steps"] = steps;
      j["resumed_from"] = res.resumed_from;
      if (res.trace.complete) j["fp_bound"] = steps + 2;
      j["checkpoint"] = res.checkpoint.string();
      print_json(j);
    } else {
      std::cout << "n = " << args.n << '\n'
                << "resumed from step " << res.resumed_from << '\n'
                << (res.trace.complete ? "DD(n) = " : "steps so far = ")
                << steps << '\n';
      if (res.trace.complete) std::cout << "fp bound = " << steps + 2 << '\n';
      std::cout << "checkpoint: " << res.checkpoint.string() << '\n';
    }
    return kOk;
  }

  const auto report = fw::compute_dd_n(args.n);
  const auto conjectured = fw::ackermann(args.n - 1, 1);
  const bool matches =
      conjectured.value && *conjectured.value == fw::BigInt(report.fp_bound);
  if (args.json) {
    fw::Json j = fw::to_json(report, args.trace);
    if (conjectured.value) {
      j["conjectured_bound"] = conjectured.value->str();
      j["matches_conjecture"] = matches;
    }
    print_json(j);
    return kOk;
  }
  std::cout << "n = " << report.n << '\n'
            << "DD(n) = " << report.dd_steps << '\n'
            << "fp bound = " << report.fp_bound << '\n';
  if (conjectured.value) {
    std::cout << "A(n-1,1) = " << conjectured.value->str()
              << (matches ? " (matches)" : " (DIFFERS from the computed bound)")
              << '\n';
  }
  if (args.trace) std::cout << fw::pretty_trace(report.trace);
  return kOk;
}

// ---------------------------------------------------------------------------

struct DDPolyArgs {
  std::string input;
  bool trace = false;
  bool json = false;
  bool coefficients = false;
};

int cmd_dd_poly(const DDPolyArgs& args) {
  fw::LaurentPoly p;
  try {
    p = fw::laurent_from_json(read_json_file(args.input));
  } catch (const fw::ParseError& ex) {
    throw UsageError(ex.what());
  }
  if (!fw::is_regular(p)) {
    throw UsageError("input polynomial is not regular");
  }
  const auto trace = fw::dd_run(p);
  if (args.json) {
    fw::Json j;
    j["steps"] = trace.step_count();
    j["derivative_vanished"] = trace.derivative_vanished;
    if (args.trace) j["trace"] = fw::to_json(trace);
    print_json(j);
    return kOk;
  }
  std::cout << "DD(p) = " << trace.step_count() << '\n';
  if (trace.derivative_vanished) {
    std::cout << "stopped: derivative vanished outside the base ring\n";
  }
  if (args.trace) std::cout << fw::pretty_trace(trace, args.coefficients);
  return kOk;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  std::size_t max = 5;
  std::size_t dd_upto = 4;
  bool json = false;
  bool markdown = false;
};

int cmd_bounds(const BoundsArgs& args) {
  if (args.max == 0) throw UsageError("--max must be >= 1");
  const auto rows = fw::bounds_table(
      args.max, [&](std::size_t n) -> std::optional<std::size_t> {
        if (n > args.dd_upto) return std::nullopt;
        return fw::compute_dd_n(n).fp_bound;
      });
  if (args.json) {
    fw::Json arr = fw::Json::array();
    for (const auto& r : rows) {
      fw::Json j;
      j["n"] = r.n;
      j["dd_bound"] = r.dd_bound ? fw::Json(*r.dd_bound) : fw::Json(nullptr);
      j["conjectured"] = r.conjectured.value
                             ? fw::Json(r.conjectured.value->str())
                             : fw::Json(nullptr);
      if (!r.conjectured.note.empty()) j["conjectured_note"] = r.conjectured.note;
      j["khovanskii"] = r.khovanskii.str();
      j["khovanskii_display"] = fw::format_magnitude(r.khovanskii);
      j["bihan_sottile"] = r.bihan_sottile.str();
      j["bihan_sottile_display"] = fw::format_magnitude(r.bihan_sottile);
      j["fp_exact"] = r.fp_exact ? fw::Json(*r.fp_exact) : fw::Json(nullptr);
      arr.push_back(std::move(j));
    }
    print_json({{"rows", std::move(arr)}});
    return kOk;
  }
  std::cout << fw::bounds_markdown(rows);
  return kOk;
}

// ---------------------------------------------------------------------------

struct RootsArgs {
  std::string params;
  std::size_t grid = 100000;
  double tol = 1e-14;
  std::size_t max_roots = 64;
  double scale = 1.0;
  unsigned threads = 1;
  bool json = false;
};

int cmd_roots(const RootsArgs& args) {
  fw::ProblemParams params;
  try {
    params = fw::params_from_json(read_json_file(args.params));
  } catch (const fw::ParseError& ex) {
    throw UsageError(ex.what());
  }
  fw::RootOptions opts;
  opts.grid_points = args.grid;
  opts.refine_tol = args.tol;
  opts.max_roots = args.max_roots;
  opts.scale = args.scale;
  opts.threads = args.threads;
  const auto rep = fw::find_roots(params, opts);
  if (args.json) {
    print_json(fw::to_json(rep));
  } else {
    std::cout << "domain: (" << fmt(rep.interval.lower) << ", "
              << (rep.interval.unbounded_above() ? std::string("inf")
                                                 : fmt(rep.interval.upper))
              << ")" << (rep.interval.empty ? " empty" : "") << '\n'
              << "roots: " << rep.count << '\n';
    for (const auto& r : rep.roots) {
      std::cout << "  " << fmt(r.refined) << "  in [" << fmt(r.lo, 17) << ", "
                << fmt(r.hi, 17) << "]  residual " << fmt(r.residual, 3)
                << '\n';
    }
  }
  if (rep.saturated) {
    std::cerr << "warning: max_roots reached; the grid is probably too coarse\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

fw::ProblemParams example_params(int n) {
  fw::ProblemParams p;
  if (n == 2) {
    p.a = {0.004259259259, -0.1516666667};
    p.r = {fw::Exponent(2.0), fw::Exponent::ratio(1, 3)};
  } else {
    p.a = {-0.012, 0.0035836, -8.39e-6};
    p.r = {fw::Exponent::ratio(53, 150), fw::Exponent::ratio(11, 8),
           fw::Exponent(2.0)};
  }
  return p;
}

int cmd_verify_examples() {
  struct Case {
    int n;
    std::vector<double> expected;
    double rel_tol;
  };
  const std::vector<Case> cases = {
      {2, {0.0123409, 0.1741525, 0.3585065}, 1e-5},
      {3, {1.270599e-5, 1.921586e-5, 4.764392e-5, 7.949546e-5, 0.2384109}, 1e-3},
  };
  bool all = true;
  for (const auto& c : cases) {
    const auto rep = fw::find_roots(example_params(c.n));
    std::size_t matched = 0;
    if (rep.count == c.expected.size()) {
      for (std::size_t i = 0; i < c.expected.size(); ++i) {
        const double rel =
            std::abs(rep.roots[i].refined - c.expected[i]) / c.expected[i];
        if (rel <= c.rel_tol) ++matched;
      }
    }
    const bool ok = matched == c.expected.size() && rep.count == c.expected.size();
    all = all && ok;
    std::cout << "n=" << c.n << ": " << matched << "/" << c.expected.size()
              << " roots " << (ok ? "PASS" : "FAIL");
    if (rep.count != c.expected.size()) {
      std::cout << " (found " << rep.count << ")";
    }
    std::cout << '\n';
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t want[] = {0, 2, 3, 5};
    const auto r = fw::compute_dd_n(n);
    const bool ok = r.fp_bound == want[n];
    all = all && ok;
    std::cout << "fp bound n=" << n << ": " << r.fp_bound << " "
              << (ok ? "PASS" : "FAIL") << '\n';
  }
  return all ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

struct CompensatorArgs {
  std::size_t n = 1;
  std::vector<double> r;
  std::vector<double> a;
  double b = 1.0;
  double x0 = std::nan("");
  double lo = std::nan("");
  double hi = std::nan("");
  std::size_t grid = 10000;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double tol = 1e-6;
  std::string dump_basis;
  bool json = false;
};

int cmd_compensator(const CompensatorArgs& args) {
  if (args.n == 0) throw UsageError("--n must be >= 1");
  if (args.r.size() != args.n || args.a.size() != args.n) {
    throw UsageError("--r and --a need exactly n values each");
  }
  fw::ProblemParams params;
  params.b = args.b;
  params.a = args.a;
  for (double r : args.r) params.r.emplace_back(r);
  params.validate();

  const auto dom = fw::domain_interval(params);
  if (dom.empty) throw UsageError("empty domain for these parameters");
  const double x0 = std::isnan(args.x0) ? fw::default_base_point(dom) : args.x0;
  const double lo = std::isnan(args.lo) ? std::max(x0 / 2, 0.5 * (x0 + dom.lower)) : args.lo;
  const double hi = std::isnan(args.hi)
                        ? (dom.unbounded_above() ? 4 * x0 : 0.5 * (x0 + dom.upper))
                        : args.hi;
  if (!dom.contains(lo) || !dom.contains(hi)) {
    throw UsageError("grid range leaves the domain");
  }

  const auto report = fw::compute_dd_n(args.n);
  const auto chain = fw::build_operator(report.trace, params, x0);
  const auto grid = fw::make_grid(lo, hi, x0, args.grid);
  const auto basis = fw::omega_basis(chain, grid, 0.0);
  const auto lam = fw::lambda_coeffs(fw::phi_samples(params, grid), basis, 0.0);
  const auto zeros = fw::chebyshev_zero_count(basis, args.samples, args.seed);
  const bool quad_ok = basis.error_estimate <= args.tol;
  const bool span_ok = lam.relative_residual <= args.tol;
  const bool ok = quad_ok && span_ok && zeros.pass();

  if (!args.dump_basis.empty()) {
    std::ofstream out(args.dump_basis);
    if (!out) throw UsageError("cannot write " + args.dump_basis);
    out << "x";
    for (std::size_t k = 0; k < basis.order(); ++k) out << ",omega" << k;
    out << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << grid[i];
      for (std::size_t k = 0; k < basis.order(); ++k) out << ',' << basis.values[k][i];
      out << '\n';
    }
  }

  if (args.json) {
    fw::Json j;
    j["n"] = args.n;
    j["order"] = chain.order;
    j["base_point"] = x0;
    j["interval"] = {lo, hi};
    j["grid_points"] = grid.size();
    fw::Json w = fw::Json::array();
    for (const auto& wt : chain.weights) w.push_back(fw::to_string(wt));
    j["weights"] = std::move(w);
    j["lambda"] = lam.lambda;
    j["residual"] = lam.residual;
    j["relative_residual"] = lam.relative_residual;
    j["quadrature_error"] = basis.error_estimate;
    j["max_zero_count"] = zeros.max_zeros;
    j["zero_count_pass"] = zeros.pass();
    j["pass"] = ok;
    print_json(j);
  } else {
    std::cout << "order m = " << chain.order << ", base point " << fmt(x0)
              << ", grid [" << fmt(lo) << ", " << fmt(hi) << "] with "
              << grid.size() << " points\n";
    for (std::size_t k = 0; k < chain.order; ++k) {
      std::cout << "rho_" << k << " = " << fw::to_string(chain.weights[k]) << '\n';
    }
    std::cout << "lambda =";
    for (double l : lam.lambda) std::cout << ' ' << fmt(l);
    std::cout << "\nresidual = " << fmt(lam.relative_residual, 3)
              << " (relative)" << (span_ok ? "" : " ABOVE TOLERANCE") << '\n'
              << "quadrature error estimate = " << fmt(basis.error_estimate, 3)
              << (quad_ok ? "" : " ABOVE TOLERANCE") << '\n'
              << "max zero count = " << zeros.max_zeros << " (limit "
              << chain.order - 1 << ") " << (zeros.pass() ? "PASS" : "FAIL")
              << '\n';
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivation-division bounds and numeric checks for nested-power equations"};
  app.require_subcommand(1);

  DDArgs dd;
  auto* dd_cmd = app.add_subcommand("dd", "DD(n) and the root bound for the level-n seed");
  dd_cmd->add_option("--n", dd.n, "level")->required();
  dd_cmd->add_flag("--trace", dd.trace, "print the step-by-step trace");
  dd_cmd->add_flag("--json", dd.json, "JSON output");
  dd_cmd->add_flag("--checkpoint", dd.checkpoint,
                   "long-run mode; checkpoints go to $FEWNOMIAL_CHECKPOINT_DIR");
  dd_cmd->add_option("--every", dd.every, "checkpoint interval in steps");
  dd_cmd->add_option("--max-steps", dd.max_steps, "stop after this many steps (0 = no cap)");

  DDPolyArgs ddp;
  auto* ddp_cmd = app.add_subcommand("dd-poly", "run derivation-division on a polynomial from JSON");
  ddp_cmd->add_option("--input", ddp.input, "LaurentPoly JSON file")->required();
  ddp_cmd->add_flag("--trace", ddp.trace, "print the trace");
  ddp_cmd->add_flag("--coefficients", ddp.coefficients, "include coefficients in the trace");
  ddp_cmd->add_flag("--json", ddp.json, "JSON output");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "comparison table of root bounds");
  bounds_cmd->add_option("--max", bounds.max, "largest n");
  bounds_cmd->add_option("--dd-upto", bounds.dd_upto, "run derivation-division up to this n");
  auto* bj = bounds_cmd->add_flag("--json", bounds.json, "JSON output");
  auto* bm = bounds_cmd->add_flag("--markdown", bounds.markdown, "markdown table (default)");
  bj->excludes(bm);

  RootsArgs roots;
  auto* roots_cmd = app.add_subcommand("roots", "isolate the real solutions");
  roots_cmd->add_option("--params", roots.params, "parameter JSON file")->required();
  roots_cmd->add_option("--grid", roots.grid, "grid points");
  roots_cmd->add_option("--tol", roots.tol, "relative bisection tolerance");
  roots_cmd->add_option("--max-roots", roots.max_roots, "stop after this many roots");
  roots_cmd->add_option("--scale", roots.scale, "magnitude hint for the scan range");
  roots_cmd->add_option("--threads", roots.threads, "worker threads");
  roots_cmd->add_flag("--json", roots.json, "JSON output");

  auto* verify_cmd = app.add_subcommand("verify-paper-examples",
                                        "check the bundled n=2 and n=3 examples");

  CompensatorArgs comp;
  auto* comp_cmd = app.add_subcommand("compensator", "Chebyshev basis and expansion of phi");
  comp_cmd->add_option("--n", comp.n, "level")->required();
  comp_cmd->add_option("--r", comp.r, "exponents, comma separated")->required()->delimiter(',');
  comp_cmd->add_option("--a", comp.a, "offsets, comma separated")->required()->delimiter(',');
  comp_cmd->add_option("--b", comp.b, "slope b");
  comp_cmd->add_option("--x0", comp.x0, "base point");
  comp_cmd->add_option("--lo", comp.lo, "grid lower end");
  comp_cmd->add_option("--hi", comp.hi, "grid upper end");
  comp_cmd->add_option("--grid", comp.grid, "grid points");
  comp_cmd->add_option("--samples", comp.samples, "random combinations for the zero count");
  comp_cmd->add_option("--seed", comp.seed, "random seed");
  comp_cmd->add_option("--tol", comp.tol, "tolerance for quadrature and residual");
  comp_cmd->add_option("--dump-basis", comp.dump_basis, "write omega_k samples as CSV");
  comp_cmd->add_flag("--json", comp.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*dd_cmd) return cmd_dd(dd);
    if (*ddp_cmd) return cmd_dd_poly(ddp);
    if (*bounds_cmd) return cmd_bounds(bounds);
    if (*roots_cmd) return cmd_roots(roots);
    if (*verify_cmd) return cmd_verify_examples();
    if (*comp_cmd) return cmd_compensator(comp);
  } catch (const UsageError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const fw::PreconditionError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const fw::InvariantViolation& ex) {
    std::cerr << "invariant violation: " << ex.what() << '\n' << ex.details() << '\n';
    return kCheckFailed;
  } catch (const fw::Error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}
