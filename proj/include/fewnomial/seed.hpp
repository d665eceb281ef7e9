#ifndef FEWNOMIAL_SEED_HPP
#define FEWNOMIAL_SEED_HPP

// The seed polynomial attached to the nested-power equation at level n, its
// derivation-division complexity DD(n), and the root bound DD(n) + 2.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>

#include "fewnomial/coeff_poly.hpp"
#include "fewnomial/derivation.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/laurent.hpp"
#include "fewnomial/serialize.hpp"

namespace fewnomial {

/// Seed at level n >= 1, a Laurent polynomial in n-1 pairs over Z[R1..Rn]:
///
///   sum_{j=1..n} Delta_n (Delta_j - Delta_{j-1}) x1...x_{j-1} y_j...y_{n-1}.
inline LaurentPoly build_seed(std::size_t n) {
  if (n == 0) throw PreconditionError("build_seed: level must be >= 1");
  const std::size_t pairs = n - 1;
  LaurentPoly p(pairs, n);
  const CoeffPoly dn = delta(n, n);
  for (std::size_t j = 1; j <= n; ++j) {
    ExponentPair e(pairs);
    for (std::size_t i = 0; i + 1 < j; ++i) e.k[i] = 1;
    for (std::size_t i = j - 1; i < pairs; ++i) e.l[i] = 1;
    p.add_term(e, dn * (delta(j, n) - delta(j - 1, n)));
  }
  return p;
}

/// The monomial x1...xn / (y1...y_{n-1})^2 dividing Phi(x^2 phi'') in n pairs.
inline UnitaryMonomial seed_divisor(std::size_t n) {
  UnitaryMonomial m = UnitaryMonomial::identity(n);
  for (std::size_t i = 0; i < n; ++i) m.exponent.k[i] = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) m.exponent.l[i] = -2;
  return m;
}

/// Independent route to the seed. Since x^2 (d/dx)^2 = (x d/dx)^2 - x d/dx
/// and x d/dx corresponds to the derivation, Phi(x^2 g_n'') = (dd - d)(y_n).
/// The b*x term of phi is annihilated by x^2 (d/dx)^2 and drops out.
inline LaurentPoly seed_via_second_derivative(std::size_t n) {
  if (n == 0) {
    throw PreconditionError("seed_via_second_derivative: level must be >= 1");
  }
  ExponentPair yn(n);
  yn.l[n - 1] = 1;
  const LaurentPoly y = LaurentPoly::monomial(yn, CoeffPoly::constant(n, 1));
  const LaurentPoly dy = derive(y);
  const LaurentPoly psi = derive(dy) - dy;
  const LaurentPoly q = divide_by_monomial(psi, seed_divisor(n));
  try {
    return project_pairs(q, n - 1);
  } catch (const InvariantViolation& ex) {
    throw InvariantViolation(
        std::string("seed_via_second_derivative: residual x_n/y_n exponents: ") +
            ex.what(),
        to_json(q).dump());
  }
}

struct SeedReport {
  std::size_t n = 0;
  LaurentPoly seed;
  std::size_t dd_steps = 0;   // DD(n)
  std::size_t fp_bound = 0;   // DD(n) + 2
  DDTrace trace;
};

inline SeedReport compute_dd_n(std::size_t n, const DDRunOptions& opts = {}) {
  SeedReport r;
  r.n = n;
  r.seed = build_seed(n);
  r.trace = dd_run(r.seed, opts);
  r.dd_steps = r.trace.step_count();
  r.fp_bound = r.dd_steps + 2;
  return r;
}

inline Json to_json(const SeedReport& r, bool with_trace) {
  Json j;
  j["n"] = r.n;
  j["dd_steps"] = r.dd_steps;
  j["fp_bound"] = r.fp_bound;
  j["seed"] = to_json(r.seed);
  if (with_trace) j["trace"] = to_json(r.trace);
  return j;
}

// ---------------------------------------------------------------------------
// Long runs (n = 5 needs 65531 steps). Progress is persisted to a checkpoint
// file holding a lightweight trace (monomials and degrees only) and a resume
// cursor with the current polynomial.

struct CheckpointOptions {
  std::filesystem::path directory;
  std::size_t every = 1000;
  std::optional<std::size_t> max_steps;
};

inline std::filesystem::path checkpoint_file(const CheckpointOptions& opts,
                                             std::size_t n) {
  return opts.directory / ("dd_n" + std::to_string(n) + ".checkpoint.json");
}

inline void write_checkpoint(const std::filesystem::path& file, std::size_t n,
                             const DDTrace& trace, const LaurentPoly& current) {
  Json j;
  j["format"] = "dd-checkpoint-v1";
  j["n"] = n;
  j["trace"] = to_json(trace);
  j["cursor"] = {{"step", trace.step_count()}, {"current", to_json(current)}};
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, file);
}

struct LongRunResult {
  DDTrace trace;
  std::size_t resumed_from = 0;
  std::filesystem::path checkpoint;
};

/// Runs DD on the level-n seed, resuming from an existing checkpoint in
/// opts.directory, and writing a new one every opts.every steps and at exit.
inline LongRunResult compute_dd_n_checkpointed(std::size_t n,
                                               const CheckpointOptions& opts) {
  std::filesystem::create_directories(opts.directory);
  LongRunResult res;
  res.checkpoint = checkpoint_file(opts, n);

  LaurentPoly current = build_seed(n);
  res.trace.initial = current;
  if (std::filesystem::exists(res.checkpoint)) {
    std::ifstream in(res.checkpoint);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError("checkpoint " + res.checkpoint.string() + ": " +
                       ex.what());
    }
    if (j.value("format", "") != "dd-checkpoint-v1" ||
        j.value("n", std::size_t{0}) != n) {
      throw ParseError("checkpoint " + res.checkpoint.string() +
                       " does not match level " + std::to_string(n));
    }
    res.trace = trace_from_json(j.at("trace"));
    current = laurent_from_json(j.at("cursor").at("current"));
    res.resumed_from = res.trace.step_count();
    if (res.trace.complete) return res;
  }

  DDRunOptions run;
  run.keep_polynomials = false;
  run.max_steps = opts.max_steps;
  run.on_step = [&](const DDTrace& t, const LaurentPoly& cur) {
    if (opts.every > 0 && t.step_count() % opts.every == 0) {
      write_checkpoint(res.checkpoint, n, t, cur);
    }
  };
  const LaurentPoly last = dd_continue(res.trace, std::move(current), run);
  write_checkpoint(res.checkpoint, n, res.trace, last);
  return res;
}

}  // namespace fewnomial

#endif  // FEWNOMIAL_SEED_HPP
