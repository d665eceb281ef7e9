#ifndef FEWNOMIAL_DERIVATION_HPP
#define FEWNOMIAL_DERIVATION_HPP

// The derivation on Laurent polynomials and the derivation-division
// algorithm p -> d(p) / reg(d(p)).
//
// The derivation is R-linear, kills R, and acts on generators by
//   d(x_1) = d(y_1) = Delta_1 x_1,
//   d(x_j) = d(y_j) = Delta_j x_j (x_1...x_{j-1}) / (y_1...y_{j-1}).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fewnomial/coeff_poly.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/laurent.hpp"
#include "fewnomial/serialize.hpp"

namespace fewnomial {

namespace detail {

// Accumulates d(c x^k y^l) into out.
inline void derive_term_into(LaurentPoly& out, const ExponentPair& e,
                             const CoeffPoly& c) {
  const std::size_t n = e.num_pairs();
  const std::size_t nv = c.num_vars();
  if (nv < n) {
    throw DimensionError("derive: coefficient ring has " + std::to_string(nv) +
                         " variables but " + std::to_string(n) +
                         " pairs need Delta_" + std::to_string(n));
  }
  // `shifted` walks through e * P_{j-1}, P_{j-1} = x1..x_{j-1}/(y1..y_{j-1}).
  ExponentPair shifted = e;
  for (std::size_t j = 0; j < n; ++j) {
    const int kj = e.k[j];
    const int lj = e.l[j];
    if (kj != 0 || lj != 0) {
      const CoeffExponents dj = delta_exponents(j + 1, nv);
      if (kj != 0) out.add_term(shifted, c.scaled_shift(kj, dj));
      if (lj != 0) {
        ExponentPair t = shifted;
        t.k[j] += 1;
        t.l[j] -= 1;
        out.add_term(t, c.scaled_shift(lj, dj));
      }
    }
    shifted.k[j] += 1;
    shifted.l[j] -= 1;
  }
}

}  // namespace detail

/// d(c x^k y^l) = c x^k y^l sum_j Delta_j P_{j-1} (k_j + l_j x_j / y_j).
inline LaurentPoly derive_monomial(const ExponentPair& e, const CoeffPoly& c) {
  LaurentPoly out(e.num_pairs(), c.num_vars());
  detail::derive_term_into(out, e, c);
  return out;
}

inline LaurentPoly derive(const LaurentPoly& p) {
  LaurentPoly out(p.num_pairs(), p.coeff_vars());
  for (const auto& [e, c] : p.terms()) detail::derive_term_into(out, e, c);
  return out;
}

/// One derivation-division step applied to a regular polynomial.
struct DDDivision {
  LaurentPoly derivative;
  UnitaryMonomial monomial;
  LaurentPoly quotient;
  PDeg quotient_pdeg;
};

/// Returns nullopt when d(p) = 0. Otherwise q = d(p)/reg(d(p)), which is
/// checked to be regular and strictly rlex-smaller in degree than p.
inline std::optional<DDDivision> dd_step(const LaurentPoly& p) {
  if (!is_regular(p)) {
    throw PreconditionError("dd_step: input polynomial is not regular");
  }
  LaurentPoly dp = derive(p);
  if (dp.is_zero()) return std::nullopt;
  UnitaryMonomial m = reg_monomial(dp);
  LaurentPoly q = divide_by_monomial(dp, m);
  PDeg dq = pdeg(q);
  if (!is_regular(q)) {
    throw InvariantViolation("dd_step: quotient is not regular",
                             to_json(q).dump());
  }
  const PDeg dp_deg = pdeg(p);
  if (!rlex_less(dq, dp_deg)) {
    throw InvariantViolation("dd_step: degree " + to_string(dq) +
                                 " does not rlex-decrease from " +
                                 to_string(dp_deg),
                             to_json(q).dump());
  }
  return DDDivision{std::move(dp), std::move(m), std::move(q), std::move(dq)};
}

/// One record of a derivation-division run. In lightweight runs only the
/// monomial and the degree are kept; the polynomials are left empty.
struct DDStepRecord {
  LaurentPoly polynomial_before;
  LaurentPoly derivative;
  UnitaryMonomial reg_monomial;
  LaurentPoly polynomial_after;
  PDeg pdeg_after;
  bool has_polynomials = false;
};

struct DDTrace {
  LaurentPoly initial;
  std::vector<DDStepRecord> steps;
  /// Final element of R; empty while the run is incomplete or when the
  /// derivative vanished before reaching R.
  std::optional<CoeffPoly> terminal;
  /// d(p) = 0 for some p outside R. The run stops there.
  bool derivative_vanished = false;
  bool complete = false;

  /// DD(p): number of derivation-division steps performed.
  std::size_t step_count() const noexcept { return steps.size(); }
};

struct DDRunOptions {
  /// Stop (incomplete) after this many steps. No cap by default.
  std::optional<std::size_t> max_steps;
  /// Keep every intermediate polynomial in the trace.
  bool keep_polynomials = true;
  /// Called after every step with the trace so far and the current polynomial.
  std::function<void(const DDTrace&, const LaurentPoly&)> on_step;
};

inline Json to_json(const DDStepRecord& s) {
  Json j;
  j["reg_monomial"] = to_json(s.reg_monomial);
  j["pdeg_after"] = to_json(s.pdeg_after);
  if (s.has_polynomials) {
    j["polynomial_before"] = to_json(s.polynomial_before);
    j["derivative"] = to_json(s.derivative);
    j["polynomial_after"] = to_json(s.polynomial_after);
  }
  return j;
}

inline Json to_json(const DDTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  Json j;
  j["initial"] = to_json(t.initial);
  j["step_count"] = t.step_count();
  j["steps"] = std::move(steps);
  j["terminal"] = t.terminal ? to_json(*t.terminal) : Json(nullptr);
  j["derivative_vanished"] = t.derivative_vanished;
  j["complete"] = t.complete;
  return j;
}

inline DDTrace trace_from_json(const Json& j) {
  try {
    DDTrace t;
    t.initial = laurent_from_json(j.at("initial"));
    for (const auto& s : j.at("steps")) {
      DDStepRecord r;
      r.reg_monomial = unitary_from_json(s.at("reg_monomial"));
      r.pdeg_after.values = s.at("pdeg_after").get<std::vector<int>>();
      if (s.contains("polynomial_after")) {
        r.polynomial_before = laurent_from_json(s.at("polynomial_before"));
        r.derivative = laurent_from_json(s.at("derivative"));
        r.polynomial_after = laurent_from_json(s.at("polynomial_after"));
        r.has_polynomials = true;
      }
      t.steps.push_back(std::move(r));
    }
    if (!j.at("terminal").is_null()) {
      t.terminal = coeff_poly_from_json(j.at("terminal"));
    }
    t.derivative_vanished = j.at("derivative_vanished").get<bool>();
    t.complete = j.at("complete").get<bool>();
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("DDTrace JSON: ") + ex.what());
  }
}

/// Continues a run from `current`, appending to `trace`. Returns the
/// polynomial the run stopped at.
inline LaurentPoly dd_continue(DDTrace& trace, LaurentPoly current,
                               const DDRunOptions& opts = {}) {
  if (!is_regular(current)) {
    throw PreconditionError("dd_run: polynomial is not regular");
  }
  while (!current.in_base_ring()) {
    if (opts.max_steps && trace.step_count() >= *opts.max_steps) {
      return current;
    }
    std::optional<DDDivision> div;
    try {
      div = dd_step(current);
    } catch (const InvariantViolation& ex) {
      throw InvariantViolation(
          std::string(ex.what()) + " at step " +
              std::to_string(trace.step_count() + 1),
          to_json(trace).dump());
    }
    if (!div) {
      trace.derivative_vanished = true;
      trace.complete = true;
      return current;
    }
    DDStepRecord rec;
    rec.reg_monomial = div->monomial;
    rec.pdeg_after = div->quotient_pdeg;
    if (opts.keep_polynomials) {
      rec.polynomial_before = std::move(current);
      rec.derivative = std::move(div->derivative);
      rec.polynomial_after = div->quotient;
      rec.has_polynomials = true;
    }
    current = std::move(div->quotient);
    trace.steps.push_back(std::move(rec));
    if (opts.on_step) opts.on_step(trace, current);
  }
  trace.terminal = current.constant_term();
  trace.complete = true;
  return current;
}

/// Runs derivation-division on a regular polynomial until it lands in R.
/// Throws PreconditionError for non-regular input and InvariantViolation
/// (with the trace as JSON) if a step fails to decrease the degree.
inline DDTrace dd_run(const LaurentPoly& p, const DDRunOptions& opts = {}) {
  DDTrace trace;
  trace.initial = p;
  dd_continue(trace, p, opts);
  return trace;
}

/// Plain-text trace in the style
///   p(0) = x1*x2 + x1*y2 + y1*y2
///   p(1) = d p(0) / (x1) = x2 + x1*x2/y1 + y2
/// With `coefficients` false only supports are shown.
inline std::string pretty_trace(const DDTrace& t, bool coefficients = false) {
  auto show = [&](const LaurentPoly& p) {
    return coefficients ? to_string(p) : support_string(p);
  };
  std::string out = "p(0) = " + show(t.initial) + "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out += "p(" + std::to_string(i + 1) + ") = d p(" + std::to_string(i) +
           ") / (" + to_string(s.reg_monomial) + ")";
    if (s.has_polynomials) out += " = " + show(s.polynomial_after);
    out += "    pdeg " + to_string(s.pdeg_after) + "\n";
  }
  return out;
}

}  // namespace fewnomial

#endif  // FEWNOMIAL_DERIVATION_HPP
