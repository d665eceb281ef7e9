#ifndef FEWNOMIAL_NUMERIC_HPP
#define FEWNOMIAL_NUMERIC_HPP

// Numeric side of the nested-power equation
//
//   a_n + (a_{n-1} + ... (a_1 + x^{r_1})^{r_2} ...)^{r_n} = b x
//
// with g_0 = x, f_i = g_{i-1}^{r_i}, g_i = a_i + f_i. Powers are only taken
// of positive bases, as exp(r log g).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fewnomial/derivation.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/laurent.hpp"
#include "fewnomial/serialize.hpp"

namespace fewnomial {

/// Real exponent, optionally carried as an exact rational num/den.
struct Exponent {
  double value = 1.0;
  std::optional<std::pair<long long, long long>> rational;

  Exponent() = default;
  Exponent(double v) : value(v) {}  // NOLINT(google-explicit-constructor)

  static Exponent ratio(long long num, long long den) {
    if (den == 0) throw PreconditionError("Exponent: zero denominator");
    Exponent e(static_cast<double>(num) / static_cast<double>(den));
    e.rational = {num, den};
    return e;
  }

  template <typename Real>
  Real as() const {
    if (rational) {
      return static_cast<Real>(rational->first) /
             static_cast<Real>(rational->second);
    }
    return static_cast<Real>(value);
  }
};

/// (b, a, r) with b > 0 and a, r of equal length n.
struct ProblemParams {
  double b = 1.0;
  std::vector<double> a;
  std::vector<Exponent> r;

  std::size_t size() const noexcept { return a.size(); }

  void validate() const {
    if (!(b > 0)) throw PreconditionError("ProblemParams: b must be > 0");
    if (a.size() != r.size()) {
      throw DimensionError("ProblemParams: a and r have different lengths");
    }
    if (a.empty()) throw PreconditionError("ProblemParams: n must be >= 1");
  }

  template <typename Real = double>
  std::vector<Real> r_values() const {
    std::vector<Real> v;
    v.reserve(r.size());
    for (const auto& e : r) v.push_back(e.as<Real>());
    return v;
  }
};

inline Json to_json(const ProblemParams& p) {
  Json r = Json::array();
  for (const auto& e : p.r) {
    if (e.rational) {
      r.push_back({{"num", e.rational->first}, {"den", e.rational->second}});
    } else {
      r.push_back(e.value);
    }
  }
  return {{"b", p.b}, {"a", p.a}, {"r", std::move(r)}};
}

inline ProblemParams params_from_json(const Json& j) {
  try {
    ProblemParams p;
    p.b = j.value("b", 1.0);
    p.a = j.at("a").get<std::vector<double>>();
    for (const auto& e : j.at("r")) {
      if (e.is_object()) {
        p.r.push_back(Exponent::ratio(e.at("num").get<long long>(),
                                      e.at("den").get<long long>()));
      } else {
        p.r.emplace_back(e.get<double>());
      }
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("params JSON: ") + ex.what());
  } catch (const PreconditionError& ex) {
    throw ParseError(std::string("params JSON: ") + ex.what());
  } catch (const DimensionError& ex) {
    throw ParseError(std::string("params JSON: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------
// Chain evaluation

/// Values g_0..g_n and f_1..f_n at a point, plus their logarithms. g is kept
/// as an unevaluated sum hi + lo (TwoSum) so the a_i + f_i cancellations
/// are carried one level further.
template <typename Real>
struct GChain {
  std::vector<Real> g;      // g[0] = x, ..., g[n]
  std::vector<Real> g_lo;   // rounding error of g[i]
  std::vector<Real> log_g;
  std::vector<Real> f;      // f[i-1] = f_i
  std::vector<Real> log_f;
};

template <typename Real>
struct ChainResult {
  std::optional<GChain<Real>> chain;
  std::string reason;  // why the point is out of domain

  bool ok() const noexcept { return chain.has_value(); }
};

namespace detail {

template <typename Real>
inline std::pair<Real, Real> two_sum(Real a, Real b) {
  const Real s = a + b;
  const Real bb = s - a;
  const Real err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

}  // namespace detail

/// g_0..g_n at x, or the reason x lies outside I(a,r).
template <typename Real = double>
ChainResult<Real> eval_g_chain(const ProblemParams& params, Real x) {
  ChainResult<Real> res;
  if (!(x > 0)) {
    res.reason = "g_0 = x <= 0";
    return res;
  }
  const std::size_t n = params.size();
  GChain<Real> c;
  c.g.reserve(n + 1);
  c.g.push_back(x);
  c.g_lo.push_back(0);
  c.log_g.push_back(std::log(x));
  const Real max_log = std::log(std::numeric_limits<Real>::max());
  for (std::size_t i = 1; i <= n; ++i) {
    const Real r = params.r[i - 1].template as<Real>();
    const Real hi = c.g[i - 1];
    const Real lo = c.g_lo[i - 1];
    const Real log_f = r * (c.log_g[i - 1] + std::log1p(lo / hi));
    if (log_f > max_log) {
      res.reason = "overflow evaluating f_" + std::to_string(i);
      return res;
    }
    const Real f = std::exp(log_f);
    const Real a = static_cast<Real>(params.a[i - 1]);
    auto [s, err] = detail::two_sum(a, f);
    if (!(s + err > 0) && !(a == 0 && f >= 0)) {
      res.reason = "g_" + std::to_string(i) + " <= 0";
      return res;
    }
    if (!std::isfinite(s)) {
      res.reason = "overflow evaluating g_" + std::to_string(i);
      return res;
    }
    c.f.push_back(f);
    c.log_f.push_back(log_f);
    c.g.push_back(s);
    c.g_lo.push_back(err);
    // With a_i = 0, g_i = f_i exactly and log g_i survives underflow of f_i.
    c.log_g.push_back(a == 0 ? log_f : std::log(s) + std::log1p(err / s));
  }
  res.chain = std::move(c);
  return res;
}

/// phi(x) = g_n(x) - b x, or nullopt outside the domain.
template <typename Real = double>
std::optional<Real> eval_phi(const ProblemParams& params, Real x) {
  auto res = eval_g_chain<Real>(params, x);
  if (!res.ok()) return std::nullopt;
  const auto& c = *res.chain;
  const Real bx = static_cast<Real>(params.b) * x;
  const Real bx_err = std::fma(static_cast<Real>(params.b), x, -bx);
  return (c.g.back() - bx) + (c.g_lo.back() - bx_err);
}

// ---------------------------------------------------------------------------
// Domain interval

struct DomainInterval {
  double lower = 0.0;  // 0 means the interval reaches down to 0
  double upper = std::numeric_limits<double>::infinity();
  bool empty = false;

  bool unbounded_above() const { return std::isinf(upper); }
  bool contains(double x) const { return !empty && x > lower && x < upper; }
};

inline Json to_json(const DomainInterval& d) {
  Json j;
  j["empty"] = d.empty;
  j["lower"] = d.lower;
  j["upper"] = d.unbounded_above() ? Json("inf") : Json(d.upper);
  return j;
}

namespace detail {

// log g_0..log g_upto at x = e^t computed entirely in log space, or nullopt
// once some g_j (j <= upto) is not positive.
inline std::optional<double> log_g_at(const ProblemParams& p, double t,
                                      std::size_t upto) {
  double lg = t;
  for (std::size_t j = 1; j <= upto; ++j) {
    const double lf = p.r[j - 1].value * lg;
    const double a = p.a[j - 1];
    if (a == 0) {
      lg = lf;
    } else if (a > 0) {
      const double la = std::log(a);
      lg = std::max(la, lf) + std::log1p(std::exp(-std::abs(la - lf)));
    } else {
      const double la = std::log(-a);
      if (!(lf > la)) return std::nullopt;
      lg = lf + std::log1p(-std::exp(la - lf));
    }
    if (std::isnan(lg)) return std::nullopt;
  }
  return lg;
}

}  // namespace detail

struct DomainOptions {
  /// log(x) search range; e^700 is close to the double limit.
  double log_range = 700.0;
  int max_bisections = 400;
};

/// Maximal open interval on which g_0..g_n are all positive. Each constraint
/// g_i > 0 with a_i < 0 reads r_i log g_{i-1} > log(-a_i); its left side is
/// monotone in log x on the interval left by the earlier constraints, so the
/// boundary is found by bisection in log x.
inline DomainInterval domain_interval(const ProblemParams& params,
                                      const DomainOptions& opts = {}) {
  params.validate();
  double tlo = -opts.log_range;
  double thi = opts.log_range;
  bool to_zero = true;
  bool to_inf = true;

  for (std::size_t i = 1; i <= params.size(); ++i) {
    const double a = params.a[i - 1];
    if (a >= 0) continue;
    const double la = std::log(-a);
    const double r = params.r[i - 1].value;
    // Constraint value at t; -inf where g_{i-1} is not positive (only
    // possible numerically, right at an earlier boundary).
    auto constraint = [&](double t) {
      auto lg = detail::log_g_at(params, t, i - 1);
      if (!lg) return -std::numeric_limits<double>::infinity() * (r > 0 ? 1 : -1);
      return r * *lg - la;
    };
    const double width = thi - tlo;
    const double inset = 1e-12 * std::max(1.0, width);
    const double cl = constraint(tlo + inset);
    const double ch = constraint(thi - inset);
    if (cl > 0 && ch > 0) continue;
    if (!(cl > 0) && !(ch > 0)) {
      DomainInterval d;
      d.empty = true;
      d.lower = d.upper = 0;
      return d;
    }
    // Bisection for the sign change.
    double lo = tlo + inset;
    double hi = thi - inset;
    const bool rising = ch > 0;
    for (int it = 0; it < opts.max_bisections; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const bool positive = constraint(mid) > 0;
      if (positive == rising) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    if (rising) {
      tlo = hi;
      to_zero = false;
    } else {
      thi = lo;
      to_inf = false;
    }
  }
  DomainInterval d;
  d.lower = to_zero ? 0.0 : std::exp(tlo);
  d.upper = to_inf ? std::numeric_limits<double>::infinity() : std::exp(thi);
  if (!(d.lower < d.upper)) {
    d.empty = true;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Root isolation

struct RootOptions {
  std::size_t grid_points = 100000;
  /// Bisection stops once the bracket is this narrow relative to x.
  double refine_tol = 1e-14;
  std::size_t max_roots = 64;
  /// Magnitude hint; the scan covers [1e-12 scale, 1e12 scale] clipped to
  /// the domain.
  double scale = 1.0;
  double decades = 12.0;
  /// Worker threads for grid evaluation; results do not depend on it.
  unsigned threads = 1;
};

struct Root {
  double lo = 0;
  double hi = 0;
  double refined = 0;
  double residual = 0;
};

struct RootReport {
  DomainInterval interval;
  double scan_lo = 0;
  double scan_hi = 0;
  std::vector<Root> roots;
  std::size_t count = 0;
  /// max_roots was reached; the grid is probably too coarse.
  bool saturated = false;
};

inline Json to_json(const RootReport& r) {
  Json roots = Json::array();
  for (const auto& x : r.roots) {
    roots.push_back({{"enclosure", {x.lo, x.hi}},
                     {"refined", x.refined},
                     {"residual", x.residual}});
  }
  return {{"interval", to_json(r.interval)},
          {"scan", {r.scan_lo, r.scan_hi}},
          {"count", r.count},
          {"saturated", r.saturated},
          {"roots", std::move(roots)}};
}

namespace detail {

inline int sign_of(double v) { return (v > 0) - (v < 0); }

inline Root refine_root(const ProblemParams& p, double lo, double hi,
                        double flo, double tol) {
  const int slo = sign_of(flo);
  double refined = 0.5 * (lo + hi);
  for (int it = 0; it < 2000; ++it) {
    if (hi - lo <= tol * std::max(std::abs(lo), std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto fm = eval_phi<double>(p, mid);
    if (!fm) break;
    if (*fm == 0) {
      lo = hi = mid;
      break;
    }
    if (sign_of(*fm) == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  refined = 0.5 * (lo + hi);
  const auto fr = eval_phi<double>(p, refined);
  return {lo, hi, refined, fr ? std::abs(*fr) : std::nan("")};
}

}  // namespace detail

/// Sign-change scan of phi on a log-spaced grid followed by bisection.
/// Even-multiplicity roots (no sign change) are not detected.
inline RootReport find_roots(const ProblemParams& params,
                             const RootOptions& opts = {}) {
  params.validate();
  if (opts.grid_points < 2) {
    throw PreconditionError("find_roots: need at least 2 grid points");
  }
  RootReport rep;
  rep.interval = domain_interval(params);
  if (rep.interval.empty) return rep;

  const double cap_lo = std::pow(10.0, -opts.decades) * opts.scale;
  const double cap_hi = std::pow(10.0, opts.decades) * opts.scale;
  rep.scan_lo = std::max(rep.interval.lower, cap_lo);
  rep.scan_hi = std::min(rep.interval.upper, cap_hi);
  if (!(rep.scan_lo < rep.scan_hi)) return rep;

  // Cell midpoints in log space keep every sample strictly inside.
  const std::size_t N = opts.grid_points;
  const double t0 = std::log(rep.scan_lo);
  const double dt = (std::log(rep.scan_hi) - t0) / static_cast<double>(N);
  std::vector<double> xs(N);
  std::vector<double> fs(N);
  for (std::size_t i = 0; i < N; ++i) {
    xs[i] = std::exp(t0 + (static_cast<double>(i) + 0.5) * dt);
  }
  auto evaluate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      fs[i] = eval_phi<double>(params, xs[i]).value_or(std::nan(""));
    }
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    evaluate(0, N);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (N + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t b = std::min(N, w * chunk);
      const std::size_t e = std::min(N, b + chunk);
      pool.emplace_back(evaluate, b, e);
    }
    for (auto& t : pool) t.join();
  }

  // Scan. Exact zeros at grid points count once and suppress the sign
  // change that straddles them.
  std::optional<std::size_t> last;  // index of last nonzero finite sample
  bool zero_since_last = false;
  for (std::size_t i = 0; i < N && !rep.saturated; ++i) {
    const double f = fs[i];
    if (std::isnan(f)) {
      last.reset();
      zero_since_last = false;
      continue;
    }
    if (f == 0) {
      rep.roots.push_back({xs[i], xs[i], xs[i], 0.0});
      zero_since_last = true;
    } else {
      if (last && !zero_since_last &&
          detail::sign_of(f) != detail::sign_of(fs[*last])) {
        rep.roots.push_back(detail::refine_root(params, xs[*last], xs[i],
                                                fs[*last], opts.refine_tol));
      }
      last = i;
      zero_since_last = false;
    }
    if (rep.roots.size() >= opts.max_roots) rep.saturated = true;
  }
  rep.count = rep.roots.size();
  return rep;
}

// ---------------------------------------------------------------------------
// Evaluating Laurent polynomials as functions: x_i -> f_i, y_i -> g_i,
// R_i -> r_i.

template <typename Real>
struct RingEvaluation {
  Real value = 0;
  /// Sum of absolute values of the terms, a natural magnitude scale.
  Real magnitude = 0;
};

template <typename Real = double>
RingEvaluation<Real> eval_ring_element_detailed(const LaurentPoly& p,
                                                const ProblemParams& params,
                                                Real x) {
  params.validate();
  if (p.num_pairs() > params.size() || p.coeff_vars() > params.size()) {
    throw DimensionError("eval_ring_element: polynomial needs more parameters");
  }
  auto res = eval_g_chain<Real>(params, x);
  if (!res.ok()) {
    throw OutOfDomainError("eval_ring_element: x outside domain (" +
                           res.reason + ")");
  }
  const auto& c = *res.chain;
  const std::vector<Real> rv = params.r_values<Real>();
  // Neumaier summation.
  Real sum = 0, comp = 0, mag = 0;
  for (const auto& [e, coef] : p.terms()) {
    Real log_m = 0;
    for (std::size_t i = 0; i < p.num_pairs(); ++i) {
      if (e.k[i]) log_m += static_cast<Real>(e.k[i]) * c.log_f[i];
      if (e.l[i]) log_m += static_cast<Real>(e.l[i]) * c.log_g[i + 1];
    }
    const Real term =
        coef.template evaluate<Real>(std::span<const Real>(rv)) * std::exp(log_m);
    mag += std::abs(term);
    const Real t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return {sum + comp, mag};
}

/// Value of the function corresponding to p at x.
template <typename Real = double>
Real eval_ring_element(const LaurentPoly& p, const ProblemParams& params,
                       Real x) {
  return eval_ring_element_detailed<Real>(p, params, x).value;
}

struct MorphismCheck {
  double lhs = 0;  // value of d(p) at x
  double rhs = 0;  // x * central difference of p at x
  double discrepancy = 0;
};

/// Compares the derivation with x d/dx through a central difference with
/// step h. The relative discrepancy is scaled by the larger of the term
/// magnitudes of p and d(p). Evaluation uses long double so the
/// truncation error dominates down to h ~ 1e-5 x.
inline MorphismCheck check_morphism_commutation(const LaurentPoly& p,
                                                const ProblemParams& params,
                                                double x, double h) {
  if (!(h > 0) || !(x - h < x) || !(x + h > x)) {
    throw PreconditionError("check_morphism_commutation: degenerate step");
  }
  using LD = long double;
  const DomainInterval dom = domain_interval(params);
  if (!dom.contains(x - h) || !dom.contains(x + h)) {
    throw OutOfDomainError(
        "check_morphism_commutation: x +- h leaves the domain");
  }
  const LaurentPoly dp = derive(p);
  const auto left = eval_ring_element_detailed<LD>(dp, params, x);
  const auto plus = eval_ring_element_detailed<LD>(p, params, LD(x) + LD(h));
  const auto minus = eval_ring_element_detailed<LD>(p, params, LD(x) - LD(h));
  const auto mid = eval_ring_element_detailed<LD>(p, params, x);
  const LD rhs = LD(x) * (plus.value - minus.value) / (2 * LD(h));
  const LD scale = std::max({std::abs(left.value), std::abs(rhs),
                             left.magnitude, mid.magnitude});
  MorphismCheck m;
  m.lhs = static_cast<double>(left.value);
  m.rhs = static_cast<double>(rhs);
  m.discrepancy =
      scale == 0 ? 0.0 : static_cast<double>(std::abs(left.value - rhs) / scale);
  return m;
}

}  // namespace fewnomial

#endif  // FEWNOMIAL_NUMERIC_HPP
