#ifndef FEWNOMIAL_COMPENSATOR_HPP
#define FEWNOMIAL_COMPENSATOR_HPP

// Disconjugate operator annihilating phi, written as
//
//   L u = (1/rho_m) d/dx (1/rho_{m-1}) d/dx ... d/dx (1/rho_0) u,
//
// its Chebyshev basis of iterated integrals, and the expansion of phi in it.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fewnomial/derivation.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/laurent.hpp"
#include "fewnomial/numeric.hpp"
#include "fewnomial/seed.hpp"

namespace fewnomial {

class DisconjugacyError : public Error {
 public:
  using Error::Error;
};

class RefineGridError : public NumericError {
 public:
  using NumericError::NumericError;
};

class NotInSpanError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// rho(x) = x^x_power * Phi^{-1}(monomial)(x).
struct Weight {
  int x_power = 0;
  UnitaryMonomial monomial;

  /// log rho(x); nullopt outside the domain.
  std::optional<double> log_value(const ProblemParams& params, double x) const {
    auto res = eval_g_chain<double>(params, x);
    if (!res.ok()) return std::nullopt;
    const auto& c = *res.chain;
    double lw = x_power * std::log(x);
    const auto& e = monomial.exponent;
    for (std::size_t i = 0; i < e.num_pairs(); ++i) {
      if (e.k[i]) lw += e.k[i] * c.log_f[i];
      if (e.l[i]) lw += e.l[i] * c.log_g[i + 1];
    }
    return lw;
  }

  double value(const ProblemParams& params, double x) const {
    auto lw = log_value(params, x);
    if (!lw) throw OutOfDomainError("Weight: x outside domain");
    return std::exp(*lw);
  }
};

inline std::string to_string(const Weight& w) {
  std::string s;
  if (!w.monomial.is_identity()) s = "h(" + to_string(w.monomial) + ")";
  if (w.x_power != 0) {
    if (!s.empty()) s += " * ";
    s += "x^" + std::to_string(w.x_power);
  }
  return s.empty() ? "1" : s;
}

struct OperatorChain {
  std::size_t order = 0;
  std::vector<Weight> weights;  // rho_0 .. rho_{order-1}
  ProblemParams params;
  double base_point = 1.0;
};

/// x0 default: log-scale midpoint of the domain, or lower + 1 when the
/// domain is unbounded above.
inline double default_base_point(const DomainInterval& d) {
  if (d.empty) throw PreconditionError("default_base_point: empty domain");
  if (d.unbounded_above()) return d.lower + 1.0;
  if (d.lower == 0) return d.upper / 2;
  return std::sqrt(d.lower * d.upper);
}

/// Chain of order DD(n) + 3 for the level-n seed trace. Dividing phi'' by
/// the seed divisor and each step monomial gives
///
///   rho_0 = rho_1 = 1,  rho_2 = Phi^{-1}(divisor) / x^2,
///   rho_{k+3} = Phi^{-1}(m_k) / x.
inline OperatorChain build_operator(const DDTrace& trace,
                                    const ProblemParams& params, double x0) {
  params.validate();
  const std::size_t n = params.size();
  if (trace.initial.num_pairs() + 1 != n) {
    throw DimensionError("build_operator: trace level does not match params");
  }
  if (!trace.complete || trace.derivative_vanished) {
    throw PreconditionError("build_operator: trace must be a complete run");
  }
  const DomainInterval dom = domain_interval(params);
  if (!dom.contains(x0)) {
    throw OutOfDomainError("build_operator: base point outside domain");
  }

  OperatorChain chain;
  chain.params = params;
  chain.base_point = x0;
  const UnitaryMonomial one = UnitaryMonomial::identity(n);
  chain.weights.push_back({0, one});
  chain.weights.push_back({0, one});
  chain.weights.push_back({-2, seed_divisor(n)});
  for (const auto& step : trace.steps) {
    chain.weights.push_back({-1, extend_pairs(step.reg_monomial, n)});
  }
  chain.order = chain.weights.size();

  // Positivity on a dense log grid spanning the domain (clipped to twelve
  // decades around x0).
  const double lo = std::max(dom.lower, x0 * 1e-6);
  const double hi = std::min(dom.upper, x0 * 1e6);
  const int samples = 1000;
  for (int i = 0; i < samples; ++i) {
    const double t = (i + 0.5) / samples;
    const double x = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    for (std::size_t k = 0; k < chain.order; ++k) {
      auto lw = chain.weights[k].log_value(params, x);
      if (!lw) continue;  // boundary rounding; not a sign change
      if (std::isnan(*lw)) {
        throw DisconjugacyError("build_operator: rho_" + std::to_string(k) +
                                " not positive at x = " + std::to_string(x));
      }
    }
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Chebyshev basis

struct ChebBasis {
  std::vector<double> grid;
  std::size_t base_index = 0;
  std::vector<std::vector<double>> values;  // values[k][i] = omega_k(grid[i])
  double error_estimate = 0;

  std::size_t order() const noexcept { return values.size(); }
};

/// Sorted grid on [lo, hi] containing x0 as a node, with an even number of
/// uniform cells on each side of x0 (so the half grid also contains x0).
inline std::vector<double> make_grid(double lo, double hi, double x0,
                                     std::size_t points) {
  if (!(lo <= x0 && x0 <= hi && lo < hi)) {
    throw PreconditionError("make_grid: need lo <= x0 <= hi and lo < hi");
  }
  const double cells = static_cast<double>(std::max<std::size_t>(points, 5) - 1);
  auto side = [&](double len) -> std::size_t {
    if (len <= 0) return 0;
    auto c = static_cast<std::size_t>(std::llround(cells * len / (hi - lo)));
    c += c % 2;
    return std::max<std::size_t>(c, 2);
  };
  const std::size_t nl = side(x0 - lo);
  const std::size_t nr = side(hi - x0);
  std::vector<double> g;
  g.reserve(nl + nr + 1);
  for (std::size_t i = 0; i < nl; ++i) {
    g.push_back(lo + (x0 - lo) * static_cast<double>(i) / static_cast<double>(nl));
  }
  g.push_back(x0);
  for (std::size_t i = 1; i <= nr; ++i) {
    g.push_back(i == nr ? hi
                        : x0 + (hi - x0) * static_cast<double>(i) /
                                   static_cast<double>(nr));
  }
  return g;
}

namespace detail {

// Trapezoid antiderivative vanishing at index i0.
inline std::vector<double> cumulative_from(const std::vector<double>& x,
                                           const std::vector<double>& v,
                                           std::size_t i0) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = i0 + 1; i < x.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (v[i - 1] + v[i]);
  }
  for (std::size_t i = i0; i-- > 0;) {
    out[i] = out[i + 1] - 0.5 * (x[i + 1] - x[i]) * (v[i] + v[i + 1]);
  }
  return out;
}

inline std::vector<std::vector<double>> iterated_integrals(
    const std::vector<double>& x, const std::vector<std::vector<double>>& rho,
    std::size_t i0) {
  const std::size_t m = rho.size();
  std::vector<std::vector<double>> omega(m);
  omega[0] = rho[0];
  for (std::size_t k = 1; k < m; ++k) {
    std::vector<double> inner = cumulative_from(x, rho[k], i0);
    for (std::size_t j = k - 1; j >= 1; --j) {
      std::vector<double> integrand(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) integrand[i] = rho[j][i] * inner[i];
      inner = cumulative_from(x, integrand, i0);
    }
    for (std::size_t i = 0; i < x.size(); ++i) inner[i] *= rho[0][i];
    omega[k] = std::move(inner);
  }
  return omega;
}

}  // namespace detail

/// omega_k = rho_0 int_{x0} rho_1 int_{x0} ... rho_k by cascaded trapezoid
/// sums. The error estimate compares with the same cascade on every other
/// node (|full - half| / 3), relative to max(1, max |omega_k|). Throws
/// RefineGridError when it exceeds `tol` (tol <= 0 disables the check).
inline ChebBasis omega_basis(const OperatorChain& chain,
                             const std::vector<double>& grid,
                             double tol = 1e-6) {
  if (grid.size() < 3) throw PreconditionError("omega_basis: grid too small");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw PreconditionError("omega_basis: grid must be strictly increasing");
  }
  auto it = std::find(grid.begin(), grid.end(), chain.base_point);
  if (it == grid.end()) {
    throw PreconditionError("omega_basis: grid does not contain the base point");
  }
  const std::size_t i0 = static_cast<std::size_t>(it - grid.begin());

  const std::size_t m = chain.order;
  std::vector<std::vector<double>> rho(m, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      auto lw = chain.weights[k].log_value(chain.params, grid[i]);
      if (!lw) throw OutOfDomainError("omega_basis: grid leaves the domain");
      rho[k][i] = std::exp(*lw);
    }
  }

  ChebBasis b;
  b.grid = grid;
  b.base_index = i0;
  b.values = detail::iterated_integrals(grid, rho, i0);

  // Half grid: nodes with the parity of i0.
  std::vector<std::size_t> idx;
  for (std::size_t i = i0 % 2; i < grid.size(); i += 2) idx.push_back(i);
  if (idx.size() >= 3) {
    std::vector<double> hx(idx.size());
    std::vector<std::vector<double>> hrho(m, std::vector<double>(idx.size()));
    for (std::size_t s = 0; s < idx.size(); ++s) {
      hx[s] = grid[idx[s]];
      for (std::size_t k = 0; k < m; ++k) hrho[k][s] = rho[k][idx[s]];
    }
    const auto half = detail::iterated_integrals(hx, hrho, i0 / 2);
    for (std::size_t k = 0; k < m; ++k) {
      double scale = 1.0, diff = 0.0;
      for (std::size_t s = 0; s < idx.size(); ++s) {
        const double full = b.values[k][idx[s]];
        scale = std::max(scale, std::abs(full));
        diff = std::max(diff, std::abs(full - half[k][s]));
      }
      b.error_estimate = std::max(b.error_estimate, diff / 3.0 / scale);
    }
  }
  if (tol > 0 && b.error_estimate > tol) {
    throw RefineGridError("omega_basis: quadrature error estimate " +
                          std::to_string(b.error_estimate) +
                          " exceeds tolerance; refine the grid");
  }
  return b;
}

struct LambdaResult {
  std::vector<double> lambda;
  /// max |u - sum lambda_k omega_k| over the grid, absolute and relative to
  /// max(1, max |u|).
  double residual = 0;
  double relative_residual = 0;
};

/// Least-squares coefficients of u in the basis. Throws NotInSpanError when
/// the relative residual exceeds `tol` (tol <= 0 disables the check).
inline LambdaResult lambda_coeffs(const std::vector<double>& u,
                                  const ChebBasis& basis, double tol = 1e-6) {
  const std::size_t N = basis.grid.size();
  const std::size_t m = basis.order();
  if (u.size() != N) throw DimensionError("lambda_coeffs: sample count mismatch");
  Eigen::MatrixXd A(N, m);
  Eigen::VectorXd rhs(N);
  Eigen::VectorXd col_scale(m);
  for (std::size_t k = 0; k < m; ++k) {
    double s = 0;
    for (std::size_t i = 0; i < N; ++i) s = std::max(s, std::abs(basis.values[k][i]));
    col_scale[k] = s > 0 ? s : 1.0;
    for (std::size_t i = 0; i < N; ++i) A(i, k) = basis.values[k][i] / col_scale[k];
  }
  for (std::size_t i = 0; i < N; ++i) rhs[i] = u[i];
  const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);

  LambdaResult r;
  r.lambda.resize(m);
  for (std::size_t k = 0; k < m; ++k) r.lambda[k] = sol[k] / col_scale[k];
  double umax = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0;
    for (std::size_t k = 0; k < m; ++k) s += r.lambda[k] * basis.values[k][i];
    r.residual = std::max(r.residual, std::abs(u[i] - s));
    umax = std::max(umax, std::abs(u[i]));
  }
  r.relative_residual = r.residual / umax;
  if (tol > 0 && r.relative_residual > tol) {
    throw NotInSpanError("lambda_coeffs: residual " +
                         std::to_string(r.relative_residual) +
                         " above tolerance; samples are not in the span");
  }
  return r;
}

/// Samples of phi = g_n - b x on the basis grid.
inline std::vector<double> phi_samples(const ProblemParams& params,
                                       const std::vector<double>& grid) {
  std::vector<double> u;
  u.reserve(grid.size());
  for (double x : grid) {
    auto v = eval_phi<double>(params, x);
    if (!v) throw OutOfDomainError("phi_samples: grid leaves the domain");
    u.push_back(*v);
  }
  return u;
}

// ---------------------------------------------------------------------------
// n = 1 closed forms (base point 1)

/// Omega(r, y) = log y for r = 1, (y^{r-1} - 1)/(r - 1) otherwise.
inline double classical_compensator(double r, double y) {
  if (!(y > 0)) throw PreconditionError("classical_compensator: y must be > 0");
  const double s = r - 1;
  const double ly = std::log(y);
  if (s == 0) return ly;
  return std::expm1(s * ly) / s;
}

/// omega_2(x) = int_1^x Omega(r, y) dy.
inline double omega2_closed_form(double r, double x) {
  if (!(x > 0)) throw PreconditionError("omega2_closed_form: x must be > 0");
  if (r == 1) return x * std::log(x) - x + 1;
  return -(r * x - r - std::pow(x, r) + 1) / ((r - 1) * r);
}

/// Literal recursion lambda_{m-1} = L^[m-1] u, lambda_{k-1} =
/// L^[k-1](u - sum_{j>=k} lambda_j omega_j) for u = a + x^r - x, evaluated
/// at x with the closed-form derivatives (rho_2 = x^{r-2}).
inline std::vector<double> lambda_recursion_n1(double a, double r, double x) {
  if (!(x > 0)) throw PreconditionError("lambda_recursion_n1: x must be > 0");
  // L^[2] u = x^{2-r} u''
  const double l2 = std::pow(x, 2 - r) * r * (r - 1) * std::pow(x, r - 2);
  // L^[1] v = v'
  const double l1 = (r * std::pow(x, r - 1) - 1) - l2 * classical_compensator(r, x);
  // L^[0] v = v
  const double u = a + std::pow(x, r) - x;
  const double l0 = u - l1 * (x - 1) - l2 * omega2_closed_form(r, x);
  return {l0, l1, l2};
}

// ---------------------------------------------------------------------------
// Chebyshev property

/// Sign changes along the samples, ignoring exact zeros.
inline std::size_t count_sign_changes(const std::vector<double>& v) {
  std::size_t changes = 0;
  int last = 0;
  for (double s : v) {
    const int sg = (s > 0) - (s < 0);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

inline std::vector<double> combine(const ChebBasis& basis,
                                   const std::vector<double>& lambda) {
  if (lambda.size() != basis.order()) {
    throw DimensionError("combine: coefficient count mismatch");
  }
  std::vector<double> out(basis.grid.size(), 0.0);
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += lambda[k] * basis.values[k][i];
    }
  }
  return out;
}

struct ZeroCountResult {
  std::size_t max_zeros = 0;
  std::size_t order = 0;

  bool pass() const noexcept { return max_zeros + 1 <= order; }
};

/// Largest sign-change count over `samples` Gaussian coefficient vectors.
inline ZeroCountResult chebyshev_zero_count(const ChebBasis& basis,
                                            std::size_t samples,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ZeroCountResult r;
  r.order = basis.order();
  std::vector<double> lambda(basis.order());
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& l : lambda) l = normal(rng);
    r.max_zeros = std::max(r.max_zeros, count_sign_changes(combine(basis, lambda)));
  }
  return r;
}

}  // namespace fewnomial

#endif  // FEWNOMIAL_COMPENSATOR_HPP
