#ifndef FEWNOMIAL_TESTS_SUPPORT_HPP
#define FEWNOMIAL_TESTS_SUPPORT_HPP

// Random generators and test-side oracles shared by the suites.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fewnomial/fewnomial.hpp"

namespace fewnomial::testkit {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Small random element of Z[R1..R_nvars] (may be zero).
inline CoeffPoly random_coeff(Rng& rng, std::size_t nvars, int max_terms = 3,
                              int max_exp = 2, int max_coef = 3) {
  CoeffPoly c(nvars);
  const int terms = uniform_int(rng, 0, max_terms);
  for (int t = 0; t < terms; ++t) {
    CoeffExponents e(nvars);
    for (auto& v : e) v = uniform_int(rng, 0, max_exp);
    c.add_term(e, BigInt(uniform_int(rng, -max_coef, max_coef)));
  }
  return c;
}

inline CoeffPoly random_nonzero_coeff(Rng& rng, std::size_t nvars) {
  for (;;) {
    CoeffPoly c = random_coeff(rng, nvars);
    if (!c.is_zero()) return c;
  }
}

/// Random Laurent polynomial with exponents in [lo, hi].
inline LaurentPoly random_laurent(Rng& rng, std::size_t npairs,
                                  std::size_t nvars, int max_terms = 4,
                                  int lo = -2, int hi = 2) {
  LaurentPoly p(npairs, nvars);
  const int terms = uniform_int(rng, 0, max_terms);
  for (int t = 0; t < terms; ++t) {
    ExponentPair e(npairs);
    for (std::size_t j = 0; j < npairs; ++j) {
      e.k[j] = uniform_int(rng, lo, hi);
      e.l[j] = uniform_int(rng, lo, hi);
    }
    p.add_term(e, random_coeff(rng, nvars));
  }
  return p;
}

/// Random nonzero homogeneous polynomial of degree `m` with support in the
/// box (0 <= k_j <= m_j, l_j = m_j - k_j), optionally shifted by a random
/// unitary monomial to make it a genuine Laurent polynomial.
inline LaurentPoly random_boxed(Rng& rng, const std::vector<int>& m,
                                std::size_t nvars, int max_terms = 5,
                                bool laurent_shift = false) {
  const std::size_t n = m.size();
  for (;;) {
    LaurentPoly p(n, nvars);
    const int terms = uniform_int(rng, 1, max_terms);
    for (int t = 0; t < terms; ++t) {
      ExponentPair e(n);
      for (std::size_t j = 0; j < n; ++j) {
        e.k[j] = uniform_int(rng, 0, m[j]);
        e.l[j] = m[j] - e.k[j];
      }
      p.add_term(e, random_nonzero_coeff(rng, nvars));
    }
    if (p.is_zero()) continue;
    if (laurent_shift) {
      UnitaryMonomial u = UnitaryMonomial::identity(n);
      for (std::size_t j = 0; j < n; ++j) {
        const int s = uniform_int(rng, -2, 2);
        u.exponent.k[j] = s;
        u.exponent.l[j] = -s;
      }
      p = divide_by_monomial(p, u);
    }
    return p;
  }
}

/// Random regular homogeneous polynomial: a boxed polynomial divided by its
/// regularization monomial.
inline LaurentPoly random_regular(Rng& rng, const std::vector<int>& m,
                                  std::size_t nvars, int max_terms = 5) {
  LaurentPoly p = random_boxed(rng, m, nvars, max_terms, true);
  return divide_by_monomial(p, reg_monomial(p));
}

// ---------------------------------------------------------------------------
// Oracles

/// Point of the formal variables: x_j, y_j > 0 and R_j real.
struct FormalPoint {
  std::vector<double> x, y, R;
};

inline FormalPoint random_point(Rng& rng, std::size_t npairs, std::size_t nvars) {
  FormalPoint pt;
  for (std::size_t j = 0; j < npairs; ++j) {
    pt.x.push_back(uniform_real(rng, 0.5, 2.0));
    pt.y.push_back(uniform_real(rng, 0.5, 2.0));
  }
  for (std::size_t j = 0; j < nvars; ++j) pt.R.push_back(uniform_real(rng, -1.5, 1.5));
  return pt;
}

inline double eval_formal(const LaurentPoly& p, const FormalPoint& pt) {
  double s = 0;
  for (const auto& [e, c] : p.terms()) {
    double m = c.evaluate<double>(std::span<const double>(pt.R));
    for (std::size_t j = 0; j < p.num_pairs(); ++j) {
      m *= std::pow(pt.x[j], e.k[j]) * std::pow(pt.y[j], e.l[j]);
    }
    s += m;
  }
  return s;
}

/// Value of the derivation of p at a formal point, from the chain rule
/// alone: with f_j = g_{j-1}^{r_j} and g_j = a_j + f_j, the logarithmic
/// derivatives u_j = (x d/dx f_j)/f_j satisfy u_1 = R_1 and
/// u_j = R_j (x_{j-1}/y_{j-1}) u_{j-1}; (x d/dx g_j)/g_j = (x_j/y_j) u_j.
inline double derivation_oracle(const LaurentPoly& p, const FormalPoint& pt) {
  const std::size_t n = p.num_pairs();
  std::vector<double> ux(n), uy(n);
  double prev = 1.0;  // log-derivative of g_0 = x
  for (std::size_t j = 0; j < n; ++j) {
    ux[j] = pt.R[j] * prev;
    uy[j] = pt.x[j] / pt.y[j] * ux[j];
    prev = uy[j];
  }
  double s = 0;
  for (const auto& [e, c] : p.terms()) {
    double m = c.evaluate<double>(std::span<const double>(pt.R));
    double logd = 0;
    for (std::size_t j = 0; j < n; ++j) {
      m *= std::pow(pt.x[j], e.k[j]) * std::pow(pt.y[j], e.l[j]);
      logd += e.k[j] * ux[j] + e.l[j] * uy[j];
    }
    s += m * logd;
  }
  return s;
}

/// Literal H_k recursion, rule by rule, without memoization.
inline std::uint64_t h_literal(std::vector<std::uint64_t> m) {
  if (m.size() == 1) return m[0];
  if (m.back() == 0) {
    m.pop_back();
    return h_literal(m);
  }
  std::vector<std::uint64_t> prefix(m.begin(), m.end() - 1);
  m[m.size() - 2] += h_literal(prefix);
  m.back() -= 1;
  return h_literal(m);
}

/// Plain recursive Ackermann for small arguments.
inline std::uint64_t ackermann_literal(std::uint64_t i, std::uint64_t k) {
  if (i == 0) return k + 1;
  if (k == 0) return ackermann_literal(i - 1, 1);
  return ackermann_literal(i - 1, ackermann_literal(i, k - 1));
}

/// Parameters of the two worked examples.
inline ProblemParams example_n2() {
  ProblemParams p;
  p.a = {0.004259259259, -0.1516666667};
  p.r = {Exponent(2.0), Exponent::ratio(1, 3)};
  return p;
}

inline ProblemParams example_n3() {
  ProblemParams p;
  p.a = {-0.012, 0.0035836, -8.39e-6};
  p.r = {Exponent::ratio(53, 150), Exponent::ratio(11, 8), Exponent(2.0)};
  return p;
}

/// Random parameters with all r_i > 0.
inline ProblemParams random_params(Rng& rng, std::size_t n) {
  ProblemParams p;
  for (std::size_t i = 0; i < n; ++i) {
    p.a.push_back(uniform_real(rng, -1.0, 1.0));
    p.r.emplace_back(uniform_real(rng, 0.2, 3.0));
  }
  p.b = uniform_real(rng, 0.2, 3.0);
  return p;
}

}  // namespace fewnomial::testkit

#endif  // FEWNOMIAL_TESTS_SUPPORT_HPP
