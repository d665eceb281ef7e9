#ifndef FEWNOMIAL_COEFF_POLY_HPP
#define FEWNOMIAL_COEFF_POLY_HPP

// Exact arithmetic in the coefficient ring Z[R1, ..., Rn].

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fewnomial/errors.hpp"

namespace fewnomial {

using BigInt = boost::multiprecision::cpp_int;

/// Exponent vector of a monomial R1^e1 ... Rn^en.
using CoeffExponents = std::vector<int>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
  bool operator()(const CoeffExponents& a, const CoeffExponents& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse polynomial with arbitrary-precision integer coefficients.
///
/// Canonical form is maintained by every operation: no stored coefficient is
/// zero and every exponent vector has exactly num_vars() non-negative
/// entries. Structural equality is therefore ring equality.
class CoeffPoly {
 public:
  using TermMap = std::map<CoeffExponents, BigInt, GrlexLess>;

  explicit CoeffPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static CoeffPoly constant(std::size_t num_vars, const BigInt& c) {
    return monomial(num_vars, CoeffExponents(num_vars, 0), c);
  }

  /// The variable R_index, with 1 <= index <= num_vars.
  static CoeffPoly variable(std::size_t num_vars, std::size_t index) {
    if (index == 0 || index > num_vars) {
      throw InvalidIndexError("CoeffPoly::variable: index " +
                              std::to_string(index) + " outside 1.." +
                              std::to_string(num_vars));
    }
    CoeffExponents e(num_vars, 0);
    e[index - 1] = 1;
    return monomial(num_vars, std::move(e), 1);
  }

  static CoeffPoly monomial(std::size_t num_vars, CoeffExponents e,
                            const BigInt& c) {
    if (e.size() != num_vars) {
      throw DimensionError("CoeffPoly::monomial: exponent length mismatch");
    }
    for (int v : e) {
      if (v < 0) throw PreconditionError("CoeffPoly: negative exponent");
    }
    CoeffPoly p(num_vars);
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// True iff the polynomial is a (possibly zero) integer constant.
  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    }
    return d;
  }

  /// Adds c * R^e in place, keeping canonical form.
  void add_term(const CoeffExponents& e, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  CoeffPoly& operator+=(const CoeffPoly& q) {
    check_same_ring(q, "add");
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }

  CoeffPoly& operator-=(const CoeffPoly& q) {
    check_same_ring(q, "sub");
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }

  friend CoeffPoly operator+(CoeffPoly p, const CoeffPoly& q) {
    p += q;
    return p;
  }

  friend CoeffPoly operator-(CoeffPoly p, const CoeffPoly& q) {
    p -= q;
    return p;
  }

  CoeffPoly operator-() const {
    CoeffPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend CoeffPoly operator*(const CoeffPoly& p, const CoeffPoly& q) {
    p.check_same_ring(q, "mul");
    CoeffPoly r(p.num_vars_);
    CoeffExponents e(p.num_vars_);
    for (const auto& [ep, cp] : p.terms_) {
      for (const auto& [eq, cq] : q.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
        r.add_term(e, cp * cq);
      }
    }
    return r;
  }

  CoeffPoly& operator*=(const CoeffPoly& q) {
    *this = *this * q;
    return *this;
  }

  /// factor * R^shift * (*this). Cheaper than a general product; this is the
  /// only multiplication the derivation needs.
  CoeffPoly scaled_shift(const BigInt& factor,
                         const CoeffExponents& shift) const {
    if (shift.size() != num_vars_) {
      throw DimensionError("CoeffPoly::scaled_shift: shift length mismatch");
    }
    CoeffPoly r(num_vars_);
    if (factor == 0) return r;
    CoeffExponents e(num_vars_);
    for (const auto& [ep, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + shift[i];
      r.terms_.emplace_hint(r.terms_.end(), e, c * factor);
    }
    return r;
  }

  /// Value at R_i = values[i-1].
  template <typename Real>
  Real evaluate(std::span<const Real> values) const {
    if (values.size() < num_vars_) {
      throw DimensionError("CoeffPoly::evaluate: not enough values");
    }
    Real sum = 0;
    for (const auto& [e, c] : terms_) {
      Real term = static_cast<Real>(c);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        for (int k = 0; k < e[i]; ++k) term *= values[i];
      }
      sum += term;
    }
    return sum;
  }

  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_ring(const CoeffPoly& q, const char* op) const {
    if (q.num_vars_ != num_vars_) {
      throw DimensionError(std::string("CoeffPoly::") + op +
                           ": operands have " + std::to_string(num_vars_) +
                           " and " + std::to_string(q.num_vars_) +
                           " variables");
    }
  }

  std::size_t num_vars_;
  TermMap terms_;
};

/// Delta_j = R1 * ... * Rj in Z[R1..Rn]; Delta_0 = 1.
inline CoeffPoly delta(std::size_t j, std::size_t n) {
  if (j > n) {
    throw InvalidIndexError("delta: index " + std::to_string(j) +
                            " exceeds variable count " + std::to_string(n));
  }
  CoeffExponents e(n, 0);
  for (std::size_t i = 0; i < j; ++i) e[i] = 1;
  return CoeffPoly::monomial(n, std::move(e), 1);
}

/// Exponent vector of Delta_j, for use with CoeffPoly::scaled_shift.
inline CoeffExponents delta_exponents(std::size_t j, std::size_t n) {
  if (j > n) throw InvalidIndexError("delta_exponents: index out of range");
  CoeffExponents e(n, 0);
  for (std::size_t i = 0; i < j; ++i) e[i] = 1;
  return e;
}

/// Human-readable form, terms in descending graded-lex order, e.g.
/// "R1^2*R2 - 2*R1 + 1".
inline std::string to_string(const CoeffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "R" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace fewnomial

#endif  // FEWNOMIAL_COEFF_POLY_HPP
