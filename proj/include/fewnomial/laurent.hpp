#ifndef FEWNOMIAL_LAURENT_HPP
#define FEWNOMIAL_LAURENT_HPP

// Laurent polynomials in x1, y1, ..., xn, yn over Z[R1..Rn]: poly-degree,
// homogeneity, pair expansions, regularity and the regularization monomial.
//
// Pair and variable indices in the public API are 1-based, matching the
// usual notation x_j, y_j, R_j.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fewnomial/coeff_poly.hpp"
#include "fewnomial/errors.hpp"

namespace fewnomial {

/// Exponent (k, l) of the monomial x^k y^l.
struct ExponentPair {
  std::vector<int> k;
  std::vector<int> l;

  ExponentPair() = default;
  explicit ExponentPair(std::size_t num_pairs)
      : k(num_pairs, 0), l(num_pairs, 0) {}
  ExponentPair(std::vector<int> k_, std::vector<int> l_)
      : k(std::move(k_)), l(std::move(l_)) {
    if (k.size() != l.size()) {
      throw DimensionError("ExponentPair: k and l lengths differ");
    }
  }

  std::size_t num_pairs() const noexcept { return k.size(); }

  bool is_zero() const {
    return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; }) &&
           std::all_of(l.begin(), l.end(), [](int v) { return v == 0; });
  }

  friend auto operator<=>(const ExponentPair&, const ExponentPair&) = default;
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// Poly-degree vector, pdeg(x^k y^l) = k + l.
struct PDeg {
  std::vector<int> values;

  std::size_t size() const noexcept { return values.size(); }
  int operator[](std::size_t i) const { return values[i]; }

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(),
                       [](int v) { return v == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(values.begin(), values.end(),
                       [](int v) { return v >= 0; });
  }

  friend bool operator==(const PDeg&, const PDeg&) = default;
};

inline std::string to_string(const PDeg& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

/// Monomial x^k y^l with coefficient 1; always invertible.
struct UnitaryMonomial {
  ExponentPair exponent;

  static UnitaryMonomial identity(std::size_t num_pairs) {
    return {ExponentPair(num_pairs)};
  }

  std::size_t num_pairs() const noexcept { return exponent.num_pairs(); }
  bool is_identity() const { return exponent.is_zero(); }

  UnitaryMonomial inverse() const {
    UnitaryMonomial m = *this;
    for (auto& v : m.exponent.k) v = -v;
    for (auto& v : m.exponent.l) v = -v;
    return m;
  }

  friend UnitaryMonomial operator*(const UnitaryMonomial& a,
                                   const UnitaryMonomial& b) {
    if (a.num_pairs() != b.num_pairs()) {
      throw DimensionError("UnitaryMonomial: pair count mismatch");
    }
    UnitaryMonomial m = a;
    for (std::size_t i = 0; i < m.num_pairs(); ++i) {
      m.exponent.k[i] += b.exponent.k[i];
      m.exponent.l[i] += b.exponent.l[i];
    }
    return m;
  }

  friend bool operator==(const UnitaryMonomial&,
                         const UnitaryMonomial&) = default;
};

inline PDeg pdeg_monomial(const ExponentPair& e) {
  PDeg d;
  d.values.resize(e.num_pairs());
  for (std::size_t i = 0; i < e.num_pairs(); ++i) d.values[i] = e.k[i] + e.l[i];
  return d;
}

/// Sparse Laurent polynomial: ExponentPair -> nonzero CoeffPoly.
///
/// `num_pairs` is the number of (x_j, y_j) pairs; `coeff_vars` the number of
/// R-variables of the coefficient ring. The two are independent: the seed
/// polynomial at level n lives in n-1 pairs over Z[R1..Rn].
class LaurentPoly {
 public:
  using TermMap = std::map<ExponentPair, CoeffPoly>;

  LaurentPoly() : LaurentPoly(0, 0) {}
  LaurentPoly(std::size_t num_pairs, std::size_t coeff_vars)
      : num_pairs_(num_pairs), coeff_vars_(coeff_vars) {}

  static LaurentPoly monomial(ExponentPair e, CoeffPoly c) {
    LaurentPoly p(e.num_pairs(), c.num_vars());
    p.add_term(e, c);
    return p;
  }

  /// Element of the base ring R viewed in num_pairs pairs.
  static LaurentPoly constant(std::size_t num_pairs, CoeffPoly c) {
    return monomial(ExponentPair(num_pairs), std::move(c));
  }

  static LaurentPoly from_unitary(const UnitaryMonomial& m,
                                  std::size_t coeff_vars) {
    return monomial(m.exponent, CoeffPoly::constant(coeff_vars, 1));
  }

  std::size_t num_pairs() const noexcept { return num_pairs_; }
  std::size_t coeff_vars() const noexcept { return coeff_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// True iff every support exponent is zero, i.e. p lies in R.
  bool in_base_ring() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.is_zero(); });
  }

  /// Coefficient of the zero exponent.
  CoeffPoly constant_term() const {
    auto it = terms_.find(ExponentPair(num_pairs_));
    return it == terms_.end() ? CoeffPoly(coeff_vars_) : it->second;
  }

  CoeffPoly coefficient(const ExponentPair& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? CoeffPoly(coeff_vars_) : it->second;
  }

  void add_term(const ExponentPair& e, const CoeffPoly& c) {
    check_term(e, c);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add_term(const ExponentPair& e, CoeffPoly&& c) {
    check_term(e, c);
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& q) {
    check_same_ring(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& q) {
    check_same_ring(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly p, const LaurentPoly& q) {
    p += q;
    return p;
  }
  friend LaurentPoly operator-(LaurentPoly p, const LaurentPoly& q) {
    p -= q;
    return p;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
    p.check_same_ring(q);
    LaurentPoly r(p.num_pairs_, p.coeff_vars_);
    ExponentPair e(p.num_pairs_);
    for (const auto& [ep, cp] : p.terms_) {
      for (const auto& [eq, cq] : q.terms_) {
        for (std::size_t i = 0; i < p.num_pairs_; ++i) {
          e.k[i] = ep.k[i] + eq.k[i];
          e.l[i] = ep.l[i] + eq.l[i];
        }
        r.add_term(e, cp * cq);
      }
    }
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.num_pairs_ == b.num_pairs_ && a.coeff_vars_ == b.coeff_vars_ &&
           a.terms_ == b.terms_;
  }

 private:
  void check_term(const ExponentPair& e, const CoeffPoly& c) const {
    if (e.num_pairs() != num_pairs_) {
      throw DimensionError("LaurentPoly: exponent has " +
                           std::to_string(e.num_pairs()) +
                           " pairs, polynomial has " +
                           std::to_string(num_pairs_));
    }
    if (c.num_vars() != coeff_vars_) {
      throw DimensionError("LaurentPoly: coefficient ring mismatch");
    }
  }
  void check_same_ring(const LaurentPoly& q) const {
    if (q.num_pairs_ != num_pairs_ || q.coeff_vars_ != coeff_vars_) {
      throw DimensionError("LaurentPoly: operands live in different rings");
    }
  }

  std::size_t num_pairs_;
  std::size_t coeff_vars_;
  TermMap terms_;
};

/// Common poly-degree of all support monomials, or nullopt when p is not
/// homogeneous. Throws UndefinedDegreeError for p = 0.
inline std::optional<PDeg> homogeneous_pdeg(const LaurentPoly& p) {
  if (p.is_zero()) {
    throw UndefinedDegreeError("homogeneous_pdeg: zero polynomial");
  }
  auto it = p.terms().begin();
  PDeg d = pdeg_monomial(it->first);
  for (++it; it != p.terms().end(); ++it) {
    if (pdeg_monomial(it->first) != d) return std::nullopt;
  }
  return d;
}

/// Like homogeneous_pdeg but throws NotHomogeneousError.
inline PDeg pdeg(const LaurentPoly& p) {
  auto d = homogeneous_pdeg(p);
  if (!d) throw NotHomogeneousError("pdeg: polynomial is not homogeneous");
  return *d;
}

inline void check_pair_index(const LaurentPoly& p, std::size_t j,
                             const char* who) {
  if (j == 0 || j > p.num_pairs()) {
    throw InvalidIndexError(std::string(who) + ": pair index " +
                            std::to_string(j) + " outside 1.." +
                            std::to_string(p.num_pairs()));
  }
}

/// True iff every support exponent has k_j >= 0 and l_j >= 0.
inline bool is_poly_in_pair(const LaurentPoly& p, std::size_t j) {
  check_pair_index(p, j, "is_poly_in_pair");
  return std::all_of(p.terms().begin(), p.terms().end(), [j](const auto& t) {
    return t.first.k[j - 1] >= 0 && t.first.l[j - 1] >= 0;
  });
}

/// p = sum_i q_i x_j^i y_j^(m-i). The coefficients q_i live in the ring with
/// pair j removed.
struct PairExpansion {
  int degree = 0;  // m = pdeg_j(p)
  std::map<int, LaurentPoly> coefficients;

  int min_exponent() const { return coefficients.begin()->first; }
  int max_exponent() const { return coefficients.rbegin()->first; }
};

inline PairExpansion expand_in_pair(const LaurentPoly& p, std::size_t j) {
  check_pair_index(p, j, "expand_in_pair");
  if (p.is_zero()) throw UndefinedDegreeError("expand_in_pair: zero polynomial");
  const std::size_t idx = j - 1;
  PairExpansion out;
  out.degree = p.terms().begin()->first.k[idx] + p.terms().begin()->first.l[idx];
  for (const auto& [e, c] : p.terms()) {
    if (e.k[idx] + e.l[idx] != out.degree) {
      throw NotHomogeneousError("expand_in_pair: degree in pair " +
                                std::to_string(j) + " is not constant");
    }
    ExponentPair rest;
    rest.k = e.k;
    rest.l = e.l;
    rest.k.erase(rest.k.begin() + static_cast<std::ptrdiff_t>(idx));
    rest.l.erase(rest.l.begin() + static_cast<std::ptrdiff_t>(idx));
    auto [it, inserted] = out.coefficients.try_emplace(
        e.k[idx], p.num_pairs() - 1, p.coeff_vars());
    it->second.add_term(rest, c);
  }
  return out;
}

/// Recursive regularity test. The zero polynomial is regular only in R.
inline bool is_regular(const LaurentPoly& p) {
  const std::size_t n = p.num_pairs();
  if (n == 0) return true;
  if (p.is_zero()) return false;
  if (!homogeneous_pdeg(p)) return false;
  if (!is_poly_in_pair(p, n)) return false;
  const PairExpansion ex = expand_in_pair(p, n);
  auto q0 = ex.coefficients.find(0);
  if (q0 == ex.coefficients.end()) return false;
  return is_regular(q0->second);
}

/// Canonical unitary monomial reg(p) such that p / reg(p) is regular.
inline UnitaryMonomial reg_monomial(const LaurentPoly& p) {
  if (p.is_zero()) throw UndefinedDegreeError("reg_monomial: zero polynomial");
  if (!homogeneous_pdeg(p)) {
    throw NotHomogeneousError("reg_monomial: polynomial is not homogeneous");
  }
  const std::size_t n = p.num_pairs();
  if (n == 0) return UnitaryMonomial::identity(0);

  const PairExpansion ex = expand_in_pair(p, n);
  const int n0 = ex.min_exponent();
  const int n1 = ex.max_exponent();
  UnitaryMonomial m = reg_monomial(ex.coefficients.at(n0));
  m.exponent.k.push_back(n0);
  m.exponent.l.push_back(ex.degree - n1);
  return m;
}

/// Shifts every exponent by -exponent(m).
inline LaurentPoly divide_by_monomial(const LaurentPoly& p,
                                      const UnitaryMonomial& m) {
  if (m.num_pairs() != p.num_pairs()) {
    throw DimensionError("divide_by_monomial: pair count mismatch");
  }
  LaurentPoly r(p.num_pairs(), p.coeff_vars());
  ExponentPair e(p.num_pairs());
  for (const auto& [ep, c] : p.terms()) {
    for (std::size_t i = 0; i < p.num_pairs(); ++i) {
      e.k[i] = ep.k[i] - m.exponent.k[i];
      e.l[i] = ep.l[i] - m.exponent.l[i];
    }
    r.add_term(e, c);
  }
  return r;
}

/// Strict reverse-lexicographic order: the last differing coordinate decides.
inline bool rlex_less(const PDeg& u, const PDeg& v) {
  if (u.size() != v.size()) {
    throw DimensionError("rlex_less: vectors of different lengths");
  }
  for (std::size_t i = u.size(); i-- > 0;) {
    if (u[i] != v[i]) return u[i] < v[i];
  }
  return false;
}

/// Views p in more pairs; the new trailing pairs get zero exponents.
inline LaurentPoly extend_pairs(const LaurentPoly& p, std::size_t num_pairs) {
  if (num_pairs < p.num_pairs()) {
    throw DimensionError("extend_pairs: cannot shrink");
  }
  LaurentPoly r(num_pairs, p.coeff_vars());
  for (const auto& [e, c] : p.terms()) {
    ExponentPair f = e;
    f.k.resize(num_pairs, 0);
    f.l.resize(num_pairs, 0);
    r.add_term(f, c);
  }
  return r;
}

inline UnitaryMonomial extend_pairs(const UnitaryMonomial& m,
                                    std::size_t num_pairs) {
  if (num_pairs < m.num_pairs()) {
    throw DimensionError("extend_pairs: cannot shrink");
  }
  UnitaryMonomial r = m;
  r.exponent.k.resize(num_pairs, 0);
  r.exponent.l.resize(num_pairs, 0);
  return r;
}

/// Drops trailing pairs, which must carry zero exponents everywhere.
inline LaurentPoly project_pairs(const LaurentPoly& p, std::size_t num_pairs) {
  if (num_pairs > p.num_pairs()) {
    throw DimensionError("project_pairs: cannot grow");
  }
  LaurentPoly r(num_pairs, p.coeff_vars());
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = num_pairs; i < p.num_pairs(); ++i) {
      if (e.k[i] != 0 || e.l[i] != 0) {
        throw InvariantViolation("project_pairs: nonzero exponent in pair " +
                                 std::to_string(i + 1));
      }
    }
    ExponentPair f = e;
    f.k.resize(num_pairs);
    f.l.resize(num_pairs);
    r.add_term(f, c);
  }
  return r;
}

/// Fraction notation, e.g. "x1^2*x2/y1^2", "1/y1", "1".
inline std::string format_monomial(const ExponentPair& e) {
  std::string num, den;
  auto put = [](std::string& s, char var, std::size_t i, int power) {
    if (!s.empty()) s += "*";
    s += var;
    s += std::to_string(i + 1);
    if (power > 1) s += "^" + std::to_string(power);
  };
  for (std::size_t i = 0; i < e.num_pairs(); ++i) {
    if (e.k[i] > 0) put(num, 'x', i, e.k[i]);
    if (e.l[i] > 0) put(num, 'y', i, e.l[i]);
  }
  for (std::size_t i = 0; i < e.num_pairs(); ++i) {
    if (e.k[i] < 0) put(den, 'x', i, -e.k[i]);
    if (e.l[i] < 0) put(den, 'y', i, -e.l[i]);
  }
  if (num.empty()) num = "1";
  if (den.empty()) return num;
  return num + "/" + (den.find('*') == std::string::npos ? den : "(" + den + ")");
}

inline std::string to_string(const UnitaryMonomial& m) {
  return format_monomial(m.exponent);
}

/// Display order: pairs compared from the last to the first, larger x
/// exponent first, then larger y exponent.
struct DisplayOrder {
  bool operator()(const ExponentPair& a, const ExponentPair& b) const {
    for (std::size_t i = a.num_pairs(); i-- > 0;) {
      if (a.k[i] != b.k[i]) return a.k[i] > b.k[i];
      if (a.l[i] != b.l[i]) return a.l[i] > b.l[i];
    }
    return false;
  }
};

inline std::vector<ExponentPair> display_support(const LaurentPoly& p) {
  std::vector<ExponentPair> s;
  s.reserve(p.size());
  for (const auto& [e, c] : p.terms()) s.push_back(e);
  std::sort(s.begin(), s.end(), DisplayOrder{});
  return s;
}

/// Full form with coefficients, e.g. "(R1^2 - R1)*x1 + R1*y1".
inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& e : display_support(p)) {
    const CoeffPoly& c = p.terms().at(e);
    std::string coef = to_string(c);
    const bool is_one = coef == "1";
    const bool is_minus_one = coef == "-1";
    std::string term;
    if (e.is_zero()) {
      term = c.size() > 1 && !first ? "(" + coef + ")" : coef;
    } else if (is_one) {
      term = format_monomial(e);
    } else if (is_minus_one) {
      term = "-" + format_monomial(e);
    } else if (c.size() == 1) {
      term = coef + "*" + format_monomial(e);
    } else {
      term = "(" + coef + ")*" + format_monomial(e);
    }
    if (!first) {
      if (term.front() == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    } else {
      out += term;
    }
    first = false;
  }
  return out;
}

/// Support only, coefficients omitted: "x1*x2 + x1*y2 + y1*y2".
inline std::string support_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& e : display_support(p)) {
    if (!out.empty()) out += " + ";
    out += format_monomial(e);
  }
  return out;
}

}  // namespace fewnomial

#endif  // FEWNOMIAL_LAURENT_HPP
