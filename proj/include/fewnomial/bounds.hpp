#ifndef FEWNOMIAL_BOUNDS_HPP
#define FEWNOMIAL_BOUNDS_HPP

// Comparison bounds for the number of solutions of the nested-power
// equation: the recursive support bound H_k, the Ackermann function, the
// Khovanskii and Bihan-Sottile fewnomial bounds, and the summary table.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fewnomial/coeff_poly.hpp"
#include "fewnomial/errors.hpp"

namespace fewnomial {

// ---------------------------------------------------------------------------
// H_k recursion
//
//   H_1(m) = m
//   H_k(m_1..m_{k-1}, 0)   = H_{k-1}(m_1..m_{k-1})
//   H_k(m_1..m_{k-1}, m_k) = H_k(m_1..m_{k-2}, m_{k-1} + H_{k-1}(m_1..m_{k-1}),
//                                m_k - 1)

namespace detail {

using HMemo = std::map<std::vector<std::uint64_t>, std::uint64_t>;

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw NumericError("h_bound: value exceeds 64 bits");
  }
  return r;
}

inline std::uint64_t h_eval(const std::vector<std::uint64_t>& m, HMemo& memo) {
  if (m.size() == 1) return m[0];
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  std::vector<std::uint64_t> prefix(m.begin(), m.end() - 1);
  // Rule 2.b unrolled: each application bumps the last prefix entry.
  for (std::uint64_t last = m.back(); last > 0; --last) {
    prefix.back() = checked_add(prefix.back(), h_eval(prefix, memo));
  }
  const std::uint64_t v = h_eval(prefix, memo);
  memo.emplace(m, v);
  return v;
}

}  // namespace detail

/// H_k(m_1, ..., m_k). Throws PreconditionError for an empty vector and
/// NumericError when the value leaves 64-bit range.
inline std::uint64_t h_bound(const std::vector<std::uint64_t>& m) {
  if (m.empty()) throw PreconditionError("h_bound: empty degree vector");
  detail::HMemo memo;
  return detail::h_eval(m, memo);
}

// ---------------------------------------------------------------------------
// Ackermann function

struct AckermannResult {
  std::optional<BigInt> value;
  /// Set when the value is too large to evaluate.
  std::string note;

  bool too_large() const noexcept { return !value.has_value(); }
};

inline constexpr std::uint64_t kDefaultAckermannBudget = 5'000'000;

/// A(0,k) = k+1, A(i,0) = A(i-1,1), A(i,k) = A(i-1, A(i,k-1)).
///
/// Evaluated with an explicit stack and a memo table, so every distinct
/// argument pair is computed once. `budget` caps the number of evaluation
/// steps; the default comfortably covers A(4,1).
inline AckermannResult ackermann(std::uint64_t i, std::uint64_t k,
                                 std::uint64_t budget = kDefaultAckermannBudget) {
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p)
        const noexcept {
      return std::hash<std::uint64_t>{}(p.first * 0x9E3779B97F4A7C15ull ^
                                        p.second);
    }
  };
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  std::unordered_map<Key, std::uint64_t, KeyHash> memo;
  std::vector<Key> stack{{i, k}};
  std::uint64_t steps = 0;

  auto too_large = [&]() {
    AckermannResult r;
    if (i == 5 && k == 1) {
      r.note =
          "A(5,1) = 2^2^...^2 - 3, a tower of powers of 2 of height "
          "A(4,1) + 3 = 65536";
    } else {
      r.note = "A(" + std::to_string(i) + "," + std::to_string(k) +
               ") exceeds the evaluation budget";
    }
    return r;
  };

  while (!stack.empty()) {
    if (++steps > budget) return too_large();
    const auto [a, b] = stack.back();
    if (memo.count({a, b})) {
      stack.pop_back();
      continue;
    }
    if (a == 0) {
      if (b == UINT64_MAX) return too_large();
      memo[{a, b}] = b + 1;
      stack.pop_back();
    } else if (b == 0) {
      auto it = memo.find({a - 1, 1});
      if (it == memo.end()) {
        stack.push_back({a - 1, 1});
      } else {
        memo[{a, b}] = it->second;
        stack.pop_back();
      }
    } else {
      auto inner = memo.find({a, b - 1});
      if (inner == memo.end()) {
        stack.push_back({a, b - 1});
        continue;
      }
      auto outer = memo.find({a - 1, inner->second});
      if (outer == memo.end()) {
        stack.push_back({a - 1, inner->second});
      } else {
        memo[{a, b}] = outer->second;
        stack.pop_back();
      }
    }
  }
  return {BigInt(memo.at({i, k})), {}};
}

// ---------------------------------------------------------------------------
// Fewnomial bounds

/// K(n) = 2^(n(2n-1)) (n+1)^(2n).
inline BigInt khovanskii_bound(std::size_t n) {
  if (n == 0) throw PreconditionError("khovanskii_bound: n must be >= 1");
  using boost::multiprecision::pow;
  return pow(BigInt(2), static_cast<unsigned>(n * (2 * n - 1))) *
         pow(BigInt(n + 1), static_cast<unsigned>(2 * n));
}

/// SB(n) = ceil((e^2 + 3)/4 * 2^binom(n,2) * n^n).
///
/// e^2 is enclosed by the partial sums of sum 2^j/j! with a rigorous tail
/// bound, all in exact integer arithmetic; terms are added until both ends
/// of the enclosure have the same ceiling.
inline BigInt bihan_sottile_bound(std::size_t n) {
  if (n == 0) throw PreconditionError("bihan_sottile_bound: n must be >= 1");
  using boost::multiprecision::pow;
  const BigInt scale = pow(BigInt(2), static_cast<unsigned>(n * (n - 1) / 2)) *
                       pow(BigInt(n), static_cast<unsigned>(n));

  // partial = sum_{j<=N} 2^j N!/j!, all over the common denominator N!.
  BigInt partial = 1;  // N = 0
  BigInt factorial = 1;
  for (unsigned N = 1; N < 10000; ++N) {
    partial = partial * N + pow(BigInt(2), N);
    factorial *= N;
    if (N < 4) continue;
    // Tail sum_{j>N} 2^j/j! <= 2 * 2^(N+1)/(N+1)! since the ratio of
    // consecutive terms is at most 1/2 for N >= 2.
    // Over the denominator (N+1)!: tail <= 2^(N+2).
    const BigInt den = factorial * (N + 1);
    const BigInt lo_num = partial * (N + 1);
    const BigInt hi_num = lo_num + pow(BigInt(2), N + 2);
    // value = (e2 + 3) * scale / 4
    const BigInt d = den * 4;
    const BigInt lo = (lo_num + 3 * den) * scale;
    const BigInt hi = (hi_num + 3 * den) * scale;
    const BigInt ceil_lo = (lo + d - 1) / d;
    const BigInt ceil_hi = (hi + d - 1) / d;
    // lo is strictly below the true value, so ceil(lo) is certified when it
    // also bounds hi.
    if (ceil_lo == ceil_hi) return ceil_lo;
  }
  throw NumericError("bihan_sottile_bound: enclosure did not converge");
}

/// Rounds a positive integer to `digits` significant figures, returned as
/// (mantissa string "d.dd", decimal exponent).
inline std::pair<std::string, int> significant_figures(const BigInt& v,
                                                       int digits) {
  if (v <= 0 || digits < 1) {
    throw PreconditionError("significant_figures: positive value required");
  }
  std::string s = v.str();
  int exponent = static_cast<int>(s.size()) - 1;
  std::string head = s.substr(0, std::min<std::size_t>(s.size(), digits));
  head.resize(static_cast<std::size_t>(digits), '0');
  if (s.size() > static_cast<std::size_t>(digits) &&
      s[static_cast<std::size_t>(digits)] >= '5') {
    int pos = digits - 1;
    while (pos >= 0 && head[static_cast<std::size_t>(pos)] == '9') {
      head[static_cast<std::size_t>(pos)] = '0';
      --pos;
    }
    if (pos < 0) {
      head.insert(head.begin(), '1');
      head.pop_back();
      ++exponent;
    } else {
      ++head[static_cast<std::size_t>(pos)];
    }
  }
  std::string mantissa = head.substr(0, 1);
  if (digits > 1) mantissa += "." + head.substr(1);
  return {mantissa, exponent};
}

/// "5184" below 10^5, "~1.3e8" otherwise.
inline std::string format_magnitude(const BigInt& v) {
  if (v < 100000) return v.str();
  auto [m, e] = significant_figures(v, 2);
  return "~" + m + "e" + std::to_string(e);
}

// ---------------------------------------------------------------------------
// Summary table

struct BoundsRow {
  std::size_t n = 0;
  /// DD(n) + 2 from an actual derivation-division run; empty if pending.
  std::optional<std::size_t> dd_bound;
  /// A(n-1, 1), the conjectured value of the DD column.
  AckermannResult conjectured;
  BigInt khovanskii;
  BigInt bihan_sottile;
  std::optional<std::size_t> fp_exact;
};

/// Known exact values of fp(n).
inline std::optional<std::size_t> known_fp_exact(std::size_t n) {
  switch (n) {
    case 1: return 2;
    case 2: return 3;
    case 3: return 5;
    default: return std::nullopt;
  }
}

/// Rows n = 1..n_max. `dd_bound_for(n)` supplies DD(n) + 2 or nullopt.
template <typename DDProvider>
std::vector<BoundsRow> bounds_table(std::size_t n_max,
                                    DDProvider&& dd_bound_for) {
  if (n_max == 0) throw PreconditionError("bounds_table: n_max must be >= 1");
  std::vector<BoundsRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BoundsRow r;
    r.n = n;
    r.dd_bound = dd_bound_for(n);
    r.conjectured = ackermann(n - 1, 1);
    r.khovanskii = khovanskii_bound(n);
    r.bihan_sottile = bihan_sottile_bound(n);
    r.fp_exact = known_fp_exact(n);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string bounds_markdown(const std::vector<BoundsRow>& rows) {
  std::string out =
      "| n | DD(n) | K(n) | SB(n) | Exact value of fp(n) |\n"
      "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    std::string dd;
    if (r.dd_bound) {
      dd = std::to_string(*r.dd_bound);
    } else if (r.conjectured.value) {
      dd = r.conjectured.value->str() + " (conjectured)";
    } else {
      dd = "pending";
    }
    out += "| " + std::to_string(r.n) + " | " + dd + " | " +
           format_magnitude(r.khovanskii) + " | " +
           format_magnitude(r.bihan_sottile) + " | " +
           (r.fp_exact ? std::to_string(*r.fp_exact) : std::string("?")) +
           " |\n";
  }
  return out;
}

}  // namespace fewnomial

#endif  // FEWNOMIAL_BOUNDS_HPP
