// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fewnomial/fewnomial.hpp"
#include "support.hpp"

using namespace fewnomial;
namespace t = fewnomial::testkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAILED]");
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

Outcome small_levels() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const std::size_t steps[] = {0, 1, 3};
  for (std::size_t n = 1; n <= 3; ++n) {
    const SeedReport r = compute_dd_n(n);
    o.require(r.dd_steps == steps[n - 1] && r.fp_bound == steps[n - 1] + 2,
              "n=" + std::to_string(n) + ": steps " + std::to_string(r.dd_steps) +
                  ", bound " + std::to_string(r.fp_bound));
  }
  const double s = seconds_since(start);
  o.require(s < 1.0, "runtime " + fmt(s, 3) + " s");
  return o;
}

Outcome level_four() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const SeedReport r = compute_dd_n(4);
  const auto a = ackermann(3, 1);
  o.require(r.fp_bound == 13, "fp bound " + std::to_string(r.fp_bound) + " (steps " +
                                  std::to_string(r.dd_steps) + ")");
  o.require(a.value && *a.value == BigInt(r.fp_bound),
            "A(3,1) = " + (a.value ? a.value->str() : std::string("?")));
  o.detail += "; runtime " + fmt(seconds_since(start), 3) + " s";
  return o;
}

Outcome trace_reproduction() {
  Outcome o;
  const DDTrace tr = dd_run(build_seed(3));
  const std::vector<std::string> supports = {"x1*x2 + x1*y2 + y1*y2",
                                             "x1*x2/y1 + x2 + y2", "x1 + y1", "1"};
  const std::vector<std::string> monomials = {"x1", "x1*x2/y1^2", "x1"};
  o.require(tr.step_count() == 3, "3 steps");
  if (tr.step_count() != 3) return o;
  o.require(support_string(tr.initial) == supports[0], "p(0) = " + support_string(tr.initial));
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = tr.steps[i];
    o.require(support_string(s.polynomial_after) == supports[i + 1],
              "p(" + std::to_string(i + 1) + ") = " + support_string(s.polynomial_after));
    o.require(to_string(s.reg_monomial) == monomials[i],
              "m" + std::to_string(i) + " = " + to_string(s.reg_monomial));
  }
  return o;
}

Outcome seed_equivalence() {
  Outcome o;
  for (std::size_t n = 1; n <= 5; ++n) {
    o.require(build_seed(n) == seed_via_second_derivative(n), "n=" + std::to_string(n));
  }
  return o;
}

Outcome root_example(const ProblemParams& p, const std::vector<double>& want, double rel_tol,
                     double max_seconds) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const RootReport r = find_roots(p);
  const double s = seconds_since(start);
  o.require(r.count == want.size(), std::to_string(r.count) + " enclosures");
  if (r.count == want.size()) {
    double worst = 0;
    for (std::size_t i = 0; i < want.size(); ++i) {
      worst = std::max(worst, std::abs(r.roots[i].refined - want[i]) / want[i]);
    }
    o.require(worst <= rel_tol, "max relative deviation " + fmt(worst, 3));
  }
  o.require(s < max_seconds, "runtime " + fmt(s, 3) + " s");
  return o;
}

Outcome bounds_values() {
  Outcome o;
  o.require(khovanskii_bound(1) == 8 && khovanskii_bound(2) == 5184, "K(1), K(2) exact");
  const std::pair<std::string, int> magnitudes[] = {{"1.3", 8}, {"1.0", 14}, {"2.0", 21}};
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto sf = significant_figures(khovanskii_bound(n), 2);
    const auto& want = magnitudes[n - 3];
    o.require(sf == want, "K(" + std::to_string(n) + ") ~ " + sf.first + "e" +
                              std::to_string(sf.second) + " vs table " + want.first + "e" +
                              std::to_string(want.second));
  }
  const int sb[] = {3, 21, 562, 42554};
  bool sb_ok = true;
  for (std::size_t n = 1; n <= 4; ++n) sb_ok = sb_ok && bihan_sottile_bound(n) == sb[n - 1];
  o.require(sb_ok, "SB(1..4) = 3, 21, 562, 42554");
  const int ack[] = {2, 3, 5, 13, 65533};
  bool ack_ok = true;
  for (std::uint64_t i = 0; i <= 4; ++i) {
    const auto a = ackermann(i, 1);
    ack_ok = ack_ok && a.value && *a.value == ack[i];
  }
  o.require(ack_ok, "A(0..4,1) = 2, 3, 5, 13, 65533");
  return o;
}

Outcome property_suites() {
  Outcome o;
  constexpr int kCases = 500;
  auto degree = [](t::Rng& rng, std::size_t n, int max) {
    std::vector<int> m(n);
    for (auto& v : m) v = t::uniform_int(rng, 0, max);
    return m;
  };

  {
    t::Rng rng(8001);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const std::size_t n = static_cast<std::size_t>(t::uniform_int(rng, 1, 3));
      const LaurentPoly p = t::random_laurent(rng, n, n, 3);
      const LaurentPoly q = t::random_laurent(rng, n, n, 3);
      if (!(derive(p * q) == derive(p) * q + p * derive(q))) ++bad;
    }
    o.require(bad == 0, "Leibniz " + std::to_string(bad) + " violations in " + std::to_string(kCases));
  }
  {
    t::Rng rng(8002);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const std::size_t n = static_cast<std::size_t>(t::uniform_int(rng, 1, 3));
      const LaurentPoly p = t::random_boxed(rng, degree(rng, n, 3), n, 5, true);
      const LaurentPoly dp = derive(p);
      if (!dp.is_zero() && !(pdeg(dp).values == pdeg(p).values)) ++bad;
    }
    o.require(bad == 0, "degree preservation " + std::to_string(bad) + " violations in " + std::to_string(kCases));
  }
  {
    t::Rng rng(8003);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const std::size_t n = static_cast<std::size_t>(t::uniform_int(rng, 1, 3));
      LaurentPoly p = t::random_regular(rng, degree(rng, n, n == 3 ? 1 : 2), n, 4);
      try {
        for (int guard = 0; guard < 200; ++guard) {
          const auto step = dd_step(p);
          if (!step) break;
          if (!rlex_less(step->quotient_pdeg, pdeg(p))) {
            ++bad;
            break;
          }
          p = step->quotient;
        }
      } catch (const InvariantViolation&) {
        ++bad;
      }
    }
    o.require(bad == 0, "rlex decrease " + std::to_string(bad) + " violations in " + std::to_string(kCases));
  }
  {
    t::Rng rng(8004);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const std::size_t n = static_cast<std::size_t>(t::uniform_int(rng, 1, 3));
      const LaurentPoly p = t::random_boxed(rng, degree(rng, n, 3), n, 5, true);
      if (!is_regular(divide_by_monomial(p, reg_monomial(p)))) ++bad;
    }
    o.require(bad == 0, "regularization " + std::to_string(bad) + " violations in " + std::to_string(kCases));
  }
  {
    t::Rng rng(8005);
    int bad = 0;
    for (int i = 0; i < kCases; ++i) {
      const int m = t::uniform_int(rng, 0, 6);
      const LaurentPoly p = t::random_regular(rng, {m}, 1, 6);
      if (dd_run(p).step_count() > static_cast<std::size_t>(m)) ++bad;
    }
    o.require(bad == 0, "one-pair DD <= m " + std::to_string(bad) + " violations in " + std::to_string(kCases));
  }
  {
    // Regular polynomials (no negative exponents) with support in the box.
    t::Rng rng(8006);
    int bad = 0, cases = 0, attempts = 0;
    std::string example;
    while (cases < kCases && attempts < 100 * kCases) {
      ++attempts;
      const std::size_t n = static_cast<std::size_t>(t::uniform_int(rng, 1, 2));
      const std::vector<int> m = degree(rng, n, 3);
      const LaurentPoly p = t::random_boxed(rng, m, n, 6, false);
      if (!is_regular(p)) continue;
      ++cases;
      std::vector<std::uint64_t> mu(m.begin(), m.end());
      const std::size_t steps = dd_run(p).step_count();
      if (steps > h_bound(mu)) {
        if (bad == 0) {
          example = support_string(p) + " (DD " + std::to_string(steps) + " > H " +
                    std::to_string(h_bound(mu)) + ")";
        }
        ++bad;
      }
    }
    o.require(bad == 0 && cases == kCases,
              "support bound " + std::to_string(bad) + " violations in " + std::to_string(cases) +
                  (example.empty() ? "" : ", e.g. " + example));
  }
  return o;
}

Outcome morphism() {
  Outcome o;
  t::Rng rng(9001);
  int triples = 0, bad_level = 0, bad_decay = 0;
  double worst = 0;
  while (triples < 100) {
    const std::size_t n = static_cast<std::size_t>(t::uniform_int(rng, 1, 3));
    ProblemParams params;
    for (std::size_t i = 0; i < n; ++i) {
      params.a.push_back(t::uniform_real(rng, -0.5, 1.0));
      params.r.emplace_back(t::uniform_real(rng, 0.2, 3.0));
    }
    const DomainInterval dom = domain_interval(params);
    if (dom.empty) continue;
    const double lo = std::max(dom.lower * 1.5, 0.1);
    const double hi = std::min(dom.unbounded_above() ? 10.0 : dom.upper / 1.5, 10.0);
    if (!(lo < hi)) continue;
    const double x = lo * std::pow(hi / lo, t::uniform_real(rng, 0, 1));
    LaurentPoly p = t::random_laurent(rng, n, n, 4);
    if (p.is_zero()) continue;
    ++triples;
    double d[3];
    const double rel[3] = {1e-3, 1e-4, 1e-5};
    for (int k = 0; k < 3; ++k) {
      d[k] = check_morphism_commutation(p, params, x, rel[k] * x).discrepancy;
    }
    worst = std::max(worst, d[2]);
    if (!(d[2] < 1e-5)) ++bad_level;
    // Quadratic decay: a factor ~100 per decade until the rounding floor.
    for (int k = 0; k < 2; ++k) {
      if (d[k + 1] > 1e-13 && d[k] / d[k + 1] < 30) {
        ++bad_decay;
        break;
      }
    }
  }
  o.require(bad_level == 0, "discrepancy < 1e-5 at h = 1e-5 x (worst " + fmt(worst, 3) + ")");
  o.require(bad_decay == 0, "quadratic decay " + std::to_string(100 - bad_decay) + "/100");
  return o;
}

Outcome compensator() {
  Outcome o;
  auto params1 = [](double a, double r) {
    ProblemParams p;
    p.a = {a};
    p.r = {Exponent(r)};
    return p;
  };
  const DDTrace tr1 = compute_dd_n(1).trace;
  const auto grid = make_grid(0.5, 4.0, 1.0, 10000);
  double worst = 0;
  for (double r : {0.5, 1.0, 1.5, 2.0}) {
    const auto b = omega_basis(build_operator(tr1, params1(0.1, r), 1.0), grid, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, std::abs(b.values[2][i] - omega2_closed_form(r, grid[i])));
    }
  }
  o.require(worst < 1e-6, "omega_2 max error " + fmt(worst, 3));

  {
    const auto p = params1(0.1, 0.5);
    const auto b = omega_basis(build_operator(tr1, p, 1.0), grid, 0.0);
    const auto l = lambda_coeffs(phi_samples(p, grid), b, 0.0);
    const double want[] = {0.1, -0.5, -0.25};
    double err = 0;
    for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(l.lambda[k] - want[k]));
    o.require(err < 1e-6, "lambda = (" + fmt(l.lambda[0], 9) + ", " + fmt(l.lambda[1], 9) +
                              ", " + fmt(l.lambda[2], 9) + ")");
  }
  {
    const auto b1 = omega_basis(build_operator(tr1, params1(0.1, 0.5), 1.0), grid, 0.0);
    const auto z1 = chebyshev_zero_count(b1, 1000, 10);
    const ProblemParams p2 = t::example_n2();
    const auto b2 = omega_basis(build_operator(compute_dd_n(2).trace, p2, 1.0), grid, 0.0);
    const auto z2 = chebyshev_zero_count(b2, 1000, 20);
    o.require(z1.pass(), "n=1 max zeros " + std::to_string(z1.max_zeros) + " <= " +
                             std::to_string(z1.order - 1));
    o.require(z2.pass(), "n=2 max zeros " + std::to_string(z2.max_zeros) + " <= " +
                             std::to_string(z2.order - 1));
  }
  return o;
}

Outcome root_counts() {
  Outcome o;
  t::Rng rng(11001);
  const std::size_t bound[] = {0, 2, 3, 5};
  int violations = 0;
  std::size_t most = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(t::uniform_int(rng, 1, 3));
    const ProblemParams p = t::random_params(rng, n);
    const RootReport r = find_roots(p);
    most = std::max(most, r.count);
    if (r.count > bound[n]) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations in 100 (max count " +
                                 std::to_string(most) + ")");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "DD step counts n=1..3", small_levels},
      {2, "n=4 bound against A(3,1)", level_four},
      {3, "level-3 trace reproduction", trace_reproduction},
      {4, "seed equivalence n=1..5", seed_equivalence},
      {5, "root example n=2",
       [] { return root_example(t::example_n2(), {0.0123409, 0.1741525, 0.3585065}, 1e-5, 1.0); }},
      {6, "root example n=3",
       [] {
         return root_example(t::example_n3(),
                             {1.270599e-5, 1.921586e-5, 4.764392e-5, 7.949546e-5, 0.2384109},
                             1e-3, 5.0);
       }},
      {7, "bounds table values", bounds_values},
      {8, "property suites", property_suites},
      {9, "morphism validation", morphism},
      {10, "compensator", compensator},
      {11, "root-count consistency", root_counts},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
