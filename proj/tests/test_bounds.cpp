#include <gtest/gtest.h>

#include <cmath>

#include "fewnomial/bounds.hpp"
#include "support.hpp"

using namespace fewnomial;

TEST(SupportBound, BaseCases) {
  EXPECT_EQ(h_bound({5}), 5u);
  EXPECT_EQ(h_bound({7, 0}), 7u);
  EXPECT_EQ(h_bound({1, 1}), 2u);
  EXPECT_THROW(h_bound({}), PreconditionError);
}

TEST(SupportBound, MatchesLiteralRecursion) {
  for (std::uint64_t a = 0; a <= 4; ++a) {
    for (std::uint64_t b = 0; b <= 3; ++b) {
      EXPECT_EQ(h_bound({a, b}), testkit::h_literal({a, b}));
      for (std::uint64_t c = 0; c <= 1; ++c) {
        EXPECT_EQ(h_bound({a, b, c}), testkit::h_literal({a, b, c}));
      }
    }
  }
}

TEST(SupportBound, OverflowIsReported) {
  EXPECT_THROW(h_bound({1, 1, 1, 1, 5}), NumericError);
}

TEST(Ackermann, SmallValues) {
  const std::uint64_t expected[] = {2, 3, 5, 13, 65533};
  for (std::uint64_t i = 0; i <= 4; ++i) {
    const auto r = ackermann(i, 1);
    ASSERT_FALSE(r.too_large());
    EXPECT_EQ(*r.value, BigInt(expected[i]));
  }
}

TEST(Ackermann, MatchesLiteralRecursion) {
  for (std::uint64_t i = 0; i <= 3; ++i) {
    for (std::uint64_t k = 0; k <= 4; ++k) {
      EXPECT_EQ(*ackermann(i, k).value, BigInt(testkit::ackermann_literal(i, k)));
    }
  }
}

TEST(Ackermann, DefiningClausesHold) {
  for (std::uint64_t i = 1; i <= 3; ++i) {
    EXPECT_EQ(*ackermann(i, 0).value, *ackermann(i - 1, 1).value);
    for (std::uint64_t k = 1; k <= 4; ++k) {
      const BigInt inner = *ackermann(i, k - 1).value;
      EXPECT_EQ(*ackermann(i, k).value,
                *ackermann(i - 1, static_cast<std::uint64_t>(inner)).value);
    }
  }
}

TEST(Ackermann, TowerIsTooLarge) {
  const auto r = ackermann(5, 1);
  EXPECT_TRUE(r.too_large());
  EXPECT_NE(r.note.find("65536"), std::string::npos);
}

TEST(Khovanskii, ExactValues) {
  EXPECT_EQ(khovanskii_bound(1), BigInt(8));
  EXPECT_EQ(khovanskii_bound(2), BigInt(5184));
  EXPECT_EQ(khovanskii_bound(3), BigInt(134217728));
  EXPECT_EQ(khovanskii_bound(4), BigInt("104857600000000"));
  EXPECT_EQ(khovanskii_bound(5), BigInt("2127464435172803346432"));
  EXPECT_THROW(khovanskii_bound(0), PreconditionError);
}

TEST(BihanSottile, CeilingValues) {
  EXPECT_EQ(bihan_sottile_bound(1), BigInt(3));
  EXPECT_EQ(bihan_sottile_bound(2), BigInt(21));
  EXPECT_EQ(bihan_sottile_bound(3), BigInt(562));
  EXPECT_EQ(bihan_sottile_bound(4), BigInt(42554));
}

TEST(BihanSottile, AgreesWithFloatingPointEvaluation) {
  const long double e2 = std::exp(2.0L);
  for (std::size_t n = 1; n <= 8; ++n) {
    const long double v = (e2 + 3) / 4 * std::pow(2.0L, n * (n - 1) / 2.0L) *
                          std::pow(static_cast<long double>(n), static_cast<long double>(n));
    EXPECT_EQ(bihan_sottile_bound(n), BigInt(static_cast<unsigned long long>(std::ceil(v))))
        << "n = " << n;
  }
}

TEST(Bounds, StrictlyIncreasing) {
  for (std::size_t n = 1; n < 10; ++n) {
    EXPECT_LT(khovanskii_bound(n), khovanskii_bound(n + 1));
    EXPECT_LT(bihan_sottile_bound(n), bihan_sottile_bound(n + 1));
  }
}

TEST(Bounds, SignificantFigures) {
  EXPECT_EQ(significant_figures(BigInt(134217728), 2), (std::pair<std::string, int>{"1.3", 8}));
  EXPECT_EQ(significant_figures(BigInt(995), 2), (std::pair<std::string, int>{"1.0", 3}));
  EXPECT_EQ(format_magnitude(BigInt(5184)), "5184");
  EXPECT_EQ(format_magnitude(bihan_sottile_bound(5)), "~8.3e6");
}

TEST(Bounds, TableRows) {
  const auto rows = bounds_table(5, [](std::size_t n) -> std::optional<std::size_t> {
    const std::size_t known[] = {2, 3, 5};
    if (n <= 3) return known[n - 1];
    return std::nullopt;
  });
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(*rows[0].dd_bound, 2u);
  EXPECT_EQ(rows[0].khovanskii, BigInt(8));
  EXPECT_EQ(rows[0].bihan_sottile, BigInt(3));
  EXPECT_EQ(*rows[0].fp_exact, 2u);
  EXPECT_EQ(*rows[2].dd_bound, 5u);
  EXPECT_EQ(format_magnitude(rows[2].khovanskii), "~1.3e8");
  EXPECT_EQ(rows[2].bihan_sottile, BigInt(562));
  EXPECT_FALSE(rows[4].dd_bound.has_value());
  EXPECT_EQ(*rows[4].conjectured.value, BigInt(65533));
  EXPECT_FALSE(rows[4].fp_exact.has_value());

  const std::string md = bounds_markdown(rows);
  EXPECT_NE(md.find("| 5 | 65533 (conjectured) | ~2.1e21 | ~8.3e6 | ? |"), std::string::npos) << md;
}
