#include "hyperham/constructions.hpp"
#include "hyperham/errors.hpp"
#include "hyperham/thresholds.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hyperham;

namespace {

Rational barrier_oracle(int k, int d, int ell) {
  Rational p = 1;
  for (int i = 0; i < k - d; ++i) p *= Rational(2 * (k - ell) - 1, 2 * (k - ell));
  return 1 - p;
}

}  // namespace

TEST(BarrierLimit, Examples) {
  EXPECT_EQ(space_barrier_limit(5, 2, 2), Rational(91, 216));
  EXPECT_EQ(space_barrier_limit(3, 2, 1), Rational(1, 4));
  for (int k = 3; k <= 9; ++k) {
    for (int ell = 1; ell < k; ++ell) EXPECT_EQ(space_barrier_limit(k, k - 1, ell), Rational(1, 2 * (k - ell)));
  }
  EXPECT_THROW(space_barrier_limit(5, 5, 2), DomainError);
  EXPECT_THROW(space_barrier_limit(5, 2, 5), DomainError);
}

TEST(BarrierLimitProperty, MatchesProductOracle) {
  for (int k = 2; k <= 10; ++k) {
    for (int ell = 1; ell < k; ++ell) {
      for (int d = 1; d < k; ++d) EXPECT_EQ(space_barrier_limit(k, d, ell), barrier_oracle(k, d, ell));
    }
  }
}

TEST(Thm11, Examples) {
  EXPECT_EQ(thm11_value(4, 2), Rational(1, 2));
  EXPECT_EQ(thm11_value(3, 1), Rational(1, 4));
  EXPECT_EQ(thm11_value(3, 2), Rational(1, 2));
  EXPECT_EQ(thm11_value(5, 1), Rational(1, 8));
  EXPECT_THROW(thm11_value(3, 3), DomainError);
}

TEST(Thm11Property, EqualsBarrierAtTopDegreeWhenNotDivisible) {
  int checked = 0;
  for (int k = 3; k <= 10; ++k) {
    for (int ell = 1; 2 * ell < k; ++ell) {
      if (k % (k - ell) == 0) continue;
      EXPECT_EQ(thm11_value(k, ell), space_barrier_limit(k, k - 1, ell)) << k << " " << ell;
      ++checked;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(UpperBound, Examples) {
  const auto a = upper_bound_thm(5, 2, 2, Rational(91, 216));
  EXPECT_EQ(a.form, UpperForm::thm15);
  EXPECT_EQ(a.bound.kind, ThresholdValue::Kind::rational);
  EXPECT_EQ(a.bound.value, Rational(91, 216));
  // 91/216 against 2^(-3/2): 91^2 * 8 = 66248 > 216^2 = 46656
  EXPECT_EQ(compare_two_power(Rational(91, 216), 3, 2), 1);
  EXPECT_GT(91 * 91 * 8, 216 * 216);

  const auto b = upper_bound_thm(5, 3, 2, Rational(0));
  EXPECT_EQ(b.form, UpperForm::thm14);
  EXPECT_EQ(b.bound.value, Rational(1, 3));

  EXPECT_THROW(upper_bound_thm(5, 1, 1, Rational(0)), RegimeError);
  EXPECT_THROW(upper_bound_thm(5, 2, 2, Rational(0), UpperForm::thm14), RegimeError);
  EXPECT_THROW(upper_bound_thm(4, 2, 2, Rational(0)), RegimeError);
}

TEST(UpperBound, SmallTGivesTwoPower) {
  const auto r = upper_bound_thm(7, 2, 2, Rational(1, 100));
  EXPECT_EQ(r.bound.kind, ThresholdValue::Kind::two_power);
  EXPECT_EQ(r.bound.num, 5);
  EXPECT_EQ(r.bound.den, 2);
  EXPECT_EQ(r.bound.text, "2^(-5/2)");
}

TEST(UpperBound, SymbolicWithoutT) {
  const auto r = upper_bound_thm(5, 2, 2, std::nullopt);
  EXPECT_EQ(r.bound.kind, ThresholdValue::Kind::symbolic);
  EXPECT_EQ(r.t_lower, Rational(91, 216));
  EXPECT_TRUE(r.bound.decimal.empty());
  EXPECT_EQ(known_t(5, 2, 2), Rational(91, 216));
  EXPECT_FALSE(known_t(5, 3, 2).has_value());
}

TEST(UpperBoundProperty, SandwichOverSweep) {
  for (int k = 3; k <= 10; ++k) {
    for (int ell = 1; 2 * ell < k; ++ell) {
      for (int d = ell; d < k; ++d) {
        if (d == ell && ell < 2) continue;
        const Rational low = space_barrier_limit(k, d, ell);
        for (const Rational t : {low, low + Rational(1, 7), Rational(1)}) {
          const auto u = upper_bound_thm(k, d, ell, t);
          if (u.bound.kind == ThresholdValue::Kind::rational) {
            EXPECT_GE(u.bound.value, low);
            EXPECT_GE(u.bound.value, t);
          } else {
            // 2^(-num/den) is the max, so it beats both
            EXPECT_LT(compare_two_power(low, u.bound.num, u.bound.den), 0);
            EXPECT_LT(compare_two_power(t, u.bound.num, u.bound.den), 0);
          }
        }
      }
    }
  }
}

TEST(TwoPower, DecimalAndComparison) {
  EXPECT_EQ(two_power_decimal(3, 2), "0.353553390593");
  EXPECT_EQ(two_power_decimal(1, 2), "0.707106781187");
  EXPECT_EQ(two_power_decimal(2, 1), "0.250000000000");
  EXPECT_EQ(compare_two_power(Rational(1, 4), 2, 1), 0);
  EXPECT_EQ(compare_two_power(Rational(1, 2), 1, 2), -1);
  EXPECT_EQ(compare_two_power(Rational(3, 4), 1, 2), 1);
  EXPECT_EQ(compare_two_power(Rational(0), 1, 2), -1);
  // 0.3535 < 2^(-3/2) < 0.3536
  EXPECT_EQ(compare_two_power(Rational(3535, 10000), 3, 2), -1);
  EXPECT_EQ(compare_two_power(Rational(3536, 10000), 3, 2), 1);
}

TEST(Cor16, Examples) {
  // d = ell sits outside the strict upper end of the window
  const auto c = cor16_check(5, 2, 2);
  EXPECT_FALSE(c.window);
  EXPECT_FALSE(c.certified);
  EXPECT_EQ(c.barrier, Rational(91, 216));
  EXPECT_TRUE(c.barrier_above_third);
  EXPECT_GT(91 * 3, 216);
  const auto w = cor16_check(12, 2, 1);
  EXPECT_TRUE(w.window);
  EXPECT_TRUE(w.certified);
  EXPECT_NE(w.chain.find("> 1/3"), std::string::npos);
  EXPECT_FALSE(cor16_check(7, 3, 3).window);
}

TEST(Cor16Property, WindowImpliesAboveThird) {
  int in_window = 0;
  for (int k = 2; k <= 12; ++k) {
    for (int ell = 1; ell < k; ++ell) {
      for (int d = 1; d < k; ++d) {
        const auto c = cor16_check(k, d, ell);
        const bool window = 100 * (k - d) >= 82 * (k - ell) && d > ell;
        EXPECT_EQ(c.window, window);
        if (window) {
          ++in_window;
          EXPECT_GT(barrier_oracle(k, d, ell), Rational(1, 3)) << k << " " << d << " " << ell;
          EXPECT_TRUE(c.certified);
        }
        if (d == ell) EXPECT_FALSE(c.window);
      }
    }
  }
  EXPECT_GT(in_window, 5);
}

TEST(Convergence, Examples) {
  const auto rows = convergence_table(3, 2, 1, {8, 16, 32});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(rows[0].gap, rows[1].gap);
  EXPECT_GT(rows[1].gap, rows[2].gap);
  for (const auto& r : rows) EXPECT_EQ(r.limit, Rational(1, 4));
  // minimal n: a = 0
  EXPECT_EQ(convergence_table(3, 2, 1, {2})[0].ratio, 0);
  // 36 / C(12,3)
  const auto five = convergence_table(5, 2, 2, {12});
  EXPECT_EQ(five[0].ratio, Rational(36, oracle::choose(12, 3)));
  EXPECT_EQ(five[0].gap, Rational(91, 216) - Rational(9, 55));
  EXPECT_THROW(convergence_table(3, 2, 1, {9}), DomainError);
}

TEST(ConvergenceProperty, GapShrinksAlongDoublingToTwoHundred) {
  std::vector<int> ns;
  for (int n = 4; n <= 200; n *= 2) ns.push_back(n);
  ns.push_back(200);
  for (int d = 1; d <= 2; ++d) {
    const auto rows = convergence_table(3, d, 1, ns);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_LT(rows[i].gap, rows[i - 1].gap) << "n " << rows[i].n;
      EXPECT_GE(rows[i].gap, 0);
    }
    EXPECT_LT(rows.back().gap, Rational(1, 50));
  }
}
