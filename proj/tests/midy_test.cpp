#include <gtest/gtest.h>

#include <vector>

#include "midy/midy.hpp"

namespace midy {
namespace {

Integer I(u64 v) { return Integer(v); }

TEST(BlockDecompose, OneFourteenthBaseFive) {
  const Expansion e = expand(1, 14, 5);

  const BlockDecomposition two = block_decompose(e, 2);
  EXPECT_EQ(two.k, 3U);
  EXPECT_EQ(two.blocks, (std::vector<Integer>{8, 116}));
  EXPECT_EQ(two.block_sum, 124);
  EXPECT_EQ(two.remainder_sum, 14);
  EXPECT_EQ(two.multiplier, Rational::reduced(1, 1));

  const BlockDecomposition three = block_decompose(e, 3);
  EXPECT_EQ(three.blocks, (std::vector<Integer>{1, 19, 16}));
  EXPECT_EQ(three.block_sum, 36);
  EXPECT_EQ(three.remainder_sum, 21);
  EXPECT_EQ(three.multiplier, Rational::reduced(3, 2));
  EXPECT_EQ(three.multiplier.str(), "3/2");
}

TEST(BlockDecompose, PaperSums) {
  EXPECT_EQ(block_decompose(expand(1, 69307, 10), 4).block_sum, 999);
  EXPECT_EQ(block_decompose(expand(1, 69307, 10), 6).block_sum, 198);
  const BlockDecomposition big = block_decompose(expand(1, 1316833, 10), 6);
  EXPECT_EQ(big.block_sum, 3857139);
  EXPECT_EQ(big.multiplier, Rational::reduced(27, 7));
  EXPECT_EQ(block_decompose(expand(1, 19, 10), 6).block_sum, 2997);
}

TEST(BlockDecompose, RejectsNonDivisor) {
  try {
    block_decompose(expand(1, 7, 10), 4);
    FAIL();
  } catch (const domain_error &e) {
    EXPECT_NE(std::string(e.what()).find("d must divide period length"),
              std::string::npos);
  }
}

TEST(IsMidy, PaperVerdicts) {
  const MidyVerdict v21 = is_midy(21, 10, 3);
  EXPECT_TRUE(v21.member);
  EXPECT_EQ(v21.gcd_value, 3U);
  EXPECT_EQ(v21.route, Route::modular_criterion);

  EXPECT_FALSE(is_midy(69307, 10, 2).member);
  EXPECT_TRUE(is_midy(69307, 10, 3).member);
  EXPECT_TRUE(is_midy(69307, 10, 6).member);
  EXPECT_FALSE(is_midy(1316833, 10, 6).member);
  EXPECT_FALSE(is_midy(803, 10, 2).member);
  for (u64 n : {7U, 13U, 21U, 77U})
    EXPECT_FALSE(is_midy(n, 10, 1).member);
}

TEST(IsMidy, GcdRoute) {
  const MidyVerdict v = is_midy(7, 10, 2);
  EXPECT_TRUE(v.member);
  EXPECT_EQ(v.route, Route::gcd_sufficiency);
  EXPECT_EQ(v.f_d_residue, 0U);
}

TEST(IsMidy, Errors) {
  EXPECT_THROW(is_midy(7, 10, 4), domain_error);
  EXPECT_THROW(is_midy(6, 10, 2), domain_error);
  EXPECT_THROW(is_midy(7, 10, 0), domain_error);
}

TEST(IsMidy, LargeDenominator) {
  // ord(10, 10^18 - 1) = 18 and F_2(10^9) = 10^9 + 1 < N.
  const u64 n = 999999999999999999ULL;
  const MidyVerdict v = is_midy(n, 10, 2);
  EXPECT_FALSE(v.member);
  EXPECT_EQ(v.f_d_residue, 1000000001U);
}

TEST(IsMidyBrute, Examples) {
  EXPECT_TRUE(is_midy_brute(7, 10, 2));
  EXPECT_FALSE(is_midy_brute(803, 10, 2));
  EXPECT_FALSE(is_midy_brute(14, 5, 3));
  EXPECT_TRUE(is_midy_brute(14, 5, 2));
}

TEST(VerdictFromDecomposition, DigitSumRoute) {
  const MidyVerdict v = verdict_from_decomposition(block_decompose(expand(1, 21, 10), 3));
  EXPECT_TRUE(v.member);
  EXPECT_EQ(v.route, Route::digit_sum_witness);
  EXPECT_FALSE(verdict_from_decomposition(block_decompose(expand(1, 14, 5), 3)).member);
}

TEST(Multiplier, Examples) {
  EXPECT_EQ(multiplier(expand(3, 7, 10), 3), Rational::reduced(2, 1));
  EXPECT_EQ(multiplier(expand(1, 69307, 10), 4), Rational::reduced(1, 1));
  EXPECT_EQ(multiplier(expand(1, 14, 5), 2), Rational::reduced(1, 1));
  EXPECT_THROW(multiplier(expand(1, 7, 10), 5), domain_error);
}

TEST(DigitComplement, Examples) {
  EXPECT_TRUE(digit_complement_check(expand(1, 7, 10)));
  EXPECT_FALSE(digit_complement_check(expand(1, 803, 10)));
  EXPECT_TRUE(digit_complement_check(expand(1, 121, 10)));
  EXPECT_TRUE(digit_complement_check(expand(1, 77, 10)));
  EXPECT_THROW(digit_complement_check(expand(1, 37, 10)), domain_error);
}

TEST(DigitComplement, EquivalentToUnitMultiplier) {
  for (u64 b : {2U, 3U, 5U, 10U, 16U}) {
    for (u64 n = 3; n <= 200; ++n) {
      if (gcd(n, b) != 1 || multiplicative_order(b, n) % 2 != 0)
        continue;
      for (u64 x = 1; x < n; ++x) {
        if (gcd(x, n) != 1)
          continue;
        const Expansion e = expand(x, n, b);
        const bool expected =
            is_midy(n, b, 2).member && multiplier(e, 2) == Rational::reduced(1, 1);
        ASSERT_EQ(digit_complement_check(e), expected) << x << "/" << n;
      }
    }
  }
}

TEST(ColumnSums, Examples) {
  EXPECT_EQ(column_sums(expand(1, 7, 10), 3), (std::vector<u64>{8, 19}));
  EXPECT_EQ(column_sums(expand(1, 7, 10), 2), (std::vector<u64>{9, 9, 9}));
  EXPECT_EQ(column_sums(expand(1, 14, 5), 2), (std::vector<u64>{4, 4, 4}));
}

TEST(Identity, BlockSumTimesN) {
  for (u64 b : {2U, 3U, 10U, 16U}) {
    for (u64 n = 2; n <= 100; ++n) {
      if (gcd(n, b) != 1)
        continue;
      const u64 order = multiplicative_order(b, n);
      for (u64 x = 1; x < n; ++x) {
        if (gcd(x, n) != 1)
          continue;
        const Expansion e = expand(x, n, b);
        for (u64 d : divisors(order)) {
          const BlockDecomposition dec = block_decompose(e, d);
          const Integer bk =
              boost::multiprecision::pow(Integer(b), static_cast<unsigned>(dec.k)) - 1;
          ASSERT_EQ(dec.block_sum * n, dec.remainder_sum * bk);
          ASSERT_GT(dec.remainder_sum, 0);
          ASSERT_LT(dec.remainder_sum, I(d) * n);
          Integer sum = 0;
          for (const Integer &a : dec.blocks) {
            ASSERT_LT(a, bk + 1);
            sum += a;
          }
          ASSERT_EQ(sum, dec.block_sum);
        }
      }
    }
  }
}

TEST(Routes, ThreeWayAgreementSmall) {
  for (u64 b : {2U, 3U, 5U, 10U, 16U}) {
    for (u64 n = 2; n <= 120; ++n) {
      if (gcd(n, b) != 1)
        continue;
      const u64 e = multiplicative_order(b, n);
      const std::vector<u64> ds = divisors(e);
      const std::vector<bool> brute = is_midy_brute_all(n, b, ds);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const MidyVerdict v = is_midy(n, b, ds[i]);
        ASSERT_EQ(v.member, brute[i]) << "N=" << n << " B=" << b << " d=" << ds[i];
        ASSERT_EQ(v.member, v.f_d_residue == 0);
        if (v.gcd_value == 1) {
          ASSERT_TRUE(v.member);
        }
        const MidyVerdict w =
            verdict_from_decomposition(block_decompose(expand(1, n, b), ds[i]));
        ASSERT_EQ(w.member, v.member);
      }
    }
  }
}

TEST(Cycles, SameCycleIffIndicesCongruent) {
  // The expansion started at x_s carries the d-cycle of x_s, which is the
  // cycle of x_t for exactly the t = s (mod k).
  const u64 n = 1316833, b = 10;
  const Expansion base = expand(1, n, b);
  for (u64 d : {4U, 6U, 9U}) {
    const u64 k = base.period_length / d;
    const Integer r1 = cycle_remainder_sum(base, d, 1);
    for (u64 s = 1; s <= base.period_length; ++s) {
      const Expansion shifted = expand(remainder_at(base, s), n, b);
      const Integer rs = block_decompose(shifted, d).remainder_sum;
      const bool same_cycle = (s - 1) % k == 0;
      if (same_cycle) {
        ASSERT_EQ(rs, r1) << "d=" << d << " s=" << s;
      }
      ASSERT_EQ(rs, cycle_remainder_sum(base, d, (s - 1) % k + 1));
    }
  }
}

} // namespace
} // namespace midy
