#include "rpm/numerics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <thread>

namespace {

using namespace rpm;

const PrecisionContext kCtx{};

TEST(PrecisionContext, BitsFollowDecimalDigits) {
  EXPECT_EQ(PrecisionContext({120, 20}).bits(), 407);  // ceil(120 log2 10) + 8
  EXPECT_EQ(PrecisionContext({40, 20}).bits(), 141);
  EXPECT_EQ(PrecisionContext({120, 20}).doubled(), PrecisionContext({240, 20}));
  EXPECT_EQ(kCtx.convergence_digits(), 100);
}

TEST(PrecisionContext, OutputNeedsGuardDigits) {
  EXPECT_NO_THROW(kCtx.require_output(100));
  EXPECT_THROW(kCtx.require_output(101), NumericError);
  EXPECT_THROW(kCtx.require_output(0), NumericError);
  EXPECT_THROW(static_cast<void>(PrecisionContext({0, 20}).bits()), NumericError);
}

TEST(RenderDecimal, Basics) {
  EXPECT_EQ(render_decimal(BigReal(1, kCtx), 3), "1.00");
  EXPECT_EQ(render_decimal(BigReal(1, kCtx) / 3, 5), "0.33333");
  EXPECT_EQ(render_decimal(BigReal(-2, kCtx) / 3, 4), "-0.6667");
  EXPECT_EQ(render_decimal(BigReal(0, kCtx), 3), "0.00");
  EXPECT_EQ(render_decimal(BigReal(12345, kCtx), 5), "12345");
  EXPECT_EQ(render_decimal(BigReal(12345, kCtx), 3), "1.23e4");
  EXPECT_EQ(render_decimal(BigReal::parse("0.00125", kCtx), 3), "0.00125");
  EXPECT_EQ(render_decimal(BigReal::parse("1.5e-9", kCtx), 2), "1.5e-9");
}

TEST(RenderDecimal, TiesGoToEven) {
  // Exactly representable binary ties.
  EXPECT_EQ(render_decimal(BigReal::parse("0.125", kCtx), 2), "0.12");
  EXPECT_EQ(render_decimal(BigReal::parse("0.375", kCtx), 2), "0.38");
  EXPECT_EQ(render_decimal(BigReal::parse("2.5", kCtx), 1), "2");
  EXPECT_EQ(render_decimal(BigReal::parse("3.5", kCtx), 1), "4");
  EXPECT_EQ(render_decimal(BigReal::parse("-2.5", kCtx), 1), "-2");
}

TEST(RenderDecimal, RejectsBadInput) {
  EXPECT_THROW(render_decimal(BigReal(1, kCtx), 0), NumericError);
  BigReal inf(kCtx);
  mpfr_set_inf(inf.get_mutable(), 1);
  EXPECT_THROW(render_decimal(inf, 5), NumericError);
}

TEST(RenderDecimal, ReparseWithinHalfUlp) {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const BigReal x = BigReal(rng.rational(1000000, 997), kCtx) * BigReal::pow10(rng.integer(-8, 8), kCtx);
    const int digits = rng.integer(1, 60);
    const std::string text = render_decimal(x, digits);
    const BigReal back = BigReal::parse(text, kCtx);
    if (x.is_zero()) continue;
    BigReal lg(kCtx);
    mpfr_log10(lg.get_mutable(), x.abs().get(), MPFR_RNDN);
    const long e = static_cast<long>(std::floor(lg.to_double()));
    const BigReal half_ulp = BigReal::pow10(e - digits + 1, kCtx) / 2;
    // The reparse itself rounds at working precision.
    EXPECT_LE((back - x).abs(), half_ulp + x.abs() * BigReal::pow10(-110, kCtx)) << text;
  }
}

TEST(BigReal, ParseForms) {
  EXPECT_EQ(BigReal::parse("7/4", kCtx), BigReal::parse("1.75", kCtx));
  EXPECT_EQ(BigReal::parse("-3e-2", kCtx), BigReal(-3, kCtx) / 100);
  EXPECT_THROW(BigReal::parse("", kCtx), NumericError);
  EXPECT_THROW(BigReal::parse("1.2.3", kCtx), NumericError);
  EXPECT_THROW(BigReal::parse("1/0", kCtx), NumericError);
  EXPECT_THROW(BigReal::parse("abc", kCtx), NumericError);
}

TEST(BigReal, ArithmeticAndComparisons) {
  const BigReal a = BigReal(3, kCtx);
  const BigReal b = BigReal(4, kCtx);
  EXPECT_EQ((a * a + b * b).sqrt(), BigReal(5, kCtx));
  EXPECT_LT(a, b);
  EXPECT_EQ(max(a, b), b);
  EXPECT_EQ(min(a, b), a);
  EXPECT_EQ(-a + 3L, BigReal(0, kCtx));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((BigReal(0, kCtx)).exp(), BigReal(1, kCtx));
}

TEST(BigReal, ExplicitPrecisionPerValue) {
  const PrecisionContext low{30, 10};
  const BigReal third_low = BigReal(1, low) / 3;
  const BigReal third_high = BigReal(1, kCtx) / 3;
  EXPECT_EQ(third_low.precision(), low.bits());
  EXPECT_EQ(third_high.precision(), kCtx.bits());
  EXPECT_LT(agreeing_digits(third_low, third_high, 200), 40);
  EXPECT_GE(agreeing_digits(third_low, third_high, 200), 30);
}

TEST(BigReal, ContextsDoNotInterfereAcrossThreads) {
  std::string a, b;
  std::thread t1([&] { a = render_decimal(BigReal(1, PrecisionContext{30, 10}) / 7, 25); });
  std::thread t2([&] { b = render_decimal(BigReal(1, PrecisionContext{300, 10}) / 7, 25); });
  t1.join();
  t2.join();
  EXPECT_EQ(a, b);
}

TEST(Dual, JetRules) {
  const DualReal e = seed(BigReal(3, kCtx));
  const DualReal c = constant_dual(BigReal(2, kCtx));
  const DualReal p = e * e * c + e;  // 2E^2 + E -> 4E + 1
  EXPECT_EQ(p.primal, BigReal(21, kCtx));
  EXPECT_EQ(p.tangent, BigReal(13, kCtx));
  const DualReal q = c / e;  // 2/E -> -2/E^2
  EXPECT_EQ(q.tangent * 9, BigReal(-2, kCtx));
  EXPECT_TRUE(c.tangent.is_zero());
  EXPECT_EQ(e.tangent, BigReal(1, kCtx));
}

TEST(DualEvalCheck, MatchesCentralDifferences) {
  const BigReal h = BigReal::pow10(-kCtx.working_digits / 3, kCtx);
  const auto square = [](const DualReal& x) { return x * x; };
  const DualCheck c1 = dual_eval_check(square, BigReal(3, kCtx), h);
  EXPECT_EQ(c1.tangent, BigReal(6, kCtx));
  EXPECT_GE(agreeing_digits(c1.tangent, c1.central_difference, 200), 2 * kCtx.working_digits / 3 - 2);

  const auto identity = [](const DualReal& x) { return x; };
  EXPECT_EQ(dual_eval_check(identity, BigReal::parse("-7.25", kCtx), h).tangent, BigReal(1, kCtx));

  const auto rational = [](const DualReal& x) {
    return (x * x * x - x * 2L) / (x * x + constant_like(x, 1));
  };
  oracle::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const BigReal e(rng.rational(50, 7), kCtx);
    const DualCheck c = dual_eval_check(rational, e, h);
    EXPECT_GE(agreeing_digits(c.tangent, c.central_difference, 200), kCtx.working_digits / 2);
  }
}

TEST(AgreeingDigits, Relative) {
  EXPECT_EQ(agreeing_digits(BigReal(1, kCtx), BigReal(1, kCtx), 50), 50);
  EXPECT_EQ(agreeing_digits(BigReal::parse("1.0001", kCtx), BigReal(1, kCtx), 50), 4);
  EXPECT_EQ(agreeing_digits(BigReal(1, kCtx), BigReal(2, kCtx), 50), 0);
}

}  // namespace
