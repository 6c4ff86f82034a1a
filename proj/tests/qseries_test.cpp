#include <gtest/gtest.h>

#include <random>

#include "ccr/qseries.hpp"

using namespace ccr;

namespace {

PowerSeries series(std::vector<long> c, long lead = 0, int step = 1) {
  std::vector<Rational> v(c.begin(), c.end());
  return PowerSeries(step, lead, std::move(v));
}

void expect_zero_to(const PowerSeries& s, long prec) {
  ASSERT_GE(s.abs_precision(), prec);
  for (long n = s.lead(); n < prec; ++n) EXPECT_EQ(s.coeff(n), 0) << "coefficient q^" << n;
}

PowerSeries random_series(std::mt19937_64& rng, std::size_t n, long lead) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 7);
  std::vector<Rational> v(n);
  for (auto& c : v) {
    c = Rational(num(rng), den(rng));
    c.canonicalize();
  }
  v[0] = Rational(den(rng));
  return PowerSeries(1, lead, std::move(v));
}

}  // namespace

TEST(SeriesArith, DifferenceOfSquares) {
  const auto a = series({1, 1}, 0).truncated(2);
  const auto onePlus = PowerSeries(1, 0, {1, 1, 0});
  const auto oneMinus = PowerSeries(1, 0, {1, -1, 0});
  const auto p = onePlus * oneMinus;
  EXPECT_EQ(p, series({1, 0, -1}));
  EXPECT_EQ(a.abs_precision(), 2);
}

TEST(SeriesArith, GeometricSeries) {
  const auto inv = PowerSeries(1, 0, {1, -1, 0, 0}).inverse();
  EXPECT_EQ(inv, series({1, 1, 1, 1}));
  EXPECT_EQ(inv.pow(-1), PowerSeries(1, 0, {1, -1, 0, 0}));
}

TEST(SeriesArith, DivisionByZeroSeries) {
  EXPECT_THROW(PowerSeries::zero(5).inverse(), DivisionByZero);
  EXPECT_THROW(series({1, 2}) / PowerSeries::zero(3), DivisionByZero);
}

TEST(SeriesArith, ReadingPastPrecisionUnderflows) {
  const auto s = series({1, 2, 3});
  EXPECT_THROW(s.coeff(3), PrecisionUnderflow);
  EXPECT_THROW(s.truncated(4), PrecisionUnderflow);
  EXPECT_EQ(s.coeff(-1), 0);
}

TEST(SeriesArith, PrecisionIsTrackedThroughProducts) {
  const auto a = series({1, 1, 1, 1, 1}, 2);   // known mod q^7
  const auto b = series({3, 1, 4}, -1);        // known mod q^2
  const auto p = a * b;
  EXPECT_EQ(p.lead(), 1);
  EXPECT_EQ(p.precision(), 3u);
  const auto s = a + b;
  EXPECT_EQ(s.lead(), -1);
  EXPECT_EQ(s.abs_precision(), 2);
}

TEST(SeriesArith, JDeltaNumeratorLeadingTerms) {
  // E4^3 - E6^2 = 1728 q - 41472 q^2 + ...
  const auto e4 = expand(FormName::e4(), 3);
  const auto e6 = expand(FormName::e6(), 3);
  const auto d = e4.pow(3) - e6 * e6;
  EXPECT_EQ(d.lead(), 1);
  EXPECT_EQ(d.coeff(1), 1728);
  EXPECT_EQ(d.coeff(2), -41472);
}

TEST(SeriesArith, MixedStepsAlignToLcm) {
  const auto a = PowerSeries(2, 0, {1, 1, 0, 0});        // 1 + q^(1/2) + O(q^2)
  const auto b = PowerSeries(3, 0, {1, 1, 0, 0, 0, 0});  // 1 + q^(1/3) + O(q^2)
  const auto s = a * b;
  EXPECT_EQ(s.step(), 6);
  EXPECT_EQ(s.coeff(0), 1);
  EXPECT_EQ(s.coeff(2), 1);
  EXPECT_EQ(s.coeff(3), 1);
  EXPECT_EQ(s.coeff(5), 1);
  EXPECT_EQ(s.coeff(4), 0);
  EXPECT_EQ(s.abs_precision(), 12);
}

TEST(SeriesArith, RandomProductsMatchNaiveConvolution) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_series(rng, 12, trial % 3 - 1);
    const auto b = random_series(rng, 9, trial % 4);
    const auto p = a * b;
    ASSERT_EQ(p.lead(), a.lead() + b.lead());
    ASSERT_EQ(p.precision(), 9u);
    for (std::size_t k = 0; k < 9; ++k) {
      Rational want = 0;
      for (std::size_t i = 0; i <= k; ++i) want += a.coefficients()[i] * b.coefficients()[k - i];
      EXPECT_EQ(p.coefficients()[k], want);
    }
    const auto one = a * a.inverse();
    EXPECT_EQ(one, PowerSeries::constant(1, 12));
    EXPECT_EQ((a + b) * b, a * b + b * b);
  }
}

TEST(Qdiff, MonomialRule) {
  EXPECT_EQ(qdiff(PowerSeries::monomial(1, 2, 5)), PowerSeries::monomial(2, 2, 5));
  const auto d = qdiff(PowerSeries::constant(1, 4));
  EXPECT_TRUE(d.is_zero());
  EXPECT_EQ(d.abs_precision(), 4);
}

TEST(Qdiff, FractionalStepUsesQDerivative) {
  // x = q^(1/5): q d/dq x^3 = (3/5) x^3
  const auto d = qdiff(PowerSeries::monomial(1, 3, 6, 5));
  EXPECT_EQ(d.coeff(3), Rational(3, 5));
}

TEST(Qdiff, RamanujanE2) {
  const auto e2 = expand(FormName::e2(), 30);
  const auto e4 = expand(FormName::e4(), 30);
  EXPECT_EQ(qdiff(e2), (e2 * e2 - e4) / Rational(12));
}

TEST(Expand, E4Coefficients) {
  EXPECT_EQ(expand(FormName::e4(), 3), series({1, 240, 2160}));
}

TEST(Expand, DeltaAndSigma1) {
  EXPECT_EQ(expand(FormName::delta(), 3), series({1, -24}, 1));
  const auto s = expand(FormName::sigma1(5), 2);
  EXPECT_EQ(s.coeff(0), 10);
  // (5/2)(5(1 - 24 q^5...) - (1 - 24 q)) at q^1 is (5/2)(24) = 60
  EXPECT_EQ(s.coeff(1), 60);
}

TEST(Expand, JHasSimplePole) {
  const auto j = expand(FormName::j(), 3);
  EXPECT_EQ(j.lead(), -1);
  EXPECT_EQ(j.abs_precision(), 3);
  EXPECT_EQ(j.coeff(-1), 1);
  EXPECT_EQ(j.coeff(0), 744);
  EXPECT_EQ(j.coeff(1), 196884);
  EXPECT_EQ(j.coeff(2), 21493760);
}

TEST(Expand, EtaProductNeedsElevenModTwelve) {
  EXPECT_THROW(expand(FormName::eta_squared_product(13), 5), InvalidArgument);
  EXPECT_THROW(expand(FormName::f(1), 5), InvalidArgument);
  const auto f = expand(FormName::eta_squared_product(11), 6);
  EXPECT_EQ(f.lead(), 1);
  EXPECT_EQ(f.coeff(1), 1);
  EXPECT_EQ(f.coeff(2), -2);
}

TEST(Expand, PentagonalMatchesDirectProduct) {
  EXPECT_EQ(euler_product(200), euler_product_direct(200));
}

TEST(Expand, EtaProductMatchesDefinitionWithDirectProducts) {
  for (int ell : {11, 23}) {
    const long prec = 40;
    const long shift = (ell + 1) / 12;
    const auto p = euler_product_direct(prec);
    const auto pl = substitute_q_power(euler_product_direct(prec), ell).truncated(prec);
    const auto body = (p * p) * (pl * pl);
    const auto f = expand(FormName::eta_squared_product(ell), prec + shift);
    for (long n = 0; n < prec; ++n) EXPECT_EQ(f.coeff(n + shift), body.coeff(n));
  }
}

TEST(SubstituteQPower, Examples) {
  EXPECT_EQ(substitute_q_power(series({1, 1}), 3), series({1, 0, 0, 1, 0, 0}));
  // q^-1 + 744 -> q^-2 + 744
  const auto j = series({1, 744}, -1);
  const auto s = substitute_q_power(j, 2);
  EXPECT_EQ(s.lead(), -2);
  EXPECT_EQ(s.coeff(-2), 1);
  EXPECT_EQ(s.coeff(-1), 0);
  EXPECT_EQ(s.coeff(0), 744);
  const auto e2 = substitute_q_power(expand(FormName::e2(), 3), 2);
  EXPECT_EQ(e2, series({1, 0, -24, 0, -72, 0}));
}

TEST(ExtractProgression, Examples) {
  // x + x^5 + 2 x^10 with x = q^(1/5)
  std::vector<Rational> v(11);
  v[1] = 1;
  v[5] = 1;
  v[10] = 2;
  const auto e = extract_arithmetic_progression(PowerSeries(5, 0, v), 5);
  EXPECT_EQ(e.step(), 1);
  EXPECT_EQ(e.coeff(1), 5);
  EXPECT_EQ(e.coeff(2), 10);
  EXPECT_EQ(e.abs_precision(), 3);
  const auto c = extract_arithmetic_progression(PowerSeries::constant(1, 7, 7), 7);
  EXPECT_EQ(c, PowerSeries::constant(7, 1));
  EXPECT_THROW(extract_arithmetic_progression(PowerSeries::constant(1, 7, 3), 7), InvalidArgument);
}

TEST(ExtractProgression, MatchesRootOfUnitySumOnNegativeExponents) {
  // x^-3 + x^-2 + 4 x^0 + x^3, ell = 3: keeps x^-3, x^0, x^3
  const auto s = PowerSeries(3, -3, {1, 1, 0, 4, 0, 0, 1, 0});
  const auto e = extract_arithmetic_progression(s, 3);
  EXPECT_EQ(e.lead(), -1);
  EXPECT_EQ(e.coeff(-1), 3);
  EXPECT_EQ(e.coeff(0), 12);
  EXPECT_EQ(e.coeff(1), 3);
  EXPECT_EQ(e.abs_precision(), 2);
}

// The classical identities hold to precision 50.
class SeriesIdentities : public ::testing::Test {
 protected:
  static constexpr long kPrec = 50;
  PowerSeries e2 = expand(FormName::e2(), kPrec);
  PowerSeries e4 = expand(FormName::e4(), kPrec);
  PowerSeries e6 = expand(FormName::e6(), kPrec);
  PowerSeries delta = expand(FormName::delta(), kPrec + 1);
  PowerSeries j = expand(FormName::j(), kPrec);
};

TEST_F(SeriesIdentities, RamanujanSystem) {
  expect_zero_to(Rational(3) * qdiff(e4) - (e4 * e2 - e6), kPrec);
  expect_zero_to(Rational(2) * qdiff(e6) - (e6 * e2 - e4 * e4), kPrec);
  expect_zero_to(Rational(12) * qdiff(e2) - (e2 * e2 - e4), kPrec);
}

TEST_F(SeriesIdentities, JDelta) {
  expect_zero_to(delta - (e4.pow(3) - e6 * e6) / Rational(1728), kPrec);
  expect_zero_to(j * delta - e4.pow(3), kPrec);
  expect_zero_to((j - PowerSeries::constant(1728, kPrec)) * delta - e6 * e6, kPrec);
}

TEST_F(SeriesIdentities, FormJ) {
  expect_zero_to(qdiff(j) * delta + e4 * e4 * e6, kPrec);
  expect_zero_to(qdiff(delta) - e2 * delta, kPrec);
}

TEST_F(SeriesIdentities, Sigma1IsScaledF) {
  for (int ell : {3, 5, 7, 11, 13}) {
    EXPECT_EQ(expand(FormName::sigma1(ell), kPrec), Rational(-ell, 2) * expand(FormName::f(ell), kPrec));
  }
}

TEST(Determinism, RepeatedExpansionIsBitIdentical) {
  EXPECT_EQ(expand(FormName::j(), 40), expand(FormName::j(), 40));
  EXPECT_EQ(expand(FormName::eta_squared_product(23), 40), expand(FormName::eta_squared_product(23), 40));
}
