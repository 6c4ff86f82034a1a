#include <gtest/gtest.h>

#include "ccr/curve.hpp"
#include "ccr/formulas.hpp"
#include "ccr/symbolic.hpp"

namespace ccr::symbolic {
namespace {

Poly P(Var x) { return Poly::var(x); }

TEST(MultiPoly, ExactDivide) {
  const Poly a = P(E4) * P(E4) - P(E6) * P(E6);
  EXPECT_EQ(exact_divide(a, P(E4) - P(E6)), P(E4) + P(E6));
  EXPECT_THROW(exact_divide(a + 1, P(E4) - P(E6)), NotDivisible);
}

TEST(MultiPoly, CoefficientOf) {
  const Poly a = 3 * P(E2) * P(E2) * P(D4) + P(E2) * P(DS);
  EXPECT_EQ(a.coefficient(E2, 1), P(DS));
  EXPECT_EQ(a.coefficient(E2, 2), 3 * P(D4));
  EXPECT_EQ(a.degree(E2), 2);
}

TEST(MultiPoly, Content) {
  EXPECT_EQ(content(6 * P(E4) + 9 * P(E6)), 3);
  EXPECT_EQ(content(Rational(1, 2) * P(E4) + Rational(1, 3) * P(E6)), Rational(1, 6));
}

TEST(RationalExpression, CrossMultipliedEquality) {
  const Expr x = v(E4), y = v(E6);
  EXPECT_EQ((x * x - y * y) / (x - y), x + y);
  EXPECT_NE(x / y, y / x);
  EXPECT_TRUE((x / (x * y)).free_of(E4));
}

void expect_passed(const Derivation& d) {
  EXPECT_TRUE(d.passed()) << d.report();
  EXPECT_NO_THROW(d.require());
}

TEST(Derivation, E4t) {
  const Derivation d = derive_e4t();
  expect_passed(d);
  // The E2 coefficient is H_U times a single monomial.
  EXPECT_NE(d.report().find("quotient_terms=1"), std::string::npos);
}

TEST(Derivation, E6t) { expect_passed(derive_e6t()); }
TEST(Derivation, AtkinSigma) { expect_passed(derive_atkin_sigma()); }
TEST(Derivation, AtkinE4t) { expect_passed(derive_atkin_e4t()); }

TEST(Derivation, Deterministic) {
  EXPECT_EQ(derive_e4t().result.to_string(), derive_e4t().result.to_string());
  EXPECT_THROW(run("nope"), InvalidArgument);
}

// ---------------------------------------------------------------------------
// Numeric points over F_1009

const Modulus& f1009() {
  static const Modulus m = make_modulus(1009);
  return m;
}

FieldElement fe(long x) { return FieldElement(f1009(), x); }

std::array<FieldElement, 17> point(long ell, const CurveParams& c, Var root, const FieldElement& r,
                                   const DerivativeBundle& b) {
  std::array<FieldElement, 17> a;
  a.fill(fe(0));
  a[ELL] = fe(ell);
  a[E4] = c.e4();
  a[E6] = c.e6();
  a[root] = r;
  const bool u = root == SIGMA;
  a[u ? DS : DF] = b.du_s;
  a[u ? DS4 : DF4] = b.du_s4;
  a[u ? DS6 : DF6] = b.du_s6;
  a[D4] = b.du_4;
  a[D6] = b.du_6;
  a[D46] = b.du_46;
  return a;
}

TEST(NumericPoint, Ell5) {
  const auto curve = make_curve(f1009(), 1, 3);
  const auto b = derivative_bundle(build(PolyKind::U, 5), curve, fe(584));
  const auto a = point(5, curve, SIGMA, fe(584), b);
  const FieldElement e4t = derive_e4t().result.evaluate(a);
  EXPECT_EQ(e4t, 497);
  EXPECT_EQ(-3 * fe(625) * e4t, 441);
  const FieldElement e6t = derive_e6t().result.evaluate(a);
  EXPECT_EQ(-2 * fe(15625) * e6t, 997);
}

TEST(NumericPoint, Ell11Atkin) {
  const auto curve = make_curve(f1009(), 1, 3);
  const auto b = derivative_bundle(build(PolyKind::Ua, 11), curve, fe(65));
  auto a = point(11, curve, F, fe(65), b);
  const FieldElement sigma = derive_atkin_sigma().result.evaluate(a);
  EXPECT_EQ(sigma, 75);
  EXPECT_EQ(derive_atkin_e4t().result.evaluate(a), 532);
}

}  // namespace
}  // namespace ccr::symbolic
