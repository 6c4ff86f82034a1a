#include <gtest/gtest.h>

#include <random>

#include "ccr/curve.hpp"
#include "ccr/field.hpp"
#include "ccr/modular_poly.hpp"

namespace ccr {
namespace {

const Modulus& f1009() {
  static const Modulus m = make_modulus(1009);
  return m;
}

FieldElement fe(long v) { return FieldElement(f1009(), v); }

TEST(PrimeModulus, RejectsSmallAndComposite) {
  EXPECT_THROW(make_modulus(3), InvalidArgument);
  EXPECT_THROW(make_modulus(2), InvalidArgument);
  EXPECT_THROW(make_modulus(1001), InvalidArgument);
  EXPECT_NO_THROW(make_modulus(Integer("115792089237316195423570985008687907853269984665640564039457584007908834671663")));
}

TEST(FieldElement, Arithmetic) {
  EXPECT_EQ(fe(1000) + fe(10), 1);
  EXPECT_EQ(fe(3) - fe(5), 1007);
  EXPECT_EQ(fe(-1).value(), 1008);
  EXPECT_EQ(fe(2).inverse() * 2, 1);
  EXPECT_EQ(FieldElement(f1009(), Rational(1, 3)) * 3, 1);
  EXPECT_THROW(fe(0).inverse(), DivisionByZero);
  EXPECT_EQ(fe(7).pow(1008), 1);
  EXPECT_EQ(fe(7).pow(-1), fe(7).inverse());
}

TEST(FieldElement, CountsMultiplications) {
  const Modulus m = make_modulus(101);
  const FieldElement a(m, 5L);
  m->reset_multiplications();
  const FieldElement b = a * a * a;
  EXPECT_EQ(b, 24);
  EXPECT_EQ(m->multiplications(), 2u);
}

TEST(UniPoly, GcdDivmodPowmod) {
  const Modulus& m = f1009();
  EXPECT_EQ(gcd(UniPoly(m, {-1, 0, 1}), UniPoly(m, {-1, 1})), UniPoly(m, {-1, 1}));
  const auto [q, r] = divmod(UniPoly(m, {0, 0, 0, 1}), UniPoly(m, {0, 1}));
  EXPECT_EQ(q, UniPoly(m, {0, 0, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_THROW(divmod(q, UniPoly(m)), DivisionByZero);

  const Modulus m5 = make_modulus(5);
  // X^5 = X (X^2)^2 = X (-1)^2 = X mod X^2 + 1
  EXPECT_EQ(powmod(UniPoly::x(m5), 5, UniPoly(m5, {1, 0, 1})), UniPoly::x(m5));
}

TEST(UniPoly, GcdIsMonic) {
  const Modulus& m = f1009();
  const UniPoly g = gcd(UniPoly(m, {-6, 0, 3}), UniPoly(m, {-4, 0, 2}));
  EXPECT_EQ(g, UniPoly(m, {-2, 0, 1}));
}

TEST(Roots, SquareRootOfMinusOne) {
  const Modulus& m = f1009();
  std::vector<FieldElement> brute;
  for (long r = 0; r < 1009; ++r)
    if ((fe(r) * fe(r) + 1).is_zero()) brute.push_back(fe(r));
  const auto rs = roots(UniPoly(m, {1, 0, 1}), 7);
  EXPECT_EQ(rs, brute);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0] + rs[1], 0);
}

TEST(Roots, SeedIndependentAndVerified) {
  const Modulus& m = f1009();
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldElement> c;
    for (int i = 0; i < 9; ++i) c.push_back(fe(static_cast<long>(rng() % 1009)));
    c.push_back(fe(1));
    const UniPoly f(m, c);
    const auto r1 = roots(f, 1), r2 = roots(f, 99);
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(static_cast<int>(r1.size()), count_roots(f));
    for (const auto& r : r1) EXPECT_TRUE(f(r).is_zero());
    EXPECT_TRUE(std::is_sorted(r1.begin(), r1.end()));
  }
}

TEST(Roots, ProductOfLinearFactors) {
  const Modulus& m = f1009();
  UniPoly f(m, {1});
  for (long r : {0, 1, 5, 77, 1008}) f = f * UniPoly(m, {-r, 1});
  f = f * UniPoly(m, {1, 0, 1});
  const auto rs = roots(f, 3);
  std::vector<long> values;
  for (const auto& r : rs) values.push_back(r.value().get_si());
  std::vector<long> expected{0, 1, 5, 77, 1008};
  for (long r = 0; r < 1009; ++r)
    if ((fe(r) * fe(r) + 1).is_zero()) expected.push_back(r);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(values, expected);
}

TEST(Sqrt, TonelliShanks) {
  for (long p : {1009L, 1013L, 65537L}) {
    const Modulus m = make_modulus(p);
    for (long a = 1; a < 200; ++a) {
      const auto r = sqrt(FieldElement(m, a));
      const bool residue = mpz_legendre(Integer(a).get_mpz_t(), Integer(p).get_mpz_t()) == 1;
      EXPECT_EQ(r.has_value(), residue);
      if (r) EXPECT_EQ(*r * *r, FieldElement(m, a));
    }
  }
}

TEST(Curve, JInvariantAndSingular) {
  const Modulus& m = f1009();
  EXPECT_THROW(make_curve(m, 0, 0), InvalidArgument);
  EXPECT_EQ(make_curve(m, 0, 1).j_invariant(), 0);
  EXPECT_EQ(make_curve(m, 1, 0).j_invariant(), 1728);
}

TEST(Specialize, U5AtExampleCurve) {
  const auto u5 = build(PolyKind::U, 5);
  const UniPoly s = specialize(u5, make_curve(f1009(), 1, 3));
  EXPECT_EQ(s, UniPoly(f1009(), {-720, -384, -80, 480, 20, 0, 1}));
  const auto rs = roots(s);
  EXPECT_NE(std::find(rs.begin(), rs.end(), fe(584)), rs.end());
}

TEST(Specialize, U5AtZeroCoefficients) {
  const auto u5 = build(PolyKind::U, 5);
  const UniPoly s = specialize(u5.in_basis(Basis::AB).terms.rescaled(Rational(-3), Rational(-2)), fe(0), fe(0));
  EXPECT_EQ(s, UniPoly(f1009(), {0, 0, 0, 0, 0, 0, 1}));
}

TEST(Specialize, Ua11Roots) {
  const UniPoly s = specialize(build(PolyKind::Ua, 11), make_curve(f1009(), 1, 3));
  EXPECT_EQ(roots(s), (std::vector<FieldElement>{fe(65), fe(333)}));
}

TEST(DerivativeBundle, U5Example) {
  const auto u5 = build(PolyKind::U, 5);
  const auto curve = make_curve(f1009(), 1, 3);
  const DerivativeBundle b = derivative_bundle(u5, curve, fe(584));
  EXPECT_EQ(b.u, 0);
  EXPECT_EQ(b.du_s, 905);
  EXPECT_EQ(b.du_4, 779);
  EXPECT_EQ(b.du_6, 140);
  EXPECT_THROW(derivative_bundle(u5, curve, fe(585)), NotARoot);
}

TEST(DerivativeBundle, BasisIndependent) {
  const auto u7 = build(PolyKind::U, 7);
  const auto curve = make_curve(f1009(), 2, 11);
  for (const auto& r : roots(specialize(u7, curve))) {
    const auto b1 = derivative_bundle(u7, curve, r);
    const auto b2 = derivative_bundle(u7.in_basis(Basis::AB), curve, r);
    EXPECT_EQ(b1.du_s4, b2.du_s4);
    EXPECT_EQ(b1.du_46, b2.du_46);
    // Chain rule against the AB partials: d/dE4 = -3 d/dA, d/dE6 = -2 d/dB.
    const TrivariatePoly ab = u7.in_basis(Basis::AB).terms;
    const auto eval_ab = [&](const TrivariatePoly& t) {
      return specialize(t, curve.a, curve.b)(r);  // slots (A, B) take raw values here
    };
    EXPECT_EQ(b1.du_4, -3 * eval_ab(ab.derivative(1)));
    EXPECT_EQ(b1.du_6, -2 * eval_ab(ab.derivative(2)));
    EXPECT_EQ(b1.du_46, 6 * eval_ab(ab.derivative(1).derivative(2)));
  }
}

TEST(DivisionPoly, InitialValues) {
  const auto curve = make_curve(f1009(), 1, 3);
  const Modulus& m = f1009();
  EXPECT_EQ(division_poly(-1, curve), UniPoly(m, {-1}));
  EXPECT_TRUE(division_poly(0, curve).is_zero());
  EXPECT_EQ(division_poly(1, curve), UniPoly(m, {1}));
  EXPECT_EQ(division_poly(2, curve), UniPoly(m, {1}));
  // 3X^4 + 6AX^2 + 12BX - A^2
  EXPECT_EQ(division_poly(3, curve), UniPoly(m, {-1, 36, 6, 0, 3}));
}

TEST(DivisionPoly, SymbolicF3F4) {
  TrivariatePoly f3, f4_printed;
  for (const auto& [e, c] : std::vector<std::pair<Exponent3, long>>{
           {{4, 0, 0}, 3}, {{2, 1, 0}, 6}, {{1, 0, 1}, 12}, {{0, 2, 0}, -1}})
    f3.add(e, c);
  for (const auto& [e, c] : std::vector<std::pair<Exponent3, long>>{{{6, 0, 0}, 1},
                                                                    {{4, 1, 0}, 5},
                                                                    {{3, 0, 1}, 20},
                                                                    {{2, 2, 0}, -5},
                                                                    {{1, 1, 1}, -4},
                                                                    {{0, 0, 2}, -8},
                                                                    {{0, 3, 0}, -1}})
    f4_printed.add(e, c);
  EXPECT_EQ(division_poly_symbolic(3), f3);
  // psi_4 = 2y f_4 with f_4 twice the sextic.
  EXPECT_EQ(division_poly_symbolic(4), Rational(2) * f4_printed);
}

TEST(DivisionPoly, Degrees) {
  const auto curve = make_curve(f1009(), 1, 3);
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(division_poly(n, curve).degree(), division_poly_degree(n)) << n;
}

TEST(DivisionPoly, WeightedHomogeneous) {
  for (int n = 1; n <= 9; ++n) {
    const TrivariatePoly f = division_poly_symbolic(n);
    EXPECT_EQ(f.degree(0), division_poly_degree(n));
    EXPECT_TRUE(is_weighted_homogeneous(f, division_poly_degree(n))) << n;
  }
}

TEST(DivisionPoly, SymbolicMatchesField) {
  const auto curve = make_curve(f1009(), 7, 19);
  for (int n = 1; n <= 9; ++n) {
    const TrivariatePoly f = division_poly_symbolic(n);
    // slots (x, A, B) at raw curve values
    EXPECT_EQ(specialize(f, curve.a, curve.b), division_poly(n, curve)) << n;
  }
}

struct Point {
  FieldElement x, y;
  bool inf = false;
};

Point add(const Point& p, const Point& q, const FieldElement& a) {
  if (p.inf) return q;
  if (q.inf) return p;
  FieldElement lambda;
  if (p.x == q.x) {
    if ((p.y + q.y).is_zero()) return {p.x, p.y, true};
    lambda = (3 * p.x * p.x + a) / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  const FieldElement x = lambda * lambda - p.x - q.x;
  return {x, lambda * (p.x - x) - p.y};
}

TEST(DivisionPoly, PointMultiplicationOracle) {
  // x([n]P) = x - psi_(n-1) psi_(n+1) / psi_n^2 with psi_n = f_n or 2y f_n.
  const Modulus& m = f1009();
  const auto curve = make_curve(m, 1, 3);
  std::vector<Point> points;
  for (long x = 2; points.size() < 4; ++x) {
    const FieldElement fx(m, x);
    const auto y = sqrt(fx * fx * fx + curve.a * fx + curve.b);
    if (y && !y->is_zero()) points.push_back({fx, *y});
  }
  for (const Point& pt : points) {
    auto psi = [&](int n) {
      const FieldElement v = division_poly(n, curve)(pt.x);
      return n % 2 == 0 ? 2 * pt.y * v : v;
    };
    Point acc = pt;
    for (int n = 2; n <= 12; ++n) {
      acc = add(acc, pt, curve.a);
      if (acc.inf) break;
      const FieldElement pn = psi(n);
      ASSERT_FALSE(pn.is_zero());
      EXPECT_EQ(acc.x, pt.x - psi(n - 1) * psi(n + 1) / (pn * pn)) << n;
    }
  }
}

TEST(Specialize, RootCountsForRandomCurves) {
  const Modulus& m = f1009();
  std::mt19937_64 rng(2024);
  for (int ell : {5, 7}) {
    const auto u = build(PolyKind::U, ell);
    int done = 0;
    while (done < 50) {
      const long a = static_cast<long>(rng() % 1009), b = static_cast<long>(rng() % 1009);
      if ((4 * fe(a) * fe(a) * fe(a) + 27 * fe(b) * fe(b)).is_zero() || a == 0 || b == 0) continue;
      const int n = static_cast<int>(roots(specialize(u, make_curve(m, a, b)), rng()).size());
      EXPECT_TRUE(n == 0 || n == 1 || n == 2 || n == ell + 1) << "A=" << a << " B=" << b << " roots=" << n;
      ++done;
    }
  }
}

}  // namespace
}  // namespace ccr
