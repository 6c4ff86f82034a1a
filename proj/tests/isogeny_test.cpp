#include <gtest/gtest.h>

#include <random>

#include "ccr/isogeny.hpp"
#include "ccr/symbolic.hpp"

namespace ccr {
namespace {

const Modulus& f1009() {
  static const Modulus m = make_modulus(1009);
  return m;
}

FieldElement fe(long v) { return FieldElement(f1009(), v); }

const ElkiesPolys& elkies_polys(int ell) {
  static std::map<int, ElkiesPolys> cache;
  auto it = cache.find(ell);
  if (it == cache.end()) it = cache.emplace(ell, ElkiesPolys::build(ell)).first;
  return it->second;
}

const AtkinPolys& atkin11() {
  static const AtkinPolys p = AtkinPolys::build(11);
  return p;
}

TEST(ClosedForms, Ell5Example) {
  const auto curve = make_curve(f1009(), 1, 3);
  const auto b = derivative_bundle(elkies_polys(5).u, curve, fe(584));
  const FieldElement e4t = e4_tilde(5, fe(584), b, curve.e4(), curve.e6());
  EXPECT_EQ(e4t, 497);
  EXPECT_EQ(a_star_from(5, e4t), 441);
  const FieldElement e6t = e6_tilde(5, fe(584), b, curve.e4(), curve.e6());
  EXPECT_EQ(b_star_from(5, e6t), 997);
  EXPECT_TRUE(specialize(elkies_polys(5).w, curve)(fe(997)).is_zero());
  EXPECT_TRUE(specialize(elkies_polys(5).v, curve)(fe(441)).is_zero());
}

TEST(ClosedForms, DegenerateInputs) {
  const auto curve = make_curve(f1009(), 1, 3);
  DerivativeBundle b = derivative_bundle(elkies_polys(5).u, curve, fe(584));
  EXPECT_THROW(e6_tilde(5, fe(584), b, fe(0), curve.e6()), DegeneratePoint);
  EXPECT_THROW(e6_tilde(5, fe(0), b, curve.e4(), curve.e6()), DegeneratePoint);
  b.du_s = fe(0);
  EXPECT_THROW(e4_tilde(5, fe(584), b, curve.e4(), curve.e6()), DegenerateDerivative);
  EXPECT_THROW(e6_tilde(5, fe(584), b, curve.e4(), curve.e6()), DegenerateDerivative);
  EXPECT_THROW(atkin_sigma(11, fe(65), b, curve.e4(), curve.e6()), DegenerateDerivative);
  EXPECT_THROW(atkin_e4_tilde(11, fe(0), b, curve.e4(), curve.e6()), DegenerateDerivative);
}

TEST(ElkiesStep, Ell5Example) {
  const auto curve = make_curve(f1009(), 1, 3);
  const ElkiesOutcome out = elkies_step(curve, elkies_polys(5));
  ASSERT_FALSE(out.atkin());
  const IsogenyStepResult* hit = nullptr;
  for (const auto& r : out.results)
    if (r.sigma == 584) hit = &r;
  ASSERT_NE(hit, nullptr);
  EXPECT_EQ(hit->a_star, 441);
  EXPECT_EQ(hit->b_star, 997);
  EXPECT_EQ(hit->bundle.du_s, 905);
  EXPECT_TRUE(hit->validated.v_root);
  EXPECT_TRUE(hit->validated.w_root);
  EXPECT_TRUE(hit->validated.phi_checked);
  EXPECT_TRUE(hit->validated.phi_match);
  EXPECT_EQ(hit->sigma0, 2);
  EXPECT_EQ(hit->sigma2, ((fe(1) - 441) / 5 - 2 * fe(1) * 2) / 6);
  EXPECT_EQ(6 * 5 * hit->sigma2 + 2 * 5 * fe(1) * hit->sigma0, fe(1) - hit->a_star);
}

TEST(ElkiesStep, Deterministic) {
  const auto curve = make_curve(f1009(), 1, 3);
  const auto a = elkies_step(curve, elkies_polys(7), 3);
  const auto b = elkies_step(curve, elkies_polys(7), 3);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].sigma, b.results[i].sigma);
    EXPECT_EQ(a.results[i].b_star, b.results[i].b_star);
  }
}

TEST(ElkiesStep, AtkinPrimeGivesEmptyList) {
  // Scan for a curve where U_5 has no root.
  bool found = false;
  for (long a = 1; a < 60 && !found; ++a) {
    const auto curve = make_curve(f1009(), a, 7);
    if (count_roots(specialize(elkies_polys(5).u, curve)) != 0) continue;
    found = true;
    const auto out = elkies_step(curve, elkies_polys(5));
    EXPECT_TRUE(out.atkin());
    EXPECT_TRUE(out.results.empty());
  }
  EXPECT_TRUE(found);
}

TEST(ElkiesStep, RejectsBadInput) {
  const auto curve = make_curve(make_modulus(5), 1, 1);
  EXPECT_THROW(elkies_step(curve, elkies_polys(5)), InvalidArgument);
}

TEST(PowerSums, IdentityShape) {
  const auto ps = elkies_power_sums(fe(0), fe(0), fe(0), fe(0), fe(0), 5);
  EXPECT_EQ(ps.sigma2, 0);
  EXPECT_EQ(ps.sigma3, 0);
  EXPECT_THROW(elkies_power_sums(FieldElement(make_modulus(7), 1L), FieldElement(make_modulus(7), 1L),
                                 FieldElement(make_modulus(7), 1L), FieldElement(make_modulus(7), 1L),
                                 FieldElement(make_modulus(7), 1L), 5),
               InvalidArgument);
}

TEST(PowerSums, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const FieldElement a = fe(static_cast<long>(rng() % 1009)), b = fe(static_cast<long>(rng() % 1009));
    const FieldElement as = fe(static_cast<long>(rng() % 1009)), bs = fe(static_cast<long>(rng() % 1009));
    const FieldElement s1 = fe(static_cast<long>(rng() % 1009));
    const auto ps = elkies_power_sums(a, b, as, bs, s1, 7);
    EXPECT_EQ(a - as, 5 * (6 * ps.sigma2 + 2 * a * ps.sigma0));
    EXPECT_EQ(b - bs, 7 * (10 * ps.sigma3 + 6 * a * s1 + 4 * b * ps.sigma0));
  }
}

TEST(AtkinStep, Ell11Example) {
  const auto curve = make_curve(f1009(), 1, 3);
  const AtkinOutcome out = atkin_step(curve, atkin11());
  ASSERT_EQ(out.roots.size(), 2U);
  EXPECT_EQ(out.roots[0], 65);
  EXPECT_EQ(out.roots[1], 333);
  const AtkinResult* hit = nullptr;
  for (const auto& r : out.results)
    if (r.f == 65) hit = &r;
  ASSERT_NE(hit, nullptr);
  EXPECT_EQ(hit->sigma, 75);
  EXPECT_EQ(hit->e4t, 532);
  EXPECT_EQ(hit->a_star, 395);
  EXPECT_EQ(hit->b_star, 460);
  EXPECT_EQ(gcd(twopol_p1(fe(65), fe(395), curve), twopol_p2(atkin11().ua, fe(65), fe(395))).degree(), 1);
  EXPECT_TRUE(hit->w_root);
  EXPECT_TRUE(hit->phi_checked);
  EXPECT_TRUE(hit->phi_match);
  // The other branch is judged by W and Phi alone.
  const AtkinResult& other = out.results.back();
  EXPECT_EQ(other.f, 333);
  EXPECT_TRUE(other.valid());
}

TEST(AtkinStep, SecondPolynomialRoots) {
  const auto curve = make_curve(f1009(), 1, 3);
  const auto r = roots(twopol_p2(atkin11().ua, fe(65), fe(395)));
  ASSERT_EQ(r.size(), 2U);
  EXPECT_EQ(r[0], 209);
  EXPECT_EQ(r[1], 460);
}

TEST(AtkinStep, GcdDegreeTwo) {
  const UniPoly q(f1009(), {-6, 1, 1});  // (Y - 2)(Y + 3)
  EXPECT_THROW(common_root(q, q), GcdDegreeTwo);
  EXPECT_EQ(common_root(q, UniPoly(f1009(), {-2, 1})), 2);
  EXPECT_THROW(common_root(q, UniPoly(f1009(), {-5, 1})), VerificationFailure);
}

// Every B* recovered through the two-polynomial gcd must be a root of the
// independently built W and pass the Phi check.
TEST(AtkinStep, RandomCurvesAgreeWithW) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (const long p : {1009L, 10007L}) {
    const Modulus m = make_modulus(p);
    for (int i = 0; i < 60 && checked < 25; ++i) {
      const long a = static_cast<long>(rng() % static_cast<unsigned long>(p));
      const long b = static_cast<long>(rng() % static_cast<unsigned long>(p));
      if (a == 0 || b == 0 || FieldElement(m, 4 * a * a % p * a + 27 * b * b).is_zero()) continue;
      const auto curve = make_curve(m, a, b);
      const auto out = atkin_step(curve, atkin11(), 1);
      for (const auto& r : out.results) {
        if (!r.has_b_star()) continue;
        EXPECT_TRUE(r.w_root) << "p=" << p << " A=" << a << " B=" << b << " f=" << r.f;
        EXPECT_TRUE(r.phi_match) << "p=" << p << " A=" << a << " B=" << b << " f=" << r.f;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 10);
}

// Hard-coded closed forms against the symbolic derivations on random curves.
TEST(CrossOracle, RandomCurves) {
  using namespace symbolic;
  const std::array<Derivation, 2> d{derive_e4t(), derive_e6t()};
  std::mt19937_64 rng(7);
  int validated = 0;
  for (int ell : {5, 7}) {
    int curves = 0;
    while (curves < 20) {
      const long a = static_cast<long>(rng() % 1009), b = static_cast<long>(rng() % 1009);
      if (a == 0 || b == 0 || fe(4 * a * a * a + 27 * b * b).is_zero()) continue;
      const auto curve = make_curve(f1009(), a, b);
      const auto out = elkies_step(curve, elkies_polys(ell), 5);
      if (out.atkin()) continue;
      ++curves;
      for (const auto& r : out.results) {
        EXPECT_TRUE(r.valid()) << "ell=" << ell << " A=" << a << " B=" << b << " sigma=" << r.sigma;
        std::array<FieldElement, 17> x;
        x.fill(fe(0));
        x[ELL] = fe(ell);
        x[E4] = curve.e4();
        x[E6] = curve.e6();
        x[SIGMA] = r.sigma;
        x[DS] = r.bundle.du_s;
        x[D4] = r.bundle.du_4;
        x[D6] = r.bundle.du_6;
        x[DS4] = r.bundle.du_s4;
        x[DS6] = r.bundle.du_s6;
        x[D46] = r.bundle.du_46;
        EXPECT_EQ(d[0].result.evaluate(x), r.e4t);
        EXPECT_EQ(d[1].result.evaluate(x), r.e6t);
        ++validated;
      }
    }
  }
  EXPECT_GT(validated, 0);
}

}  // namespace
}  // namespace ccr
