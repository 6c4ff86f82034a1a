#pragma once

// Curves y^2 = x^3 + A x + B over F_p, division polynomials, and the
// specialization of built polynomials at a curve.

#include <string>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/field.hpp"
#include "ccr/modular_poly.hpp"
#include "ccr/trivariate.hpp"

namespace ccr {

struct CurveParams {
  FieldElement a, b;

  CurveParams(FieldElement a_, FieldElement b_) : a(std::move(a_)), b(std::move(b_)) {
    if (discriminant().is_zero()) throw InvalidArgument("singular curve: 4A^3 + 27B^2 = 0");
  }

  const Modulus& modulus() const { return a.modulus(); }
  /// 4A^3 + 27B^2
  FieldElement discriminant() const { return 4 * a * a * a + 27 * b * b; }
  FieldElement e4() const { return -a / 3; }
  FieldElement e6() const { return -b / 2; }
  FieldElement j_invariant() const { return 1728 * (4 * a * a * a) / discriminant(); }
};

inline CurveParams make_curve(const Modulus& m, long a, long b) {
  return CurveParams(FieldElement(m, a), FieldElement(m, b));
}

/// j from (A, B) without the nonsingularity requirement on the caller side.
inline FieldElement j_invariant(const FieldElement& a, const FieldElement& b) {
  const FieldElement d = 4 * a * a * a + 27 * b * b;
  if (d.is_zero()) throw DegeneratePoint("singular curve has no j-invariant");
  return 1728 * (4 * a * a * a) / d;
}

// ---------------------------------------------------------------------------
// Division polynomials
//
// f_n = psi_n for odd n and psi_n / (2y) for even n, so that every f_n is a
// polynomial in x alone.

/// f_(-1), f_0, ..., f_n computed with the doubling recurrences. `f3`, `f4`
/// and `F` = 4(x^3 + Ax + B) are supplied in the target ring.
template <class P>
std::vector<P> division_polynomial_table(int n, const P& zero, const P& one, const P& f3, const P& f4, const P& F) {
  if (n < -1) throw InvalidArgument("division polynomial index must be >= -1");
  std::vector<P> f{zero - one, zero, one, one, f3, f4};
  auto at = [&f](int k) -> const P& { return f[static_cast<std::size_t>(k + 1)]; };
  const P F2 = F * F;
  for (int k = 5; k <= n; ++k) {
    const int m = k / 2;
    P next = zero;
    if (k % 2 == 1) {
      const P t1 = at(m + 2) * at(m) * at(m) * at(m);
      const P t2 = at(m - 1) * at(m + 1) * at(m + 1) * at(m + 1);
      next = (m % 2 == 0) ? F2 * t1 - t2 : t1 - F2 * t2;
    } else {
      next = at(m) * (at(m + 2) * at(m - 1) * at(m - 1) - at(m - 2) * at(m + 1) * at(m + 1));
    }
    f.push_back(next);
  }
  f.erase(f.begin() + (n + 2), f.end());
  return f;
}

/// f_n over F_p.
inline UniPoly division_poly(int n, const CurveParams& c) {
  const Modulus& m = c.modulus();
  const FieldElement z(m, 0L), one(m, 1L);
  const FieldElement& A = c.a;
  const FieldElement& B = c.b;
  const UniPoly f3(m, {-(A * A), 12 * B, 6 * A, z, FieldElement(m, 3L)});
  const UniPoly f4(m, std::vector<FieldElement>{2 * (-8 * B * B - A * A * A), 2 * (-4 * A * B), 2 * (-5 * A * A),
                                               FieldElement(m, 40L) * B, 10 * A, z, FieldElement(m, 2L)});
  const UniPoly F(m, std::vector<FieldElement>{4 * B, 4 * A, z, FieldElement(m, 4L)});
  return division_polynomial_table(n, UniPoly(m), UniPoly::constant(one), f3, f4, F).back();
}

/// f_n in Z[x, A, B], exponent slots (x, A, B).
inline TrivariatePoly division_poly_symbolic(int n) {
  auto p = [](std::initializer_list<std::pair<Exponent3, long>> terms) {
    TrivariatePoly r;
    for (const auto& [e, c] : terms) r.add(e, c);
    return r;
  };
  const TrivariatePoly one = p({{{0, 0, 0}, 1}});
  const TrivariatePoly f3 = p({{{4, 0, 0}, 3}, {{2, 1, 0}, 6}, {{1, 0, 1}, 12}, {{0, 2, 0}, -1}});
  const TrivariatePoly f4 = p({{{6, 0, 0}, 2},
                               {{4, 1, 0}, 10},
                               {{3, 0, 1}, 40},
                               {{2, 2, 0}, -10},
                               {{1, 1, 1}, -8},
                               {{0, 0, 2}, -16},
                               {{0, 3, 0}, -2}});
  const TrivariatePoly F = p({{{3, 0, 0}, 4}, {{1, 1, 0}, 4}, {{0, 0, 1}, 4}});
  return division_polynomial_table(n, TrivariatePoly(), one, f3, f4, F).back();
}

/// Degree of f_n in x: (n^2 - 1)/2 for odd n, (n^2 - 4)/2 for even n.
inline int division_poly_degree(int n) {
  if (n == 0) return -1;
  if (n == -1) return 0;
  return n % 2 != 0 ? (n * n - 1) / 2 : (n * n - 4) / 2;
}

// ---------------------------------------------------------------------------
// Specialization

/// P(X, E4, E6) with E4, E6 replaced by field values; P in the E4E6 basis.
inline UniPoly specialize(const TrivariatePoly& p, const FieldElement& e4, const FieldElement& e6) {
  const Modulus& m = e4.modulus();
  std::vector<FieldElement> e4pow{FieldElement(m, 1L)}, e6pow{FieldElement(m, 1L)};
  for (int k = 1; k <= p.degree(1); ++k) e4pow.push_back(e4pow.back() * e4);
  for (int k = 1; k <= p.degree(2); ++k) e6pow.push_back(e6pow.back() * e6);
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(std::max(p.degree(0), 0) + 1), FieldElement(m, 0L));
  for (const auto& [e, c] : p.terms())
    coeffs[static_cast<std::size_t>(e[0])] +=
        FieldElement(m, c) * e4pow[static_cast<std::size_t>(e[1])] * e6pow[static_cast<std::size_t>(e[2])];
  return UniPoly(m, std::move(coeffs));
}

/// The univariate polynomial in X at the curve, in either storage basis.
inline UniPoly specialize(const WeightedTrivariatePoly& p, const CurveParams& c) {
  return specialize(p.in_basis(Basis::E4E6).terms, c.e4(), c.e6());
}

/// P(x, E4, E6) at field values.
inline FieldElement evaluate(const TrivariatePoly& p, const FieldElement& x, const FieldElement& e4,
                             const FieldElement& e6) {
  return specialize(p, e4, e6)(x);
}

/// Value and partial derivatives of P at (root, E4, E6). Slot s is the root
/// variable (sigma or f).
struct DerivativeBundle {
  FieldElement u, du_s, du_4, du_6, du_s4, du_s6, du_46;
};

/// The derivatives of P needed by the bundle, in the E4E6 basis, each
/// specialized at a curve once and then evaluated per root.
class PartialDerivatives {
 public:
  explicit PartialDerivatives(const WeightedTrivariatePoly& p) {
    const TrivariatePoly t = p.in_basis(Basis::E4E6).terms;
    const TrivariatePoly ds = t.derivative(0), d4 = t.derivative(1), d6 = t.derivative(2);
    polys_ = {t, ds, d4, d6, ds.derivative(1), ds.derivative(2), d4.derivative(2)};
  }

  struct AtCurve {
    std::vector<UniPoly> polys;

    DerivativeBundle at(const FieldElement& root) const {
      return {polys[0](root), polys[1](root), polys[2](root), polys[3](root),
              polys[4](root), polys[5](root), polys[6](root)};
    }
  };

  AtCurve at(const CurveParams& c) const {
    const FieldElement e4 = c.e4(), e6 = c.e6();
    auto s = [&](std::size_t i) { return specialize(polys_[i], e4, e6); };
    return AtCurve{{s(0), s(1), s(2), s(3), s(4), s(5), s(6)}};
  }

 private:
  std::array<TrivariatePoly, 7> polys_;
};

/// Partials at (root, -A/3, -B/2); throws NotARoot unless P vanishes there.
inline DerivativeBundle derivative_bundle(const WeightedTrivariatePoly& p, const CurveParams& c,
                                          const FieldElement& root) {
  const DerivativeBundle b = PartialDerivatives(p).at(c).at(root);
  if (!b.u.is_zero()) throw NotARoot(root.value().get_str() + " is not a root of the specialized polynomial");
  return b;
}

}  // namespace ccr
