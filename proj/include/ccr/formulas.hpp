#pragma once

// Closed forms for the isogenous curve, written once over a generic ring R
// (a prime field for computation, rational expressions for verification).
// R needs +, -, *, / and mixed arithmetic with long.
//
// Naming: s is the root variable (sigma for U, f for Ua); ds, d4, d6 are the
// first partials of the polynomial in (s, E4, E6) at the root and ds4, ds6,
// d46 the mixed second partials.

namespace ccr::formulas {

template <class R>
struct Point {
  R ell, e4, e6, s;
  R ds, d4, d6, ds4, ds6, d46;
};

/// Diagonal second partials recovered from the Euler identities of the
/// first partials, which are homogeneous of weights ell, ell - 1, ell - 2.
template <class R>
struct Diagonal {
  R dss, d44, d66;
};

template <class R>
Diagonal<R> diagonal_partials(const Point<R>& p) {
  const R& l = p.ell;
  return {(l * p.ds - 2 * p.e4 * p.ds4 - 3 * p.e6 * p.ds6) / p.s,
          ((l - 1) * p.d4 - p.s * p.ds4 - 3 * p.e6 * p.d46) / (2 * p.e4),
          ((l - 2) * p.d6 - p.s * p.ds6 - 2 * p.e4 * p.d46) / (3 * p.e6)};
}

// ---------------------------------------------------------------------------
// sigma-based (U)

/// E4(q^ell): -(4 ell (3 E4^2 d6 + 2 E6 d4) - ds (ell^2 E4 + 4 sigma^2)) / (ell^4 ds)
template <class R>
R e4_tilde(const Point<R>& p) {
  const R& l = p.ell;
  const R num = -(4 * l * (3 * p.e4 * p.e4 * p.d6 + 2 * p.e6 * p.d4) - p.ds * (l * l * p.e4 + 4 * p.s * p.s));
  return num / (l * l * l * l * p.ds);
}

/// The coefficient c2 of ell^2 in N, with the diagonal partials given.
template <class R>
R c2(const Point<R>& p, const Diagonal<R>& d) {
  const R& E4 = p.e4;
  const R& E6 = p.e6;
  const R& s = p.s;
  const R& ds = p.ds;
  const R& d4 = p.d4;
  const R& d6 = p.d6;
  const R& ds4 = p.ds4;
  const R& ds6 = p.ds6;
  const R& d46 = p.d46;
  const R E4sq = E4 * E4;
  const R ds2 = ds * ds;
  return 18 * (d6 * d6 * d.dss - 2 * d6 * ds * ds6 + d.d66 * ds2) * E4sq * E4sq +
         (24 * E6 * d4 * (d6 * d.dss - ds * ds6) + 24 * E6 * ds * (d46 * ds - d6 * ds4) + 10 * d4 * ds2) * E4sq +
         3 * ds2 * (7 * E6 * d6 - s * ds) * E4 + 8 * E6 * E6 * (d4 * d4 * d.dss - 2 * d4 * ds * ds4 + d.d44 * ds2);
}

/// N = -E6 ds^3 ell^3 + c2 ell^2 + 12 ds^2 sigma (3 E4^2 d6 + 2 E6 d4) ell - 8 ds^3 sigma^3
template <class R>
R n_polynomial(const Point<R>& p, const Diagonal<R>& d) {
  const R& l = p.ell;
  const R ds3 = p.ds * p.ds * p.ds;
  return -(p.e6 * ds3 * l * l * l) + c2(p, d) * l * l +
         12 * p.ds * p.ds * p.s * (3 * p.e4 * p.e4 * p.d6 + 2 * p.e6 * p.d4) * l - 8 * ds3 * p.s * p.s * p.s;
}

/// E6(q^ell) = -N / (ell^6 ds^3)
template <class R>
R e6_tilde(const Point<R>& p) {
  const R& l = p.ell;
  const R l3 = l * l * l;
  return -n_polynomial(p, diagonal_partials(p)) / (l3 * l3 * p.ds * p.ds * p.ds);
}

// ---------------------------------------------------------------------------
// f-based (Ua); the point's s, ds, ds4, ds6 hold f, df, df4, df6

/// sigma = ell (3 d6 E4^2 + 2 d4 E6) / (f df)
template <class R>
R atkin_sigma(const Point<R>& p) {
  return p.ell * (3 * p.d6 * p.e4 * p.e4 + 2 * p.d4 * p.e6) / (p.s * p.ds);
}

template <class R>
R m_polynomial(const Point<R>& p) {
  const R& E4 = p.e4;
  const R& E6 = p.e6;
  const R& f = p.s;
  const R& l = p.ell;
  const R& df = p.ds;
  const R& df4 = p.ds4;
  const R& df6 = p.ds6;
  const R& d4 = p.d4;
  const R& d6 = p.d6;
  const R& d46 = p.d46;
  const R df2 = df * df;
  const R E4_2 = E4 * E4;
  const R E4_3 = E4_2 * E4;
  const R E4_4 = E4_3 * E4;
  const R E4_5 = E4_4 * E4;
  const R E4_6 = E4_5 * E4;
  const R E6_2 = E6 * E6;
  const R E6_3 = E6_2 * E6;
  const R E6_4 = E6_3 * E6;
  return 24 * (3 * E6 * d6 * d6 * df4 + d46 * df2 * f) * E4_6 +
         12 *
             (9 * E6_2 * d6 * d6 * df6 - 3 * E6 * d6 * d6 * df * l + 6 * E6 * d6 * df * df6 * f - d6 * df2 * l * f +
              df2 * df6 * f * f - 6 * E6 * d6 * d6 * df + 2 * d6 * df2 * f) *
             E4_5 +
         96 * E4_4 * E6_2 * d4 * d6 * df4 +
         4 * E6 *
             (36 * E6_2 * d4 * d6 * df6 - 12 * E6 * d4 * d6 * df * l + 12 * E6 * d4 * df * df6 * f -
              12 * E6 * d46 * df2 * f + 12 * E6 * d6 * df * df4 * f - 24 * E6 * d4 * d6 * df - 5 * d4 * df2 * f) *
             E4_3 +
         E6 * (32 * E6_2 * d4 * d4 * df4 - 42 * E6 * d6 * df2 * f + df2 * df * f * f) * E4_2 +
         16 * E6_3 * d4 * (3 * E6 * d4 * df6 - d4 * df * l + 2 * df * df4 * f - 2 * d4 * df) * E4 +
         24 * E6_4 * d46 * f * df2 - 8 * E6_3 * d4 * l * f * df2 + 8 * E6_3 * df4 * f * f * df2 +
         8 * E6_3 * d4 * f * df2;
}

/// E4(q^ell) = -M / (ell^2 f^2 E4 E6 df^3)
template <class R>
R atkin_e4_tilde(const Point<R>& p) {
  return -m_polynomial(p) / (p.ell * p.ell * p.s * p.s * p.e4 * p.e6 * p.ds * p.ds * p.ds);
}

}  // namespace ccr::formulas
