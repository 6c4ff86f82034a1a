#pragma once

// Construction of the CCR polynomials U, V, W, Atkin's eta-quotient variant
// Ua and the classical modular polynomial Phi from conjugate q-expansions.
//
// The ell + 1 roots of each polynomial are a weight-2k form g on Gamma_0(ell)
// and its conjugates g|S|T^j. Power sums of the conjugates are obtained by
// progression extraction, which keeps everything in Q.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/qseries.hpp"
#include "ccr/rational.hpp"
#include "ccr/trivariate.hpp"

namespace ccr {

enum class PolyKind { U, V, W, Ua, Phi };

/// E4E6 is canonical; AB uses A = -3 E4, B = -2 E6; Delta is a display basis;
/// J is the basis of the classical polynomial.
enum class Basis { E4E6, AB, Delta, J };

inline std::string to_string(PolyKind k) {
  switch (k) {
    case PolyKind::U: return "U";
    case PolyKind::V: return "V";
    case PolyKind::W: return "W";
    case PolyKind::Ua: return "Ua";
    case PolyKind::Phi: return "Phi";
  }
  return "?";
}

inline std::string to_string(Basis b) {
  switch (b) {
    case Basis::E4E6: return "E4E6";
    case Basis::AB: return "AB";
    case Basis::Delta: return "Delta";
    case Basis::J: return "j";
  }
  return "?";
}

inline PolyKind parse_kind(const std::string& s) {
  if (s == "U") return PolyKind::U;
  if (s == "V") return PolyKind::V;
  if (s == "W") return PolyKind::W;
  if (s == "Ua") return PolyKind::Ua;
  if (s == "Phi") return PolyKind::Phi;
  throw InvalidArgument("unknown polynomial kind '" + s + "'");
}

inline Basis parse_basis(const std::string& s) {
  if (s == "E4E6") return Basis::E4E6;
  if (s == "AB") return Basis::AB;
  if (s == "Delta") return Basis::Delta;
  if (s == "j") return Basis::J;
  throw InvalidArgument("unknown basis '" + s + "'");
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Throws InvalidArgument unless (kind, ell) can be built.
inline void validate_kind_ell(PolyKind kind, int ell) {
  if (!is_prime(ell)) throw InvalidArgument("ell=" + std::to_string(ell) + " is not prime");
  if (kind == PolyKind::Phi) {
    if (ell > 13) throw InvalidArgument("classical Phi is limited to ell <= 13");
    return;
  }
  if (ell <= 3) throw InvalidArgument("CCR polynomials need ell > 3");
  if (kind == PolyKind::Ua && ell % 12 != 11)
    throw InvalidArgument("Ua needs ell = 11 mod 12, got ell=" + std::to_string(ell));
}

/// A built U, V, W or Ua: coefficient of X^i Y^a Z^b with (Y, Z) = (E4, E6)
/// or (A, B) according to `basis`.
struct WeightedTrivariatePoly {
  PolyKind kind = PolyKind::U;
  int ell = 0;
  Basis basis = Basis::E4E6;
  TrivariatePoly terms;

  WeightedTrivariatePoly in_basis(Basis target) const {
    if (target == basis) return *this;
    if (target == Basis::Delta || target == Basis::J || basis == Basis::Delta || basis == Basis::J)
      throw InvalidArgument("only E4E6 <-> AB conversion applies to trivariate polynomials");
    WeightedTrivariatePoly r = *this;
    r.basis = target;
    // E4E6 -> AB: E4 = -A/3, E6 = -B/2.  AB -> E4E6: A = -3 E4, B = -2 E6.
    r.terms = target == Basis::AB ? terms.rescaled(Rational(-1, 3), Rational(-1, 2)) : terms.rescaled(-3, -2);
    return r;
  }

  friend bool operator==(const WeightedTrivariatePoly& a, const WeightedTrivariatePoly& b) {
    return a.kind == b.kind && a.ell == b.ell && a.basis == b.basis && a.terms == b.terms;
  }
};

/// Phi_ell(X, j) = sum c_{i,k} X^i j^k.
struct ClassicalModularPoly {
  int ell = 0;
  std::map<std::array<int, 2>, Integer, std::greater<std::array<int, 2>>> terms;

  Integer coefficient(int i, int k) const {
    auto it = terms.find({i, k});
    return it == terms.end() ? Integer(0) : it->second;
  }

  friend bool operator==(const ClassicalModularPoly& a, const ClassicalModularPoly& b) {
    return a.ell == b.ell && a.terms == b.terms;
  }
};

/// Weight of X when E4 and E6 have weights 2 and 3: the roots of U and Ua
/// are weight-2 forms, those of V and W have weights 4 and 6.
inline int root_weight(PolyKind kind) {
  switch (kind) {
    case PolyKind::V: return 2;
    case PolyKind::W: return 3;
    default: return 1;
  }
}

/// Generalized weight x_weight * i + 2a + 3b of every monomial equals `weight`.
inline bool is_weighted_homogeneous(const TrivariatePoly& p, int weight, int x_weight = 1) {
  for (const auto& [e, c] : p.terms())
    if (x_weight * e[0] + 2 * e[1] + 3 * e[2] != weight) return false;
  return true;
}

inline bool is_weighted_homogeneous(const WeightedTrivariatePoly& p) {
  const int w = root_weight(p.kind);
  return is_weighted_homogeneous(p.terms, w * (p.ell + 1), w);
}

inline bool has_integer_coefficients(const TrivariatePoly& p) {
  for (const auto& [e, c] : p.terms())
    if (!is_integer(c)) return false;
  return true;
}

/// Largest exponents of 2 and 3 over all coefficient denominators.
inline std::pair<unsigned long, unsigned long> denominator_valuations(const TrivariatePoly& p) {
  unsigned long v2 = 0, v3 = 0;
  for (const auto& [e, c] : p.terms()) {
    v2 = std::max(v2, valuation(c.get_den(), 2));
    v3 = std::max(v3, valuation(c.get_den(), 3));
  }
  return {v2, v3};
}

/// s^(d) P(X / s): the coefficient of X^i is multiplied by s^(d - i).
inline TrivariatePoly rescale_root(const TrivariatePoly& p, const Rational& s, int degree) {
  TrivariatePoly r;
  for (const auto& [e, c] : p.terms()) r.add(e, c * pow(s, degree - e[0]));
  return r;
}

// ---------------------------------------------------------------------------
// Conjugate series and power sums

struct ConjugateSeries {
  PowerSeries r_inf;  // the root at infinity, a series in q
  PowerSeries r;      // generates the other ell roots through x -> zeta^j x, x = q^(1/ell)
};

/// The two generating series of the roots, known modulo q^prec (x^(ell prec)).
inline ConjugateSeries conjugate_series(PolyKind kind, int ell, long prec) {
  if (kind == PolyKind::Phi) throw InvalidArgument("Phi is built by build_classical_phi");
  validate_kind_ell(kind, ell);
  const long xprec = prec * ell;
  const long sub_prec = detail::ceil_div(prec, ell);
  auto at_q_ell = [&](const FormName& name) {
    return substitute_q_power(expand(name, sub_prec), ell).truncated(prec);
  };
  auto in_x = [&](const FormName& name) { return expand(name, xprec).renamed(ell); };

  const Rational l(ell);
  switch (kind) {
    case PolyKind::U: {
      PowerSeries r_inf = expand(FormName::sigma1(ell), prec);
      PowerSeries e2_x = in_x(FormName::e2());
      PowerSeries e2_q = expand(FormName::e2(), prec).with_step(ell);
      return {r_inf, Rational(1, 2) * (e2_x - l * e2_q)};
    }
    case PolyKind::V: {
      const Rational s = -3 * pow(l, 4);
      return {s * at_q_ell(FormName::e4()), Rational(-3) * in_x(FormName::e4())};
    }
    case PolyKind::W: {
      const Rational s = -2 * pow(l, 6);
      return {s * at_q_ell(FormName::e6()), Rational(-2) * in_x(FormName::e6())};
    }
    case PolyKind::Ua: {
      // Scaled by -ell so that the conjugates are the bare eta product in x.
      PowerSeries f = expand(FormName::eta_squared_product(ell), prec);
      return {-l * f, in_x(FormName::eta_squared_product(ell))};
    }
    case PolyKind::Phi:
      break;
  }
  throw InvalidArgument("unsupported kind");
}

/// s_1 ... s_kmax, power sums of the ell + 1 roots as q-series.
inline std::vector<PowerSeries> power_sums(PolyKind kind, int ell, int kmax, long prec) {
  const ConjugateSeries cs = conjugate_series(kind, ell, prec);
  std::vector<PowerSeries> s;
  s.reserve(static_cast<std::size_t>(kmax));
  PowerSeries rk = cs.r, ik = cs.r_inf;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      rk = rk * cs.r;
      ik = ik * cs.r_inf;
    }
    s.push_back(ik + extract_arithmetic_progression(rk, ell));
  }
  return s;
}

/// e_1 ... e_n from s_1 ... s_n: k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) s_i.
inline std::vector<PowerSeries> elementary_from_power_sums(const std::vector<PowerSeries>& s) {
  std::vector<PowerSeries> e;
  e.reserve(s.size() + 1);
  long cap = 1;
  for (const auto& x : s) cap = std::max(cap, x.abs_precision());
  e.push_back(PowerSeries::constant(1, cap, s.empty() ? 1 : s.front().step()));
  for (std::size_t k = 1; k <= s.size(); ++k) {
    PowerSeries acc = PowerSeries::zero(cap, e[0].step());
    for (std::size_t i = 1; i <= k; ++i) {
      PowerSeries t = e[k - i] * s[i - 1];
      if (i % 2 == 1)
        acc += t;
      else
        acc -= t;
    }
    e.push_back(acc / Rational(static_cast<long>(k)));
  }
  e.erase(e.begin());
  return e;
}

/// s_1 ... s_n from e_1 ... e_n (inverse of the above).
inline std::vector<PowerSeries> power_sums_from_elementary(const std::vector<PowerSeries>& e) {
  std::vector<PowerSeries> s;
  for (std::size_t k = 1; k <= e.size(); ++k) {
    // s_k = sum_{i=1..k-1} (-1)^(i-1) e_i s_(k-i) + (-1)^(k-1) k e_k
    PowerSeries acc = Rational(k % 2 == 1 ? static_cast<long>(k) : -static_cast<long>(k)) * e[k - 1];
    for (std::size_t i = 1; i < k; ++i) {
      PowerSeries t = e[i - 1] * s[k - i - 1];
      if (i % 2 == 1)
        acc += t;
      else
        acc -= t;
    }
    s.push_back(acc);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Matching against level-one modular forms

/// Polynomial in (E4, E6): coefficient of E4^a E6^b.
using FormPolynomial = std::map<std::array<int, 2>, Rational, std::greater<std::array<int, 2>>>;

/// The monomials E4^a E6^b with 2a + 3b = weight.
inline std::vector<std::array<int, 2>> form_monomials(int weight) {
  std::vector<std::array<int, 2>> m;
  for (int b = weight / 3; b >= 0; --b) {
    const int rest = weight - 3 * b;
    if (rest % 2 == 0) m.push_back({rest / 2, b});
  }
  return m;
}

/// Powers of E4 and E6 up to a fixed precision, shared across matchings.
class FormBasis {
 public:
  explicit FormBasis(long prec)
      : prec_(prec),
        e4_{PowerSeries::constant(1, prec), expand(FormName::e4(), prec)},
        e6_{PowerSeries::constant(1, prec), expand(FormName::e6(), prec)} {}

  long precision() const { return prec_; }

  PowerSeries monomial(int a, int b) {
    while (static_cast<int>(e4_.size()) <= a) e4_.push_back(e4_.back() * e4_[1]);
    while (static_cast<int>(e6_.size()) <= b) e6_.push_back(e6_.back() * e6_[1]);
    return e4_[static_cast<std::size_t>(a)] * e6_[static_cast<std::size_t>(b)];
  }

 private:
  long prec_;
  std::vector<PowerSeries> e4_, e6_;
};

/// Solves s = sum c_{a,b} E4^a E6^b over 2a + 3b = weight exactly. The
/// system is solved on leading coefficients and checked on every remaining
/// known coefficient; any mismatch aborts.
inline FormPolynomial match_to_form_basis(const PowerSeries& s, int weight, FormBasis& basis) {
  if (weight < 0) throw InvalidArgument("negative weight");
  if (s.step() != 1) throw InvalidArgument("basis matching needs a q-series");
  const auto mons = form_monomials(weight);
  const std::size_t m = mons.size();
  const long rows = s.abs_precision();
  if (s.lead() < 0) throw InconsistentSystem("series has a pole; not a holomorphic form");
  if (rows < static_cast<long>(m) + 3)
    throw InconsistentSystem("need at least " + std::to_string(m + 3) + " coefficients, have " + std::to_string(rows));
  if (rows > basis.precision()) throw PrecisionUnderflow("form basis precision too small");

  // Augmented matrix, one row per known coefficient.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(rows), std::vector<Rational>(m + 1));
  for (std::size_t col = 0; col < m; ++col) {
    const PowerSeries g = basis.monomial(mons[col][0], mons[col][1]);
    for (long n = 0; n < rows; ++n) a[static_cast<std::size_t>(n)][col] = g.coeff(n);
  }
  for (long n = 0; n < rows; ++n) a[static_cast<std::size_t>(n)][m] = s.coeff(n);

  // Gauss-Jordan elimination; every row takes part so that the verification
  // rows are reduced too.
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < m && r < a.size(); ++col) {
    std::size_t piv = r;
    while (piv < a.size() && sgn(a[piv][col]) == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const Rational inv = 1 / a[r][col];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][col]) == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t k = col; k <= m; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(col);
    ++r;
  }
  if (r != m) throw InconsistentSystem("form basis matrix is rank deficient at this precision");
  for (std::size_t i = r; i < a.size(); ++i)
    if (sgn(a[i][m]) != 0)
      throw InconsistentSystem("weight-" + std::to_string(weight) + " match fails on a verification coefficient");

  FormPolynomial out;
  for (std::size_t i = 0; i < r; ++i)
    if (sgn(a[i][m]) != 0) out[mons[pivot_col[i]]] = a[i][m];
  return out;
}

inline FormPolynomial match_to_form_basis(const PowerSeries& s, int weight) {
  FormBasis basis(std::max<long>(s.abs_precision(), 1));
  return match_to_form_basis(s, weight, basis);
}

// ---------------------------------------------------------------------------
// Builders

/// Default q-precision ell + 12.
inline long default_precision(int ell) { return ell + 12; }

namespace detail {

inline WeightedTrivariatePoly build_at_precision(PolyKind kind, int ell, long prec) {
  const int n = ell + 1;
  const int w = root_weight(kind);
  const auto s = power_sums(kind, ell, n, prec);
  auto e = elementary_from_power_sums(s);
  FormBasis basis(prec);
  WeightedTrivariatePoly out;
  out.kind = kind;
  out.ell = ell;
  out.basis = Basis::E4E6;
  out.terms.add({n, 0, 0}, 1);
  for (int k = 1; k <= n; ++k) {
    PowerSeries& ek = e[static_cast<std::size_t>(k - 1)];
    if (ek.abs_precision() > prec) ek = ek.truncated(prec);
    const FormPolynomial c = match_to_form_basis(ek, w * k, basis);
    for (const auto& [ab, v] : c) out.terms.add({n - k, ab[0], ab[1]}, (k % 2 == 0) ? v : Rational(-v));
  }
  return out;
}

}  // namespace detail

/// Monic degree-(ell+1) polynomial in X with coefficients in Q[E4, E6].
inline WeightedTrivariatePoly build(PolyKind kind, int ell, long prec = 0) {
  validate_kind_ell(kind, ell);
  if (kind == PolyKind::Phi) throw InvalidArgument("use build_classical_phi for Phi");
  if (prec <= 0) prec = default_precision(ell);
  WeightedTrivariatePoly p;
  try {
    p = detail::build_at_precision(kind, ell, prec);
  } catch (const InconsistentSystem&) {
    p = detail::build_at_precision(kind, ell, 2 * prec);
  }
  if (kind != PolyKind::Ua && !has_integer_coefficients(p.in_basis(Basis::AB).terms))
    throw IntegralityViolation(to_string(kind) + "_" + std::to_string(ell) + " has a non-integral coefficient");
  return p;
}

/// e_1 ... e_(ell+1) read back from the coefficients as q-series.
inline std::vector<PowerSeries> elementary_series(const WeightedTrivariatePoly& p, long prec) {
  const WeightedTrivariatePoly q = p.in_basis(Basis::E4E6);
  const int n = p.ell + 1;
  FormBasis basis(prec);
  std::vector<PowerSeries> e(static_cast<std::size_t>(n), PowerSeries::zero(prec));
  for (const auto& [ex, c] : q.terms.terms()) {
    const int k = n - ex[0];
    if (k == 0) continue;
    const Rational sign = (k % 2 == 0) ? c : Rational(-c);
    e[static_cast<std::size_t>(k - 1)] += sign * basis.monomial(ex[1], ex[2]);
  }
  return e;
}

/// Canonical (E4, E6, Delta) form: E6 appears at most linearly, using
/// E6^2 = E4^3 - 1728 Delta. Keys are (i, a, b, m) for X^i E4^a E6^b Delta^m.
using DeltaTerms = std::map<std::array<int, 4>, Rational, std::greater<std::array<int, 4>>>;

inline DeltaTerms to_delta_display(const WeightedTrivariatePoly& p) {
  const WeightedTrivariatePoly q = p.in_basis(Basis::E4E6);
  DeltaTerms work;
  for (const auto& [e, c] : q.terms.terms()) work[{e[0], e[1], e[2], 0}] += c;
  for (;;) {
    auto it = std::find_if(work.begin(), work.end(), [](const auto& t) { return t.first[2] >= 2; });
    if (it == work.end()) break;
    const auto key = it->first;
    const Rational c = it->second;
    work.erase(it);
    work[{key[0], key[1] + 3, key[2] - 2, key[3]}] += c;
    work[{key[0], key[1], key[2] - 2, key[3] + 1}] -= 1728 * c;
  }
  DeltaTerms out;
  for (const auto& [k, c] : work)
    if (sgn(c) != 0) out.emplace(k, c);
  return out;
}

inline TrivariatePoly from_delta_display(const DeltaTerms& d) {
  // Delta = (E4^3 - E6^2) / 1728
  TrivariatePoly delta;
  delta.add({0, 3, 0}, Rational(1, 1728));
  delta.add({0, 0, 2}, Rational(-1, 1728));
  std::vector<TrivariatePoly> dpow;
  TrivariatePoly one;
  one.add({0, 0, 0}, 1);
  dpow.push_back(one);
  TrivariatePoly out;
  for (const auto& [k, c] : d) {
    while (static_cast<int>(dpow.size()) <= k[3]) dpow.push_back(dpow.back() * delta);
    TrivariatePoly mono;
    mono.add({k[0], k[1], k[2]}, c);
    out = out + mono * dpow[static_cast<std::size_t>(k[3])];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical modular polynomial

namespace detail {

/// Writes a series with a pole as a polynomial in j by removing leading
/// terms; the remainder must vanish on every known coefficient.
inline std::map<int, Integer> as_polynomial_in_j(PowerSeries e, const std::vector<PowerSeries>& jpow) {
  std::map<int, Integer> out;
  while (!e.is_zero() && e.lead() <= 0) {
    const int m = static_cast<int>(-e.lead());
    const Rational c = e.coeff(e.lead());
    if (!is_integer(c)) throw InconsistentSystem("non-integral coefficient while matching in j");
    if (m >= static_cast<int>(jpow.size())) throw PrecisionUnderflow("pole order exceeds the available powers of j");
    out[m] = c.get_num();
    e -= c * jpow[static_cast<std::size_t>(m)];
  }
  if (!e.is_zero()) throw InconsistentSystem("residual series after matching in j is not zero");
  if (e.abs_precision() < 1) throw PrecisionUnderflow("no verification coefficients left after matching in j");
  return out;
}

inline ClassicalModularPoly build_phi_at(int ell, long margin) {
  const int n = ell + 1;
  const long rel = margin + ell + 8;
  // j(x) with x = q^(1/ell), and j(q^ell)
  const PowerSeries jq = expand(FormName::j(), rel + n);
  const PowerSeries jx = expand(FormName::j(), ell * rel).renamed(ell);
  const PowerSeries r_inf = substitute_q_power(jq, ell);

  // Power sums of the ell conjugates j((tau + k)/ell), then their elementary
  // symmetric functions.
  std::vector<PowerSeries> t;
  PowerSeries rk = jx;
  for (int k = 1; k <= ell; ++k) {
    if (k > 1) rk = rk * jx;
    t.push_back(extract_arithmetic_progression(rk, ell));
  }
  const auto ep = elementary_from_power_sums(t);

  std::vector<PowerSeries> jpow{PowerSeries::constant(1, rel + n)};
  for (int m = 1; m <= n; ++m) jpow.push_back(jpow.back() * jq);

  ClassicalModularPoly phi;
  phi.ell = ell;
  phi.terms[{n, 0}] = 1;
  for (int k = 1; k <= n; ++k) {
    // elementary symmetric function of all ell + 1 roots
    PowerSeries ek = (k == 1) ? r_inf : r_inf * ep[static_cast<std::size_t>(k - 2)];
    if (k <= ell) ek = ek + ep[static_cast<std::size_t>(k - 1)];
    if (ek.abs_precision() < margin) throw PrecisionUnderflow("insufficient precision for Phi");
    ek = ek.truncated(margin);
    for (const auto& [m, c] : as_polynomial_in_j(ek, jpow)) {
      const Integer v = (k % 2 == 0) ? c : Integer(-c);
      if (v != 0) phi.terms[{n - k, m}] = v;
    }
  }
  return phi;
}

}  // namespace detail

/// Phi_ell(X, j), for ell <= 13.
inline ClassicalModularPoly build_classical_phi(int ell) {
  validate_kind_ell(PolyKind::Phi, ell);
  try {
    return detail::build_phi_at(ell, 5);
  } catch (const InconsistentSystem&) {
    return detail::build_phi_at(ell, 12);
  }
}

/// Phi(x, y) on q-series.
inline PowerSeries evaluate(const ClassicalModularPoly& phi, const PowerSeries& x, const PowerSeries& y) {
  TrivariatePoly t;
  for (const auto& [e, c] : phi.terms) t.add({e[0], e[1], 0}, Rational(c));
  return evaluate(t, x, y, PowerSeries::constant(1, std::max(x.abs_precision(), y.abs_precision()) + 1));
}

// ---------------------------------------------------------------------------
// Series checks

/// The root form of each kind, as a q-series known modulo q^prec.
inline PowerSeries root_series(PolyKind kind, int ell, long prec) { return conjugate_series(kind, ell, prec).r_inf; }

/// P(root series, E4, E6) vanishes modulo q^prec.
inline bool root_identity_holds(const WeightedTrivariatePoly& p, long prec) {
  const WeightedTrivariatePoly q = p.in_basis(Basis::E4E6);
  const PowerSeries v =
      evaluate(q.terms, root_series(p.kind, p.ell, prec), expand(FormName::e4(), prec), expand(FormName::e6(), prec));
  return v.abs_precision() >= prec && v.truncated(prec).is_zero();
}

/// Ua(-ell f, A*, B*) = 0 modulo q^prec, where f is the root series of Ua,
/// A* = -3 ell^4 E4(q^ell) and B* = -2 ell^6 E6(q^ell) fill the AB slots.
inline bool atkin_lehner_check(const WeightedTrivariatePoly& ua, long prec) {
  if (ua.kind != PolyKind::Ua) throw InvalidArgument("Atkin-Lehner check applies to Ua");
  const WeightedTrivariatePoly ab = ua.in_basis(Basis::AB);
  const int ell = ua.ell;
  const Rational l(ell);
  const PowerSeries x = -l * root_series(PolyKind::Ua, ell, prec);
  const long sub = detail::ceil_div(prec, ell);
  const PowerSeries a = Rational(-3 * pow(l, 4)) * substitute_q_power(expand(FormName::e4(), sub), ell).truncated(prec);
  const PowerSeries b = Rational(-2 * pow(l, 6)) * substitute_q_power(expand(FormName::e6(), sub), ell).truncated(prec);
  const PowerSeries v = evaluate(ab.terms, x, a, b);
  return v.abs_precision() >= prec && v.truncated(prec).is_zero();
}

}  // namespace ccr
