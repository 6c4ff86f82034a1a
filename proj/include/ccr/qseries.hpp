#pragma once

// Exact truncated power series over Q and the classical q-expansions.
//
// A series lives in the variable x = q^(1/step). It stores the coefficients
// of x^lead ... x^(lead + N - 1) and is known modulo x^(lead + N); that bound
// is the absolute precision and every operation propagates it.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/rational.hpp"

namespace ccr {

namespace detail {

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace detail

class PowerSeries {
 public:
  PowerSeries() = default;

  /// Leading zero coefficients are stripped; the absolute precision
  /// `lead + coeffs.size()` is preserved.
  PowerSeries(int step, long lead, std::vector<Rational> coeffs) : step_(step), lead_(lead), coeffs_(std::move(coeffs)) {
    if (step_ < 1) throw InvalidArgument("series step must be positive");
    normalize();
  }

  /// The series 0 + O(x^abs_precision).
  static PowerSeries zero(long abs_precision, int step = 1) { return PowerSeries(step, abs_precision, {}); }

  static PowerSeries constant(const Rational& c, long abs_precision, int step = 1) {
    return monomial(c, 0, abs_precision, step);
  }

  /// c * x^exponent + O(x^abs_precision).
  static PowerSeries monomial(const Rational& c, long exponent, long abs_precision, int step = 1) {
    if (abs_precision <= exponent) return zero(abs_precision, step);
    std::vector<Rational> v(static_cast<std::size_t>(abs_precision - exponent));
    v[0] = c;
    return PowerSeries(step, exponent, std::move(v));
  }

  int step() const { return step_; }
  long lead() const { return lead_; }
  /// Number of stored (trustworthy) coefficients starting at `lead()`.
  std::size_t precision() const { return coeffs_.size(); }
  long abs_precision() const { return lead_ + static_cast<long>(coeffs_.size()); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of x^n. Exponents below `lead()` are zero; exponents at or
  /// beyond the absolute precision are unknown.
  Rational coeff(long n) const {
    if (n >= abs_precision())
      throw PrecisionUnderflow("coefficient x^" + std::to_string(n) + " is beyond the known precision " +
                               std::to_string(abs_precision()));
    if (n < lead_) return Rational(0);
    return coeffs_[static_cast<std::size_t>(n - lead_)];
  }

  PowerSeries truncated(long abs_precision) const {
    if (abs_precision > this->abs_precision())
      throw PrecisionUnderflow("cannot extend a series known to x^" + std::to_string(this->abs_precision()) +
                               " up to x^" + std::to_string(abs_precision));
    if (abs_precision <= lead_) return zero(abs_precision, step_);
    std::vector<Rational> v(coeffs_.begin(), coeffs_.begin() + (abs_precision - lead_));
    return PowerSeries(step_, lead_, std::move(v));
  }

  /// Same function written in x' = q^(1/new_step); new_step must be a
  /// multiple of step().
  PowerSeries with_step(int new_step) const {
    if (new_step % step_ != 0) throw InvalidArgument("target step is not a multiple of the current step");
    PowerSeries r = stretched(new_step / step_);
    r.step_ = new_step;
    return r;
  }

  /// Exponents multiplied by m, variable unchanged.
  PowerSeries stretched(long m) const {
    if (m < 1) throw InvalidArgument("substitution power must be positive");
    if (m == 1) return *this;
    std::vector<Rational> v(coeffs_.size() * static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * static_cast<std::size_t>(m)] = coeffs_[i];
    return PowerSeries(step_, lead_ * m, std::move(v));
  }

  /// Reinterprets the coefficients as a series in a new variable
  /// q^(1/new_step) (e.g. E2(q) -> E2(x)).
  PowerSeries renamed(int new_step) const {
    PowerSeries r = *this;
    if (new_step < 1) throw InvalidArgument("series step must be positive");
    r.step_ = new_step;
    return r;
  }

  PowerSeries operator-() const {
    PowerSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return combine(a, b, false); }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return combine(a, b, true); }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return multiply(a, b); }
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return multiply(a, b.inverse()); }

  friend PowerSeries operator*(const Rational& c, const PowerSeries& a) {
    if (c == 0) return zero(a.abs_precision(), a.step_);
    PowerSeries r = a;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }
  friend PowerSeries operator*(const PowerSeries& a, const Rational& c) { return c * a; }
  friend PowerSeries operator/(const PowerSeries& a, const Rational& c) {
    if (c == 0) throw DivisionByZero("series divided by the scalar 0");
    return Rational(1 / c) * a;
  }

  PowerSeries& operator+=(const PowerSeries& o) { return *this = *this + o; }
  PowerSeries& operator-=(const PowerSeries& o) { return *this = *this - o; }
  PowerSeries& operator*=(const PowerSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse; the leading coefficient must be known and nonzero.
  PowerSeries inverse() const {
    if (coeffs_.empty()) throw DivisionByZero("division by the zero series");
    const std::size_t n = coeffs_.size();
    std::vector<Rational> inv(n);
    const Rational b0inv = 1 / coeffs_[0];
    inv[0] = b0inv;
    for (std::size_t k = 1; k < n; ++k) {
      Rational acc = 0;
      for (std::size_t i = 1; i <= k; ++i)
        if (sgn(coeffs_[i]) != 0) acc += coeffs_[i] * inv[k - i];
      inv[k] = -acc * b0inv;
    }
    return PowerSeries(step_, -lead_, std::move(inv));
  }

  /// Repeated squaring; negative exponents go through inverse().
  PowerSeries pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    PowerSeries base = *this;
    PowerSeries result = constant(1, static_cast<long>(std::max<std::size_t>(coeffs_.size(), 1)), step_);
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.step_ == b.step_ && a.lead_ == b.lead_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize() {
    std::size_t z = 0;
    while (z < coeffs_.size() && sgn(coeffs_[z]) == 0) ++z;
    if (z > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(z));
      lead_ += static_cast<long>(z);
    }
  }

  static std::pair<PowerSeries, PowerSeries> aligned(const PowerSeries& a, const PowerSeries& b) {
    if (a.step_ == b.step_) return {a, b};
    const int l = std::lcm(a.step_, b.step_);
    return {a.with_step(l), b.with_step(l)};
  }

  static PowerSeries combine(const PowerSeries& a0, const PowerSeries& b0, bool subtract) {
    if (a0.step_ != b0.step_) {
      auto [a, b] = aligned(a0, b0);
      return combine(a, b, subtract);
    }
    const long prec = std::min(a0.abs_precision(), b0.abs_precision());
    const long lead = std::min(a0.lead_, b0.lead_);
    if (prec <= lead) return zero(prec, a0.step_);
    std::vector<Rational> v(static_cast<std::size_t>(prec - lead));
    for (long n = lead; n < prec; ++n) {
      Rational& c = v[static_cast<std::size_t>(n - lead)];
      if (n >= a0.lead_) c = a0.coeffs_[static_cast<std::size_t>(n - a0.lead_)];
      if (n >= b0.lead_) {
        const Rational& y = b0.coeffs_[static_cast<std::size_t>(n - b0.lead_)];
        if (subtract)
          c -= y;
        else
          c += y;
      }
    }
    return PowerSeries(a0.step_, lead, std::move(v));
  }

  // Scales the first n coefficients to integers; returns the common denominator.
  static Integer integer_image(const std::vector<Rational>& c, std::size_t n, std::vector<Integer>& out) {
    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (c[i].get_den() != 1) den = lcm(den, c[i].get_den());
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (den == 1) {
        out[i] = c[i].get_num();
      } else {
        mpz_divexact(out[i].get_mpz_t(), den.get_mpz_t(), c[i].get_den_mpz_t());
        out[i] *= c[i].get_num();
      }
    }
    return den;
  }

  static PowerSeries multiply(const PowerSeries& a0, const PowerSeries& b0) {
    if (a0.step_ != b0.step_) {
      auto [a, b] = aligned(a0, b0);
      return multiply(a, b);
    }
    const std::size_t n = std::min(a0.coeffs_.size(), b0.coeffs_.size());
    const long lead = a0.lead_ + b0.lead_;
    if (n == 0) return zero(lead, a0.step_);
    std::vector<Integer> ai, bi;
    const Integer da = integer_image(a0.coeffs_, n, ai);
    const Integer db = integer_image(b0.coeffs_, n, bi);
    std::vector<Integer> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(ai[i]) == 0) continue;
      mpz_srcptr x = ai[i].get_mpz_t();
      for (std::size_t j = 0; j + i < n; ++j) {
        if (sgn(bi[j]) == 0) continue;
        mpz_addmul(c[i + j].get_mpz_t(), x, bi[j].get_mpz_t());
      }
    }
    const Integer den = da * db;
    std::vector<Rational> v(n);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = Rational(c[k], den);
      v[k].canonicalize();
    }
    return PowerSeries(a0.step_, lead, std::move(v));
  }

  int step_ = 1;
  long lead_ = 0;
  std::vector<Rational> coeffs_;
};

/// q d/dq: the coefficient of x^n becomes (n/step) a_n.
inline PowerSeries qdiff(const PowerSeries& f) {
  std::vector<Rational> v(f.coefficients().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const long n = f.lead() + static_cast<long>(i);
    v[i] = f.coefficients()[i] * Rational(n, f.step());
  }
  return PowerSeries(f.step(), f.lead(), std::move(v));
}

/// q -> q^m.
inline PowerSeries substitute_q_power(const PowerSeries& f, long m) { return f.stretched(m); }

/// Keeps the terms of a series in x = q^(1/ell) whose exponent is divisible
/// by ell, rewrites x^(ell m) as q^m and multiplies by ell. This is the sum of
/// F(zeta^j x) over the ell-th roots of unity.
inline PowerSeries extract_arithmetic_progression(const PowerSeries& f, int ell) {
  if (f.step() != ell) throw InvalidArgument("series step must equal ell for the progression extraction");
  const long first = detail::ceil_div(f.lead(), ell);
  const long prec = detail::ceil_div(f.abs_precision(), ell);
  if (prec <= first) return PowerSeries::zero(prec, 1);
  std::vector<Rational> v(static_cast<std::size_t>(prec - first));
  for (long m = first; m < prec; ++m) v[static_cast<std::size_t>(m - first)] = ell * f.coeff(m * ell);
  return PowerSeries(1, first, std::move(v));
}

// ---------------------------------------------------------------------------
// Named q-expansions

struct FormName {
  enum class Kind { E2, E4, E6, Delta, J, F, Sigma1, EtaSquaredProduct };
  Kind kind;
  int param = 0;  // n for F, ell for Sigma1 / EtaSquaredProduct

  static FormName e2() { return {Kind::E2}; }
  static FormName e4() { return {Kind::E4}; }
  static FormName e6() { return {Kind::E6}; }
  static FormName delta() { return {Kind::Delta}; }
  static FormName j() { return {Kind::J}; }
  static FormName f(int n) { return {Kind::F, n}; }
  static FormName sigma1(int ell) { return {Kind::Sigma1, ell}; }
  static FormName eta_squared_product(int ell) { return {Kind::EtaSquaredProduct, ell}; }
};

/// sum_{d | n} d^r for n < count.
inline std::vector<Integer> divisor_power_sums(unsigned r, long count) {
  std::vector<Integer> s(static_cast<std::size_t>(std::max(count, 0L)));
  for (long d = 1; d < count; ++d) {
    const Integer dr = pow(Integer(d), r);
    for (long n = d; n < count; n += d) s[static_cast<std::size_t>(n)] += dr;
  }
  return s;
}

namespace detail {

inline PowerSeries eisenstein(long scale, unsigned r, long prec) {
  if (prec <= 0) return PowerSeries::zero(prec);
  const auto s = divisor_power_sums(r, prec);
  std::vector<Rational> v(static_cast<std::size_t>(prec));
  v[0] = 1;
  for (long n = 1; n < prec; ++n) v[static_cast<std::size_t>(n)] = Rational(scale * s[static_cast<std::size_t>(n)]);
  return PowerSeries(1, 0, std::move(v));
}

}  // namespace detail

/// prod_{n>=1} (1 - q^n) + O(q^prec), from Euler's pentagonal number theorem.
inline PowerSeries euler_product(long prec) {
  if (prec <= 0) return PowerSeries::zero(prec);
  std::vector<Rational> v(static_cast<std::size_t>(prec));
  v[0] = 1;
  for (long k = 1;; ++k) {
    const long g1 = k * (3 * k - 1) / 2;
    const long g2 = k * (3 * k + 1) / 2;
    if (g1 >= prec) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    v[static_cast<std::size_t>(g1)] += sign;
    if (g2 < prec) v[static_cast<std::size_t>(g2)] += sign;
  }
  return PowerSeries(1, 0, std::move(v));
}

/// prod_{n>=1} (1 - q^n) by direct multiplication, O(prec^2).
inline PowerSeries euler_product_direct(long prec) {
  if (prec <= 0) return PowerSeries::zero(prec);
  std::vector<Rational> v(static_cast<std::size_t>(prec));
  v[0] = 1;
  for (long n = 1; n < prec; ++n)
    for (long k = prec - 1; k >= n; --k) v[static_cast<std::size_t>(k)] -= v[static_cast<std::size_t>(k - n)];
  return PowerSeries(1, 0, std::move(v));
}

/// (eta(q) eta(q^ell))^2 / q^((ell+1)/12) = prod ((1-q^n)(1-q^(ell n)))^2.
inline PowerSeries eta_squared_product_body(int ell, long prec) {
  const PowerSeries p = euler_product(prec);
  const PowerSeries pl = substitute_q_power(euler_product(detail::ceil_div(prec, ell)), ell).truncated(prec);
  const PowerSeries t = p * pl;
  return t * t;
}

/// The expansion of a named form, known modulo q^prec.
inline PowerSeries expand(const FormName& name, long prec) {
  using K = FormName::Kind;
  if (prec < 1) throw InvalidArgument("expansion precision must be at least 1");
  switch (name.kind) {
    case K::E2:
      return detail::eisenstein(-24, 1, prec);
    case K::E4:
      return detail::eisenstein(240, 3, prec);
    case K::E6:
      return detail::eisenstein(-504, 5, prec);
    case K::Delta: {
      const PowerSeries e4 = expand(FormName::e4(), prec);
      const PowerSeries e6 = expand(FormName::e6(), prec);
      return (e4.pow(3) - e6 * e6) / Rational(1728);
    }
    case K::J: {
      const PowerSeries e4 = expand(FormName::e4(), prec + 2);
      const PowerSeries e6 = expand(FormName::e6(), prec + 2);
      const PowerSeries e43 = e4.pow(3);
      const PowerSeries delta = (e43 - e6 * e6) / Rational(1728);
      return (e43 / delta).truncated(prec);
    }
    case K::F: {
      const int n = name.param;
      if (n < 2) throw InvalidArgument("F_n requires n >= 2");
      const PowerSeries e2 = expand(FormName::e2(), prec);
      const PowerSeries e2n = substitute_q_power(expand(FormName::e2(), detail::ceil_div(prec, n)), n).truncated(prec);
      return e2 - Rational(n) * e2n;
    }
    case K::Sigma1: {
      const int ell = name.param;
      if (ell < 2) throw InvalidArgument("sigma_1 requires ell >= 2");
      const PowerSeries e2 = expand(FormName::e2(), prec);
      const PowerSeries e2l =
          substitute_q_power(expand(FormName::e2(), detail::ceil_div(prec, ell)), ell).truncated(prec);
      return Rational(ell, 2) * (Rational(ell) * e2l - e2);
    }
    case K::EtaSquaredProduct: {
      const int ell = name.param;
      if (ell < 11 || ell % 12 != 11)
        throw InvalidArgument("(eta(q) eta(q^ell))^2 needs ell = 11 mod 12, got " + std::to_string(ell));
      const long shift = (ell + 1) / 12;
      if (prec <= shift) return PowerSeries::zero(prec);
      const PowerSeries body = eta_squared_product_body(ell, prec - shift);
      return PowerSeries(1, shift + body.lead(), body.coefficients());
    }
  }
  throw InvalidArgument("unknown form");
}

}  // namespace ccr
