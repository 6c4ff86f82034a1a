#pragma once

// Prime fields with arbitrary-precision characteristic and dense univariate
// polynomials over them.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/rational.hpp"

namespace ccr {

/// The characteristic p > 3 of a prime field. It also keeps a running count
/// of field multiplications, which is how cost is measured.
class PrimeModulus {
 public:
  explicit PrimeModulus(Integer p) : p_(std::move(p)) {
    if (p_ <= 3) throw InvalidArgument("field characteristic must exceed 3, got " + p_.get_str());
    if (mpz_probab_prime_p(p_.get_mpz_t(), 30) == 0) throw InvalidArgument(p_.get_str() + " is not prime");
  }

  const Integer& value() const { return p_; }

  std::uint64_t multiplications() const { return mults_.load(std::memory_order_relaxed); }
  void reset_multiplications() const { mults_.store(0, std::memory_order_relaxed); }
  void count_multiplication() const { mults_.fetch_add(1, std::memory_order_relaxed); }

 private:
  Integer p_;
  mutable std::atomic<std::uint64_t> mults_{0};
};

using Modulus = std::shared_ptr<const PrimeModulus>;

inline Modulus make_modulus(const Integer& p) { return std::make_shared<const PrimeModulus>(p); }

/// Residue in [0, p).
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Modulus m, const Integer& v) : m_(std::move(m)), v_(v) { reduce(); }
  FieldElement(Modulus m, long v) : m_(std::move(m)), v_(v) { reduce(); }

  /// num / den mod p.
  FieldElement(Modulus m, const Rational& r) : m_(std::move(m)), v_(r.get_num()) {
    reduce();
    if (r.get_den() != 1) *this = *this / FieldElement(m_, r.get_den());
  }

  const Integer& value() const { return v_; }
  const Modulus& modulus() const { return m_; }
  const Integer& p() const { return m_->value(); }
  bool is_zero() const { return v_ == 0; }

  FieldElement inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in F_" + p().get_str());
    FieldElement r = *this;
    mpz_invert(r.v_.get_mpz_t(), v_.get_mpz_t(), p().get_mpz_t());
    return r;
  }

  FieldElement pow(const Integer& e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r = *this;
    mpz_powm(r.v_.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), p().get_mpz_t());
    // square-and-multiply cost
    const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits + mpz_popcount(e.get_mpz_t()); ++i) m_->count_multiplication();
    return r;
  }

  FieldElement operator-() const { return FieldElement(m_, Integer(-v_)); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    FieldElement r(a.m_, Integer(a.v_ + b.v_));
    return r;
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(a.m_, Integer(a.v_ - b.v_));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    a.m_->count_multiplication();
    return FieldElement(a.m_, Integer(a.v_ * b.v_));
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return a * b.inverse();
  }

  friend FieldElement operator+(const FieldElement& a, long b) { return a + FieldElement(a.m_, b); }
  friend FieldElement operator+(long a, const FieldElement& b) { return b + a; }
  friend FieldElement operator-(const FieldElement& a, long b) { return a - FieldElement(a.m_, b); }
  friend FieldElement operator-(long a, const FieldElement& b) { return FieldElement(b.m_, a) - b; }
  friend FieldElement operator*(const FieldElement& a, long b) { return a * FieldElement(a.m_, b); }
  friend FieldElement operator*(long a, const FieldElement& b) { return b * a; }
  friend FieldElement operator/(const FieldElement& a, long b) { return a / FieldElement(a.m_, b); }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.v_ == b.v_ && a.p() == b.p(); }
  friend bool operator==(const FieldElement& a, long b) { return a == FieldElement(a.m_, b); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return a.v_ < b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.v_.get_str(); }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (!a.m_ || !b.m_) throw InvalidArgument("uninitialized field element");
    if (a.m_ != b.m_ && a.p() != b.p()) throw InvalidArgument("field elements from different fields");
  }

  void reduce() {
    if (!m_) throw InvalidArgument("field element without modulus");
    mpz_mod(v_.get_mpz_t(), v_.get_mpz_t(), m_->value().get_mpz_t());
  }

  Modulus m_;
  Integer v_;
};

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
class UniPoly {
 public:
  explicit UniPoly(Modulus m) : m_(std::move(m)) {}
  UniPoly(Modulus m, std::vector<FieldElement> coeffs) : m_(std::move(m)), c_(std::move(coeffs)) { trim(); }
  UniPoly(Modulus m, std::initializer_list<long> coeffs) : m_(std::move(m)) {
    for (long c : coeffs) c_.emplace_back(m_, c);
    trim();
  }

  static UniPoly x(const Modulus& m) { return UniPoly(m, {0, 1}); }
  static UniPoly constant(const FieldElement& c) { return UniPoly(c.modulus(), std::vector<FieldElement>{c}); }

  const Modulus& modulus() const { return m_; }
  const std::vector<FieldElement>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  FieldElement zero() const { return FieldElement(m_, 0L); }
  FieldElement coeff(int i) const {
    return (i < 0 || i > degree()) ? zero() : c_[static_cast<std::size_t>(i)];
  }
  FieldElement leading() const { return is_zero() ? zero() : c_.back(); }

  FieldElement operator()(const FieldElement& x) const {
    FieldElement acc = zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    std::vector<FieldElement> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return UniPoly(m_, std::move(d));
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    const FieldElement inv = leading().inverse();
    std::vector<FieldElement> v;
    for (const auto& c : c_) v.push_back(c * inv);
    return UniPoly(m_, std::move(v));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<FieldElement> v(std::max(a.c_.size(), b.c_.size()), a.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return UniPoly(a.m_, std::move(v));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  UniPoly operator-() const {
    std::vector<FieldElement> v;
    for (const auto& c : c_) v.push_back(-c);
    return UniPoly(m_, std::move(v));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.m_);
    std::vector<FieldElement> v(a.c_.size() + b.c_.size() - 1, a.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(a.m_, std::move(v));
  }
  friend UniPoly operator*(const FieldElement& s, const UniPoly& a) {
    std::vector<FieldElement> v;
    for (const auto& c : a.c_) v.push_back(s * c);
    return UniPoly(a.m_, std::move(v));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const UniPoly& a) {
    if (a.is_zero()) return os << "0";
    bool first = true;
    for (int i = a.degree(); i >= 0; --i) {
      const auto& c = a.c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || c.value() != 1) os << c;
      if (i > 0) os << (c.value() != 1 ? "*" : "") << "X" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return os;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Modulus m_;
  std::vector<FieldElement> c_;
};

/// Quotient and remainder; throws DivisionByZero for b == 0.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Modulus& m = a.modulus();
  if (a.degree() < b.degree()) return {UniPoly(m), a};
  std::vector<FieldElement> r = a.coefficients();
  const int db = b.degree();
  std::vector<FieldElement> q(static_cast<std::size_t>(a.degree() - db + 1), FieldElement(m, 0L));
  const FieldElement inv = b.leading().inverse();
  for (int i = a.degree(); i >= db; --i) {
    const FieldElement c = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i - db + j)] -= c * b.coefficients()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {UniPoly(m, std::move(q)), UniPoly(m, std::move(r))};
}

inline UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

/// Monic gcd (zero if both inputs are zero).
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m.
inline UniPoly powmod(const UniPoly& base, const Integer& e, const UniPoly& m) {
  if (e < 0) throw InvalidArgument("negative exponent in powmod");
  UniPoly result = UniPoly(m.modulus(), {1}) % m;
  UniPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

namespace detail {

inline void split_linear(const UniPoly& g, std::mt19937_64& rng, std::vector<FieldElement>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-(g.coeff(0) / g.coeff(1)));
    return;
  }
  const Modulus& m = g.modulus();
  const Integer half = (m->value() - 1) / 2;
  for (;;) {
    // random shift a in [0, p)
    Integer a = 0;
    for (std::size_t words = mpz_sizeinbase(m->value().get_mpz_t(), 2) / 64 + 2; words-- > 0;) {
      a <<= 64;
      a += static_cast<unsigned long>(rng());
    }
    const UniPoly shifted(m, std::vector<FieldElement>{FieldElement(m, a), FieldElement(m, 1L)});
    const UniPoly h = gcd(powmod(shifted, half, g) - UniPoly(m, {1}), g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, out);
      split_linear(divmod(g, h).first.monic(), rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Distinct roots of f in F_p, ascending. The seed only drives the
/// equal-degree splitting, so the output does not depend on it.
inline std::vector<FieldElement> roots(const UniPoly& f, std::uint64_t seed = 0) {
  if (f.is_zero()) throw InvalidArgument("roots of the zero polynomial");
  const Modulus& m = f.modulus();
  const UniPoly x = UniPoly::x(m);
  const UniPoly g = gcd(powmod(x, m->value(), f.monic()) - x, f);
  std::vector<FieldElement> out;
  std::mt19937_64 rng(seed);
  detail::split_linear(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of distinct roots, deg gcd(X^p - X, f).
inline int count_roots(const UniPoly& f) {
  const Modulus& m = f.modulus();
  const UniPoly x = UniPoly::x(m);
  return gcd(powmod(x, m->value(), f.monic()) - x, f).degree();
}

/// Tonelli-Shanks square root; empty for a non-residue.
inline std::optional<FieldElement> sqrt(const FieldElement& a) {
  const Modulus& m = a.modulus();
  if (a.is_zero()) return a;
  const Integer& p = m->value();
  if (mpz_legendre(a.value().get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  FieldElement c = FieldElement(m, z).pow(q);
  FieldElement t = a.pow(q);
  FieldElement res = a.pow((q + 1) / 2);
  unsigned long mm = s;
  while (!(t == 1)) {
    unsigned long i = 0;
    FieldElement tt = t;
    while (!(tt == 1)) {
      tt = tt * tt;
      ++i;
    }
    FieldElement b = c;
    for (unsigned long k = 0; k + 1 < mm - i; ++k) b = b * b;
    mm = i;
    c = b * b;
    t = t * c;
    res = res * b;
  }
  return res;
}

}  // namespace ccr
