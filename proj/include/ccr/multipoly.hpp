#pragma once

// Sparse multivariate polynomials over Q and quotients of them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/field.hpp"
#include "ccr/rational.hpp"

namespace ccr {

/// A variable set supplies `static constexpr std::array<const char*, N> names`.
template <class Vars>
inline constexpr std::size_t var_count = std::tuple_size_v<std::remove_cv_t<decltype(Vars::names)>>;

template <class Vars>
class MultiPoly {
 public:
  static constexpr std::size_t N = var_count<Vars>;
  using Exponent = std::array<std::uint16_t, N>;
  /// Descending lexicographic order, variables ranked as listed.
  using Terms = std::map<Exponent, Rational, std::greater<Exponent>>;

  MultiPoly() = default;
  MultiPoly(long c) { add(Exponent{}, Rational(c)); }  // NOLINT(google-explicit-constructor)
  MultiPoly(const Rational& c) { add(Exponent{}, c); }  // NOLINT(google-explicit-constructor)

  static MultiPoly var(std::size_t v, unsigned power = 1) {
    Exponent e{};
    e[v] = static_cast<std::uint16_t>(power);
    MultiPoly p;
    p.add(e, 1);
    return p;
  }

  static MultiPoly monomial(const Exponent& e, const Rational& c) {
    MultiPoly p;
    p.add(e, c);
    return p;
  }

  void add(const Exponent& e, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const { return is_zero() || (terms_.size() == 1 && terms_.begin()->first == Exponent{}); }

  const Exponent& leading_exponent() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  int degree(std::size_t v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[v]));
    return d;
  }

  bool contains(std::size_t v) const { return degree(v) > 0; }

  /// Coefficient of v^k as a polynomial free of v.
  MultiPoly coefficient(std::size_t v, unsigned k) const {
    MultiPoly r;
    for (const auto& [e, c] : terms_) {
      if (e[v] != k) continue;
      Exponent f = e;
      f[v] = 0;
      r.terms_.emplace(f, c);
    }
    return r;
  }

  /// Componentwise minimum exponent over all terms (zero for the zero polynomial).
  Exponent content_exponent() const {
    if (terms_.empty()) return Exponent{};
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < N; ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }

  MultiPoly shifted_down(const Exponent& by) const {
    MultiPoly r;
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < N; ++i) f[i] = static_cast<std::uint16_t>(f[i] - by[i]);
      r.terms_.emplace(f, c);
    }
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly();
    std::unordered_map<Exponent, Rational, ExponentHash> acc;
    acc.reserve(a.size() * b.size());
    Exponent s{};
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < N; ++i) s[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        auto [it, inserted] = acc.try_emplace(s);
        mpq_t tmp;
        mpq_init(tmp);
        mpq_mul(tmp, ca.get_mpq_t(), cb.get_mpq_t());
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), tmp);
        mpq_clear(tmp);
      }
    MultiPoly r;
    for (auto& [e, c] : acc)
      if (sgn(c) != 0) r.terms_.emplace(e, std::move(c));
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator*(const Rational& s, const MultiPoly& a) {
    if (sgn(s) == 0) return MultiPoly();
    MultiPoly r = a;
    for (auto& [e, c] : r.terms_) c *= s;
    return r;
  }
  friend MultiPoly operator*(long s, const MultiPoly& a) { return Rational(s) * a; }
  friend MultiPoly operator+(MultiPoly a, long b) { return a += MultiPoly(b); }

  MultiPoly pow(unsigned k) const {
    MultiPoly r(1L), b = *this;
    while (k) {
      if (k & 1U) r *= b;
      k >>= 1U;
      if (k) b *= b;
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Value at a field point; `values[v]` is used for variable v.
  FieldElement evaluate(const std::array<FieldElement, N>& values) const {
    const Modulus& m = values[0].modulus();
    FieldElement acc(m, 0L);
    std::array<std::vector<FieldElement>, N> powers;
    for (const auto& [e, c] : terms_) {
      FieldElement t(m, c);
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(FieldElement(m, 1L));
        while (pw.size() <= e[i]) pw.push_back(pw.back() * values[i]);
        t *= pw[e[i]];
      }
      acc += t;
    }
    return acc;
  }

  Rational evaluate(const std::array<Rational, N>& values) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < N; ++i)
        if (e[i]) t *= ccr::pow(values[i], e[i]);
      acc += t;
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = sgn(c) < 0;
      const Rational a = neg ? Rational(-c) : c;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      bool any = false;
      if (a != 1 || e == Exponent{}) {
        os << ccr::to_string(a);
        any = true;
      }
      for (std::size_t i = 0; i < N; ++i) {
        if (!e[i]) continue;
        os << (any ? "*" : "") << Vars::names[i];
        if (e[i] > 1) os << "^" << e[i];
        any = true;
      }
    }
    return os.str();
  }

 private:
  struct ExponentHash {
    std::size_t operator()(const Exponent& e) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (auto x : e) h = (h ^ x) * 1099511628211ULL;
      return h;
    }
  };

  Terms terms_;
};

/// Exact quotient a / b; throws NotDivisible when b does not divide a.
template <class Vars>
MultiPoly<Vars> exact_divide(MultiPoly<Vars> a, const MultiPoly<Vars>& b) {
  using P = MultiPoly<Vars>;
  constexpr std::size_t N = P::N;
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  P q;
  const auto& lb = b.leading_exponent();
  const Rational inv = 1 / b.leading_coefficient();
  while (!a.is_zero()) {
    const auto la = a.leading_exponent();
    typename P::Exponent d{};
    for (std::size_t i = 0; i < N; ++i) {
      if (la[i] < lb[i]) throw NotDivisible("leading term is not divisible");
      d[i] = static_cast<std::uint16_t>(la[i] - lb[i]);
    }
    const P t = P::monomial(d, a.leading_coefficient() * inv);
    q += t;
    a -= t * b;
  }
  return q;
}

/// Remainder-free test of divisibility.
template <class Vars>
bool divides(const MultiPoly<Vars>& b, const MultiPoly<Vars>& a) {
  try {
    exact_divide(a, b);
    return true;
  } catch (const NotDivisible&) {
    return false;
  }
}

/// num / den with den != 0. Common monomial factors and the leading
/// coefficient of den are normalized away; general common factors are kept,
/// so equality is decided by cross-multiplication.
template <class Vars>
class RationalExpression {
 public:
  using Poly = MultiPoly<Vars>;
  static constexpr std::size_t N = Poly::N;

  RationalExpression() : num_(), den_(1L) {}
  RationalExpression(long c) : num_(c), den_(1L) {}              // NOLINT(google-explicit-constructor)
  RationalExpression(const Rational& c) : num_(c), den_(1L) {}   // NOLINT(google-explicit-constructor)
  RationalExpression(Poly p) : num_(std::move(p)), den_(1L) {}   // NOLINT(google-explicit-constructor)
  RationalExpression(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational expression with zero denominator");
    normalize();
  }

  static RationalExpression var(std::size_t v) { return RationalExpression(Poly::var(v)); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  /// True if no term of num or den involves v.
  bool free_of(std::size_t v) const { return !num_.contains(v) && !den_.contains(v); }

  RationalExpression operator-() const { return RationalExpression(-num_, den_, Raw{}); }

  friend RationalExpression operator+(const RationalExpression& a, const RationalExpression& b) {
    if (a.den_ == b.den_) return RationalExpression(a.num_ + b.num_, a.den_);
    return RationalExpression(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalExpression operator-(const RationalExpression& a, const RationalExpression& b) { return a + (-b); }
  friend RationalExpression operator*(const RationalExpression& a, const RationalExpression& b) {
    return RationalExpression(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalExpression operator/(const RationalExpression& a, const RationalExpression& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero rational expression");
    return RationalExpression(a.num_ * b.den_, a.den_ * b.num_);
  }

  friend RationalExpression operator+(const RationalExpression& a, long b) { return a + RationalExpression(b); }
  friend RationalExpression operator+(long a, const RationalExpression& b) { return RationalExpression(a) + b; }
  friend RationalExpression operator-(const RationalExpression& a, long b) { return a - RationalExpression(b); }
  friend RationalExpression operator-(long a, const RationalExpression& b) { return RationalExpression(a) - b; }
  friend RationalExpression operator*(const RationalExpression& a, long b) {
    return RationalExpression(Rational(b) * a.num_, a.den_);
  }
  friend RationalExpression operator*(long a, const RationalExpression& b) { return b * a; }
  friend RationalExpression operator/(const RationalExpression& a, long b) {
    if (b == 0) throw DivisionByZero("division by zero");
    return RationalExpression(Rational(1, b) * a.num_, a.den_);
  }

  RationalExpression& operator+=(const RationalExpression& o) { return *this = *this + o; }
  RationalExpression& operator-=(const RationalExpression& o) { return *this = *this - o; }
  RationalExpression& operator*=(const RationalExpression& o) { return *this = *this * o; }

  RationalExpression pow(unsigned k) const { return RationalExpression(num_.pow(k), den_.pow(k), Raw{}); }

  /// Equality as rational functions.
  friend bool operator==(const RationalExpression& a, const RationalExpression& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalExpression& a, const RationalExpression& b) { return !(a == b); }

  FieldElement evaluate(const std::array<FieldElement, N>& values) const {
    const FieldElement d = den_.evaluate(values);
    if (d.is_zero()) throw DivisionByZero("denominator vanishes at the evaluation point");
    return num_.evaluate(values) / d;
  }

  std::string to_string() const {
    if (den_ == Poly(1L)) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
  }

 private:
  struct Raw {};
  RationalExpression(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly(1L);
      return;
    }
    auto cn = num_.content_exponent();
    const auto cd = den_.content_exponent();
    for (std::size_t i = 0; i < N; ++i) cn[i] = std::min(cn[i], cd[i]);
    if (cn != typename Poly::Exponent{}) {
      num_ = num_.shifted_down(cn);
      den_ = den_.shifted_down(cn);
    }
    const Rational lc = den_.leading_coefficient();
    if (lc != 1) {
      const Rational inv = 1 / lc;
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  Poly num_, den_;
};

}  // namespace ccr
