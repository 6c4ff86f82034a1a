#pragma once

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ccr/qseries.hpp"
#include "ccr/rational.hpp"

namespace ccr {

/// Exponents (i, a, b) of X^i Y^a Z^b.
using Exponent3 = std::array<int, 3>;

/// Sparse polynomial in three variables over Q. Terms are kept in descending
/// lexicographic order of (i, a, b); zero coefficients are never stored.
class TrivariatePoly {
 public:
  using Terms = std::map<Exponent3, Rational, std::greater<Exponent3>>;

  TrivariatePoly() = default;

  void add(const Exponent3& e, const Rational& c) {
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

  Rational coefficient(const Exponent3& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int degree(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
  }

  TrivariatePoly derivative(int var) const {
    TrivariatePoly r;
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      Exponent3 f = e;
      --f[v];
      r.add(f, c * e[v]);
    }
    return r;
  }

  TrivariatePoly times_variable(int var) const {
    TrivariatePoly r;
    for (const auto& [e, c] : terms_) {
      Exponent3 f = e;
      ++f[static_cast<std::size_t>(var)];
      r.terms_.emplace(f, c);
    }
    return r;
  }

  friend TrivariatePoly operator*(const Rational& s, const TrivariatePoly& p) {
    TrivariatePoly r;
    for (const auto& [e, c] : p.terms_) r.add(e, s * c);
    return r;
  }
  friend TrivariatePoly operator+(TrivariatePoly a, const TrivariatePoly& b) {
    for (const auto& [e, c] : b.terms_) a.add(e, c);
    return a;
  }
  friend TrivariatePoly operator-(TrivariatePoly a, const TrivariatePoly& b) {
    for (const auto& [e, c] : b.terms_) a.add(e, -c);
    return a;
  }
  friend TrivariatePoly operator*(const TrivariatePoly& a, const TrivariatePoly& b) {
    TrivariatePoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
  }
  friend bool operator==(const TrivariatePoly& a, const TrivariatePoly& b) { return a.terms_ == b.terms_; }

  /// Substitutes Y -> sy * Y, Z -> sz * Z.
  TrivariatePoly rescaled(const Rational& sy, const Rational& sz) const {
    TrivariatePoly r;
    for (const auto& [e, c] : terms_) r.add(e, c * pow(sy, e[1]) * pow(sz, e[2]));
    return r;
  }

  /// Value at rational arguments.
  Rational evaluate(const Rational& x, const Rational& y, const Rational& z) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) acc += c * pow(x, e[0]) * pow(y, e[1]) * pow(z, e[2]);
    return acc;
  }

 private:
  Terms terms_;
};

/// Evaluates P(x, y, z) on q-series (Horner in X, cached powers of y and z).
inline PowerSeries evaluate(const TrivariatePoly& p, const PowerSeries& x, const PowerSeries& y,
                            const PowerSeries& z) {
  const long cap = std::max({x.abs_precision(), y.abs_precision(), z.abs_precision()}) + 1;
  const int dx = std::max(p.degree(0), 0);
  std::vector<PowerSeries> ypow{PowerSeries::constant(1, cap, y.step())}, zpow{PowerSeries::constant(1, cap, z.step())};
  for (int k = 1; k <= p.degree(1); ++k) ypow.push_back(ypow.back() * y);
  for (int k = 1; k <= p.degree(2); ++k) zpow.push_back(zpow.back() * z);

  std::vector<PowerSeries> coeff(static_cast<std::size_t>(dx) + 1, PowerSeries::zero(cap, x.step()));
  for (const auto& [e, c] : p.terms()) {
    PowerSeries t = c * (ypow[static_cast<std::size_t>(e[1])] * zpow[static_cast<std::size_t>(e[2])]);
    coeff[static_cast<std::size_t>(e[0])] += t;
  }
  PowerSeries acc = coeff.back();
  for (int i = dx - 1; i >= 0; --i) acc = acc * x + coeff[static_cast<std::size_t>(i)];
  return acc;
}

}  // namespace ccr
