#pragma once

// Mechanical re-derivation of the closed forms in formulas.hpp: each
// derivation differentiates the modular relation with Ramanujan's system,
// checks that the E2-dependent parts are multiples of the Euler combination
// (so they vanish at a root), solves for the unknown and compares the result
// with the transcribed formula.

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "ccr/error.hpp"
#include "ccr/formulas.hpp"
#include "ccr/multipoly.hpp"

namespace ccr::symbolic {

struct CcrVars {
  static constexpr std::array<const char*, 17> names{"ell", "E2",  "E4",  "E6", "sigma", "E4t", "E6t", "d4", "d6",
                                                      "ds",  "ds4", "ds6", "d46", "f",    "df",  "df4", "df6"};
};

enum Var : std::size_t { ELL, E2, E4, E6, SIGMA, E4T, E6T, D4, D6, DS, DS4, DS6, D46, F, DF, DF4, DF6 };

using Poly = MultiPoly<CcrVars>;
using Expr = RationalExpression<CcrVars>;

inline Expr v(Var x) { return Expr::var(x); }

/// Positive rational content: gcd of numerators over lcm of denominators.
inline Rational content(const Poly& p) {
  Integer g = 0, l = 1;
  for (const auto& [e, c] : p.terms()) {
    g = gcd(g, c.get_num());
    l = lcm(l, c.get_den());
  }
  return Rational(g, l);
}

struct Assertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Derivation {
  std::string name;
  std::vector<Assertion> assertions;
  Expr result;
  double seconds = 0;

  bool passed() const {
    for (const auto& a : assertions)
      if (!a.passed) return false;
    return !assertions.empty();
  }

  const Assertion* first_failure() const {
    for (const auto& a : assertions)
      if (!a.passed) return &a;
    return nullptr;
  }

  std::string report() const {
    std::ostringstream os;
    os << "derivation=" << name << " status=" << (passed() ? "PASS" : "FAIL") << " seconds=" << seconds << '\n';
    for (const auto& a : assertions)
      os << "  check=" << a.name << " status=" << (a.passed ? "PASS" : "FAIL")
         << (a.detail.empty() ? "" : " " + a.detail) << '\n';
    os << "  result=" << result.to_string() << '\n';
    return os.str();
  }

  void check(const std::string& what, bool ok, std::string detail = {}) {
    assertions.push_back({what, ok, std::move(detail)});
  }

  /// Throws VerificationFailure naming the first failed step.
  void require() const {
    if (const Assertion* a = first_failure())
      throw VerificationFailure(name + ": " + a->name + (a->detail.empty() ? "" : " (" + a->detail + ")"));
  }
};

namespace detail {

// Ramanujan's system in the normalization D = q d/dq / 12 folded in:
// E2' = (E2^2 - E4)/12, E4' = (E2 E4 - E6)/3, E6' = (E2 E6 - E4^2)/2.
inline Expr e2p() { return (v(E2) * v(E2) - v(E4)) / 12; }
inline Expr e4p() { return (v(E2) * v(E4) - v(E6)) / 3; }
inline Expr e6p() { return (v(E2) * v(E6) - v(E4) * v(E4)) / 2; }

inline Expr h_u() { return v(SIGMA) * v(DS) + 2 * v(E4) * v(D4) + 3 * v(E6) * v(D6); }
inline Expr h_f() { return v(F) * v(DF) + 2 * v(E4) * v(D4) + 3 * v(E6) * v(D6); }

/// Asserts that `c` is a polynomial multiple of `h`, recording the quotient.
inline void check_multiple(Derivation& d, const std::string& what, const Poly& c, const Expr& h) {
  const Poly& hp = h.numerator();
  try {
    const Poly q = exact_divide(c, hp);
    d.check(what, true, "quotient_terms=" + std::to_string(q.size()) + (q.size() == 1 ? " quotient=" + q.to_string() : ""));
  } catch (const NotDivisible&) {
    d.check(what, false, "remainder is not zero");
  }
}

/// Solves c0 = 0 for `unknown`, which must occur linearly.
inline Expr solve_linear(Derivation& d, const Poly& c0, Var unknown) {
  const bool linear = c0.degree(unknown) == 1;
  d.check(std::string("linear in ") + CcrVars::names[unknown], linear,
          "degree=" + std::to_string(c0.degree(unknown)));
  if (!linear) return Expr();
  return Expr(-c0.coefficient(unknown, 0), c0.coefficient(unknown, 1));
}

inline void check_hygiene(Derivation& d, const Expr& r, std::initializer_list<Var> absent) {
  std::string bad;
  for (Var x : absent)
    if (!r.free_of(x)) bad += std::string(bad.empty() ? "" : ",") + CcrVars::names[x];
  d.check("hygiene", bad.empty(), bad.empty() ? "" : "contains " + bad);
}

inline formulas::Point<Expr> sigma_point() {
  return {v(ELL), v(E4), v(E6), v(SIGMA), v(DS), v(D4), v(D6), v(DS4), v(DS6), v(D46)};
}

inline formulas::Point<Expr> f_point() {
  return {v(ELL), v(E4), v(E6), v(F), v(DF), v(D4), v(D6), v(DF4), v(DF6), v(D46)};
}

class Timer {
 public:
  explicit Timer(Derivation& d) : d_(d), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() { d_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  Derivation& d_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

/// E4t from sigma' ds + E4' d4 + E6' d6 = 0.
inline Derivation derive_e4t() {
  using namespace detail;
  Derivation d{"e4t", {}, {}, 0};
  Timer timer(d);
  const Expr l = v(ELL), s = v(SIGMA);
  const Expr sigp = l / 24 * (4 * s * s / (l * l) + 4 * s / l * v(E2) - (l * l * v(E4T) - v(E4)));
  const Expr tmp = sigp * v(DS) + e4p() * v(D4) + e6p() * v(D6);
  const Poly num = tmp.numerator();
  d.check("degree in E2 is 1", num.degree(E2) == 1, "degree=" + std::to_string(num.degree(E2)));
  check_multiple(d, "E2 coefficient is a multiple of sigma*ds + 2*E4*d4 + 3*E6*d6", num.coefficient(E2, 1), h_u());
  d.result = solve_linear(d, num.coefficient(E2, 0), E4T);
  check_hygiene(d, d.result, {E2, E4T, E6T});
  d.check("matches the closed form", d.result == formulas::e4_tilde(sigma_point()));
  return d;
}

/// E6t from the second derivative of U(sigma, E4, E6) = 0.
inline Derivation derive_e6t() {
  using namespace detail;
  Derivation d{"e6t", {}, {}, 0};
  Timer timer(d);
  const Derivation first = derive_e4t();
  d.check("e4t derivation", first.passed());
  const Expr& e4t = first.result;

  const Expr l = v(ELL), s = v(SIGMA), e2 = v(E2), e4 = v(E4), e6 = v(E6);
  const Expr E4p = e4p(), E6p = e6p(), E2p = e2p();
  const Expr E2t = (e2 + 2 * s / l) / l;
  const Expr sigp = l * (4 * s * s / (l * l) + 4 * s / l * e2 - (l * l * e4t - e4)) / 24;
  const Expr E4pp = (E2p * e4 + e2 * E4p - E6p) / 3;
  const Expr E6pp = (E2p * e6 + e2 * E6p - 2 * e4 * E4p) / 2;
  const Expr E4tp = (E2t * e4t - v(E6T)) / 3;
  const Expr E2tp = (E2t * E2t - e4t) / 12;
  const Expr E2pp = (2 * e2 * E2p - E4p) / 12;
  const Expr E2tpp = (2 * E2t * E2tp - E4tp) / 12;
  const Expr sigpp = l * (l * l * l * E2tpp - E2pp) / 2;

  const formulas::Diagonal<Expr> diag = formulas::diagonal_partials(sigma_point());
  const Expr ds = v(DS), d4 = v(D4), d6 = v(D6), ds4 = v(DS4), ds6 = v(DS6), d46 = v(D46);
  Expr tmp = sigpp * ds + sigp * (sigp * diag.dss + E4p * ds4 + E6p * ds6);
  tmp = tmp + E4pp * d4 + E4p * (sigp * ds4 + E4p * diag.d44 + E6p * d46);
  tmp = tmp + E6pp * d6 + E6p * (sigp * ds6 + E4p * d46 + E6p * diag.d66);
  const Poly num = tmp.numerator();

  d.check("degree in E2 is 2", num.degree(E2) == 2, "degree=" + std::to_string(num.degree(E2)));
  check_multiple(d, "C2 is a multiple of sigma*ds + 2*E4*d4 + 3*E6*d6", num.coefficient(E2, 2), h_u());
  check_multiple(d, "C1 is a multiple of sigma*ds + 2*E4*d4 + 3*E6*d6", num.coefficient(E2, 1), h_u());
  d.result = solve_linear(d, num.coefficient(E2, 0), E6T);
  check_hygiene(d, d.result, {E2, E4T, E6T});
  d.check("matches -N / (ell^6 ds^3)", d.result == formulas::e6_tilde(sigma_point()));
  return d;
}

/// sigma from f' df + E4' d4 + E6' d6 = 0 with 12 f'/f = E2 + ell E2t.
inline Derivation derive_atkin_sigma() {
  using namespace detail;
  Derivation d{"a-sigma", {}, {}, 0};
  Timer timer(d);
  const Expr l = v(ELL), f = v(F), e2 = v(E2);
  const Expr E2t = (e2 + 2 * v(SIGMA) / l) / l;
  const Expr fp = f / 12 * (l * E2t + e2);
  const Expr tmp = fp * v(DF) + e4p() * v(D4) + e6p() * v(D6);
  const Poly num = tmp.numerator();
  d.check("degree in E2 is 1", num.degree(E2) == 1, "degree=" + std::to_string(num.degree(E2)));
  check_multiple(d, "E2 coefficient is a multiple of f*df + 2*E4*d4 + 3*E6*d6", num.coefficient(E2, 1), h_f());
  d.result = solve_linear(d, num.coefficient(E2, 0), SIGMA);
  check_hygiene(d, d.result, {E2, SIGMA, E4T, E6T});
  d.check("matches the closed form", d.result == formulas::atkin_sigma(f_point()));
  return d;
}

/// E4t from the second derivative of Ua(f, E4, E6) = 0.
inline Derivation derive_atkin_e4t() {
  using namespace detail;
  Derivation d{"a-e4t", {}, {}, 0};
  Timer timer(d);
  const Derivation first = derive_atkin_sigma();
  d.check("a-sigma derivation", first.passed());
  const Expr& sig = first.result;

  const Expr l = v(ELL), f = v(F), e2 = v(E2), e4 = v(E4), e6 = v(E6);
  const Expr E4p = e4p(), E6p = e6p(), E2p = e2p();
  const Expr E2t = (e2 + 2 * sig / l) / l;
  const Expr fp = f / 12 * (l * E2t + e2);
  const Expr fpp = f / 144 * ((l * E2t + e2) * (l * E2t + e2) + l * l * (E2t * E2t - v(E4T)) + (e2 * e2 - e4));
  const Expr E4pp = (E2p * e4 + e2 * E4p - E6p) / 3;
  const Expr E6pp = (E2p * e6 + e2 * E6p - 2 * e4 * E4p) / 2;

  const formulas::Diagonal<Expr> diag = formulas::diagonal_partials(f_point());
  const Expr df = v(DF), d4 = v(D4), d6 = v(D6), df4 = v(DF4), df6 = v(DF6), d46 = v(D46);
  Expr tmp = fpp * df + fp * (fp * diag.dss + E4p * df4 + E6p * df6);
  tmp = tmp + E4pp * d4 + E4p * (fp * df4 + E4p * diag.d44 + E6p * d46);
  tmp = tmp + E6pp * d6 + E6p * (fp * df6 + E4p * d46 + E6p * diag.d66);
  const Poly num = tmp.numerator();

  d.check("degree in E2 is 2", num.degree(E2) == 2, "degree=" + std::to_string(num.degree(E2)));
  check_multiple(d, "C2 is a multiple of f*df + 2*E4*d4 + 3*E6*d6", num.coefficient(E2, 2), h_f());
  check_multiple(d, "C1 is a multiple of f*df + 2*E4*d4 + 3*E6*d6", num.coefficient(E2, 1), h_f());
  d.result = solve_linear(d, num.coefficient(E2, 0), E4T);
  check_hygiene(d, d.result, {E2, SIGMA, E4T, E6T});
  d.check("matches -M / (ell^2 f^2 E4 E6 df^3)", d.result == formulas::atkin_e4_tilde(f_point()));
  return d;
}

/// Case names accepted by run(): e4t, e6t, a-sigma, a-e4t.
inline Derivation run(const std::string& name) {
  if (name == "e4t") return derive_e4t();
  if (name == "e6t") return derive_e6t();
  if (name == "a-sigma") return derive_atkin_sigma();
  if (name == "a-e4t") return derive_atkin_e4t();
  throw InvalidArgument("unknown derivation '" + name + "'");
}

inline const std::vector<std::string>& derivation_names() {
  static const std::vector<std::string> names{"e4t", "e6t", "a-sigma", "a-e4t"};
  return names;
}

}  // namespace ccr::symbolic
