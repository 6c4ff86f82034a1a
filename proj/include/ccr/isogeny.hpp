#pragma once

// Recovery of the isogenous curve y^2 = x^3 + A* x + B* from a root of the
// specialized CCR polynomial: the Elkies path through U (sigma roots) and the
// Atkin path through Ua (f roots, ell = 11 mod 12).

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "ccr/curve.hpp"
#include "ccr/error.hpp"
#include "ccr/field.hpp"
#include "ccr/formulas.hpp"
#include "ccr/modular_poly.hpp"

namespace ccr {

// ---------------------------------------------------------------------------
// Closed forms over F_p with typed errors

namespace detail {

inline formulas::Point<FieldElement> field_point(int ell, const FieldElement& s, const DerivativeBundle& b,
                                                 const FieldElement& e4, const FieldElement& e6) {
  return {FieldElement(e4.modulus(), static_cast<long>(ell)), e4, e6, s, b.du_s, b.du_4, b.du_6, b.du_s4, b.du_s6,
          b.du_46};
}

inline void require_nonzero_derivative(const FieldElement& d, const char* what) {
  if (d.is_zero()) throw DegenerateDerivative(std::string(what) + " vanishes at the root");
}

inline void require_nonzero(const FieldElement& x, const char* what) {
  if (x.is_zero()) throw DegeneratePoint(std::string(what) + " = 0");
}

}  // namespace detail

/// E4(q^ell) at a sigma root of U.
inline FieldElement e4_tilde(int ell, const FieldElement& sigma, const DerivativeBundle& b, const FieldElement& e4,
                             const FieldElement& e6) {
  detail::require_nonzero_derivative(b.du_s, "dU/dsigma");
  return formulas::e4_tilde(detail::field_point(ell, sigma, b, e4, e6));
}

/// E6(q^ell) at a sigma root of U.
inline FieldElement e6_tilde(int ell, const FieldElement& sigma, const DerivativeBundle& b, const FieldElement& e4,
                             const FieldElement& e6) {
  detail::require_nonzero_derivative(b.du_s, "dU/dsigma");
  detail::require_nonzero(sigma, "sigma");
  detail::require_nonzero(e4, "E4");
  detail::require_nonzero(e6, "E6");
  return formulas::e6_tilde(detail::field_point(ell, sigma, b, e4, e6));
}

/// sigma at an f root of Ua.
inline FieldElement atkin_sigma(int ell, const FieldElement& f, const DerivativeBundle& b, const FieldElement& e4,
                                const FieldElement& e6) {
  detail::require_nonzero_derivative(f, "f");
  detail::require_nonzero_derivative(b.du_s, "dUa/df");
  return formulas::atkin_sigma(detail::field_point(ell, f, b, e4, e6));
}

/// E4(q^ell) at an f root of Ua.
inline FieldElement atkin_e4_tilde(int ell, const FieldElement& f, const DerivativeBundle& b, const FieldElement& e4,
                                   const FieldElement& e6) {
  detail::require_nonzero_derivative(f, "f");
  detail::require_nonzero_derivative(b.du_s, "dUa/df");
  detail::require_nonzero(e4, "E4");
  detail::require_nonzero(e6, "E6");
  return formulas::atkin_e4_tilde(detail::field_point(ell, f, b, e4, e6));
}

inline FieldElement a_star_from(int ell, const FieldElement& e4t) {
  const long l2 = static_cast<long>(ell) * ell;
  return -3 * FieldElement(e4t.modulus(), l2 * l2) * e4t;
}

inline FieldElement b_star_from(int ell, const FieldElement& e6t) {
  const long l3 = static_cast<long>(ell) * ell * ell;
  return -2 * FieldElement(e6t.modulus(), l3 * l3) * e6t;
}

struct PowerSums {
  FieldElement sigma0, sigma2, sigma3;
};

/// sigma_0, sigma_2, sigma_3 from A - A* = 5(6 s2 + 2A s0) and
/// B - B* = 7(10 s3 + 6A s1 + 4B s0).
inline PowerSums elkies_power_sums(const FieldElement& a, const FieldElement& b, const FieldElement& a_star,
                                   const FieldElement& b_star, const FieldElement& sigma, int ell) {
  const Integer& p = a.modulus()->value();
  if (p == 5 || p == 7) throw InvalidArgument("power sums need p != 5, 7");
  const FieldElement s0 = FieldElement(a.modulus(), static_cast<long>((ell - 1) / 2));
  const FieldElement s2 = ((a - a_star) / 5 - 2 * a * s0) / 6;
  const FieldElement s3 = ((b - b_star) / 7 - 6 * a * sigma - 4 * b * s0) / 10;
  return {s0, s2, s3};
}

// ---------------------------------------------------------------------------
// Phi over F_p

inline FieldElement evaluate(const ClassicalModularPoly& phi, const FieldElement& x, const FieldElement& y) {
  const Modulus& m = x.modulus();
  FieldElement acc(m, 0L);
  for (const auto& [e, c] : phi.terms) acc += FieldElement(m, c) * x.pow(e[0]) * y.pow(e[1]);
  return acc;
}

// ---------------------------------------------------------------------------
// Elkies step

struct ValidationFlags {
  bool v_root = false;
  bool w_root = false;
  bool phi_match = false;
  bool phi_checked = false;  // Phi is available only for small ell
};

struct IsogenyStepResult {
  int ell = 0;
  FieldElement sigma, e4t, e6t, a_star, b_star, sigma0, sigma2, sigma3;
  DerivativeBundle bundle;
  ValidationFlags validated;

  bool valid() const { return validated.v_root && validated.w_root && (!validated.phi_checked || validated.phi_match); }
};

struct RootDiagnostic {
  FieldElement root;
  std::string error;
};

/// Field-multiplication and wall-clock cost of one step.
struct StepStats {
  std::uint64_t setup_mults = 0;  // specialization and root finding
  std::uint64_t root_mults = 0;   // all per-root work
  std::size_t roots = 0;
  double setup_seconds = 0;
  double seconds = 0;  // whole step

  /// Cost of producing one result: setup plus the mean per-root work.
  double mults_per_root() const {
    return static_cast<double>(setup_mults) + (roots ? static_cast<double>(root_mults) / static_cast<double>(roots) : 0);
  }

  double seconds_per_root() const {
    return setup_seconds + (roots ? (seconds - setup_seconds) / static_cast<double>(roots) : 0);
  }
};

struct ElkiesOutcome {
  std::vector<IsogenyStepResult> results;
  std::vector<RootDiagnostic> skipped;
  StepStats stats;

  /// No root of U over F_p: ell is an Atkin prime for the curve.
  bool atkin() const { return stats.roots == 0; }
};

/// U, V, W (and Phi when ell <= 13) for one ell, built once and reused.
struct ElkiesPolys {
  int ell;
  WeightedTrivariatePoly u, v, w;
  std::optional<ClassicalModularPoly> phi;
  PartialDerivatives du;

  static ElkiesPolys build(int ell) {
    WeightedTrivariatePoly u = ccr::build(PolyKind::U, ell);
    PartialDerivatives du(u);
    std::optional<ClassicalModularPoly> phi;
    if (ell <= 13) phi = build_classical_phi(ell);
    return {ell, std::move(u), ccr::build(PolyKind::V, ell), ccr::build(PolyKind::W, ell), std::move(phi),
            std::move(du)};
  }
};

inline ElkiesOutcome elkies_step(const CurveParams& curve, const ElkiesPolys& polys, std::uint64_t seed = 0) {
  const int ell = polys.ell;
  if (ell < 5 || !is_prime(ell)) throw InvalidArgument("ell must be a prime >= 5");
  const Modulus& m = curve.modulus();
  if (m->value() % ell == 0) throw InvalidArgument("p must not divide ell");

  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t c0 = m->multiplications();
  ElkiesOutcome out;
  const FieldElement e4 = curve.e4(), e6 = curve.e6();
  const auto at = polys.du.at(curve);
  const std::vector<FieldElement> rs = roots(at.polys[0], seed);
  std::optional<UniPoly> v_at, w_at;
  std::optional<FieldElement> j;
  if (!rs.empty()) {
    v_at = specialize(polys.v, curve);
    w_at = specialize(polys.w, curve);
    j = curve.j_invariant();
  }
  const std::uint64_t c1 = m->multiplications();
  out.stats.setup_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  for (const FieldElement& sigma : rs) {
    try {
      IsogenyStepResult r;
      r.ell = ell;
      r.sigma = sigma;
      r.bundle = at.at(sigma);
      r.e4t = e4_tilde(ell, sigma, r.bundle, e4, e6);
      r.e6t = e6_tilde(ell, sigma, r.bundle, e4, e6);
      r.a_star = a_star_from(ell, r.e4t);
      r.b_star = b_star_from(ell, r.e6t);
      const PowerSums ps = elkies_power_sums(curve.a, curve.b, r.a_star, r.b_star, sigma, ell);
      r.sigma0 = ps.sigma0;
      r.sigma2 = ps.sigma2;
      r.sigma3 = ps.sigma3;
      r.validated.v_root = (*v_at)(r.a_star).is_zero();
      r.validated.w_root = (*w_at)(r.b_star).is_zero();
      if (polys.phi) {
        r.validated.phi_checked = true;
        try {
          r.validated.phi_match = evaluate(*polys.phi, *j, j_invariant(r.a_star, r.b_star)).is_zero();
        } catch (const DegeneratePoint&) {
          r.validated.phi_match = false;
        }
      }
      out.results.push_back(std::move(r));
    } catch (const DegenerateDerivative& e) {
      out.skipped.push_back({sigma, e.what()});
    } catch (const DegeneratePoint& e) {
      out.skipped.push_back({sigma, e.what()});
    }
  }

  out.stats.setup_mults = c1 - c0;
  out.stats.root_mults = m->multiplications() - c1;
  out.stats.roots = rs.size();
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline ElkiesOutcome elkies_step(const CurveParams& curve, int ell, std::uint64_t seed = 0) {
  return elkies_step(curve, ElkiesPolys::build(ell), seed);
}

// ---------------------------------------------------------------------------
// Atkin step (ell = 11 mod 12)

/// Y^2 + 6912 f^12 / Delta + 4 A*^3 / 27 with Delta = (E4^3 - E6^2) / 1728.
inline UniPoly twopol_p1(const FieldElement& f, const FieldElement& a_star, const CurveParams& curve) {
  const Modulus& m = f.modulus();
  const FieldElement e4 = curve.e4(), e6 = curve.e6();
  const FieldElement delta = (e4 * e4 * e4 - e6 * e6) / 1728;
  detail::require_nonzero(delta, "Delta");
  const FieldElement c = 6912 * f.pow(12) / delta + 4 * a_star * a_star * a_star / 27;
  return UniPoly(m, std::vector<FieldElement>{c, FieldElement(m, 0L), FieldElement(m, 1L)});
}

/// Ua(-ell f, A*, Y) with Ua in the (A, B) basis.
inline UniPoly twopol_p2(const WeightedTrivariatePoly& ua, const FieldElement& f, const FieldElement& a_star) {
  const Modulus& m = f.modulus();
  const TrivariatePoly t = ua.in_basis(Basis::AB).terms;
  const FieldElement x = -static_cast<long>(ua.ell) * f;
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(std::max(t.degree(2), 0) + 1), FieldElement(m, 0L));
  for (const auto& [e, c] : t.terms())
    coeffs[static_cast<std::size_t>(e[2])] += FieldElement(m, c) * x.pow(e[0]) * a_star.pow(e[1]);
  return UniPoly(m, std::move(coeffs));
}

/// The common root of two polynomials in Y; GcdDegreeTwo if it is not unique.
inline FieldElement common_root(const UniPoly& p1, const UniPoly& p2) {
  const UniPoly g = gcd(p1, p2);
  if (g.degree() >= 2) throw GcdDegreeTwo("gcd has degree " + std::to_string(g.degree()) + "; B* is ambiguous");
  if (g.degree() < 1) throw VerificationFailure("the two polynomials in B* have no common root");
  return -g.coeff(0);
}

inline FieldElement atkin_b_star(const FieldElement& f, const FieldElement& a_star, const CurveParams& curve,
                                 const WeightedTrivariatePoly& ua) {
  return common_root(twopol_p1(f, a_star, curve), twopol_p2(ua, f, a_star));
}

struct AtkinResult {
  int ell = 0;
  FieldElement f, sigma, e4t, a_star, b_star;
  DerivativeBundle bundle;
  int gcd_degree = -1;
  std::string error;  // why B* was not recovered
  bool w_root = false;
  bool phi_match = false;
  bool phi_checked = false;

  bool has_b_star() const { return gcd_degree == 1; }
  bool valid() const { return has_b_star() && w_root && (!phi_checked || phi_match); }
};

struct AtkinOutcome {
  std::vector<FieldElement> roots;
  std::vector<AtkinResult> results;
  std::vector<RootDiagnostic> skipped;
};

/// Ua plus W (and Phi when ell <= 13) for validating B*.
struct AtkinPolys {
  int ell;
  WeightedTrivariatePoly ua, w;
  std::optional<ClassicalModularPoly> phi;
  PartialDerivatives du;

  static AtkinPolys build(int ell) {
    WeightedTrivariatePoly ua = ccr::build(PolyKind::Ua, ell);
    PartialDerivatives du(ua);
    std::optional<ClassicalModularPoly> phi;
    if (ell <= 13) phi = build_classical_phi(ell);
    return {ell, std::move(ua), ccr::build(PolyKind::W, ell), std::move(phi), std::move(du)};
  }
};

inline AtkinOutcome atkin_step(const CurveParams& curve, const AtkinPolys& polys, std::uint64_t seed = 0) {
  const int ell = polys.ell;
  const FieldElement e4 = curve.e4(), e6 = curve.e6();
  const auto at = polys.du.at(curve);
  AtkinOutcome out;
  out.roots = roots(at.polys[0], seed);
  if (out.roots.empty()) return out;
  const UniPoly w_at = specialize(polys.w, curve);
  const FieldElement j = curve.j_invariant();
  for (const FieldElement& f : out.roots) {
    try {
      AtkinResult r;
      r.ell = ell;
      r.f = f;
      r.bundle = at.at(f);
      r.sigma = atkin_sigma(ell, f, r.bundle, e4, e6);
      r.e4t = atkin_e4_tilde(ell, f, r.bundle, e4, e6);
      r.a_star = a_star_from(ell, r.e4t);
      const UniPoly p1 = twopol_p1(f, r.a_star, curve), p2 = twopol_p2(polys.ua, f, r.a_star);
      r.gcd_degree = gcd(p1, p2).degree();
      try {
        r.b_star = common_root(p1, p2);
      } catch (const Error& e) {
        r.error = e.what();
        out.results.push_back(std::move(r));
        continue;
      }
      r.w_root = w_at(r.b_star).is_zero();
      if (polys.phi) {
        r.phi_checked = true;
        try {
          r.phi_match = evaluate(*polys.phi, j, j_invariant(r.a_star, r.b_star)).is_zero();
        } catch (const DegeneratePoint&) {
          r.phi_match = false;
        }
      }
      out.results.push_back(std::move(r));
    } catch (const DegenerateDerivative& e) {
      out.skipped.push_back({f, e.what()});
    } catch (const DegeneratePoint& e) {
      out.skipped.push_back({f, e.what()});
    }
  }
  return out;
}

}  // namespace ccr
