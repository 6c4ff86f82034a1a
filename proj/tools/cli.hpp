#pragma once

// Command-line front end. run_cli() is separate from main() so that tests
// can drive it with captured streams.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ccr/error.hpp"
#include "ccr/isogeny.hpp"
#include "ccr/modular_poly.hpp"
#include "ccr/qseries.hpp"
#include "ccr/store.hpp"
#include "ccr/symbolic.hpp"

namespace ccr::cli {

enum ExitCode : int { kOk = 0, kNoResult = 1, kUsage = 2, kFailure = 3, kDegenerate = 4 };

inline constexpr const char* kCacheEnv = "CCR_CACHE_DIR";

inline std::filesystem::path default_cache_dir() {
  const char* env = std::getenv(kCacheEnv);
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".ccr-cache");
}

/// Store text of a freshly built polynomial.
inline std::string render(PolyKind kind, int ell, Basis basis) {
  if (kind == PolyKind::Phi) return to_store_string(build_classical_phi(ell));
  const WeightedTrivariatePoly p = build(kind, ell);
  if (basis == Basis::Delta) {
    std::ostringstream os;
    write_store_delta(os, p);
    return os.str();
  }
  return to_store_string(p.in_basis(basis));
}

/// Polynomials on disk keyed by (kind, ell, basis).
class PolyCache {
 public:
  PolyCache(std::filesystem::path dir, std::ostream& log) : dir_(std::move(dir)), log_(log) {}

  std::filesystem::path path(PolyKind kind, int ell, Basis basis) const {
    if (kind == PolyKind::Phi) basis = Basis::J;
    return dir_ / (to_string(kind) + "-" + std::to_string(ell) + "-" + to_string(basis) + ".ccr");
  }

  /// Cached text, or a fresh build stored for next time. With `rebuild` the
  /// polynomial is always rebuilt and must match any cached copy byte for byte.
  std::string text(PolyKind kind, int ell, Basis basis, bool rebuild = false) {
    validate_kind_ell(kind, ell);
    const std::filesystem::path file = path(kind, ell, basis);
    std::optional<std::string> cached;
    if (std::ifstream in(file); in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      cached = ss.str();
    }
    if (cached && !rebuild) return *cached;
    const std::string fresh = render(kind, ell, basis);
    if (cached) {
      if (*cached != fresh) throw VerificationFailure("rebuilt " + file.string() + " differs from the cached copy");
      return fresh;
    }
    store(file, fresh);
    return fresh;
  }

  WeightedTrivariatePoly poly(PolyKind kind, int ell) {
    return std::get<WeightedTrivariatePoly>(read_store_string(text(kind, ell, Basis::E4E6)));
  }

  ClassicalModularPoly phi(int ell) { return std::get<ClassicalModularPoly>(read_store_string(text(PolyKind::Phi, ell, Basis::J))); }

 private:
  void store(const std::filesystem::path& file, const std::string& body) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << body;
      if (!out) {
        log_ << "warning: cannot write cache file " << file.string() << '\n';
        return;
      }
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) log_ << "warning: cannot write cache file " << file.string() << ": " << ec.message() << '\n';
  }

  std::filesystem::path dir_;
  std::ostream& log_;
};

// ---------------------------------------------------------------------------
// Shared flag handling

struct CurveFlags {
  std::string p, a, b;
  int ell = 0;
  std::uint64_t seed = 0;
};

inline void add_curve_flags(CLI::App* cmd, CurveFlags& f) {
  cmd->add_option("--p", f.p, "field characteristic")->required();
  cmd->add_option("--a", f.a, "curve coefficient A")->required();
  cmd->add_option("--b", f.b, "curve coefficient B")->required();
  cmd->add_option("--ell", f.ell, "prime ell")->required();
  cmd->add_option("--seed", f.seed, "root-splitting seed");
}

inline Integer parse_integer(const std::string& s, const char* what) {
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InvalidArgument(std::string(what) + " is not an integer: '" + s + "'");
  return v;
}

inline CurveParams parse_curve(const CurveFlags& f) {
  const Integer p = parse_integer(f.p, "p");
  if (p <= 3) throw InvalidArgument("p must be a prime > 3");
  const Modulus m = make_modulus(p);
  return CurveParams(FieldElement(m, parse_integer(f.a, "A")), FieldElement(m, parse_integer(f.b, "B")));
}

inline const char* flag(bool b) { return b ? "1" : "0"; }

// ---------------------------------------------------------------------------
// Commands

inline int cmd_build(PolyCache& cache, int ell, const std::string& kind_s, const std::string& basis_s,
                     const std::string& out_path, bool rebuild, std::ostream& out) {
  const PolyKind kind = parse_kind(kind_s);
  const Basis basis = kind == PolyKind::Phi ? Basis::J : parse_basis(basis_s);
  validate_kind_ell(kind, ell);
  const std::string text = cache.text(kind, ell, basis, rebuild);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    f << text;
    if (!f) throw InvalidArgument("cannot write '" + out_path + "'");
    out << "wrote=" << out_path << " kind=" << to_string(kind) << " ell=" << ell << " basis=" << to_string(basis)
        << '\n';
  }
  return kOk;
}

inline int cmd_elkies(PolyCache& cache, const CurveFlags& flags, std::ostream& out) {
  const int ell = flags.ell;
  if (ell < 5 || !is_prime(ell)) throw InvalidArgument("ell must be a prime >= 5");
  const CurveParams curve = parse_curve(flags);
  if (curve.modulus()->value() == ell) throw InvalidArgument("p must differ from ell");

  WeightedTrivariatePoly u = cache.poly(PolyKind::U, ell);
  PartialDerivatives du(u);
  std::optional<ClassicalModularPoly> phi;
  if (ell <= 13) phi = cache.phi(ell);
  const ElkiesPolys polys{ell, std::move(u), cache.poly(PolyKind::V, ell), cache.poly(PolyKind::W, ell),
                          std::move(phi), std::move(du)};
  const ElkiesOutcome res = elkies_step(curve, polys, flags.seed);

  out << "p=" << curve.modulus()->value().get_str() << " A=" << curve.a << " B=" << curve.b << " ell=" << ell
      << " roots=" << res.stats.roots << '\n';
  std::size_t valid = 0;
  for (const auto& r : res.results) {
    out << "sigma=" << r.sigma << " Astar=" << r.a_star << " Bstar=" << r.b_star << " E4t=" << r.e4t
        << " E6t=" << r.e6t << " sigma0=" << r.sigma0 << " sigma2=" << r.sigma2 << " sigma3=" << r.sigma3
        << " dsigma=" << r.bundle.du_s << " d4=" << r.bundle.du_4 << " d6=" << r.bundle.du_6
        << " v_root=" << flag(r.validated.v_root) << " w_root=" << flag(r.validated.w_root)
        << " phi_match=" << (r.validated.phi_checked ? flag(r.validated.phi_match) : "na")
        << " valid=" << flag(r.valid()) << '\n';
    valid += r.valid();
  }
  for (const auto& s : res.skipped) out << "sigma=" << s.root << " skipped=\"" << s.error << "\"\n";

  if (res.atkin()) {
    out << "status=atkin (Atkin prime: no root of U_" << ell << ")\n";
    return kNoResult;
  }
  if (res.results.empty()) {
    out << "status=degenerate\n";
    return kDegenerate;
  }
  out << "status=" << (valid ? "ok" : "unverified") << '\n';
  return valid ? kOk : kFailure;
}

inline int cmd_atkin(PolyCache& cache, const CurveFlags& flags, std::ostream& out) {
  const int ell = flags.ell;
  validate_kind_ell(PolyKind::Ua, ell);
  const CurveParams curve = parse_curve(flags);
  if (curve.modulus()->value() == ell) throw InvalidArgument("p must differ from ell");

  WeightedTrivariatePoly ua = cache.poly(PolyKind::Ua, ell);
  PartialDerivatives du(ua);
  std::optional<ClassicalModularPoly> phi;
  if (ell <= 13) phi = cache.phi(ell);
  const AtkinPolys polys{ell, std::move(ua), cache.poly(PolyKind::W, ell), std::move(phi), std::move(du)};
  const AtkinOutcome res = atkin_step(curve, polys, flags.seed);

  out << "p=" << curve.modulus()->value().get_str() << " A=" << curve.a << " B=" << curve.b << " ell=" << ell
      << " roots=" << res.roots.size() << '\n';
  std::size_t valid = 0;
  for (const auto& r : res.results) {
    out << "f=" << r.f << " sigma=" << r.sigma << " E4t=" << r.e4t;
    if (r.has_b_star()) {
      out << " Bstar=" << r.b_star << " Astar=" << r.a_star << " gcd_degree=" << r.gcd_degree
          << " w_root=" << flag(r.w_root) << " phi_match=" << (r.phi_checked ? flag(r.phi_match) : "na")
          << " valid=" << flag(r.valid()) << '\n';
    } else {
      out << " Astar=" << r.a_star << " gcd_degree=" << r.gcd_degree << " error=\"" << r.error << "\"\n";
    }
    valid += r.valid();
  }
  for (const auto& s : res.skipped) out << "f=" << s.root << " skipped=\"" << s.error << "\"\n";

  if (res.roots.empty()) {
    out << "status=atkin (no root of Ua_" << ell << ")\n";
    return kNoResult;
  }
  if (res.results.empty()) {
    out << "status=degenerate\n";
    return kDegenerate;
  }
  out << "status=" << (valid ? "ok" : "unverified") << '\n';
  return valid ? kOk : kFailure;
}

inline int cmd_verify_symbolic(const std::string& which, std::ostream& out, std::ostream& err) {
  std::vector<std::string> cases;
  if (which == "all") {
    cases = symbolic::derivation_names();
  } else {
    const auto& names = symbolic::derivation_names();
    if (std::find(names.begin(), names.end(), which) == names.end())
      throw InvalidArgument("unknown case '" + which + "' (expected e4t, e6t, a-sigma, a-e4t or all)");
    cases = {which};
  }
  std::optional<std::string> first_failure;
  for (const auto& c : cases) {
    const symbolic::Derivation d = symbolic::run(c);
    out << d.report();
    out << "case=" << c << ' ' << (d.passed() ? "PASS" : "FAIL") << '\n';
    if (!d.passed() && !first_failure) first_failure = c + ": " + d.first_failure()->name;
  }
  if (first_failure) {
    err << "verification failed at " << *first_failure << '\n';
    return kFailure;
  }
  return kOk;
}

inline FormName parse_series_name(const std::string& name, int ell) {
  if (name == "E2") return FormName::e2();
  if (name == "E4") return FormName::e4();
  if (name == "E6") return FormName::e6();
  if (name == "Delta") return FormName::delta();
  if (name == "j") return FormName::j();
  if (name == "sigma1") {
    if (ell < 2) throw InvalidArgument("series sigma1 needs --ell");
    return FormName::sigma1(ell);
  }
  if (name == "f") {
    if (ell < 11 || ell % 12 != 11 || !is_prime(ell)) throw InvalidArgument("series f needs a prime --ell = 11 mod 12");
    return FormName::eta_squared_product(ell);
  }
  if (name == "F" || name.rfind("F_", 0) == 0) {
    int n = ell;
    if (name.size() > 2) {
      try {
        std::size_t used = 0;
        n = std::stoi(name.substr(2), &used);
        if (used != name.size() - 2) throw InvalidArgument("bad index");
      } catch (const std::exception&) {
        throw InvalidArgument("bad series name '" + name + "'");
      }
    }
    if (n < 2) throw InvalidArgument("series F_n needs n >= 2 (F_<n> or F with --ell)");
    return FormName::f(n);
  }
  throw InvalidArgument("unknown series '" + name + "'");
}

inline int cmd_series(const std::string& name, int ell, long prec, std::ostream& out) {
  if (prec < 1) throw InvalidArgument("--prec must be positive");
  const PowerSeries s = expand(parse_series_name(name, ell), prec);
  for (long n = s.lead(); n < s.abs_precision(); ++n) out << n << ' ' << to_string(s.coeff(n)) << '\n';
  return kOk;
}

inline int cmd_selftest(std::ostream& out) {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    out << "selftest=" << name << ' ' << (ok ? "PASS" : "FAIL") << '\n';
    failures += !ok;
  };
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      report(name, fn());
    } catch (const std::exception& e) {
      out << "selftest=" << name << " error=\"" << e.what() << "\"\n";
      ++failures;
    }
  };

  guarded("u5", [] {
    TrivariatePoly expect;
    for (const auto& [e, c] : std::initializer_list<std::pair<Exponent3, long>>{
             {{6, 0, 0}, 1}, {{4, 1, 0}, 20}, {{3, 0, 1}, 160}, {{2, 2, 0}, -80}, {{1, 1, 1}, -128}, {{0, 0, 2}, -80}})
      expect.add(e, c);
    return build(PolyKind::U, 5).in_basis(Basis::AB).terms == expect;
  });
  const Modulus m = make_modulus(1009);
  const CurveParams curve = make_curve(m, 1, 3);
  guarded("elkies5", [&] {
    for (const auto& r : elkies_step(curve, 5).results)
      if (r.sigma == 584) return r.a_star == 441 && r.b_star == 997 && r.valid();
    return false;
  });
  guarded("atkin11", [&] {
    for (const auto& r : atkin_step(curve, AtkinPolys::build(11)).results)
      if (r.f == 65) return r.sigma == 75 && r.e4t == 532 && r.has_b_star() && r.b_star == 460;
    return false;
  });
  guarded("symbolic", [] {
    for (const auto& c : symbolic::derivation_names())
      if (!symbolic::run(c).passed()) return false;
    return true;
  });
  guarded("series", [] {
    const PowerSeries e4 = expand(FormName::e4(), 3);
    return e4.coeff(0) == 1 && e4.coeff(1) == 240 && e4.coeff(2) == 2160;
  });
  out << "status=" << (failures ? "FAIL" : "ok") << '\n';
  return failures ? kFailure : kOk;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Computations with CCR modular polynomials and isogenous curves", "ccr"};
  app.require_subcommand(1);
  std::string cache_dir = default_cache_dir().string();
  app.add_option("--cache-dir", cache_dir, std::string("polynomial cache (default $") + kCacheEnv + " or .ccr-cache)");

  int ell = 0;
  std::string kind = "U", basis = "E4E6", out_path;
  bool rebuild = false;
  CLI::App* build_cmd = app.add_subcommand("build", "build a polynomial and print or write it");
  build_cmd->add_option("--ell", ell, "prime ell")->required();
  build_cmd->add_option("--kind", kind, "U, V, W, Ua or Phi");
  build_cmd->add_option("--basis", basis, "E4E6, AB or Delta");
  build_cmd->add_option("--out", out_path, "output file (default stdout)");
  build_cmd->add_flag("--rebuild", rebuild, "rebuild and compare with the cached copy");

  CurveFlags elkies_flags, atkin_flags;
  std::string poly_dir;
  CLI::App* elkies_cmd = app.add_subcommand("elkies", "isogenous curves from the roots of U_ell");
  add_curve_flags(elkies_cmd, elkies_flags);
  elkies_cmd->add_option("--poly-dir", poly_dir, "directory with stored polynomials");
  CLI::App* atkin_cmd = app.add_subcommand("atkin", "isogenous curves from the roots of Ua_ell, ell = 11 mod 12");
  add_curve_flags(atkin_cmd, atkin_flags);
  atkin_cmd->add_option("--poly-dir", poly_dir, "directory with stored polynomials");

  std::string which = "all";
  CLI::App* verify_cmd = app.add_subcommand("verify-symbolic", "re-derive the closed forms symbolically");
  verify_cmd->add_option("--case", which, "e4t, e6t, a-sigma, a-e4t or all");

  std::string series_name;
  int series_ell = 0;
  long prec = 10;
  CLI::App* series_cmd = app.add_subcommand("series", "print a q-expansion, one 'exponent coefficient' per line");
  series_cmd->add_option("--name", series_name, "E2, E4, E6, Delta, j, F_n, sigma1 or f")->required();
  series_cmd->add_option("--ell", series_ell, "ell for sigma1, f and F");
  series_cmd->add_option("--prec", prec, "number of terms from q^0 (default 10)");

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "quick end-to-end checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    PolyCache cache(poly_dir.empty() ? std::filesystem::path(cache_dir) : std::filesystem::path(poly_dir), err);
    if (*build_cmd) return cmd_build(cache, ell, kind, basis, out_path, rebuild, out);
    if (*elkies_cmd) return cmd_elkies(cache, elkies_flags, out);
    if (*atkin_cmd) return cmd_atkin(cache, atkin_flags, out);
    if (*verify_cmd) return cmd_verify_symbolic(which, out, err);
    if (*series_cmd) return cmd_series(series_name, series_ell, prec, out);
    if (*selftest_cmd) return cmd_selftest(out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateDerivative& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const DegeneratePoint& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace ccr::cli
