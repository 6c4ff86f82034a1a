#pragma once

// Text serialization of built polynomials.
//
//   CCR kind=<U|V|W|Ua|Phi> ell=<ell> basis=<E4E6|AB|Delta|j>
//   i a b coeff            (E4E6, AB; Phi uses "i k 0 coeff")
//   i a b m coeff          (Delta: X^i E4^a E6^b Delta^m)
//
// Terms are sorted lexicographically descending by their exponent tuple and
// integers are written without a denominator.

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "ccr/error.hpp"
#include "ccr/modular_poly.hpp"

namespace ccr {

inline std::string store_header(PolyKind kind, int ell, Basis basis) {
  return "CCR kind=" + to_string(kind) + " ell=" + std::to_string(ell) + " basis=" + to_string(basis);
}

inline void write_store(std::ostream& os, const WeightedTrivariatePoly& p) {
  os << store_header(p.kind, p.ell, p.basis) << '\n';
  for (const auto& [e, c] : p.terms.terms()) os << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << to_string(c) << '\n';
}

inline void write_store_delta(std::ostream& os, const WeightedTrivariatePoly& p) {
  os << store_header(p.kind, p.ell, Basis::Delta) << '\n';
  for (const auto& [e, c] : to_delta_display(p))
    os << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << ' ' << to_string(c) << '\n';
}

inline void write_store(std::ostream& os, const ClassicalModularPoly& phi) {
  os << store_header(PolyKind::Phi, phi.ell, Basis::J) << '\n';
  for (const auto& [e, c] : phi.terms) os << e[0] << ' ' << e[1] << " 0 " << c.get_str() << '\n';
}

inline std::string to_store_string(const WeightedTrivariatePoly& p) {
  std::ostringstream os;
  write_store(os, p);
  return os.str();
}

inline std::string to_store_string(const ClassicalModularPoly& phi) {
  std::ostringstream os;
  write_store(os, phi);
  return os.str();
}

struct StoreHeader {
  PolyKind kind;
  int ell;
  Basis basis;
};

namespace detail {

inline StoreHeader parse_store_header(const std::string& line) {
  std::istringstream is(line);
  std::string tag, kind, ell, basis;
  if (!(is >> tag >> kind >> ell >> basis) || tag != "CCR" || kind.rfind("kind=", 0) != 0 ||
      ell.rfind("ell=", 0) != 0 || basis.rfind("basis=", 0) != 0)
    throw InvalidArgument("malformed store header '" + line + "'");
  StoreHeader h{parse_kind(kind.substr(5)), 0, parse_basis(basis.substr(6))};
  try {
    h.ell = std::stoi(ell.substr(4));
  } catch (const std::exception&) {
    throw InvalidArgument("malformed ell in store header '" + line + "'");
  }
  return h;
}

}  // namespace detail

using StoredPolynomial = std::variant<WeightedTrivariatePoly, ClassicalModularPoly>;

/// Reads either kind of polynomial. A Delta-basis file is converted back to
/// the E4E6 basis.
inline StoredPolynomial read_store(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("empty store");
  const StoreHeader h = detail::parse_store_header(line);
  if ((h.kind == PolyKind::Phi) != (h.basis == Basis::J))
    throw InvalidArgument("basis=j is reserved for kind=Phi");

  ClassicalModularPoly phi;
  phi.ell = h.ell;
  TrivariatePoly terms;
  DeltaTerms delta;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int i = 0, a = 0, b = 0, m = 0;
    std::string coeff, extra;
    bool ok = static_cast<bool>(ls >> i >> a >> b);
    if (ok && h.basis == Basis::Delta) ok = static_cast<bool>(ls >> m);
    ok = ok && static_cast<bool>(ls >> coeff) && !(ls >> extra);
    if (!ok) throw InvalidArgument("malformed store line " + std::to_string(lineno) + ": '" + line + "'");
    const Rational c = parse_rational(coeff);
    if (h.basis == Basis::J) {
      if (!is_integer(c) || b != 0) throw InvalidArgument("bad Phi term on line " + std::to_string(lineno));
      if (sgn(c) != 0) phi.terms[{i, a}] = c.get_num();
    } else if (h.basis == Basis::Delta) {
      if (sgn(c) != 0) delta[{i, a, b, m}] += c;
    } else {
      terms.add({i, a, b}, c);
    }
  }
  if (h.basis == Basis::J) return phi;
  WeightedTrivariatePoly p;
  p.kind = h.kind;
  p.ell = h.ell;
  p.basis = h.basis == Basis::Delta ? Basis::E4E6 : h.basis;
  p.terms = h.basis == Basis::Delta ? from_delta_display(delta) : terms;
  return p;
}

inline StoredPolynomial read_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  return read_store(in);
}

inline StoredPolynomial read_store_string(const std::string& text) {
  std::istringstream is(text);
  return read_store(is);
}

}  // namespace ccr
