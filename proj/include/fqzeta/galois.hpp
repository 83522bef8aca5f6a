// SPDX-License-Identifier: Apache-2.0
//
// Galois-theoretic tests for polynomials in x with coefficients in A = F_r[T]:
// Eisenstein, discriminants, the resolvent cubic, reduction modulo primes and
// classification of quartics over k = F_r(T).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqzeta/poly.hpp"

namespace fqz {

/// Polynomial in x over A; c[i] multiplies x^i.
using XPoly = std::vector<Poly>;

namespace xpoly {
void trim(XPoly& f);
std::int64_t degree(const XPoly& f);
/// Monic gcd of the coefficients.
Poly content(const XPoly& f);
XPoly primitive_part(const XPoly& f);
XPoly mul(const XPoly& a, const XPoly& b);
/// x^n f(1/x), n = deg f.
XPoly reversed(const XPoly& f);
/// Value at x = a.
Poly eval(const XPoly& f, const Poly& a);
std::string to_string(const XPoly& f, const std::string& x = "x");
}  // namespace xpoly

struct EisensteinResult {
  bool forward = false;  // constant term at the Eisenstein end
  bool reverse = false;  // leading term at the Eisenstein end
  bool any() const noexcept { return forward || reverse; }
};

/// Throws DomainError unless v is monic irreducible.
EisensteinResult eisenstein_check(const XPoly& f, const Poly& v);

struct EisensteinWitness {
  Poly v;
  bool forward = true;
};

/// Tests every irreducible v of degree <= bound dividing the relevant
/// coefficients; witnesses sorted by (degree, coefficients, orientation).
std::vector<EisensteinWitness> eisenstein_scan(const XPoly& f, unsigned degree_bound);

/// Resolvent y^3 - p y^2 - 4 s y + (4 p s - q^2) of the depressed form
/// x^4 + p x^2 + q x + s. Requires odd characteristic and monic f of degree 4.
XPoly resolvent_cubic(const XPoly& f);

/// Discriminant of a polynomial of degree 1..4 in x over A.
Poly discriminant_x(const XPoly& f);

/// Square test in F_r(T) for a polynomial; odd characteristic, d != 0.
bool disc_is_square(const Poly& d);

/// Square root in A when it exists.
std::optional<Poly> sqrt_poly(const Poly& d);

/// Irreducibility of f reduced modulo v over A/v = F_{r^deg v}. Requires r prime,
/// v monic irreducible and v not dividing lc(f).
bool irreducible_mod_prime(const XPoly& f, const Poly& v);

/// Roots of f in A for monic f (found among divisors of the constant term).
/// Returns nullopt when the divisor search exceeds its budget or the constant
/// term has degree above 1000.
std::optional<std::vector<Poly>> roots_in_A(const XPoly& f, std::size_t budget = 200000);

enum class GaloisGroup { S4, A4, D4orC4, V4, Reducible, Undecided };
std::string to_string(GaloisGroup g);

struct GaloisReport {
  GaloisGroup group = GaloisGroup::Undecided;
  /// How irreducibility of f was certified: "eisenstein", "factor-search",
  /// "mod-prime", or empty.
  std::string irreducibility_witness;
  std::optional<Poly> witness_prime;
  XPoly resolvent;
  bool resolvent_irreducible = false;
  std::optional<Poly> resolvent_witness_prime;
  std::size_t resolvent_roots = 0;
  Poly discriminant;
  bool disc_square = false;
  std::string note;
};

/// Classifies a monic quartic over A. Characteristic 2 yields Undecided.
GaloisReport quartic_galois_group(const XPoly& f, unsigned scan_bound = 6);

}  // namespace fqz
