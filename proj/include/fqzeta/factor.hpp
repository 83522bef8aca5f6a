// SPDX-License-Identifier: Apache-2.0
//
// Factorization, irreducibility and resultants over F_q.

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fqzeta/poly.hpp"

namespace fqz {

struct Factor {
  Poly f;
  unsigned mult;
};

/// a = lead * prod f_i^{mult_i}.
struct Factorization {
  Elem lead = 1;
  std::vector<Factor> factors;  // monic irreducibles, sorted by (degree, coefficients)
  Poly expand(const Poly& like) const;
};

/// Unique b with b^p = a. Throws DomainError if a is not a p-th power.
Poly pth_root(const Poly& a);

/// Monic squarefree parts with multiplicities (char-p aware). a nonzero.
std::vector<Factor> squarefree_decomposition(const Poly& a);
/// Distinct-degree factorization of a squarefree monic polynomial: (product, degree).
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& a);
/// Splits a squarefree monic product of irreducibles of degree d.
std::vector<Poly> equal_degree(const Poly& a, unsigned d, std::mt19937_64& rng);

Factorization factor(const Poly& a, std::uint64_t seed = 0x5eed);
/// Rabin's test. Throws DomainError on a constant.
bool is_irreducible(const Poly& a);
/// Distinct roots in the coefficient field, ascending.
std::vector<Elem> roots(const Poly& a, std::uint64_t seed = 0x5eed);

/// Resultant with respect to the actual degrees.
Elem resultant(const Poly& a, const Poly& b);
/// (-1)^{n(n-1)/2} Res_{n,n-1}(a, a') / lc(a) with a' taken of formal degree n-1.
Elem discriminant(const Poly& a);

/// Enumerate monic irreducibles of exactly degree d in lexicographic order.
std::vector<Poly> monic_irreducibles(const FieldPtr& field, unsigned d, std::string var = "T");

}  // namespace fqz
