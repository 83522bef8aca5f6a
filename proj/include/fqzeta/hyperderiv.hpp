// SPDX-License-Identifier: Apache-2.0
//
// Hasse-Schmidt hyperderivatives D_j on A = F_r[T] and their companions.

#pragma once

#include <cstdint>
#include <vector>

#include "fqzeta/kfield.hpp"
#include "fqzeta/poly.hpp"

namespace fqz {

/// D_j(f), with D_j T^n = binom(n, j) T^{n-j}.
Poly hyperderive(std::uint64_t j, const Poly& f);
/// D_j on a rational function, via the quotient recursion.
RatFn hyperderive(std::uint64_t j, const RatFn& f);

/// D_n(uv) == sum_i D_i(u) D_{n-i}(v).
bool leibniz_check(std::uint64_t n, const Poly& u, const Poly& v);

/// (mu_1, ..., mu_n) with sum mu_i = j and sum i mu_i = n.
struct Partition {
  unsigned n = 0, j = 0;
  std::vector<unsigned> mu;
};
/// All of P(n, j), lexicographic in mu.
std::vector<Partition> partitions(unsigned n, unsigned j);

/// m(m-1)...(m-j+1) / prod mu_i! reduced into the prime field of `field`.
Elem multinomial_charp(const FieldPtr& field, std::uint64_t m, const Partition& mu);

/// D_mu(f) = prod_i D_i(f)^{mu_i}.
Poly composite_derivative(const Partition& mu, const Poly& f);

/// sum_{j=1}^n f^{m-j} sum_{mu in P(n,j)} M_mu^j(m) D_mu(f).
Poly power_formula(const Poly& f, std::uint64_t m, unsigned n);

/// Checks f^{m-n} | D_n(c f^m). Throws DomainError when m <= n.
bool vadic_continuity_bound(unsigned n, const Poly& c, const Poly& f, unsigned m);

/// d/dT on k(lambda): the unique extension of the derivation of k, using
/// d(lambda) = -(df/dT)(lambda) / f'(lambda) for the generator.
KElt extend_derivation(const KElt& x);

}  // namespace fqz
