// SPDX-License-Identifier: Apache-2.0
//
// p-adic exponents: exact integers or residues modulo p^M.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqzeta/valseries.hpp"

namespace fqz {

class PadicInt {
 public:
  static PadicInt exact(std::uint32_t p, std::int64_t n);
  /// value mod p^M; throws DomainError unless p^M < 2^62.
  static PadicInt residue(std::uint32_t p, std::uint64_t value, unsigned M);

  std::uint32_t p() const noexcept { return p_; }
  bool is_exact() const noexcept { return exact_; }
  std::int64_t exact_value() const;
  /// Number of known digits (a large sentinel for exact integers).
  unsigned known_digits() const noexcept { return exact_ ? 62u : M_; }
  /// y mod p^K in [0, p^K). Throws PrecisionError(required = K) when K exceeds the known digits.
  std::uint64_t mod_pow(unsigned K) const;
  /// The first K base-p digits.
  std::vector<std::uint32_t> digits(unsigned K) const;

  PadicInt operator-() const;
  PadicInt operator+(const PadicInt& b) const;
  PadicInt operator*(std::int64_t k) const;
  bool operator==(const PadicInt& b) const noexcept;
  std::string to_string() const;

 private:
  std::uint32_t p_ = 2;
  bool exact_ = true;
  std::int64_t n_ = 0;      // exact value
  std::uint64_t res_ = 0;   // residue
  unsigned M_ = 0;
};

/// Digits of y needed so that binom(y, j) mod p is determined for all j <= jmax.
unsigned digits_needed(std::uint32_t p, std::int64_t jmax);
/// binom(y, j) mod p by Lucas' theorem (needs digits_needed(p, j) digits of y).
std::uint32_t binom_mod_p(const PadicInt& y, std::uint64_t j);
/// binom(n, k) mod p for nonnegative integers.
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// u^y = sum_j binom(y, j) (u - 1)^j for a 1-unit u, to relative precision prec.
ValSeries unit_pow_padic(const ValSeries& u, const PadicInt& y, std::int64_t prec);

}  // namespace fqz
