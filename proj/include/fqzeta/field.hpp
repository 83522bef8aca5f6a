// SPDX-License-Identifier: Apache-2.0
//
// Finite fields F_q, q = p^m, in a polynomial basis over F_p.
//
// Elements are encoded as integers 0 <= a < q whose base-p digits are the
// coefficients of the residue polynomial (little-endian). The prime subfield
// is therefore {0, ..., p-1} and 0/1 are the additive/multiplicative units.
// Extension fields use logarithm and Zech tables, so q is bounded by
// FiniteField::kMaxOrder.

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fqzeta/errors.hpp"

namespace fqz {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;
using Elem = std::uint32_t;

class FiniteField {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  /// F_p. Throws DomainError unless p is a prime with p < 2^16.
  static FieldPtr prime(std::uint32_t p);
  /// F_{p^m} with the given monic modulus (coefficients low to high, size m+1).
  static FieldPtr make(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);
  /// F_{p^m} with the lexicographically first monic irreducible modulus.
  static FieldPtr make(std::uint32_t p, std::uint32_t m);
  /// F_q from a prime power q.
  static FieldPtr of_order(std::uint64_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint64_t q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return m_ == 1; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  /// Same characteristic, degree and modulus.
  bool same_as(const FiniteField& other) const noexcept;

  Elem add(Elem a, Elem b) const noexcept {
    if (m_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return ext_add(a, b);
  }
  Elem neg(Elem a) const noexcept {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_[a];
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (m_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DomainError on a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// a^(p^k).
  Elem frobenius(Elem a, unsigned k = 1) const noexcept;
  /// True iff a is a square in F_q (0 counts as a square).
  bool is_square(Elem a) const noexcept;

  /// Image of an integer in the prime subfield.
  Elem from_int(long long n) const noexcept;
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;
  bool contains(Elem a) const noexcept { return a < q_; }
  /// A generator of the multiplicative group.
  Elem generator() const noexcept { return gen_; }
  Elem random(std::mt19937_64& rng) const;
  std::string describe() const;

  FiniteField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

 private:
  Elem ext_add(Elem a, Elem b) const noexcept;
  Elem slow_mul(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  Elem gen_ = 1;
  std::vector<std::uint32_t> log_;   // log_[a] for a != 0
  std::vector<Elem> exp_;            // exp_[k] = gen^k, size 2(q-1)
  std::vector<std::int64_t> zech_;   // log(1 + gen^k), -1 when 1 + gen^k = 0
  std::vector<Elem> neg_;
};

bool is_prime_u64(std::uint64_t n) noexcept;
/// Returns (p, m) with q = p^m, or throws DomainError.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

/// Value type pairing an element with its field.
class FqElem {
 public:
  FqElem(FieldPtr field, Elem v);
  const FieldPtr& field() const noexcept { return field_; }
  Elem value() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }

  FqElem operator+(const FqElem& b) const;
  FqElem operator-(const FqElem& b) const;
  FqElem operator*(const FqElem& b) const;
  FqElem operator-() const;
  FqElem inv() const;
  FqElem pow(std::uint64_t e) const;
  FqElem frobenius(unsigned k = 1) const;
  bool operator==(const FqElem& b) const noexcept;

 private:
  void check_same(const FqElem& b) const;
  FieldPtr field_;
  Elem v_;
};

}  // namespace fqz
