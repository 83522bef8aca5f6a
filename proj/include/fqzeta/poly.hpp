// SPDX-License-Identifier: Apache-2.0
//
// Dense univariate polynomials over a finite field.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqzeta/field.hpp"

namespace fqz {

/// Multiplication tuning. Operands whose shorter side has at least
/// `karatsuba_threshold` coefficients go through Karatsuba.
struct MulOptions {
  std::size_t karatsuba_threshold = 512;
  bool allow_sparse = true;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field, std::string var = "T");
  Poly(FieldPtr field, std::vector<Elem> coeffs, std::string var = "T");

  static Poly constant(FieldPtr field, Elem c, std::string var = "T");
  static Poly monomial(FieldPtr field, Elem c, std::size_t k, std::string var = "T");
  /// Coefficients given as integers mapped into the prime subfield, low to high.
  static Poly from_ints(FieldPtr field, std::initializer_list<long long> c, std::string var = "T");
  static Poly from_ints(FieldPtr field, const std::vector<long long>& c, std::string var = "T");

  const FieldPtr& field() const noexcept { return field_; }
  const FiniteField& F() const noexcept { return *field_; }
  const std::string& var() const noexcept { return var_; }
  Poly with_var(std::string var) const;

  /// -1 for the zero polynomial.
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  std::size_t size() const noexcept { return c_.size(); }
  Elem operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  Elem lead() const noexcept { return c_.empty() ? 0 : c_.back(); }
  std::span<const Elem> coeffs() const noexcept { return c_; }
  std::size_t nnz() const noexcept;
  /// Index of the lowest nonzero coefficient; -1 for zero.
  std::int64_t low_degree() const noexcept;

  Poly zero() const { return Poly(field_, var_); }
  Poly one() const { return constant(field_, 1, var_); }

  Poly operator-() const;
  Poly& operator+=(const Poly& b);
  Poly& operator-=(const Poly& b);
  Poly& operator*=(const Poly& b);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& b) const noexcept;

  Poly scale(Elem c) const;
  /// Multiply by var^k.
  Poly shift(std::size_t k) const;
  /// Truncate to the coefficients of var^0 .. var^(n-1).
  Poly truncate(std::size_t n) const;
  /// a(var^k).
  Poly spread(std::uint64_t k) const;
  /// a^(p^k): coefficient Frobenius plus spreading by p^k.
  Poly frobenius_power(unsigned k) const;
  /// Reverse of the coefficient vector padded to length n (n >= size()).
  Poly reversed(std::size_t n) const;
  Poly monic() const;
  Poly derivative() const;
  Elem eval(Elem x) const noexcept;
  /// Apply a field map coefficient-wise into another field.
  Poly map_coeffs(FieldPtr target, Elem (*fn)(const FiniteField&, const FiniteField&, Elem)) const;

  std::string to_string() const;

  /// Raw coefficient access for kernels; caller must keep the vector trimmed.
  std::vector<Elem>& raw() noexcept { return c_; }
  void normalize() noexcept;
  /// Throws DomainError unless b has the same field and indeterminate.
  void check_compatible(const Poly& b) const;

 private:

  FieldPtr field_;
  std::vector<Elem> c_;
  std::string var_ = "T";
};

Poly mul(const Poly& a, const Poly& b, const MulOptions& opt = {});
Poly mul_schoolbook(const Poly& a, const Poly& b);
Poly mul_karatsuba(const Poly& a, const Poly& b, std::size_t threshold = 32);
Poly square(const Poly& a);

/// Quotient and remainder; throws DomainError on division by zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Exact division; throws InternalError on a nonzero remainder.
Poly div_exact(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& a);

/// Monic gcd. gcd(0, 0) throws DomainError.
Poly gcd(const Poly& a, const Poly& b);
struct XGcd {
  Poly g, s, t;  // s a + t b = g, g monic
};
XGcd xgcd(const Poly& a, const Poly& b);
/// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
Poly invmod(const Poly& a, const Poly& m);

/// a^e by repeated squaring.
Poly pow(const Poly& a, std::uint64_t e);
/// a^e via the base-p digits of e and a^(p^i) = a^{(p^i)}(var^(p^i)).
Poly pow_charp(const Poly& a, std::uint64_t e);
/// a^e mod m.
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m);
/// a^(q^k) mod m, q the field order, by iterating q-th powers.
Poly frobmod(const Poly& a, unsigned k, const Poly& m);
/// f(g) (mod m when m is nonzero).
Poly compose(const Poly& f, const Poly& g, const Poly& m = Poly());

Poly random_poly(const FieldPtr& field, std::size_t degree, std::mt19937_64& rng, bool monic = false,
                 std::string var = "T");

}  // namespace fqz
