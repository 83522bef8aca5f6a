// SPDX-License-Identifier: Apache-2.0
//
// Rational functions over F_q in lowest terms with monic denominator.

#pragma once

#include <string>

#include "fqzeta/poly.hpp"

namespace fqz {

class RatFn {
 public:
  RatFn() = default;
  explicit RatFn(Poly num);
  /// Throws DomainError on a zero denominator.
  RatFn(Poly num, Poly den);

  static RatFn zero(const FieldPtr& f, std::string var = "T");
  static RatFn one(const FieldPtr& f, std::string var = "T");
  static RatFn constant(const FieldPtr& f, Elem c, std::string var = "T");

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  const FieldPtr& field() const noexcept { return num_.field(); }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_poly() const noexcept { return den_.is_one(); }
  /// Degree valuation deg num - deg den (the negative of the valuation at infinity).
  std::int64_t degree() const;

  RatFn zero_like() const { return RatFn(num_.zero(), num_.one()); }
  RatFn one_like() const { return RatFn(num_.one(), num_.one()); }

  RatFn operator-() const;
  RatFn operator+(const RatFn& b) const;
  RatFn operator-(const RatFn& b) const;
  RatFn operator*(const RatFn& b) const;
  RatFn operator/(const RatFn& b) const;
  RatFn& operator+=(const RatFn& b) { return *this = *this + b; }
  RatFn& operator-=(const RatFn& b) { return *this = *this - b; }
  RatFn& operator*=(const RatFn& b) { return *this = *this * b; }
  bool operator==(const RatFn& b) const noexcept { return num_ == b.num_ && den_ == b.den_; }

  RatFn inv() const;
  RatFn pow(std::int64_t e) const;
  /// x^(q^i) where q is the coefficient field order.
  RatFn twist(unsigned i) const;
  RatFn scale(Elem c) const;
  /// First hyperderivative d/dvar.
  RatFn derivative() const;

  std::string to_string() const;

 private:
  void reduce();
  Poly num_, den_;
};

inline RatFn twist(const RatFn& x, unsigned i) { return x.twist(i); }

}  // namespace fqz
