// SPDX-License-Identifier: Apache-2.0
//
// Truncated Laurent series in a uniformizer of F_r(T) at a place.
//
// At infinity the uniformizer is pi = 1/T and a series is pi^val * u(pi) with
// u a polynomial in pi of degree < prec over F_r. At a finite place v the
// uniformizer is v itself and u is an element of A = F_r[T] modulo v^prec,
// prime to v. A zero carries only its absolute precision.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fqzeta/poly.hpp"
#include "fqzeta/ratfn.hpp"

namespace fqz {

class Place {
 public:
  /// The infinite place of F_r(T), uniformizer 1/T.
  static std::shared_ptr<const Place> infinity(FieldPtr field, std::string var = "T");
  /// The finite place of a monic irreducible v. Throws DomainError otherwise.
  static std::shared_ptr<const Place> finite(const Poly& v);

  bool is_infinite() const noexcept { return inf_; }
  const FieldPtr& field() const noexcept { return field_; }
  const std::string& var() const noexcept { return var_; }
  /// The prime v (finite places only).
  const Poly& v() const;
  /// Residue field degree over F_r.
  unsigned residue_degree() const noexcept;
  /// v^k.
  Poly v_power(std::size_t k) const;
  bool same_as(const Place& other) const noexcept;
  std::string describe() const;

 private:
  Place() = default;
  bool inf_ = true;
  FieldPtr field_;
  std::string var_;
  Poly v_;
};
using PlacePtr = std::shared_ptr<const Place>;

class ValSeries {
 public:
  /// Absolute precision of an exact zero; larger values saturate here.
  static constexpr std::int64_t kExactPrec = std::int64_t{1} << 50;

  ValSeries() = default;

  /// Exact zero known to absolute precision `abs_prec`.
  static ValSeries zero(PlacePtr place, std::int64_t abs_prec);
  static ValSeries one(PlacePtr place, std::int64_t prec);
  /// The uniformizer.
  static ValSeries uniformizer(PlacePtr place, std::int64_t prec);
  /// Image of an element of A (in the place's variable) with relative precision prec.
  static ValSeries from_poly(PlacePtr place, const Poly& a, std::int64_t prec);
  static ValSeries from_ratfn(PlacePtr place, const RatFn& a, std::int64_t prec);
  /// At infinity: pi^val * sum c_i pi^i. Leading zeros in c are absorbed into val.
  static ValSeries from_pi_coeffs(PlacePtr place, std::int64_t val, const std::vector<Elem>& c,
                                  std::int64_t prec);
  /// Generic constructor: pi^val * unit where unit is given as a Poly (in pi at
  /// infinity, in T at a finite place); the unit is normalised here.
  static ValSeries make(PlacePtr place, std::int64_t val, const Poly& unit, std::int64_t prec);

  const PlacePtr& place() const noexcept { return place_; }
  bool is_zero() const noexcept { return zero_; }
  /// Valuation; for a zero, its absolute precision (a lower bound).
  std::int64_t val() const noexcept { return val_; }
  /// Relative precision (0 for a zero).
  std::int64_t prec() const noexcept { return zero_ ? 0 : prec_; }
  /// Coefficients are known for uniformizer exponents < abs_prec().
  std::int64_t abs_prec() const noexcept { return zero_ ? val_ : val_ + prec_; }
  /// Unit part: polynomial in pi (infinity) or residue modulo v^prec in T.
  const Poly& unit() const noexcept { return unit_; }
  /// Digit of pi^(val + i): element of F_r at infinity, canonical residue mod v otherwise.
  Poly digit(std::int64_t i) const;
  /// Coefficient of pi^k as an element of F_r (infinity only).
  Elem coeff(std::int64_t k) const;
  /// Leading unit digit at infinity.
  Elem lead() const;

  /// An exact zero (absolute precision kExactPrec).
  ValSeries zero_like() const { return zero(place_, kExactPrec); }
  bool is_exact_zero() const noexcept { return zero_ && val_ >= kExactPrec; }
  ValSeries one_like() const { return one(place_, std::max<std::int64_t>(prec_, 1)); }

  ValSeries operator-() const;
  ValSeries operator+(const ValSeries& b) const;
  ValSeries operator-(const ValSeries& b) const;
  ValSeries operator*(const ValSeries& b) const;
  ValSeries operator/(const ValSeries& b) const;
  ValSeries& operator+=(const ValSeries& b) { return *this = *this + b; }
  ValSeries& operator-=(const ValSeries& b) { return *this = *this - b; }
  ValSeries& operator*=(const ValSeries& b) { return *this = *this * b; }
  /// Equality as approximations: same place, same precision data and digits.
  bool operator==(const ValSeries& b) const;
  /// True when a - b vanishes modulo pi^n (n absolute).
  bool agrees_with(const ValSeries& b, std::int64_t n) const;
  /// Valuation of a - b, capped by the absolute precision of the difference.
  std::int64_t agreement(const ValSeries& b) const;

  /// Throws DomainError on an (apparent) zero.
  ValSeries inv() const;
  ValSeries pow(std::int64_t e) const;
  /// Multiply by pi^k.
  ValSeries shift(std::int64_t k) const;
  /// Reduce relative precision to at most prec.
  ValSeries with_prec(std::int64_t prec) const;
  /// Reduce absolute precision to at most n.
  ValSeries truncate_abs(std::int64_t n) const;
  /// x^(q^i), q = r.
  ValSeries twist(unsigned i) const;
  /// Multiply by an element of F_r.
  ValSeries scale(Elem c) const;

  std::string to_string() const;

 private:
  void normalize();

  PlacePtr place_;
  bool zero_ = true;
  std::int64_t val_ = 0;
  std::int64_t prec_ = 0;
  Poly unit_;
};

inline ValSeries twist(const ValSeries& x, unsigned i) { return x.twist(i); }
/// Approximate zeros carry precision and are kept as coefficients.
inline bool droppable(const ValSeries& x) { return x.is_exact_zero(); }
inline std::int64_t pivot_score(const ValSeries& x) { return x.val(); }

/// <a> = a * T^(-deg a) at infinity for monic a.
ValSeries one_unit_part(PlacePtr inf, const Poly& a, std::int64_t prec);

}  // namespace fqz
