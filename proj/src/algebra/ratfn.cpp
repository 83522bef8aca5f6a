// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/ratfn.hpp"

namespace fqz {

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(num_.one()) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  num_.check_compatible(den_);
  if (den_.is_zero()) throw DomainError("RatFn: zero denominator");
  reduce();
}

RatFn RatFn::zero(const FieldPtr& f, std::string var) { return RatFn(Poly(f, std::move(var))); }
RatFn RatFn::one(const FieldPtr& f, std::string var) { return RatFn(Poly::constant(f, 1, std::move(var))); }
RatFn RatFn::constant(const FieldPtr& f, Elem c, std::string var) {
  return RatFn(Poly::constant(f, c, std::move(var)));
}

void RatFn::reduce() {
  if (num_.is_zero()) {
    den_ = num_.one();
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = div_exact(num_, g);
      den_ = div_exact(den_, g);
    }
  }
  const Elem l = den_.lead();
  if (l != 1) {
    const Elem li = num_.F().inv(l);
    num_ = num_.scale(li);
    den_ = den_.scale(li);
  }
}

std::int64_t RatFn::degree() const {
  if (is_zero()) throw DomainError("RatFn::degree: zero");
  return num_.degree() - den_.degree();
}

RatFn RatFn::operator-() const {
  RatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFn RatFn::operator+(const RatFn& b) const {
  if (b.is_zero()) return *this;
  if (is_zero()) return b;
  if (den_ == b.den_) return RatFn(num_ + b.num_, den_);
  // a/d1 + b/d2 over lcm(d1, d2)
  Poly g = gcd(den_, b.den_);
  Poly d1 = div_exact(den_, g), d2 = div_exact(b.den_, g);
  return RatFn(num_ * d2 + b.num_ * d1, den_ * d2);
}

RatFn RatFn::operator-(const RatFn& b) const { return *this + (-b); }

RatFn RatFn::operator*(const RatFn& b) const {
  if (is_zero() || b.is_zero()) return zero_like();
  // Cross-cancel before multiplying to keep intermediate degrees small.
  Poly g1 = gcd(num_, b.den_), g2 = gcd(b.num_, den_);
  RatFn r;
  r.num_ = div_exact(num_, g1) * div_exact(b.num_, g2);
  r.den_ = div_exact(den_, g2) * div_exact(b.den_, g1);
  const Elem l = r.den_.lead();
  if (l != 1) {
    const Elem li = r.num_.F().inv(l);
    r.num_ = r.num_.scale(li);
    r.den_ = r.den_.scale(li);
  }
  return r;
}

RatFn RatFn::inv() const {
  if (is_zero()) throw DomainError("RatFn::inv: zero");
  return RatFn(den_, num_);
}

RatFn RatFn::operator/(const RatFn& b) const { return *this * b.inv(); }

RatFn RatFn::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  return RatFn(pow_charp(num_, static_cast<std::uint64_t>(e)), pow_charp(den_, static_cast<std::uint64_t>(e)));
}

RatFn RatFn::twist(unsigned i) const {
  if (i == 0 || is_zero()) return *this;
  std::uint64_t qi = 1;
  for (unsigned k = 0; k < i; ++k) qi *= field()->q();
  // Coefficients are fixed by x -> x^q; lowest terms and monicity survive spreading.
  RatFn r;
  r.num_ = num_.spread(qi);
  r.den_ = den_.spread(qi);
  return r;
}

RatFn RatFn::scale(Elem c) const {
  RatFn r = *this;
  r.num_ = num_.scale(c);
  if (c == 0) r.den_ = num_.one();
  return r;
}

RatFn RatFn::derivative() const {
  return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string RatFn::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace fqz
