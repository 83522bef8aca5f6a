// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/valseries.hpp"

#include <algorithm>
#include <sstream>

#include "fqzeta/factor.hpp"

namespace fqz {

namespace {

const char* kPi = "pi";

// Drop the first k coefficients (exact division by var^k when they vanish).
Poly shift_down(const Poly& a, std::size_t k) {
  if (k == 0) return a;
  auto c = a.coeffs();
  if (k >= c.size()) return a.zero();
  return Poly(a.field(), std::vector<Elem>(c.begin() + static_cast<std::ptrdiff_t>(k), c.end()), a.var());
}

}  // namespace

std::shared_ptr<const Place> Place::infinity(FieldPtr field, std::string var) {
  if (!field) throw DomainError("Place::infinity: null field");
  auto p = std::shared_ptr<Place>(new Place());
  p->inf_ = true;
  p->field_ = std::move(field);
  p->var_ = std::move(var);
  return p;
}

std::shared_ptr<const Place> Place::finite(const Poly& v) {
  if (v.degree() < 1 || v.lead() != 1) throw DomainError("Place::finite: v must be monic of positive degree");
  if (!is_irreducible(v)) throw DomainError("Place::finite: v must be irreducible");
  auto p = std::shared_ptr<Place>(new Place());
  p->inf_ = false;
  p->field_ = v.field();
  p->var_ = v.var();
  p->v_ = v;
  return p;
}

const Poly& Place::v() const {
  if (inf_) throw DomainError("Place::v: infinite place");
  return v_;
}

unsigned Place::residue_degree() const noexcept { return inf_ ? 1u : static_cast<unsigned>(v_.degree()); }

Poly Place::v_power(std::size_t k) const { return pow_charp(v(), k); }

bool Place::same_as(const Place& o) const noexcept {
  if (inf_ != o.inf_ || !field_->same_as(*o.field_) || var_ != o.var_) return false;
  return inf_ || v_ == o.v_;
}

std::string Place::describe() const { return inf_ ? std::string("inf") : "v=" + v_.to_string(); }

ValSeries ValSeries::zero(PlacePtr place, std::int64_t abs_prec) {
  abs_prec = std::clamp(abs_prec, -kExactPrec, kExactPrec);
  ValSeries s;
  s.place_ = std::move(place);
  s.zero_ = true;
  s.val_ = abs_prec;
  s.prec_ = 0;
  s.unit_ = Poly(s.place_->field(), s.place_->is_infinite() ? kPi : s.place_->var());
  return s;
}

ValSeries ValSeries::one(PlacePtr place, std::int64_t prec) {
  Poly u = Poly::constant(place->field(), 1, place->is_infinite() ? kPi : place->var());
  return make(std::move(place), 0, u, prec);
}

ValSeries ValSeries::uniformizer(PlacePtr place, std::int64_t prec) { return one(std::move(place), prec).shift(1); }

ValSeries ValSeries::make(PlacePtr place, std::int64_t val, const Poly& unit, std::int64_t prec) {
  if (prec < 1) throw DomainError("ValSeries: precision must be at least 1");
  ValSeries s;
  s.place_ = std::move(place);
  s.zero_ = false;
  s.val_ = val;
  s.prec_ = prec;
  s.unit_ = unit.with_var(s.place_->is_infinite() ? kPi : s.place_->var());
  s.normalize();
  return s;
}

void ValSeries::normalize() {
  if (zero_) return;
  if (place_->is_infinite()) {
    unit_ = unit_.truncate(static_cast<std::size_t>(prec_));
    const std::int64_t l = unit_.low_degree();
    if (l < 0) {
      *this = zero(place_, val_ + prec_);
      return;
    }
    unit_ = shift_down(unit_, static_cast<std::size_t>(l));
    val_ += l;
    prec_ -= l;
  } else {
    const Poly& v = place_->v();
    unit_ = unit_ % place_->v_power(static_cast<std::size_t>(prec_));
    while (!unit_.is_zero()) {
      auto [q, r] = divmod(unit_, v);
      if (!r.is_zero()) break;
      unit_ = q;
      ++val_;
      --prec_;
    }
    if (unit_.is_zero() || prec_ <= 0) {
      *this = zero(place_, val_ + std::max<std::int64_t>(prec_, 0));
      return;
    }
    unit_ = unit_ % place_->v_power(static_cast<std::size_t>(prec_));
  }
}

ValSeries ValSeries::from_poly(PlacePtr place, const Poly& a, std::int64_t prec) {
  if (prec < 1) throw DomainError("ValSeries::from_poly: precision must be at least 1");
  if (a.is_zero()) throw DomainError("ValSeries::from_poly: zero has no finite valuation; use zero()");
  if (place->is_infinite()) {
    const std::size_t D = static_cast<std::size_t>(a.degree());
    std::vector<Elem> c(std::min<std::size_t>(D + 1, static_cast<std::size_t>(prec)));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[D - i];
    return make(place, -static_cast<std::int64_t>(D), Poly(place->field(), std::move(c), kPi), prec);
  }
  Poly u = a;
  std::int64_t k = 0;
  for (;;) {
    auto [q, r] = divmod(u, place->v());
    if (!r.is_zero()) break;
    u = std::move(q);
    ++k;
  }
  return make(place, k, u, prec);
}

ValSeries ValSeries::from_ratfn(PlacePtr place, const RatFn& a, std::int64_t prec) {
  if (a.is_zero()) throw DomainError("ValSeries::from_ratfn: zero");
  ValSeries n = from_poly(place, a.num(), prec);
  if (a.den().is_one()) return n;
  return n * from_poly(place, a.den(), prec).inv();
}

ValSeries ValSeries::from_pi_coeffs(PlacePtr place, std::int64_t val, const std::vector<Elem>& c,
                                    std::int64_t prec) {
  if (!place->is_infinite()) throw DomainError("ValSeries::from_pi_coeffs: infinite place only");
  Poly u(place->field(), c, kPi);
  if (u.is_zero()) return zero(place, val + prec);
  return make(std::move(place), val, u, prec);
}

Poly ValSeries::digit(std::int64_t i) const {
  if (i < 0) throw DomainError("ValSeries::digit: negative index");
  if (zero_ || i >= prec_) throw PrecisionError("ValSeries::digit: beyond precision", val_ + i + 1);
  if (place_->is_infinite()) return Poly::constant(place_->field(), unit_[static_cast<std::size_t>(i)], place_->var());
  Poly q = unit_;
  for (std::int64_t k = 0; k < i; ++k) q = q / place_->v();
  return q % place_->v();
}

Elem ValSeries::coeff(std::int64_t k) const {
  if (!place_->is_infinite()) throw DomainError("ValSeries::coeff: infinite place only");
  if (k >= abs_prec()) throw PrecisionError("ValSeries::coeff: beyond precision", k + 1);
  if (zero_ || k < val_) return 0;
  return unit_[static_cast<std::size_t>(k - val_)];
}

Elem ValSeries::lead() const {
  if (zero_) throw DomainError("ValSeries::lead: zero");
  if (!place_->is_infinite()) throw DomainError("ValSeries::lead: infinite place only");
  return unit_[0];
}

ValSeries ValSeries::operator-() const {
  ValSeries r = *this;
  r.unit_ = -unit_;
  return r;
}

ValSeries ValSeries::operator+(const ValSeries& b) const {
  if (!place_ || !b.place_ || !place_->same_as(*b.place_)) throw DomainError("ValSeries: place mismatch");
  const std::int64_t n = std::min(abs_prec(), b.abs_prec());
  if (zero_ && b.zero_) return zero(place_, n);
  std::int64_t m = n;
  if (!zero_) m = std::min(m, val_);
  if (!b.zero_) m = std::min(m, b.val_);
  if (m >= n) return zero(place_, n);
  const auto width = static_cast<std::size_t>(n - m);
  auto lift = [&](const ValSeries& x) -> Poly {
    if (x.zero_) return x.unit_.zero();
    const auto sh = static_cast<std::size_t>(x.val_ - m);
    if (place_->is_infinite()) return x.unit_.truncate(width > sh ? width - sh : 0).shift(sh);
    return x.unit_ * place_->v_power(sh);
  };
  Poly sum = lift(*this) + lift(b);
  if (sum.is_zero()) return zero(place_, n);
  return make(place_, m, sum, n - m);
}

ValSeries ValSeries::operator-(const ValSeries& b) const { return *this + (-b); }

ValSeries ValSeries::operator*(const ValSeries& b) const {
  if (!place_ || !b.place_ || !place_->same_as(*b.place_)) throw DomainError("ValSeries: place mismatch");
  // For a zero, val_ holds its absolute precision, so val_ + b.val_ bounds the product.
  if (zero_ || b.zero_) return zero(place_, val_ + b.val_);
  const std::int64_t P = std::min(prec_, b.prec_);
  Poly u;
  if (place_->is_infinite()) {
    u = mul(unit_.truncate(static_cast<std::size_t>(P)), b.unit_.truncate(static_cast<std::size_t>(P)))
            .truncate(static_cast<std::size_t>(P));
  } else {
    u = (unit_ * b.unit_) % place_->v_power(static_cast<std::size_t>(P));
  }
  return make(place_, val_ + b.val_, u, P);
}

ValSeries ValSeries::inv() const {
  if (zero_) throw DomainError("ValSeries::inv: zero (to the available precision)");
  const FiniteField& F = *place_->field();
  if (place_->is_infinite()) {
    const auto P = static_cast<std::size_t>(prec_);
    std::vector<Elem> b(P, 0);
    const Elem b0 = F.inv(unit_[0]);
    b[0] = b0;
    for (std::size_t k = 1; k < P; ++k) {
      Elem acc = 0;
      const std::size_t top = std::min<std::size_t>(k, unit_.size() - 1);
      for (std::size_t i = 1; i <= top; ++i) acc = F.add(acc, F.mul(unit_[i], b[k - i]));
      b[k] = F.neg(F.mul(b0, acc));
    }
    return make(place_, -val_, Poly(place_->field(), std::move(b), kPi), prec_);
  }
  return make(place_, -val_, invmod(unit_, place_->v_power(static_cast<std::size_t>(prec_))), prec_);
}

ValSeries ValSeries::operator/(const ValSeries& b) const { return *this * b.inv(); }

ValSeries ValSeries::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  if (e == 0) return one_like();
  if (zero_) return zero(place_, val_ * e);
  ValSeries r = *this, b = *this;
  --e;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

ValSeries ValSeries::shift(std::int64_t k) const {
  ValSeries r = *this;
  r.val_ += k;
  return r;
}

ValSeries ValSeries::with_prec(std::int64_t prec) const {
  if (zero_ || prec >= prec_) return *this;
  if (prec < 1) return zero(place_, val_ + std::max<std::int64_t>(prec, 0));
  return make(place_, val_, unit_, prec);
}

ValSeries ValSeries::truncate_abs(std::int64_t n) const {
  if (zero_) return zero(place_, std::min(val_, n));
  if (n <= val_) return zero(place_, n);
  return with_prec(n - val_);
}

ValSeries ValSeries::twist(unsigned i) const {
  if (i == 0) return *this;
  std::uint64_t qi = 1;
  for (unsigned k = 0; k < i; ++k) qi *= place_->field()->q();
  const auto Q = static_cast<std::int64_t>(qi);
  if (zero_) return zero(place_, val_ * Q);
  // Coefficients lie in F_r and are fixed by x -> x^r.
  return make(place_, val_ * Q, unit_.spread(qi), prec_ * Q);
}

ValSeries ValSeries::scale(Elem c) const {
  if (c == 0) return zero(place_, abs_prec());
  ValSeries r = *this;
  r.unit_ = unit_.scale(c);
  return r;
}

bool ValSeries::operator==(const ValSeries& b) const {
  if (!place_ || !b.place_) return place_ == b.place_;
  return place_->same_as(*b.place_) && zero_ == b.zero_ && val_ == b.val_ && prec_ == b.prec_ && unit_ == b.unit_;
}

std::int64_t ValSeries::agreement(const ValSeries& b) const {
  ValSeries d = *this - b;
  return d.val();
}

bool ValSeries::agrees_with(const ValSeries& b, std::int64_t n) const {
  ValSeries d = *this - b;
  if (d.is_zero()) return d.abs_prec() >= n;
  return d.val() >= n;
}

std::string ValSeries::to_string() const {
  std::ostringstream os;
  if (zero_) {
    os << "O(pi^" << val_ << ")";
    return os.str();
  }
  os << "pi^" << val_ << "*(" << unit_.to_string() << ") + O(pi^" << abs_prec() << ")";
  return os.str();
}

ValSeries one_unit_part(PlacePtr inf, const Poly& a, std::int64_t prec) {
  if (!inf->is_infinite()) throw DomainError("one_unit_part: infinite place only");
  if (a.is_zero()) throw DomainError("one_unit_part: zero");
  if (a.lead() != 1) throw DomainError("one_unit_part: argument must be monic (divide by the sign first)");
  return ValSeries::from_poly(inf, a, prec).shift(a.degree());
}

}  // namespace fqz
