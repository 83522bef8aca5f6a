// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/poly.hpp"

#include <algorithm>
#include <sstream>

namespace fqz {

namespace {

// Kernels work on raw coefficient ranges. For prime fields products are
// accumulated lazily in 64 bits; p < 2^16 so p^2 < 2^32 and up to 2^32 terms fit.

void school_prime(const Elem* a, std::size_t na, const Elem* b, std::size_t nb, std::uint32_t p,
                  Elem* out) {
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  std::vector<std::uint64_t> acc(na + nb - 1, 0);
  for (std::size_t j = 0; j < nb; ++j) {
    const std::uint64_t bj = b[j];
    if (bj == 0) continue;
    std::uint64_t* row = acc.data() + j;
    for (std::size_t i = 0; i < na; ++i) row[i] += a[i] * bj;
  }
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<Elem>(acc[k] % p);
}

void school_ext(const FiniteField& F, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
                Elem* out) {
  std::fill(out, out + na + nb - 1, 0);
  for (std::size_t j = 0; j < nb; ++j) {
    if (b[j] == 0) continue;
    for (std::size_t i = 0; i < na; ++i)
      if (a[i] != 0) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
}

void school(const FiniteField& F, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
            Elem* out) {
  if (F.is_prime_field())
    school_prime(a, na, b, nb, F.p(), out);
  else
    school_ext(F, a, na, b, nb, out);
}

void add_into(const FiniteField& F, Elem* dst, const Elem* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = F.add(dst[i], src[i]);
}
void sub_into(const FiniteField& F, Elem* dst, const Elem* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = F.sub(dst[i], src[i]);
}

// Balanced Karatsuba on equal-length operands (length n), output length 2n-1.
void kara_balanced(const FiniteField& F, const Elem* a, const Elem* b, std::size_t n, Elem* out,
                   std::size_t thr) {
  if (n < thr || n < 2) {
    school(F, a, n, b, n, out);
    return;
  }
  const std::size_t h = n / 2;
  const std::size_t hi = n - h;  // hi >= h
  std::fill(out, out + 2 * n - 1, 0);
  std::vector<Elem> z0(2 * h - 1), z2(2 * hi - 1), z1(2 * hi - 1);
  kara_balanced(F, a, b, h, z0.data(), thr);
  kara_balanced(F, a + h, b + h, hi, z2.data(), thr);
  std::vector<Elem> sa(a + h, a + n), sb(b + h, b + n);
  add_into(F, sa.data(), a, h);
  add_into(F, sb.data(), b, h);
  kara_balanced(F, sa.data(), sb.data(), hi, z1.data(), thr);
  sub_into(F, z1.data(), z0.data(), z0.size());
  sub_into(F, z1.data(), z2.data(), z2.size());
  add_into(F, out, z0.data(), z0.size());
  add_into(F, out + h, z1.data(), z1.size());
  add_into(F, out + 2 * h, z2.data(), z2.size());
}

// General Karatsuba: chop the longer operand into blocks of the shorter length.
void kara(const FiniteField& F, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
          Elem* out, std::size_t thr) {
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  if (nb < thr) {
    school(F, a, na, b, nb, out);
    return;
  }
  std::fill(out, out + na + nb - 1, 0);
  std::vector<Elem> blk(nb), prod(2 * nb - 1);
  for (std::size_t off = 0; off < na; off += nb) {
    const std::size_t len = std::min(nb, na - off);
    if (len == nb) {
      kara_balanced(F, a + off, b, nb, prod.data(), thr);
    } else {
      std::fill(blk.begin(), blk.end(), 0);
      std::copy(a + off, a + off + len, blk.begin());
      kara_balanced(F, blk.data(), b, nb, prod.data(), thr);
    }
    const std::size_t plen = std::min<std::size_t>(2 * nb - 1, na + nb - 1 - off);
    add_into(F, out + off, prod.data(), plen);
  }
}

void sparse_mul(const FiniteField& F, const Poly& a, const Poly& b, Elem* out) {
  std::vector<std::size_t> ia, ib;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) ia.push_back(i);
  for (std::size_t j = 0; j < b.size(); ++j)
    if (b[j] != 0) ib.push_back(j);
  std::fill(out, out + a.size() + b.size() - 1, 0);
  for (std::size_t i : ia)
    for (std::size_t j : ib) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
}

}  // namespace

Poly::Poly(FieldPtr field, std::string var) : field_(std::move(field)), var_(std::move(var)) {
  if (!field_) throw DomainError("Poly: null field");
}

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs, std::string var)
    : field_(std::move(field)), c_(std::move(coeffs)), var_(std::move(var)) {
  if (!field_) throw DomainError("Poly: null field");
  for (Elem e : c_)
    if (!field_->contains(e)) throw DomainError("Poly: coefficient outside the field");
  normalize();
}

Poly Poly::constant(FieldPtr field, Elem c, std::string var) {
  return Poly(std::move(field), std::vector<Elem>{c}, std::move(var));
}

Poly Poly::monomial(FieldPtr field, Elem c, std::size_t k, std::string var) {
  std::vector<Elem> v(k + 1, 0);
  v[k] = c;
  return Poly(std::move(field), std::move(v), std::move(var));
}

Poly Poly::from_ints(FieldPtr field, std::initializer_list<long long> c, std::string var) {
  return from_ints(std::move(field), std::vector<long long>(c), std::move(var));
}

Poly Poly::from_ints(FieldPtr field, const std::vector<long long>& c, std::string var) {
  std::vector<Elem> v;
  v.reserve(c.size());
  for (long long x : c) v.push_back(field->from_int(x));
  return Poly(std::move(field), std::move(v), std::move(var));
}

Poly Poly::with_var(std::string var) const {
  Poly r = *this;
  r.var_ = std::move(var);
  return r;
}

void Poly::normalize() noexcept {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t Poly::nnz() const noexcept {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](Elem e) { return e != 0; }));
}

std::int64_t Poly::low_degree() const noexcept {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<std::int64_t>(i);
  return -1;
}

void Poly::check_compatible(const Poly& b) const {
  if (!field_ || !b.field_) throw DomainError("Poly: uninitialised operand");
  if (field_ != b.field_ && !field_->same_as(*b.field_))
    throw DomainError("Poly: field descriptor mismatch");
  if (var_ != b.var_) throw DomainError("Poly: indeterminate mismatch (" + var_ + " vs " + b.var_ + ")");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Elem& e : r.c_) e = field_->neg(e);
  return r;
}

Poly& Poly::operator+=(const Poly& b) {
  check_compatible(b);
  if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), 0);
  for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = field_->add(c_[i], b.c_[i]);
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& b) {
  check_compatible(b);
  if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), 0);
  for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] = field_->sub(c_[i], b.c_[i]);
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Poly& b) { return *this = mul(*this, b); }

Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }

bool Poly::operator==(const Poly& b) const noexcept {
  if (c_ != b.c_ || var_ != b.var_) return false;
  if (field_ == b.field_) return true;
  return field_ && b.field_ && field_->same_as(*b.field_);
}

Poly Poly::scale(Elem c) const {
  if (c == 0) return zero();
  Poly r = *this;
  if (c == 1) return r;
  for (Elem& e : r.c_) e = field_->mul(e, c);
  return r;
}

Poly Poly::shift(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  Poly r = zero();
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::truncate(std::size_t n) const {
  Poly r = *this;
  if (r.c_.size() > n) r.c_.resize(n);
  r.normalize();
  return r;
}

Poly Poly::spread(std::uint64_t k) const {
  if (k == 0) throw DomainError("Poly::spread: k must be positive");
  if (k == 1 || c_.size() <= 1) return *this;
  Poly r = zero();
  r.c_.assign((c_.size() - 1) * k + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
  return r;
}

Poly Poly::frobenius_power(unsigned k) const {
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= field_->p();
  Poly r = spread(pk);
  if (!field_->is_prime_field() && k % field_->m() != 0)
    for (Elem& e : r.c_) e = field_->frobenius(e, k);
  return r;
}

Poly Poly::reversed(std::size_t n) const {
  if (n < c_.size()) throw DomainError("Poly::reversed: length too small");
  std::vector<Elem> v(n, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[n - 1 - i] = c_[i];
  return Poly(field_, std::move(v), var_);
}

Poly Poly::monic() const {
  if (is_zero()) throw DomainError("Poly::monic: zero polynomial");
  return scale(field_->inv(lead()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return zero();
  std::vector<Elem> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<long long>(i)));
  return Poly(field_, std::move(v), var_);
}

Elem Poly::eval(Elem x) const noexcept {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
  return acc;
}

Poly Poly::map_coeffs(FieldPtr target, Elem (*fn)(const FiniteField&, const FiniteField&, Elem)) const {
  std::vector<Elem> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = fn(*field_, *target, c_[i]);
  return Poly(std::move(target), std::move(v), var_);
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    const bool unit = c_[i] == 1;
    if (!unit || i == 0) {
      if (field_->is_prime_field())
        os << c_[i];
      else
        os << "[" << c_[i] << "]";
    }
    if (i > 0) {
      if (!unit) os << "*";
      os << var_;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly mul_schoolbook(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r = a.zero();
  if (a.is_zero() || b.is_zero()) return r;
  r.raw().assign(a.size() + b.size() - 1, 0);
  school(a.F(), a.coeffs().data(), a.size(), b.coeffs().data(), b.size(), r.raw().data());
  r.normalize();
  return r;
}

Poly mul_karatsuba(const Poly& a, const Poly& b, std::size_t threshold) {
  a.check_compatible(b);
  Poly r = a.zero();
  if (a.is_zero() || b.is_zero()) return r;
  r.raw().assign(a.size() + b.size() - 1, 0);
  kara(a.F(), a.coeffs().data(), a.size(), b.coeffs().data(), b.size(), r.raw().data(),
       std::max<std::size_t>(threshold, 2));
  r.normalize();
  return r;
}

Poly mul(const Poly& a, const Poly& b, const MulOptions& opt) {
  a.check_compatible(b);
  Poly r = a.zero();
  if (a.is_zero() || b.is_zero()) return r;
  const std::size_t la = a.size(), lb = b.size();
  const std::size_t lo = std::min(la, lb);
  if (opt.allow_sparse && lo > 8) {
    const double na = static_cast<double>(a.nnz()), nb = static_cast<double>(b.nnz());
    const double dense = static_cast<double>(la) * static_cast<double>(lb);
    if (na * nb * 4.0 < dense) {
      r.raw().assign(la + lb - 1, 0);
      sparse_mul(a.F(), a, b, r.raw().data());
      r.normalize();
      return r;
    }
  }
  r.raw().assign(la + lb - 1, 0);
  if (lo >= opt.karatsuba_threshold)
    kara(a.F(), a.coeffs().data(), la, b.coeffs().data(), lb, r.raw().data(), 64);
  else
    school(a.F(), a.coeffs().data(), la, b.coeffs().data(), lb, r.raw().data());
  r.normalize();
  return r;
}

Poly square(const Poly& a) { return mul(a, a); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  if (b.is_zero()) throw DomainError("divmod: division by zero polynomial");
  const FiniteField& F = a.F();
  if (a.degree() < b.degree()) return {a.zero(), a};
  std::vector<Elem> rem(a.coeffs().begin(), a.coeffs().end());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const std::size_t dq = static_cast<std::size_t>(a.degree() - b.degree());
  std::vector<Elem> q(dq + 1, 0);
  const Elem linv = F.inv(b.lead());
  const auto bc = b.coeffs();
  for (std::size_t k = dq + 1; k-- > 0;) {
    const Elem c = F.mul(rem[k + db], linv);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= db; ++i)
      if (bc[i] != 0) rem[k + i] = F.sub(rem[k + i], F.mul(c, bc[i]));
  }
  rem.resize(db);
  return {Poly(a.field(), std::move(q), a.var()), Poly(a.field(), std::move(rem), a.var())};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly div_exact(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InternalError("div_exact: nonzero remainder");
  return q;
}

bool divides(const Poly& d, const Poly& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd: both arguments are zero");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("xgcd: both arguments are zero");
  Poly r0 = a, r1 = b;
  Poly s0 = a.one(), s1 = a.zero();
  Poly t0 = a.zero(), t1 = a.one();
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Elem li = a.F().inv(r0.lead());
  return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

Poly invmod(const Poly& a, const Poly& m) {
  if (m.degree() < 1) throw DomainError("invmod: modulus must have positive degree");
  Poly ar = a % m;
  if (ar.is_zero()) throw DomainError("invmod: zero is not invertible");
  XGcd g = xgcd(ar, m);
  if (!g.g.is_one()) throw DomainError("invmod: not invertible modulo m");
  return g.s % m;
}

Poly pow(const Poly& a, std::uint64_t e) {
  Poly result = a.one();
  Poly base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = square(base);
  }
  return result;
}

Poly pow_charp(const Poly& a, std::uint64_t e) {
  if (e == 0) return a.one();
  if (a.is_zero()) return a.zero();
  const std::uint32_t p = a.F().p();
  Poly result = a.one();
  Poly frob = a;  // a^(p^i)
  unsigned i = 0;
  while (e > 0) {
    const std::uint64_t digit = e % p;
    e /= p;
    if (digit) result = mul(result, pow(frob, digit));
    ++i;
    if (e) frob = a.frobenius_power(i);
  }
  return result;
}

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) {
  if (m.is_zero()) throw DomainError("powmod: zero modulus");
  Poly result = a.one() % m;
  Poly base = a % m;
  while (e > 0) {
    if (e & 1) result = mul(result, base) % m;
    e >>= 1;
    if (e) base = square(base) % m;
  }
  return result;
}

Poly frobmod(const Poly& a, unsigned k, const Poly& m) {
  Poly x = a % m;
  const std::uint64_t q = a.F().q();
  for (unsigned i = 0; i < k; ++i) x = powmod(x, q, m);
  return x;
}

Poly compose(const Poly& f, const Poly& g, const Poly& m) {
  const bool reduce = m.field() != nullptr && !m.is_zero();
  Poly acc = g.zero();
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = mul(acc, g);
    acc += Poly::constant(g.field(), f[i], g.var());
    if (reduce) acc = acc % m;
  }
  return acc;
}

Poly random_poly(const FieldPtr& field, std::size_t degree, std::mt19937_64& rng, bool monic,
                 std::string var) {
  std::vector<Elem> v(degree + 1);
  for (auto& e : v) e = field->random(rng);
  if (monic)
    v[degree] = 1;
  else
    while (v[degree] == 0) v[degree] = field->random(rng);
  return Poly(field, std::move(v), std::move(var));
}

}  // namespace fqz
