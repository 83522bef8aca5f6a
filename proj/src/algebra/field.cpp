// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/field.hpp"

#include <algorithm>
#include <sstream>

namespace fqz {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Polynomials over F_p as digit vectors; used only while building tables and
// searching for moduli.
using DigitPoly = std::vector<std::uint32_t>;

void trim(DigitPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

DigitPoly dp_mod(DigitPoly a, const DigitPoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t inv_lead = [&] {
    std::uint32_t l = m.back();
    for (std::uint32_t x = 1; x < p; ++x)
      if ((std::uint64_t{l} * x) % p == 1) return x;
    return 1u;
  }();
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint32_t c = static_cast<std::uint32_t>((std::uint64_t{a.back()} * inv_lead) % p);
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - c} * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

DigitPoly dp_mulmod(const DigitPoly& a, const DigitPoly& b, const DigitPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  DigitPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return dp_mod(std::move(r), m, p);
}

DigitPoly dp_sub(DigitPoly a, const DigitPoly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

DigitPoly dp_gcd(DigitPoly a, DigitPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    DigitPoly r = dp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin irreducibility test over F_p.
bool dp_irreducible(const DigitPoly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  const DigitPoly x{0, 1};
  auto frob_pow = [&](std::size_t k) {
    // x^(p^k) mod f
    DigitPoly cur = x;
    for (std::size_t it = 0; it < k; ++it) {
      DigitPoly base = cur, acc{1};
      std::uint64_t e = p;
      while (e) {
        if (e & 1) acc = dp_mulmod(acc, base, f, p);
        base = dp_mulmod(base, base, f, p);
        e >>= 1;
      }
      cur = acc;
    }
    return cur;
  };
  if (!dp_sub(frob_pow(n), x, p).empty()) return false;
  for (std::uint64_t ell : prime_factors(n)) {
    DigitPoly g = dp_gcd(f, dp_sub(frob_pow(n / ell), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw DomainError("field order must be a prime power >= 2");
  auto f = prime_factors(q);
  if (f.size() != 1) throw DomainError("field order " + std::to_string(q) + " is not a prime power");
  std::uint32_t m = 0;
  for (std::uint64_t x = q; x > 1; x /= f[0]) ++m;
  return {static_cast<std::uint32_t>(f[0]), m};
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < m_; ++i) q_ *= p_;
  if (m_ > 1) build_tables();
  else gen_ = [&] {
    if (p_ == 2) return Elem{1};
    auto fs = prime_factors(p_ - 1);
    for (Elem g = 2; g < p_; ++g) {
      bool ok = true;
      for (auto f : fs) {
        std::uint64_t acc = 1, b = g, e = (p_ - 1) / f;
        while (e) {
          if (e & 1) acc = acc * b % p_;
          b = b * b % p_;
          e >>= 1;
        }
        if (acc == 1) ok = false;
      }
      if (ok) return g;
    }
    return Elem{1};
  }();
}

FieldPtr FiniteField::prime(std::uint32_t p) {
  if (!is_prime_u64(p) || p >= (1u << 16)) throw DomainError("characteristic must be a prime < 2^16");
  return std::make_shared<const FiniteField>(p, 1, std::vector<std::uint32_t>{0, 1});
}

FieldPtr FiniteField::make(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus) {
  if (!is_prime_u64(p) || p >= (1u << 16)) throw DomainError("characteristic must be a prime < 2^16");
  if (m == 0) throw DomainError("extension degree must be >= 1");
  if (m == 1) return prime(p);
  if (modulus.size() != m + 1 || modulus.back() != 1)
    throw DomainError("modulus must be monic of degree m");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder) throw DomainError("field order exceeds the table budget");
  }
  for (auto c : modulus)
    if (c >= p) throw DomainError("modulus coefficient out of range");
  if (!dp_irreducible(modulus, p)) throw DomainError("modulus is reducible over F_p");
  return std::make_shared<const FiniteField>(p, m, std::move(modulus));
}

FieldPtr FiniteField::make(std::uint32_t p, std::uint32_t m) {
  if (m == 1) return prime(p);
  if (!is_prime_u64(p)) throw DomainError("characteristic must be prime");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) q *= p;
  if (q > kMaxOrder) throw DomainError("field order exceeds the table budget");
  for (std::uint64_t code = 0; code < q; ++code) {
    std::vector<std::uint32_t> f(m + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[m] = 1;
    if (f[0] == 0) continue;
    if (dp_irreducible(f, p)) return make(p, m, std::move(f));
  }
  throw InternalError("no irreducible modulus found");
}

FieldPtr FiniteField::of_order(std::uint64_t q) {
  auto [p, m] = prime_power(q);
  return make(p, m);
}

bool FiniteField::same_as(const FiniteField& o) const noexcept {
  return this == &o || (p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_);
}

Elem FiniteField::slow_mul(Elem a, Elem b) const {
  DigitPoly r = dp_mulmod(digits(a), digits(b), modulus_, p_);
  return from_digits(r);
}

void FiniteField::build_tables() {
  const std::uint64_t n = q_ - 1;
  auto fs = prime_factors(n);
  // Search for a primitive element by checking orders.
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem acc = 1, b = a;
    while (e) {
      if (e & 1) acc = slow_mul(acc, b);
      b = slow_mul(b, b);
      e >>= 1;
    }
    return acc;
  };
  gen_ = 0;
  for (Elem g = 2; g < q_; ++g) {
    bool ok = true;
    for (auto f : fs)
      if (slow_pow(g, n / f) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      gen_ = g;
      break;
    }
  }
  if (gen_ == 0) throw InternalError("no primitive element");
  log_.assign(q_, 0);
  exp_.assign(2 * n, 0);
  Elem cur = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    exp_[k] = cur;
    exp_[k + n] = cur;
    log_[cur] = static_cast<std::uint32_t>(k);
    cur = slow_mul(cur, gen_);
  }
  neg_.assign(q_, 0);
  for (Elem a = 0; a < q_; ++a) {
    auto d = digits(a);
    for (auto& x : d) x = (p_ - x) % p_;
    neg_[a] = from_digits(d);
  }
  zech_.assign(n, -1);
  for (std::uint64_t k = 0; k < n; ++k) {
    auto d = digits(exp_[k]);
    d[0] = (d[0] + 1) % p_;
    Elem s = from_digits(d);
    zech_[k] = s == 0 ? -1 : static_cast<std::int64_t>(log_[s]);
  }
}

Elem FiniteField::ext_add(Elem a, Elem b) const noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint64_t n = q_ - 1;
  const std::uint64_t la = log_[a], lb = log_[b];
  const std::uint64_t diff = (lb + n - la) % n;
  const std::int64_t z = zech_[diff];
  if (z < 0) return 0;
  return exp_[la + static_cast<std::uint64_t>(z)];
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw DomainError("inversion of zero in " + describe());
  if (m_ == 1) {
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::int64_t tmp = t - qq * nt;
      t = nt;
      nt = tmp;
      tmp = r - qq * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  const std::uint64_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (m_ > 1) {
    const std::uint64_t n = q_ - 1;
    return exp_[(log_[a] * (e % n)) % n];
  }
  Elem acc = 1, b = a;
  while (e) {
    if (e & 1) acc = mul(acc, b);
    b = mul(b, b);
    e >>= 1;
  }
  return acc;
}

Elem FiniteField::frobenius(Elem a, unsigned k) const noexcept {
  if (m_ == 1 || a == 0) return a;
  k %= m_;
  std::uint64_t e = 1;
  for (unsigned i = 0; i < k; ++i) e *= p_;
  return pow(a, e);
}

bool FiniteField::is_square(Elem a) const noexcept {
  if (a == 0 || p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

Elem FiniteField::from_int(long long n) const noexcept {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint32_t> d(m_, 0);
  for (std::uint32_t i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  if (d.size() > m_) {
    for (std::size_t i = m_; i < d.size(); ++i)
      if (d[i] != 0) throw DomainError("element has too many digits for " + describe());
  }
  std::uint64_t v = 0;
  for (std::size_t i = std::min<std::size_t>(d.size(), m_); i-- > 0;) {
    if (d[i] >= p_) throw DomainError("digit out of range for " + describe());
    v = v * p_ + d[i];
  }
  return static_cast<Elem>(v);
}

Elem FiniteField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
  return static_cast<Elem>(dist(rng));
}

std::string FiniteField::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (m_ > 1) {
    os << " (mod";
    for (auto c : modulus_) os << ' ' << c;
    os << ")";
  }
  return os.str();
}

FqElem::FqElem(FieldPtr field, Elem v) : field_(std::move(field)), v_(v) {
  if (!field_ || !field_->contains(v_)) throw DomainError("element out of range");
}

void FqElem::check_same(const FqElem& b) const {
  if (!field_->same_as(*b.field_)) throw DomainError("field descriptor mismatch");
}

FqElem FqElem::operator+(const FqElem& b) const {
  check_same(b);
  return {field_, field_->add(v_, b.v_)};
}
FqElem FqElem::operator-(const FqElem& b) const {
  check_same(b);
  return {field_, field_->sub(v_, b.v_)};
}
FqElem FqElem::operator*(const FqElem& b) const {
  check_same(b);
  return {field_, field_->mul(v_, b.v_)};
}
FqElem FqElem::operator-() const { return {field_, field_->neg(v_)}; }
FqElem FqElem::inv() const { return {field_, field_->inv(v_)}; }
FqElem FqElem::pow(std::uint64_t e) const { return {field_, field_->pow(v_, e)}; }
FqElem FqElem::frobenius(unsigned k) const { return {field_, field_->frobenius(v_, k)}; }
bool FqElem::operator==(const FqElem& b) const noexcept {
  return v_ == b.v_ && field_->same_as(*b.field_);
}

}  // namespace fqz
