// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/padic.hpp"

#include <sstream>

namespace fqz {

namespace {

// p^K, or 0 when it would exceed 2^62.
std::uint64_t ppow(std::uint32_t p, unsigned K) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < K; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) return 0;
    r *= p;
  }
  return r;
}

}  // namespace

PadicInt PadicInt::exact(std::uint32_t p, std::int64_t n) {
  if (!is_prime_u64(p)) throw DomainError("PadicInt: p must be prime");
  PadicInt y;
  y.p_ = p;
  y.exact_ = true;
  y.n_ = n;
  return y;
}

PadicInt PadicInt::residue(std::uint32_t p, std::uint64_t value, unsigned M) {
  if (!is_prime_u64(p)) throw DomainError("PadicInt: p must be prime");
  if (M == 0) throw DomainError("PadicInt: at least one digit is required");
  const std::uint64_t pm = ppow(p, M);
  if (pm == 0) throw DomainError("PadicInt: p^M too large");
  PadicInt y;
  y.p_ = p;
  y.exact_ = false;
  y.res_ = value % pm;
  y.M_ = M;
  return y;
}

std::int64_t PadicInt::exact_value() const {
  if (!exact_) throw DomainError("PadicInt: not an exact integer");
  return n_;
}

std::uint64_t PadicInt::mod_pow(unsigned K) const {
  if (!exact_ && K > M_)
    throw PrecisionError("p-adic exponent known to " + std::to_string(M_) + " digits; " + std::to_string(K) +
                             " required",
                         K);
  const std::uint64_t pk = ppow(p_, K);
  if (pk == 0) throw DomainError("PadicInt: p^K too large");
  if (!exact_) return res_ % pk;
  const auto m = static_cast<std::int64_t>(pk);
  std::int64_t r = n_ % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint32_t> PadicInt::digits(unsigned K) const {
  std::uint64_t v = mod_pow(K);
  std::vector<std::uint32_t> d(K);
  for (unsigned i = 0; i < K; ++i) {
    d[i] = static_cast<std::uint32_t>(v % p_);
    v /= p_;
  }
  return d;
}

PadicInt PadicInt::operator-() const {
  if (exact_) return exact(p_, -n_);
  const std::uint64_t pm = ppow(p_, M_);
  return residue(p_, (pm - res_) % pm, M_);
}

PadicInt PadicInt::operator+(const PadicInt& b) const {
  if (p_ != b.p_) throw DomainError("PadicInt: prime mismatch");
  if (exact_ && b.exact_) return exact(p_, n_ + b.n_);
  const unsigned M = std::min(known_digits(), b.known_digits());
  const std::uint64_t pm = ppow(p_, M);
  return residue(p_, (mod_pow(M) + b.mod_pow(M)) % pm, M);
}

PadicInt PadicInt::operator*(std::int64_t k) const {
  if (exact_) return exact(p_, n_ * k);
  const std::uint64_t pm = ppow(p_, M_);
  std::int64_t kk = k % static_cast<std::int64_t>(pm);
  if (kk < 0) kk += static_cast<std::int64_t>(pm);
  const auto prod = static_cast<unsigned __int128>(res_) * static_cast<std::uint64_t>(kk);
  return residue(p_, static_cast<std::uint64_t>(prod % pm), M_);
}

bool PadicInt::operator==(const PadicInt& b) const noexcept {
  if (p_ != b.p_ || exact_ != b.exact_) return false;
  return exact_ ? n_ == b.n_ : (M_ == b.M_ && res_ == b.res_);
}

std::string PadicInt::to_string() const {
  std::ostringstream os;
  if (exact_)
    os << n_;
  else
    os << res_ << " + O(" << p_ << "^" << M_ << ")";
  return os.str();
}

unsigned digits_needed(std::uint32_t p, std::int64_t jmax) {
  unsigned K = 1;
  std::uint64_t pk = p;
  while (static_cast<std::int64_t>(pk) <= jmax) {
    pk *= p;
    ++K;
  }
  return K;
}

std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  while (k > 0) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small binomial mod p via multiplicative formula
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t t = 0; t < ki; ++t) {
      num = num * ((ni - t) % p) % p;
      den = den * ((t + 1) % p) % p;
    }
    // den is invertible since ki < p
    std::uint64_t inv = 1, b = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    r = r * (num * inv % p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t binom_mod_p(const PadicInt& y, std::uint64_t j) {
  const unsigned K = digits_needed(y.p(), static_cast<std::int64_t>(j));
  return binom_mod_p(y.mod_pow(K), j, y.p());
}

ValSeries unit_pow_padic(const ValSeries& u, const PadicInt& y, std::int64_t prec) {
  if (prec < 1) throw DomainError("unit_pow_padic: precision must be at least 1");
  if (u.is_zero() || u.val() != 0) throw DomainError("unit_pow_padic: not a 1-unit");
  const PlacePtr& pl = u.place();
  if (pl->field()->p() != y.p()) throw DomainError("unit_pow_padic: exponent prime differs from the characteristic");
  const ValSeries one = ValSeries::one(pl, prec);
  const ValSeries w = (u - one).truncate_abs(prec);
  if (!w.is_zero() && w.val() < 1) throw DomainError("unit_pow_padic: not a 1-unit");
  const std::int64_t P = std::min(prec, u.prec());
  if (w.is_zero()) return ValSeries::one(pl, std::min(P, std::max<std::int64_t>(w.abs_prec(), 1)));
  // Terms j with j * v(w) >= P vanish to this precision.
  const std::int64_t jmax = (P - 1) / w.val();
  const unsigned K = digits_needed(y.p(), jmax);
  const auto yk = y.mod_pow(K);
  ValSeries acc = ValSeries::one(pl, P);
  ValSeries wj = ValSeries::one(pl, P);
  const FiniteField& F = *pl->field();
  for (std::int64_t j = 1; j <= jmax; ++j) {
    wj = (wj * w).truncate_abs(P);
    const std::uint32_t c = binom_mod_p(yk, static_cast<std::uint64_t>(j), y.p());
    if (c != 0 && !wj.is_zero()) acc = acc + wj.scale(F.from_int(c));
  }
  return acc.truncate_abs(P);
}

}  // namespace fqz
