// SPDX-License-Identifier: Apache-2.0
//
// The Carlitz module C and its tensor powers C^{(n)} as twisted matrix
// series, their exponentials and logarithms, Carlitz factorials and the
// Bernoulli-Carlitz numbers.
//
// Scalars of the base field k = F_r(theta) are polynomials/rational functions
// in the variable "theta". The twist sends a scalar x to x^(r^i).

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fqzeta/errors.hpp"
#include "fqzeta/poly.hpp"
#include "fqzeta/ratfn.hpp"
#include "fqzeta/valseries.hpp"

namespace fqz {

inline constexpr const char* kTheta = "theta";

/// a^(q^i) for a polynomial over F_q.
inline Poly twist(const Poly& a, unsigned i) {
  if (i == 0 || a.is_zero()) return a;
  std::uint64_t qi = 1;
  for (unsigned k = 0; k < i; ++k) qi *= a.F().q();
  return a.spread(qi);
}

/// The theta-image of an element of A.
inline Poly theta_image(const Poly& a) { return a.with_var(kTheta); }

namespace scalar {
inline Poly zero(const Poly& x) { return x.zero(); }
inline Poly one(const Poly& x) { return x.one(); }
inline RatFn zero(const RatFn& x) { return x.zero_like(); }
inline RatFn one(const RatFn& x) { return x.one_like(); }
inline ValSeries zero(const ValSeries& x) { return x.zero_like(); }
inline ValSeries one(const ValSeries& x) { return x.one_like(); }
}  // namespace scalar

/// Square matrix, row-major.
template <class S>
class SMat {
 public:
  SMat() = default;
  SMat(std::size_t n, const S& fill) : n_(n), e_(n * n, fill) {}
  static SMat identity(std::size_t n, const S& proto) {
    SMat m(n, scalar::zero(proto));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar::one(proto);
    return m;
  }
  static SMat scalar_matrix(std::size_t n, const S& c) {
    SMat m(n, scalar::zero(c));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  std::size_t dim() const noexcept { return n_; }
  S& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  const std::vector<S>& entries() const noexcept { return e_; }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const S& x) { return x.is_zero(); });
  }

  SMat operator+(const SMat& b) const {
    SMat r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + b.e_[k];
    return r;
  }
  SMat operator-(const SMat& b) const {
    SMat r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - b.e_[k];
    return r;
  }
  SMat operator-() const {
    SMat r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
  }
  SMat operator*(const SMat& b) const {
    SMat r(n_, scalar::zero(e_.front()));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const S& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j)
          if (!b(k, j).is_zero()) r(i, j) = r(i, j) + a * b(k, j);
      }
    return r;
  }
  SMat scaled(const S& c) const {
    SMat r = *this;
    for (auto& x : r.e_) x = x * c;
    return r;
  }
  SMat twisted(unsigned i) const {
    SMat r = *this;
    if (i == 0) return r;
    for (auto& x : r.e_) x = twist(x, i);
    return r;
  }
  template <class F>
  auto map(F&& fn) const -> SMat<decltype(fn(std::declval<const S&>()))> {
    using S2 = decltype(fn(std::declval<const S&>()));
    SMat<S2> r;
    std::vector<S2> out;
    out.reserve(e_.size());
    for (const auto& x : e_) out.push_back(fn(x));
    r = SMat<S2>::from_entries(n_, std::move(out));
    return r;
  }
  static SMat from_entries(std::size_t n, std::vector<S> e) {
    if (e.size() != n * n) throw DomainError("SMat: wrong number of entries");
    SMat m;
    m.n_ = n;
    m.e_ = std::move(e);
    return m;
  }
  bool operator==(const SMat& b) const { return n_ == b.n_ && e_ == b.e_; }

 private:
  std::size_t n_ = 0;
  std::vector<S> e_;
};

/// Upper superdiagonal nilpotent N (ones at (i, i+1)).
template <class S>
SMat<S> nilpotent_N(std::size_t n, const S& proto) {
  SMat<S> m(n, scalar::zero(proto));
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = scalar::one(proto);
  return m;
}

/// Lower-left corner unit V.
template <class S>
SMat<S> corner_V(std::size_t n, const S& proto) {
  SMat<S> m(n, scalar::zero(proto));
  m(n - 1, 0) = scalar::one(proto);
  return m;
}

/// sum_i A_i tau^i with t x t matrix coefficients. An exact series is a twisted
/// polynomial; a truncated one knows its coefficients for tau-degrees <= N.
template <class S>
class TauMatSeries {
 public:
  TauMatSeries() = default;
  /// Exact series with the given coefficients.
  TauMatSeries(std::vector<SMat<S>> coeffs, S proto)
      : proto_(scalar::zero(proto)), exact_(true), c_(std::move(coeffs)) {
    t_ = c_.empty() ? 0 : c_.front().dim();
    trim();
  }
  static TauMatSeries truncated(std::vector<SMat<S>> coeffs, std::int64_t N, S proto) {
    TauMatSeries s(std::move(coeffs), proto);
    s.exact_ = false;
    s.N_ = N;
    s.cut();
    return s;
  }
  static TauMatSeries constant(const SMat<S>& m) {
    return TauMatSeries(std::vector<SMat<S>>{m}, m.entries().front());
  }
  static TauMatSeries identity(std::size_t t, const S& proto) { return constant(SMat<S>::identity(t, proto)); }

  std::size_t dim() const noexcept { return t_; }
  bool exact() const noexcept { return exact_; }
  /// Truncation degree; for exact series, the tau-degree.
  std::int64_t N() const noexcept { return exact_ ? degree() : N_; }
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }
  const S& proto() const noexcept { return proto_; }
  const std::vector<SMat<S>>& coeffs() const noexcept { return c_; }
  /// Coefficient of tau^k (zero past the stored range).
  SMat<S> coeff(std::size_t k) const {
    if (!exact_ && static_cast<std::int64_t>(k) > N_) throw PrecisionError("TauMatSeries: beyond truncation", k);
    return k < c_.size() ? c_[k] : SMat<S>(t_, proto_);
  }

  TauMatSeries truncate(std::int64_t N) const {
    std::int64_t n = exact_ ? N : std::min(N, N_);
    std::vector<SMat<S>> c(c_.begin(), c_.begin() + std::min<std::int64_t>(n + 1, degree() + 1));
    return truncated(std::move(c), n, proto_);
  }

  TauMatSeries operator+(const TauMatSeries& b) const {
    check(b);
    std::vector<SMat<S>> c(std::max(c_.size(), b.c_.size()), SMat<S>(std::max(t_, b.t_), proto_));
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k < c_.size()) c[k] = c[k] + c_[k];
      if (k < b.c_.size()) c[k] = c[k] + b.c_[k];
    }
    return combine(std::move(c), b);
  }
  TauMatSeries operator-() const {
    TauMatSeries r = *this;
    for (auto& m : r.c_) m = -m;
    return r;
  }
  TauMatSeries operator-(const TauMatSeries& b) const { return *this + (-b); }

  /// Composition with the twist rule (A tau^i)(B tau^j) = A B^{(i)} tau^{i+j}.
  /// Output degrees are split over `threads` workers; the result does not
  /// depend on the thread count.
  TauMatSeries compose(const TauMatSeries& b, unsigned threads = 1) const {
    return compose_with(b, [](const S& x, unsigned i) { return twist(x, i); }, threads);
  }

  /// compose() with a caller-supplied twist, e.g. one working modulo an ideal.
  template <class Tw>
  TauMatSeries compose_with(const TauMatSeries& b, Tw&& tw, unsigned threads = 1) const {
    check(b);
    if (c_.empty() || b.c_.empty()) return combine({}, b);
    std::int64_t top = degree() + b.degree();
    if (!exact_) top = std::min(top, N_);
    if (!b.exact_) top = std::min(top, b.N_);
    if (top < 0) return combine({}, b);
    std::vector<SMat<S>> c(static_cast<std::size_t>(top + 1), SMat<S>(t_, proto_));
    auto work = [&](std::size_t k) {
      for (std::size_t i = 0; i <= k && i < c_.size(); ++i) {
        const std::size_t j = k - i;
        if (j >= b.c_.size() || c_[i].is_zero() || b.c_[j].is_zero()) continue;
        const unsigned ii = static_cast<unsigned>(i);
        c[k] = c[k] + c_[i] * b.c_[j].map([&](const S& x) { return ii ? tw(x, ii) : x; });
      }
    };
    run_parallel(c.size(), threads, work);
    return combine(std::move(c), b);
  }

  /// M tau^0 composed on the left.
  TauMatSeries left_mul(const SMat<S>& m) const {
    TauMatSeries r = *this;
    for (auto& x : r.c_) x = m * x;
    r.trim();
    return r;
  }

  template <class F>
  auto map(F&& fn) const -> TauMatSeries<decltype(fn(std::declval<const S&>()))> {
    using S2 = decltype(fn(std::declval<const S&>()));
    std::vector<SMat<S2>> c;
    for (const auto& m : c_) c.push_back(m.map(fn));
    S2 p = fn(proto_);
    if (exact_) return TauMatSeries<S2>(std::move(c), p);
    return TauMatSeries<S2>::truncated(std::move(c), N_, p);
  }

  /// Equality of the known coefficients (and of truncation data).
  bool operator==(const TauMatSeries& b) const {
    return t_ == b.t_ && exact_ == b.exact_ && (exact_ || N_ == b.N_) && c_ == b.c_;
  }
  /// Coefficients agree through tau-degree N.
  bool agrees_through(const TauMatSeries& b, std::int64_t N) const {
    check(b);
    for (std::int64_t k = 0; k <= N; ++k)
      if (!(coeff(static_cast<std::size_t>(k)) == b.coeff(static_cast<std::size_t>(k)))) return false;
    return true;
  }

 private:
  template <class W>
  static void run_parallel(std::size_t count, unsigned threads, W& work) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads <= 1) {
      for (std::size_t k = 0; k < count; ++k) work(k);
      return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> err(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < count; k += threads) work(k);
        } catch (...) {
          err[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : err)
      if (e) std::rethrow_exception(e);
  }

  void check(const TauMatSeries& b) const {
    if (t_ != b.t_ && !c_.empty() && !b.c_.empty()) throw DomainError("TauMatSeries: dimension mismatch");
  }
  TauMatSeries combine(std::vector<SMat<S>> c, const TauMatSeries& b) const {
    TauMatSeries r;
    r.proto_ = proto_;
    r.t_ = std::max(t_, b.t_);
    r.c_ = std::move(c);
    r.exact_ = exact_ && b.exact_;
    if (!r.exact_) r.N_ = std::min(exact_ ? b.N_ : N_, b.exact_ ? N_ : b.N_);
    r.cut();
    r.trim();
    return r;
  }
  void cut() {
    if (!exact_ && static_cast<std::int64_t>(c_.size()) > N_ + 1) c_.resize(static_cast<std::size_t>(std::max<std::int64_t>(N_ + 1, 0)));
  }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  S proto_;
  std::size_t t_ = 0;
  bool exact_ = true;
  std::int64_t N_ = 0;
  std::vector<SMat<S>> c_;
};

/// Carlitz brackets, D- and L-sequences over F_r (in theta):
/// [i] = theta^{r^i} - theta, D_i = [i] D_{i-1}^r, L_i = [i] L_{i-1}.
class CarlitzData {
 public:
  /// Sequences for indices 0..kmax.
  CarlitzData(FieldPtr field, unsigned kmax);
  const FieldPtr& field() const noexcept { return field_; }
  unsigned kmax() const noexcept { return kmax_; }
  const Poly& bracket(unsigned i) const;
  const Poly& D(unsigned i) const;
  const Poly& L(unsigned i) const;
  /// Carlitz factorial prod_k D_k^{c_k} over the base-r digits c_k of i.
  Poly factorial(std::uint64_t i) const;

 private:
  FieldPtr field_;
  unsigned kmax_;
  std::vector<Poly> br_, D_, L_;
};

/// Pi(i) with the needed D_k computed on the fly.
Poly carlitz_factorial(const FieldPtr& field, std::uint64_t i);

/// C_a for a in A (t = 1, exact, scalars in theta).
TauMatSeries<Poly> carlitz_action(const Poly& a);

/// C^{(n)}_a: the image of a under T -> (theta I + N) tau^0 + V tau.
TauMatSeries<Poly> tensor_power_action(unsigned n, const Poly& a);

/// C^{(n)}_a with every coefficient reduced modulo m (in theta) and tau-degrees
/// above N dropped. Reduction commutes with the twist, so this equals the
/// reduction of the exact action.
TauMatSeries<Poly> tensor_power_action_mod(unsigned n, const Poly& a, const Poly& m, unsigned N);

/// Exponential of C^{(n)} through tau-degree N, from the functional equation
/// e o (d_T tau^0) = C^{(n)}_T o e with A_0 = I.
TauMatSeries<RatFn> tensor_exp(const FieldPtr& field, unsigned n, unsigned N);
/// Compositional inverse of `exp` through its truncation degree.
TauMatSeries<RatFn> compositional_inverse(const TauMatSeries<RatFn>& exp);
std::pair<TauMatSeries<RatFn>, TauMatSeries<RatFn>> tensor_exp_log(const FieldPtr& field, unsigned n, unsigned N);

TauMatSeries<RatFn> carlitz_exp(const FieldPtr& field, unsigned N);
TauMatSeries<RatFn> carlitz_log(const FieldPtr& field, unsigned N);

/// BC_i from z/e(z) = sum BC_i / Pi(i) z^i. `exp_terms` bounds the number of
/// terms z^{r^k}/D_k of e(z) used; PrecisionError (with the needed count) when
/// it is too small to make the coefficient of z^i exact.
RatFn bernoulli_carlitz(const FieldPtr& field, std::uint64_t i, std::optional<unsigned> exp_terms = std::nullopt);
/// Number of exponential terms needed for bernoulli_carlitz(i).
unsigned bernoulli_terms_needed(std::uint32_t r, std::uint64_t i);

/// Whether C^{(n)}_{v^M} vanishes modulo v^{M'} through tau-degree N. Since
/// C_{v^M b} = C_{v^M} o C_b with C_b integral, this certifies that the
/// reduction of C^{(n)}_a only depends on a modulo v^M.
bool vadic_precision_sufficient(unsigned n, const Poly& v, std::int64_t M, std::int64_t M_out, unsigned N);
/// Least M passing vadic_precision_sufficient.
std::int64_t vadic_required_precision(unsigned n, const Poly& v, std::int64_t M_out, unsigned N);

/// C^{(n)}_a for a v-adic a known modulo v^M through its approximant, with
/// coefficients reduced modulo v^{M'} and tau-degrees <= N. M = nullopt means
/// the approximant is exact. Coefficients are
/// returned in theta as canonical residues. Throws PrecisionError (with the
/// required M) unless vadic_precision_sufficient holds.
TauMatSeries<Poly> vadic_reduce_action(unsigned n, const Poly& approx, std::optional<std::int64_t> M, const Poly& v,
                                       std::int64_t M_out, unsigned N);

}  // namespace fqz
