// SPDX-License-Identifier: Apache-2.0
//
// Tangent algebras R[eps]/(eps^t), the extension of the tangent T-action of
// C^{(t)} to K and to separable algebraic elements, the p-power obstruction,
// and multi-valued operators e(M log tau).

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fqzeta/carlitz.hpp"
#include "fqzeta/ext.hpp"
#include "fqzeta/kfield.hpp"
#include "fqzeta/valseries.hpp"

namespace fqz {

/// c_0 + c_1 eps + ... + c_{t-1} eps^{t-1} with eps^t = 0. S needs zero_like,
/// one_like, is_zero, inv and ring operations.
template <class S>
class TangentElt {
 public:
  TangentElt() = default;
  /// Pads or truncates c to length t >= 1.
  TangentElt(std::vector<S> c, std::size_t t) : c_(std::move(c)) {
    if (t == 0) throw DomainError("TangentElt: order must be >= 1");
    if (c_.empty()) throw DomainError("TangentElt: need at least the scalar coefficient");
    const S z = c_.front().zero_like();
    c_.resize(t, z);
  }
  static TangentElt scalar(const S& c, std::size_t t) { return TangentElt({c}, t); }
  /// The element eps (zero when t = 1).
  static TangentElt eps(const S& proto, std::size_t t) {
    std::vector<S> c(t, proto.zero_like());
    if (t > 1) c[1] = proto.one_like();
    return TangentElt(std::move(c), t);
  }

  std::size_t order() const noexcept { return c_.size(); }
  const std::vector<S>& coeffs() const noexcept { return c_; }
  const S& operator[](std::size_t i) const { return c_.at(i); }
  const S& scalar_part() const { return c_.front(); }
  /// The element with its scalar coefficient set to zero.
  TangentElt nilpotent_part() const {
    TangentElt r = *this;
    r.c_[0] = c_[0].zero_like();
    return r;
  }
  bool is_unit() const { return !c_[0].is_zero(); }
  bool is_scalar() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }

  TangentElt operator+(const TangentElt& b) const {
    check(b);
    TangentElt r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + b.c_[i];
    return r;
  }
  TangentElt operator-(const TangentElt& b) const {
    check(b);
    TangentElt r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - b.c_[i];
    return r;
  }
  TangentElt operator-() const {
    TangentElt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  TangentElt operator*(const TangentElt& b) const {
    check(b);
    const std::size_t t = c_.size();
    std::vector<S> r(t, c_[0].zero_like());
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; i + j < t; ++j) r[i + j] = r[i + j] + c_[i] * b.c_[j];
    return TangentElt(std::move(r), t);
  }
  TangentElt scaled(const S& s) const {
    TangentElt r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
  }
  /// Throws DomainError when the scalar coefficient is zero.
  TangentElt inv() const {
    if (!is_unit()) throw DomainError("TangentElt::inv: not a unit");
    const std::size_t t = c_.size();
    const S c0i = c_[0].inv();
    std::vector<S> y(t, c_[0].zero_like());
    y[0] = c0i;
    for (std::size_t k = 1; k < t; ++k) {
      S acc = c_[0].zero_like();
      for (std::size_t i = 1; i <= k; ++i) acc = acc + c_[i] * y[k - i];
      y[k] = -(acc * c0i);
    }
    return TangentElt(std::move(y), t);
  }
  TangentElt pow(std::uint64_t e) const {
    TangentElt r = scalar(c_[0].one_like(), c_.size()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  template <class F>
  auto map(F&& fn) const -> TangentElt<decltype(fn(std::declval<const S&>()))> {
    using S2 = decltype(fn(std::declval<const S&>()));
    std::vector<S2> out;
    for (const auto& x : c_) out.push_back(fn(x));
    return TangentElt<S2>(std::move(out), c_.size());
  }
  bool operator==(const TangentElt& b) const { return c_ == b.c_; }

 private:
  void check(const TangentElt& b) const {
    if (c_.size() != b.c_.size()) throw DomainError("TangentElt: order mismatch");
  }
  std::vector<S> c_;
};

using KTangent = TangentElt<RatFn>;
using KExtTangent = TangentElt<KElt>;

/// sum_{i<t} D_i(a)(theta) eps^i.
KTangent tangent_of_operator(const Poly& a, std::size_t t);
/// Multiplicative inverse; DomainError for a non-unit.
KTangent tangent_invert(const KTangent& x);
/// Extension of a -> E_a to x in k = F_r(theta) (x given in any variable).
KTangent tangent_extend_K(const RatFn& x, std::size_t t);
/// D_j on a Laurent series at any place; the absolute precision moves by +j
/// at infinity and by -j at a finite place.
ValSeries hyperderive(std::uint64_t j, const ValSeries& x);
/// Extension to a completion: coefficients D_i(x).
TangentElt<ValSeries> tangent_extend_K(const ValSeries& x, std::size_t t);

/// lambda root of f(u) = sum a_i u^i, a_i in A, over k. The scalar field is
/// k[u]/(f(theta)) and lambda-bar is the class of u.
struct LiftProblem {
  std::vector<Poly> f;  // a_i in A
  std::size_t t = 2;
  KExtPtr field;        // k[u]/(f-bar)

  /// Checks f is separable and irreducible over k (DomainError otherwise).
  static LiftProblem make(std::vector<Poly> f, std::size_t t);
};

/// The lift lambda-bar + eps_lambda solving sum E_{a_i} X^i = 0 in
/// K[eps]/(eps^t), by Newton iteration from lambda-bar.
KExtTangent separable_lift(const LiftProblem& pb);
/// Same with an explicit Newton start (scalar part must be lambda-bar).
KExtTangent separable_lift_from(const LiftProblem& pb, const KExtTangent& start);
/// E_{x,*} for any x in K = k(lambda), via the minimal polynomial of x made
/// integral over A.
KExtTangent lift_element(const KElt& x, std::size_t t);
/// sum E_{a_i} X^i in K[eps]/(eps^t).
KExtTangent lift_residual(const LiftProblem& pb, const KExtTangent& X);
/// Number of Newton steps the last separable_lift call on this thread used.
unsigned last_newton_steps();

enum class Liftability { Liftable, ScalarOnly, Obstructed };
std::string to_string(Liftability l);

struct LiftabilityReport {
  Liftability status = Liftability::Obstructed;
  std::uint64_t q = 1;  // p^s
  std::string reason;
  /// Coefficients w_i of the nilpotent witness n = sum n_i eps^i through their
  /// q-th powers: n_i^q = w_i. When every w_i is a q-th power in k the roots
  /// themselves are in `witness`.
  std::vector<RatFn> witness_powers;
  std::optional<KTangent> witness;
};

/// Solvability of X^{p^s} = target in the tangent algebra over the perfect
/// closure of k. p must be the characteristic.
LiftabilityReport liftability_check(const KTangent& target, std::uint32_t p, unsigned s);

/// q-th root in k of a rational function over a prime field, if it exists.
std::optional<RatFn> qth_root(const RatFn& x, std::uint64_t q);

/// e o (M tau^0) o log through tau-degree N. Throws DomainError unless exp and
/// log are mutually inverse through N.
TauMatSeries<RatFn> multivalued_operator(const SMat<RatFn>& M, const TauMatSeries<RatFn>& exp,
                                         const TauMatSeries<RatFn>& log, unsigned N);
/// The matrix sum_i D_i(a) N^i of size t.
SMat<RatFn> tangent_matrix(const Poly& a, std::size_t t);

/// v-adic version: scalars k_v[u]/(f) with k_v known to precision M.
using VExt = ExtField<ValSeries>;
using VElt = ExtElt<ValSeries>;

struct VadicLift {
  std::shared_ptr<const VExt> field;
  TangentElt<VElt> lift;
  /// Residual sum E_{a_i} X^i; all its coefficients vanish to `prec`.
  TangentElt<VElt> residual;
  /// Guaranteed absolute v-adic precision of the lift coefficients.
  std::int64_t prec = 0;
};

/// Newton lift over k_v[u]/(f-bar) for the place of the monic irreducible v.
/// Requires disc(f) to be a v-adic unit (DomainError otherwise); PrecisionError
/// when M is too small to leave positive output precision.
VadicLift vadic_separable_lift(const std::vector<Poly>& f, const Poly& v, std::size_t t, std::int64_t M);
/// Image of an element of k(lambda) in k_v[u]/(f-bar).
VElt to_vadic(const KElt& x, const std::shared_ptr<const VExt>& Kv, const PlacePtr& place, std::int64_t M);
/// Minimal absolute precision over the coordinates of x.
std::int64_t abs_prec(const VElt& x);

}  // namespace fqz
