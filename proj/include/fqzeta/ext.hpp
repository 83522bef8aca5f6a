// SPDX-License-Identifier: Apache-2.0
//
// Simple algebraic extensions Base[u]/(f) of a field Base, and the small
// amount of univariate polynomial arithmetic over Base they need.
//
// Base must provide: zero_like(), one_like(), is_zero(), inv(), unary and
// binary + - *, and ==.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fqzeta/errors.hpp"

namespace fqz {

/// Dense polynomial over a field Base, little-endian, trimmed.
template <class Base>
using BPoly = std::vector<Base>;

/// Whether a trailing coefficient may be dropped. Approximate scalars override
/// this so that a zero known only to finite precision is kept.
template <class Base>
bool droppable(const Base& x) {
  return x.is_zero();
}

/// Pivot preference in elimination (smaller is better); approximate scalars
/// override this with their valuation.
template <class Base>
std::int64_t pivot_score(const Base&) {
  return 0;
}

namespace bpoly {

template <class Base>
void trim(BPoly<Base>& a) {
  while (!a.empty() && droppable(a.back())) a.pop_back();
}

template <class Base>
BPoly<Base> add(const BPoly<Base>& a, const BPoly<Base>& b) {
  BPoly<Base> r = a.size() >= b.size() ? a : b;
  const BPoly<Base>& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
  trim(r);
  return r;
}

template <class Base>
BPoly<Base> neg(const BPoly<Base>& a) {
  BPoly<Base> r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(-c);
  return r;
}

template <class Base>
BPoly<Base> sub(const BPoly<Base>& a, const BPoly<Base>& b) {
  return add(a, neg(b));
}

template <class Base>
BPoly<Base> mul(const BPoly<Base>& a, const BPoly<Base>& b) {
  if (a.empty() || b.empty()) return {};
  BPoly<Base> r(a.size() + b.size() - 1, a[0].zero_like());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (droppable(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!droppable(b[j])) r[i + j] = r[i + j] + a[i] * b[j];
  }
  trim(r);
  return r;
}

template <class Base>
BPoly<Base> scale(const BPoly<Base>& a, const Base& c) {
  BPoly<Base> r;
  for (const auto& x : a) r.push_back(x * c);
  trim(r);
  return r;
}

template <class Base>
std::pair<BPoly<Base>, BPoly<Base>> divmod(BPoly<Base> a, const BPoly<Base>& b) {
  if (b.empty()) throw DomainError("bpoly::divmod: division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const Base li = b.back().inv();
  BPoly<Base> q(a.size() - b.size() + 1, b[0].zero_like());
  for (std::size_t k = q.size(); k-- > 0;) {
    const Base c = a[k + b.size() - 1] * li;
    q[k] = c;
    if (droppable(c)) continue;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] = a[k + i] - c * b[i];
  }
  a.resize(b.size() - 1, b[0].zero_like());
  trim(a);
  trim(q);
  return {q, a};
}

template <class Base>
BPoly<Base> monic(const BPoly<Base>& a) {
  if (a.empty()) throw DomainError("bpoly::monic: zero polynomial");
  return scale(a, a.back().inv());
}

template <class Base>
BPoly<Base> gcd(BPoly<Base> a, BPoly<Base> b) {
  trim(a);
  trim(b);
  if (a.empty() && b.empty()) throw DomainError("bpoly::gcd: both zero");
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Formal derivative; `mult(c, k)` must return k*c in Base.
template <class Base, class IntMul>
BPoly<Base> derivative(const BPoly<Base>& a, IntMul mult) {
  BPoly<Base> r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mult(a[i], static_cast<long long>(i)));
  trim(r);
  return r;
}

}  // namespace bpoly

/// The field Base[u]/(f), f monic of degree n >= 1.
template <class Base>
class ExtField {
 public:
  ExtField(BPoly<Base> f, std::string var = "u") : f_(std::move(f)), var_(std::move(var)) {
    bpoly::trim(f_);
    if (f_.size() < 2) throw DomainError("ExtField: modulus must have positive degree");
    if (!(f_.back() == f_.back().one_like())) f_ = bpoly::monic(f_);
  }
  std::size_t degree() const noexcept { return f_.size() - 1; }
  const BPoly<Base>& modulus() const noexcept { return f_; }
  const std::string& var() const noexcept { return var_; }
  Base base_zero() const { return f_.back().zero_like(); }
  Base base_one() const { return f_.back().one_like(); }

 private:
  BPoly<Base> f_;
  std::string var_;
};

template <class Base>
class ExtElt {
 public:
  using FieldT = std::shared_ptr<const ExtField<Base>>;

  ExtElt() = default;
  ExtElt(FieldT K, BPoly<Base> rep) : K_(std::move(K)), rep_(std::move(rep)) { reduce(); }

  static ExtElt from_base(FieldT K, const Base& b) { return ExtElt(std::move(K), BPoly<Base>{b}); }
  /// The class of u.
  static ExtElt gen(FieldT K) {
    return ExtElt(K, BPoly<Base>{K->base_zero(), K->base_one()});
  }

  const FieldT& field() const noexcept { return K_; }
  const BPoly<Base>& rep() const noexcept { return rep_; }
  /// Coefficient of u^i.
  Base coeff(std::size_t i) const { return i < rep_.size() ? rep_[i] : K_->base_zero(); }
  bool is_zero() const noexcept { return rep_.empty(); }
  /// True when the element lies in Base.
  bool in_base() const noexcept { return rep_.size() <= 1; }

  ExtElt zero_like() const { return ExtElt(K_, {}); }
  ExtElt one_like() const { return from_base(K_, K_->base_one()); }

  ExtElt operator-() const { return ExtElt(K_, bpoly::neg(rep_)); }
  ExtElt operator+(const ExtElt& b) const {
    check(b);
    return ExtElt(K_, bpoly::add(rep_, b.rep_));
  }
  ExtElt operator-(const ExtElt& b) const {
    check(b);
    return ExtElt(K_, bpoly::sub(rep_, b.rep_));
  }
  ExtElt operator*(const ExtElt& b) const {
    check(b);
    return ExtElt(K_, bpoly::mul(rep_, b.rep_));
  }
  ExtElt operator/(const ExtElt& b) const { return *this * b.inv(); }
  ExtElt& operator+=(const ExtElt& b) { return *this = *this + b; }
  ExtElt& operator-=(const ExtElt& b) { return *this = *this - b; }
  ExtElt& operator*=(const ExtElt& b) { return *this = *this * b; }
  bool operator==(const ExtElt& b) const { return K_ == b.K_ && rep_ == b.rep_; }

  ExtElt scale(const Base& c) const { return ExtElt(K_, bpoly::scale(rep_, c)); }

  /// Columns of the multiplication-by-this matrix in the basis 1, u, ..., u^{n-1}.
  std::vector<std::vector<Base>> mult_matrix() const {
    const std::size_t n = K_->degree();
    std::vector<std::vector<Base>> M(n, std::vector<Base>(n, K_->base_zero()));
    ExtElt col = *this;
    const ExtElt u = gen(K_);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) M[i][j] = col.coeff(i);
      col = col * u;
    }
    return M;
  }

  /// Inverse by solving (mult matrix) x = e_0 with Gaussian elimination.
  ExtElt inv() const {
    if (is_zero()) throw DomainError("ExtElt::inv: zero");
    const std::size_t n = K_->degree();
    auto M = mult_matrix();
    std::vector<Base> rhs(n, K_->base_zero());
    rhs[0] = K_->base_one();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = n;
      for (std::size_t i = c; i < n; ++i)
        if (!M[i][c].is_zero() && (piv == n || pivot_score(M[i][c]) < pivot_score(M[piv][c]))) piv = i;
      if (piv == n) throw InternalError("ExtElt::inv: singular multiplication matrix (reducible modulus)");
      std::swap(M[piv], M[c]);
      std::swap(rhs[piv], rhs[c]);
      const Base pi = M[c][c].inv();
      for (std::size_t j = c; j < n; ++j) M[c][j] = M[c][j] * pi;
      rhs[c] = rhs[c] * pi;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || droppable(M[i][c])) continue;
        const Base fct = M[i][c];
        for (std::size_t j = c; j < n; ++j) M[i][j] = M[i][j] - fct * M[c][j];
        rhs[i] = rhs[i] - fct * rhs[c];
      }
    }
    return ExtElt(K_, rhs);
  }

  ExtElt pow(std::uint64_t e) const {
    ExtElt r = one_like(), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Monic minimal polynomial over Base from the first linear dependency among powers.
  BPoly<Base> minimal_polynomial() const {
    const std::size_t n = K_->degree();
    // Row-reduce the coordinate vectors of 1, x, x^2, ... tracking combinations.
    std::vector<std::vector<Base>> rows, combos;
    std::vector<std::size_t> pivots;
    ExtElt pw = one_like();
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<Base> v(n, K_->base_zero());
      for (std::size_t i = 0; i < n; ++i) v[i] = pw.coeff(i);
      std::vector<Base> cmb(n + 1, K_->base_zero());
      cmb[k] = K_->base_one();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const Base c = v[pivots[r]];
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i) v[i] = v[i] - c * rows[r][i];
        for (std::size_t i = 0; i <= n; ++i) cmb[i] = cmb[i] - c * combos[r][i];
      }
      std::size_t piv = 0;
      while (piv < n && v[piv].is_zero()) ++piv;
      if (piv == n) {
        BPoly<Base> mp(cmb.begin(), cmb.begin() + static_cast<std::ptrdiff_t>(k + 1));
        bpoly::trim(mp);
        return bpoly::monic(mp);
      }
      const Base pi = v[piv].inv();
      for (auto& x : v) x = x * pi;
      for (auto& x : cmb) x = x * pi;
      rows.push_back(v);
      combos.push_back(cmb);
      pivots.push_back(piv);
      pw = pw * *this;
    }
    throw InternalError("ExtElt::minimal_polynomial: no dependency found");
  }

 private:
  void check(const ExtElt& b) const {
    if (K_ != b.K_) throw DomainError("ExtElt: extension mismatch");
  }
  void reduce() {
    if (!K_) throw DomainError("ExtElt: null extension");
    bpoly::trim(rep_);
    if (rep_.size() > K_->degree()) rep_ = bpoly::divmod(rep_, K_->modulus()).second;
  }

  FieldT K_;
  BPoly<Base> rep_;
};

/// Evaluate a polynomial with Base coefficients at an extension element.
template <class Base>
ExtElt<Base> evaluate(const BPoly<Base>& f, const ExtElt<Base>& x) {
  ExtElt<Base> acc = x.zero_like();
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + ExtElt<Base>::from_base(x.field(), f[i]);
  return acc;
}

}  // namespace fqz
