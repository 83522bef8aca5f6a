// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/carlitz.hpp"

namespace fqz {

namespace {

Poly theta(const FieldPtr& F) { return Poly::monomial(F, 1, 1, kTheta); }

std::vector<unsigned> base_digits(std::uint64_t i, std::uint64_t r) {
  std::vector<unsigned> d;
  for (; i; i /= r) d.push_back(static_cast<unsigned>(i % r));
  return d;
}

}  // namespace

CarlitzData::CarlitzData(FieldPtr field, unsigned kmax) : field_(std::move(field)), kmax_(kmax) {
  const Poly th = theta(field_), one = th.one();
  br_.push_back(th.zero());
  D_.push_back(one);
  L_.push_back(one);
  for (unsigned i = 1; i <= kmax_; ++i) {
    br_.push_back(twist(th, i) - th);
    D_.push_back(br_[i] * twist(D_[i - 1], 1));
    L_.push_back(br_[i] * L_[i - 1]);
  }
}

const Poly& CarlitzData::bracket(unsigned i) const {
  if (i == 0 || i > kmax_) throw DomainError("CarlitzData::bracket: index out of range");
  return br_[i];
}
const Poly& CarlitzData::D(unsigned i) const {
  if (i > kmax_) throw DomainError("CarlitzData::D: index out of range");
  return D_[i];
}
const Poly& CarlitzData::L(unsigned i) const {
  if (i > kmax_) throw DomainError("CarlitzData::L: index out of range");
  return L_[i];
}

Poly CarlitzData::factorial(std::uint64_t i) const {
  const auto dg = base_digits(i, field_->q());
  if (dg.size() > kmax_ + 1) throw DomainError("CarlitzData::factorial: index beyond kmax");
  Poly r = D_[0];
  for (std::size_t k = 0; k < dg.size(); ++k)
    if (dg[k]) r = r * pow(D_[k], dg[k]);
  return r;
}

Poly carlitz_factorial(const FieldPtr& field, std::uint64_t i) {
  const auto dg = base_digits(i, field->q());
  return CarlitzData(field, static_cast<unsigned>(dg.empty() ? 0 : dg.size() - 1)).factorial(i);
}

TauMatSeries<Poly> tensor_power_action(unsigned n, const Poly& a) {
  if (n == 0) throw DomainError("tensor_power_action: n must be >= 1");
  const FieldPtr& F = a.field();
  const Poly th = theta(F);
  const SMat<Poly> d = SMat<Poly>::scalar_matrix(n, th) + nilpotent_N(n, th);
  const TauMatSeries<Poly> CT(std::vector<SMat<Poly>>{d, corner_V(n, th)}, th);
  // Horner in C_T.
  TauMatSeries<Poly> acc(std::vector<SMat<Poly>>{}, th);
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc.compose(CT);
    if (a[i]) acc = acc + TauMatSeries<Poly>::constant(SMat<Poly>::scalar_matrix(n, Poly::constant(F, a[i], kTheta)));
  }
  if (acc.coeffs().empty()) return TauMatSeries<Poly>(std::vector<SMat<Poly>>{SMat<Poly>(n, th.zero())}, th);
  return acc;
}

TauMatSeries<Poly> carlitz_action(const Poly& a) { return tensor_power_action(1, a); }

TauMatSeries<Poly> tensor_power_action_mod(unsigned n, const Poly& a, const Poly& m, unsigned N) {
  if (n == 0) throw DomainError("tensor_power_action_mod: n must be >= 1");
  if (m.degree() < 1) throw DomainError("tensor_power_action_mod: modulus must have positive degree");
  const FieldPtr& F = a.field();
  const Poly th = theta(F), mt = theta_image(m);
  auto red = [&](const Poly& x) { return x % mt; };
  const SMat<Poly> d = (SMat<Poly>::scalar_matrix(n, th) + nilpotent_N(n, th)).map(red);
  const TauMatSeries<Poly> CT =
      TauMatSeries<Poly>::truncated(std::vector<SMat<Poly>>{d, corner_V(n, th)}, N, th);
  TauMatSeries<Poly> acc = TauMatSeries<Poly>::truncated({}, N, th);
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc.compose_with(CT, [&](const Poly& x, unsigned i) { return frobmod(x, i, mt); }).map(red);
    if (a[i]) acc = acc + TauMatSeries<Poly>::constant(SMat<Poly>::scalar_matrix(n, Poly::constant(F, a[i], kTheta)));
  }
  return acc.map(red);
}

TauMatSeries<RatFn> tensor_exp(const FieldPtr& field, unsigned n, unsigned N) {
  if (n == 0) throw DomainError("tensor_exp: n must be >= 1");
  const RatFn th(theta(field));
  const RatFn zero = th.zero_like();
  const SMat<RatFn> I = SMat<RatFn>::identity(n, th), Nm = nilpotent_N(n, th), V = corner_V(n, th);
  std::vector<SMat<RatFn>> E{I};
  for (unsigned i = 1; i <= N; ++i) {
    // c E + E N - N E = V E_{i-1}^{(1)}, c = theta^{r^i} - theta.
    const RatFn c = th.twist(i) - th;
    if (c.is_zero()) throw InternalError("tensor_exp: degenerate recursion denominator");
    const RatFn ci = c.inv();
    SMat<RatFn> term = V * E[i - 1].twisted(1), X(n, zero);
    RatFn w = ci;
    for (unsigned k = 0; k < 2 * n && !term.is_zero(); ++k) {
      X = X + term.scaled(w);
      term = Nm * term - term * Nm;  // -ad_N
      w = w * ci;
    }
    E.push_back(X);
  }
  return TauMatSeries<RatFn>::truncated(std::move(E), N, th);
}

TauMatSeries<RatFn> compositional_inverse(const TauMatSeries<RatFn>& e) {
  if (e.exact()) throw DomainError("compositional_inverse: expects a truncated series");
  const std::size_t n = e.dim();
  const SMat<RatFn> I = SMat<RatFn>::identity(n, e.proto());
  if (!(e.coeff(0) == I)) throw DomainError("compositional_inverse: constant term must be I");
  const std::int64_t N = e.N();
  std::vector<SMat<RatFn>> L{I};
  for (std::int64_t k = 1; k <= N; ++k) {
    SMat<RatFn> acc(n, e.proto().zero_like());
    for (std::int64_t i = 1; i <= k; ++i) {
      const SMat<RatFn> Ei = e.coeff(static_cast<std::size_t>(i));
      if (Ei.is_zero()) continue;
      acc = acc + Ei * L[static_cast<std::size_t>(k - i)].twisted(static_cast<unsigned>(i));
    }
    L.push_back(-acc);
  }
  return TauMatSeries<RatFn>::truncated(std::move(L), N, e.proto());
}

std::pair<TauMatSeries<RatFn>, TauMatSeries<RatFn>> tensor_exp_log(const FieldPtr& field, unsigned n, unsigned N) {
  auto e = tensor_exp(field, n, N);
  auto l = compositional_inverse(e);
  return {std::move(e), std::move(l)};
}

TauMatSeries<RatFn> carlitz_exp(const FieldPtr& field, unsigned N) { return tensor_exp(field, 1, N); }
TauMatSeries<RatFn> carlitz_log(const FieldPtr& field, unsigned N) {
  return compositional_inverse(tensor_exp(field, 1, N));
}

unsigned bernoulli_terms_needed(std::uint32_t r, std::uint64_t i) {
  // Terms z^{r^k}/D_k with r^k - 1 <= i.
  unsigned k = 0;
  for (std::uint64_t rk = r; rk - 1 <= i; rk *= r) ++k;
  return k + 1;
}

RatFn bernoulli_carlitz(const FieldPtr& field, std::uint64_t i, std::optional<unsigned> exp_terms) {
  const std::uint32_t r = static_cast<std::uint32_t>(field->q());
  const unsigned need = bernoulli_terms_needed(r, i);
  if (exp_terms && *exp_terms < need)
    throw PrecisionError("bernoulli_carlitz: " + std::to_string(need) + " exponential terms needed", need);
  CarlitzData cd(field, need - 1);
  // e(z)/z = sum_k z^{r^k - 1} / D_k; invert as a power series in z.
  const RatFn one = RatFn::one(field, kTheta);
  std::vector<std::pair<std::uint64_t, RatFn>> g;
  std::uint64_t rk = r;
  for (unsigned k = 1; k < need; ++k, rk *= r) g.emplace_back(rk - 1, RatFn(cd.D(k)).inv());
  std::vector<RatFn> h(i + 1, one.zero_like());
  h[0] = one;
  for (std::uint64_t m = 1; m <= i; ++m) {
    RatFn acc = one.zero_like();
    for (const auto& [e, c] : g)
      if (e <= m && !h[m - e].is_zero()) acc += h[m - e] * c;
    h[m] = -acc;
  }
  return h[i] * RatFn(cd.factorial(i));
}

bool vadic_precision_sufficient(unsigned n, const Poly& v, std::int64_t M, std::int64_t M_out, unsigned N) {
  if (M_out <= 0) return true;
  if (M < 0) throw DomainError("vadic_precision_sufficient: negative precision");
  const Poly vm = pow(v, static_cast<std::uint64_t>(M_out));
  const auto C = tensor_power_action_mod(n, pow(v, static_cast<std::uint64_t>(M)), vm, N);
  return C.coeffs().empty();
}

std::int64_t vadic_required_precision(unsigned n, const Poly& v, std::int64_t M_out, unsigned N) {
  // Coefficientwise valuations of C_{v^M} grow without bound in M, so this stops.
  std::int64_t M = std::max<std::int64_t>(M_out, 0);
  while (!vadic_precision_sufficient(n, v, M, M_out, N)) ++M;
  return M;
}

TauMatSeries<Poly> vadic_reduce_action(unsigned n, const Poly& approx, std::optional<std::int64_t> M, const Poly& v,
                                       std::int64_t M_out, unsigned N) {
  if (n == 0) throw DomainError("vadic_reduce_action: n must be >= 1");
  if (v.degree() < 1 || v.lead() != 1) throw DomainError("vadic_reduce_action: v must be monic of positive degree");
  if (M_out < 1 || (M && *M < 0)) throw DomainError("vadic_reduce_action: bad precision");
  const Poly vv = v.with_var(approx.var());
  if (M && !vadic_precision_sufficient(n, vv, *M, M_out, N)) {
    const std::int64_t req = vadic_required_precision(n, vv, M_out, N);
    throw PrecisionError("vadic_reduce_action: input precision " + std::to_string(*M) + " below required " +
                             std::to_string(req),
                         req);
  }
  return tensor_power_action_mod(n, approx, pow(vv, static_cast<std::uint64_t>(M_out)), N);
}

}  // namespace fqz
