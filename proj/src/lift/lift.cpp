// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/lift.hpp"

#include <algorithm>

#include "fqzeta/factor.hpp"
#include "fqzeta/galois.hpp"
#include "fqzeta/hyperderiv.hpp"
#include "fqzeta/padic.hpp"

namespace fqz {

namespace {

thread_local unsigned g_newton_steps = 0;

unsigned ceil_log2(std::size_t t) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < t) ++k;
  return k;
}

RatFn theta_rat(const Poly& a) { return RatFn(theta_image(a)); }

// sum_i E_i X^i and its derivative in X, by Horner.
template <class E>
std::pair<TangentElt<E>, TangentElt<E>> eval_with_derivative(const std::vector<TangentElt<E>>& Ea,
                                                             const TangentElt<E>& X) {
  TangentElt<E> g = Ea.back(), dg = (X - X);
  for (std::size_t i = Ea.size() - 1; i-- > 0;) {
    dg = dg * X + g;
    g = g * X + Ea[i];
  }
  return {g, dg};
}

template <class E>
TangentElt<E> newton(const std::vector<TangentElt<E>>& Ea, TangentElt<E> X, unsigned max_steps, bool exact) {
  g_newton_steps = 0;
  for (unsigned s = 0; s < max_steps; ++s) {
    auto [g, dg] = eval_with_derivative(Ea, X);
    if (exact && g == g - g) return X;
    X = X - g * dg.inv();
    ++g_newton_steps;
  }
  if (exact) {
    auto g = eval_with_derivative(Ea, X).first;
    if (!(g == g - g)) throw InternalError("separable_lift: Newton iteration did not converge");
  }
  return X;
}

// E_{a_i} embedded in K[eps].
std::vector<KExtTangent> embedded_tangents(const std::vector<Poly>& f, const KExtPtr& K, std::size_t t) {
  std::vector<KExtTangent> out;
  for (const auto& a : f) out.push_back(tangent_of_operator(a, t).map([&](const RatFn& c) { return KElt::from_base(K, c); }));
  return out;
}

std::int64_t valuation_at(const PlacePtr& place, const Poly& a) {
  if (a.is_zero()) return ValSeries::kExactPrec;
  if (place->is_infinite()) return -a.degree();
  std::int64_t k = 0;
  Poly u = a;
  for (;;) {
    auto [q, r] = divmod(u, place->v());
    if (!r.is_zero()) return k;
    u = std::move(q);
    ++k;
  }
}

// x with absolute precision n (a zero when the valuation reaches n).
ValSeries from_ratfn_abs(const PlacePtr& place, const RatFn& x, std::int64_t n) {
  if (x.is_zero()) return ValSeries::zero(place, n);
  const Poly num = x.num().with_var(place->var()), den = x.den().with_var(place->var());
  const std::int64_t val = valuation_at(place, num) - valuation_at(place, den);
  if (val >= n) return ValSeries::zero(place, n);
  return ValSeries::from_ratfn(place, RatFn(num, den), n - val);
}

// binom(n, j) mod p for any integer n.
std::uint32_t binom_signed(std::int64_t n, std::uint64_t j, std::uint32_t p) {
  if (n >= 0) return binom_mod_p(static_cast<std::uint64_t>(n), j, p);
  const std::uint32_t b = binom_mod_p(static_cast<std::uint64_t>(static_cast<std::int64_t>(j) - n - 1), j, p);
  return (j % 2 == 0 || b == 0) ? b : p - b;
}

}  // namespace

KTangent tangent_of_operator(const Poly& a, std::size_t t) {
  if (t == 0) throw DomainError("tangent_of_operator: t must be >= 1");
  std::vector<RatFn> c;
  for (std::size_t i = 0; i < t; ++i) c.push_back(theta_rat(hyperderive(i, a)));
  return KTangent(std::move(c), t);
}

KTangent tangent_invert(const KTangent& x) { return x.inv(); }

KTangent tangent_extend_K(const RatFn& x, std::size_t t) {
  return tangent_of_operator(x.num(), t) * tangent_of_operator(x.den(), t).inv();
}

ValSeries hyperderive(std::uint64_t j, const ValSeries& x) {
  const PlacePtr& place = x.place();
  const auto J = static_cast<std::int64_t>(j);
  if (j == 0) return x;
  if (place->is_infinite()) {
    if (x.is_zero()) return ValSeries::zero(place, x.abs_prec() + J);
    // D_j pi^m = binom(-m, j) pi^{m+j}.
    const FiniteField& F = *place->field();
    std::vector<Elem> c(static_cast<std::size_t>(x.prec()), 0);
    for (std::int64_t i = 0; i < x.prec(); ++i) {
      const Elem d = x.unit()[static_cast<std::size_t>(i)];
      if (!d) continue;
      const std::uint32_t b = binom_signed(-(x.val() + i), j, F.p());
      c[static_cast<std::size_t>(i)] = F.mul(d, F.from_int(b));
    }
    return ValSeries::from_pi_coeffs(place, x.val() + J, c, x.prec());
  }
  const std::int64_t n = x.abs_prec() - J;
  if (x.is_zero()) return ValSeries::zero(place, n);
  // D_j(v^n g) is divisible by v^{n-j}, so the approximant's derivative is good to n - j.
  RatFn approx = x.val() >= 0 ? RatFn(x.unit() * pow(place->v(), static_cast<std::uint64_t>(x.val())))
                              : RatFn(x.unit(), pow(place->v(), static_cast<std::uint64_t>(-x.val())));
  return from_ratfn_abs(place, hyperderive(j, approx), n);
}

TangentElt<ValSeries> tangent_extend_K(const ValSeries& x, std::size_t t) {
  std::vector<ValSeries> c;
  for (std::size_t i = 0; i < t; ++i) c.push_back(hyperderive(i, x));
  return TangentElt<ValSeries>(std::move(c), t);
}

LiftProblem LiftProblem::make(std::vector<Poly> f, std::size_t t) {
  if (t == 0) throw DomainError("LiftProblem: t must be >= 1");
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  if (f.size() < 2) throw DomainError("LiftProblem: f must have positive degree");
  for (auto& c : f) c = c.with_var("T");
  const FieldPtr& F = f.front().field();
  BPoly<RatFn> fb;
  for (const auto& c : f) fb.push_back(theta_rat(c));
  LiftProblem pb;
  pb.f = f;
  pb.t = t;
  pb.field = make_kext(fb);  // separability
  const std::size_t n = f.size() - 1;
  if (n == 1) return pb;
  // Irreducibility: a prime v with f mod v irreducible of the same degree, else
  // (degree <= 3) absence of roots in k.
  if (F->is_prime_field()) {
    for (unsigned d = 1; d <= 4; ++d) {
      std::size_t tried = 0;
      for (const auto& v : monic_irreducibles(F, d)) {
        if (++tried > 400) break;
        if (divides(v, f.back())) continue;
        if (irreducible_mod_prime(f, v)) return pb;
      }
    }
  }
  if (n <= 3) {
    // a_n^{n-1} f(w / a_n) is monic in w with coefficients in A.
    XPoly g(n + 1);
    Poly scale = f.back().one();
    for (std::size_t i = n + 1; i-- > 0;) {
      g[i] = f[i] * scale;
      if (i < n) scale = scale * f.back();
    }
    g[n] = f.back().one();
    auto roots = roots_in_A(g);
    if (roots && roots->empty()) return pb;
    if (roots) throw DomainError("LiftProblem: f has a root in k");
  }
  throw DomainError("LiftProblem: irreducibility of f could not be certified");
}

unsigned last_newton_steps() { return g_newton_steps; }

KExtTangent lift_residual(const LiftProblem& pb, const KExtTangent& X) {
  return eval_with_derivative(embedded_tangents(pb.f, pb.field, X.order()), X).first;
}

KExtTangent separable_lift_from(const LiftProblem& pb, const KExtTangent& start) {
  if (start.order() != pb.t) throw DomainError("separable_lift: start has the wrong order");
  if (!(start.scalar_part() == KElt::gen(pb.field))) throw DomainError("separable_lift: start must lie over lambda");
  return newton(embedded_tangents(pb.f, pb.field, pb.t), start, ceil_log2(pb.t) + 1, true);
}

KExtTangent separable_lift(const LiftProblem& pb) {
  return separable_lift_from(pb, KExtTangent::scalar(KElt::gen(pb.field), pb.t));
}

KExtTangent lift_element(const KElt& x, std::size_t t) {
  const KExtPtr& K = x.field();
  auto m = x.minimal_polynomial();
  // Clear denominators so that the coefficients are operators in A.
  Poly L = m.front().den().one();
  for (const auto& c : m) L = L / gcd(L, c.den()) * c.den();
  std::vector<Poly> a;
  for (const auto& c : m) a.push_back((c * RatFn(L)).num().with_var("T"));
  return newton(embedded_tangents(a, K, t), KExtTangent::scalar(x, t), ceil_log2(t) + 1, true);
}

std::string to_string(Liftability l) {
  switch (l) {
    case Liftability::Liftable: return "liftable";
    case Liftability::ScalarOnly: return "scalar-only";
    case Liftability::Obstructed: return "obstructed";
  }
  return "?";
}

std::optional<RatFn> qth_root(const RatFn& x, std::uint64_t q) {
  const FiniteField& F = *x.field();
  if (q == 1) return x;
  if (q % F.p()) throw DomainError("qth_root: q must be a power of the characteristic");
  unsigned s = 0;
  for (std::uint64_t e = q; e > 1; e /= F.p()) ++s;
  const unsigned back = (F.m() - s % F.m()) % F.m();
  auto root = [&](const Poly& a) -> std::optional<Poly> {
    std::vector<Elem> c;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i % q) {
        if (a[i]) return std::nullopt;
        continue;
      }
      c.push_back(F.frobenius(a[i], back));
    }
    return Poly(a.field(), std::move(c), a.var());
  };
  auto n = root(x.num()), d = root(x.den());
  if (!n || !d) return std::nullopt;
  return RatFn(*n, *d);
}

LiftabilityReport liftability_check(const KTangent& target, std::uint32_t p, unsigned s) {
  if (s == 0) throw DomainError("liftability_check: s must be >= 1");
  if (target.scalar_part().field()->p() != p) throw DomainError("liftability_check: p must be the characteristic");
  LiftabilityReport rep;
  for (unsigned i = 0; i < s; ++i) rep.q *= p;
  const std::size_t t = target.order();
  bool nil = false;
  for (std::size_t k = 1; k < t; ++k) {
    if (target[k].is_zero()) continue;
    nil = true;
    if (k % rep.q) {
      rep.status = Liftability::Obstructed;
      rep.reason = "coefficient of eps^" + std::to_string(k) + " is nonzero and " + std::to_string(rep.q) +
                   " does not divide " + std::to_string(k);
      return rep;
    }
  }
  if (!nil) {
    rep.status = Liftability::ScalarOnly;
    rep.reason = "nilpotent part is zero: X = c^(1/" + std::to_string(rep.q) + ") + n with n^" +
                 std::to_string(rep.q) + " = 0";
    return rep;
  }
  rep.status = Liftability::Liftable;
  rep.reason = "n = sum w_i^(1/q) eps^i with w_i the coefficient of eps^(iq)";
  const RatFn zero = target.scalar_part().zero_like();
  std::vector<RatFn> n(t, zero);
  bool rational = true;
  for (std::size_t i = 1; i * rep.q < t; ++i) {
    rep.witness_powers.push_back(target[i * rep.q]);
    auto rt = qth_root(target[i * rep.q], rep.q);
    if (rt) n[i] = *rt;
    else rational = false;
  }
  if (rational) rep.witness = KTangent(std::move(n), t);
  return rep;
}

SMat<RatFn> tangent_matrix(const Poly& a, std::size_t t) {
  const RatFn proto = RatFn::one(a.field(), kTheta);
  SMat<RatFn> M(t, proto.zero_like());
  for (std::size_t i = 0; i < t; ++i) {
    const RatFn d = theta_rat(hyperderive(i, a));
    for (std::size_t j = 0; j + i < t; ++j) M(j, j + i) = d;
  }
  return M;
}

TauMatSeries<RatFn> multivalued_operator(const SMat<RatFn>& M, const TauMatSeries<RatFn>& exp,
                                         const TauMatSeries<RatFn>& log, unsigned N) {
  const auto n = static_cast<std::int64_t>(N);
  if (exp.N() < n || log.N() < n) throw PrecisionError("multivalued_operator: exp/log truncated below N", N);
  if (M.dim() != exp.dim() || M.dim() != log.dim()) throw DomainError("multivalued_operator: dimension mismatch");
  const auto I = TauMatSeries<RatFn>::identity(M.dim(), exp.proto());
  if (!exp.compose(log).agrees_through(I, n) || !log.compose(exp).agrees_through(I, n))
    throw DomainError("multivalued_operator: exp and log are not mutually inverse through N");
  return exp.compose(log.left_mul(M)).truncate(n);
}

std::int64_t abs_prec(const VElt& x) {
  std::int64_t p = ValSeries::kExactPrec;
  for (const auto& c : x.rep()) p = std::min(p, c.abs_prec());
  return p;
}

VElt to_vadic(const KElt& x, const std::shared_ptr<const VExt>& Kv, const PlacePtr& place, std::int64_t M) {
  BPoly<ValSeries> rep;
  for (const auto& c : x.rep()) rep.push_back(from_ratfn_abs(place, c, M));
  return VElt(Kv, rep);
}

VadicLift vadic_separable_lift(const std::vector<Poly>& f_in, const Poly& v, std::size_t t, std::int64_t M) {
  if (t == 0) throw DomainError("vadic_separable_lift: t must be >= 1");
  if (M < 1) throw DomainError("vadic_separable_lift: precision must be positive");
  std::vector<Poly> f = f_in;
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  if (f.size() < 2) throw DomainError("vadic_separable_lift: f must have positive degree");
  for (auto& c : f) c = c.with_var("T");
  const Poly vT = v.with_var("T");
  if (divides(vT, f.back())) throw DomainError("vadic_separable_lift: leading coefficient is not a v-adic unit");
  if (f.size() - 1 > 4) throw DomainError("vadic_separable_lift: degree above 4 unsupported");
  const Poly disc = discriminant_x(f);
  if (disc.is_zero()) throw DomainError("vadic_separable_lift: f is inseparable");
  if (divides(vT, disc)) throw DomainError("vadic_separable_lift: discriminant is not a v-adic unit");
  const PlacePtr place = Place::finite(theta_image(vT));
  BPoly<ValSeries> fb;
  for (const auto& c : f) fb.push_back(from_ratfn_abs(place, theta_rat(c), M));
  auto Kv = std::make_shared<const VExt>(fb);
  std::vector<TangentElt<VElt>> Ea;
  for (const auto& a : f) {
    std::vector<VElt> c;
    for (std::size_t i = 0; i < t; ++i)
      c.push_back(VElt::from_base(Kv, from_ratfn_abs(place, theta_rat(hyperderive(i, a)), M)));
    Ea.emplace_back(std::move(c), t);
  }
  const VElt lam(Kv, BPoly<ValSeries>{ValSeries::zero(place, ValSeries::kExactPrec), ValSeries::one(place, M)});
  VadicLift out;
  out.field = Kv;
  out.lift = newton(Ea, TangentElt<VElt>::scalar(lam, t), ceil_log2(t) + 1, false);
  out.residual = eval_with_derivative(Ea, out.lift).first;
  std::int64_t p = ValSeries::kExactPrec;
  for (const auto& c : out.lift.coeffs()) p = std::min(p, abs_prec(c));
  for (const auto& c : out.residual.coeffs())
    for (const auto& x : c.rep())
      if (!x.is_zero()) p = std::min(p, x.val());
  if (p < 1) throw PrecisionError("vadic_separable_lift: no precision left", M + 1 - p);
  out.prec = p;
  return out;
}

}  // namespace fqz
