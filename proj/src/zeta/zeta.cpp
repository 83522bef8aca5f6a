// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/zeta.hpp"

#include <algorithm>
#include <thread>

#include "fqzeta/factor.hpp"

namespace fqz {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > (std::uint64_t{1} << 62) / b) throw DomainError("enumeration too large");
    r *= b;
  }
  return r;
}

/// The k-th monic polynomial of degree d: coefficients are the base-q digits of k.
Poly monic_at(const FieldPtr& F, unsigned d, std::uint64_t k, const std::string& var) {
  std::vector<Elem> c(d + 1);
  const std::uint64_t q = F->q();
  for (unsigned i = 0; i < d; ++i) {
    c[i] = static_cast<Elem>(k % q);
    k /= q;
  }
  c[d] = 1;
  return Poly(F, std::move(c), var);
}

/// Sums term(k) for k in [0, count) split into contiguous chunks, one per
/// thread, combined in chunk order.
template <class T, class Term, class Add>
T parallel_sum(std::uint64_t count, unsigned threads, const T& zero, Term term, Add add) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(count, 256))));
  if (threads <= 1) {
    T acc = zero;
    for (std::uint64_t k = 0; k < count; ++k) add(acc, term(k));
    return acc;
  }
  std::vector<T> part(threads, zero);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> err(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::uint64_t lo = count * t / threads, hi = count * (t + 1) / threads;
        for (std::uint64_t k = lo; k < hi; ++k) add(part[t], term(k));
      } catch (...) {
        err[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  T acc = zero;
  for (auto& p : part) add(acc, std::move(p));
  return acc;
}

void add_into(std::vector<Elem>& acc, const Poly& a, const FiniteField& F) {
  if (acc.size() < a.size()) acc.resize(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) acc[i] = F.add(acc[i], a[i]);
}

ValSeries exact_series(const PlacePtr& inf, const Poly& a, std::int64_t prec) {
  if (a.is_zero()) return ValSeries::zero(inf, ValSeries::kExactPrec);
  return ValSeries::from_poly(inf, a, a.degree() + 1 + std::max<std::int64_t>(prec, 1));
}

/// Coefficients of pi^k in a * T^{-shift} as a series, exactly to absolute precision prec.
ValSeries normalized_series(const PlacePtr& inf, const Poly& a, std::int64_t shift, std::int64_t prec) {
  if (a.is_zero()) return ValSeries::zero(inf, ValSeries::kExactPrec);
  return exact_series(inf, a, prec + shift).shift(shift).truncate_abs(prec);
}

std::vector<ValSeries> poly_coeff_series(const ZetaPoly& z, const PlacePtr& inf, std::int64_t prec) {
  std::vector<ValSeries> f;
  for (const auto& c : z.coeffs)
    f.push_back(c.is_zero() ? ValSeries::zero(inf, ValSeries::kExactPrec) : ValSeries::from_poly(inf, c, prec));
  return f;
}

}  // namespace

std::uint64_t digit_sum(std::uint64_t j, std::uint64_t r) {
  if (r < 2) throw DomainError("digit_sum: base must be at least 2");
  std::uint64_t s = 0;
  for (; j; j /= r) s += j % r;
  return s;
}

Poly power_sum(const FieldPtr& field, unsigned d, std::uint64_t j, const ZetaOptions& opt, const std::string& var) {
  const FiniteField& F = *field;
  if (j == 0) return Poly::constant(field, d == 0 ? 1 : 0, var);
  const std::uint64_t count = ipow(F.q(), d);
  auto acc = parallel_sum(
      count, opt.threads, std::vector<Elem>{},
      [&](std::uint64_t k) { return pow_charp(monic_at(field, d, k, var), j); },
      [&](std::vector<Elem>& a, const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Poly>) {
          add_into(a, x, F);
        } else {
          if (a.size() < x.size()) a.resize(x.size(), 0);
          for (std::size_t i = 0; i < x.size(); ++i) a[i] = F.add(a[i], x[i]);
        }
      });
  return Poly(field, std::move(acc), var);
}

Poly ZetaPoly::at_one() const {
  Poly s(field);
  for (const auto& c : coeffs) s += c;
  return s;
}

bool has_trivial_zero(const FieldPtr& field, std::uint64_t j) { return j > 0 && j % (field->q() - 1) == 0; }

ZetaPoly zeta_special_poly(const FieldPtr& field, std::uint64_t j, const ZetaOptions& opt) {
  ZetaPoly z;
  z.field = field;
  z.j = j;
  const std::uint64_t r = field->q();
  const std::uint64_t ds = digit_sum(j, r);
  int zeros_in_row = 0;
  for (unsigned d = 0;; ++d) {
    Poly s = power_sum(field, d, j, opt);
    zeros_in_row = s.is_zero() ? zeros_in_row + 1 : 0;
    z.coeffs.push_back(std::move(s));
    z.stop_degree = d;
    if (static_cast<std::uint64_t>(d) * (r - 1) > ds && zeros_in_row >= 2) break;
  }
  while (!z.coeffs.empty() && z.coeffs.back().is_zero()) z.coeffs.pop_back();
  return z;
}

ZetaPoly remove_trivial_zero(const ZetaPoly& z) {
  ZetaPoly out = z;
  out.trivial_zero_removed = true;
  if (z.trivial_zero_removed || z.v || !has_trivial_zero(z.field, z.j)) return out;
  if (!z.at_one().is_zero()) throw InternalError("remove_trivial_zero: z(1) != 0");
  // (1 - X) q(X) = z(X): q_d = sum_{i <= d} z_i.
  out.coeffs.clear();
  Poly run(z.field);
  for (std::size_t d = 0; d + 1 < z.coeffs.size(); ++d) {
    run += z.coeffs[d];
    out.coeffs.push_back(run);
  }
  while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  return out;
}

ZetaPoly vadic_zeta_poly(const Poly& v, std::uint64_t j, const ZetaOptions& opt) {
  if (v.degree() < 1 || v.lead() != 1 || !is_irreducible(v))
    throw DomainError("vadic_zeta_poly: v must be monic irreducible");
  const ZetaPoly z = zeta_special_poly(v.field(), j, opt);
  const auto e = static_cast<std::size_t>(v.degree());
  const Poly vj = pow_charp(v, j);
  ZetaPoly out;
  out.field = v.field();
  out.j = j;
  out.v = v;
  out.stop_degree = z.stop_degree + static_cast<unsigned>(e);
  const std::size_t D = z.coeffs.size() + e;
  for (std::size_t d = 0; d < D; ++d) {
    Poly c = d < z.coeffs.size() ? z.coeffs[d] : Poly(v.field());
    if (d >= e && d - e < z.coeffs.size()) c -= vj * z.coeffs[d - e];
    out.coeffs.push_back(std::move(c));
  }
  while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  return out;
}

std::int64_t ZetaSeriesRow::tail_bound(std::int64_t d) const {
  const auto r = static_cast<std::int64_t>(place->field()->q());
  const std::int64_t coarse = (r - 1) * d * (d + 1) / 2;
  if (d <= 0) return coarse;
  // S_d = sum_k binom(-y, k) sum_a (a_1 pi + ... + a_d pi^d)^k. A term needs the
  // base-p digits of k below those of -y (Lucas) and k = e_1 + ... + e_d without
  // carries, each e_i a positive multiple of r - 1, so each e_i has base-p digit
  // sum >= p - 1. Placing these digit units on positions p^t with weight i gives
  // the bound by rearrangement.
  constexpr std::int64_t kCap = std::int64_t{1} << 50;
  const std::uint32_t p = y.p();
  unsigned K = 0;
  for (std::uint64_t pk = 1; K < y.known_digits() && pk < (std::uint64_t{1} << 40) / p; pk *= p) ++K;
  const std::vector<std::uint32_t> dig = (-y).digits(K);
  // Digits above K: zero for a small nonnegative exact -y, otherwise unconstrained.
  std::uint64_t pK = 1;
  for (unsigned t = 0; t < K; ++t) pK *= p;
  const bool finite = y.is_exact() && -y.exact_value() >= 0 && static_cast<std::uint64_t>(-y.exact_value()) < pK;
  const std::int64_t need = d * (p - 1);
  std::vector<std::int64_t> units;
  std::int64_t pt = 1;
  for (unsigned t = 0; static_cast<std::int64_t>(units.size()) < need; ++t) {
    if (t >= K && finite) return std::max(coarse, kCap);  // S_d vanishes exactly
    if (pt >= kCap) return std::max(coarse, kCap - 1);
    const std::uint32_t cap = t < K ? dig[t] : p - 1;
    for (std::uint32_t c = 0; c < cap && static_cast<std::int64_t>(units.size()) < need; ++c) units.push_back(pt);
    pt = pt > kCap / p ? kCap : pt * p;
  }
  std::int64_t bound = 0;
  for (std::int64_t u = 0; u < need; ++u) bound = std::min(kCap, bound + (d - u / (p - 1)) * units[u]);
  return std::max(coarse, bound);
}

std::vector<NPPoint> ZetaSeriesRow::np_points() const {
  std::vector<NPPoint> pts;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    const auto& c = coeffs[d];
    const auto di = static_cast<std::int64_t>(d);
    if (!c.is_zero())
      pts.push_back({di, c.val(), false});
    else
      pts.push_back({di, std::max(c.abs_prec(), tail_bound(di)), true});
  }
  const auto r = static_cast<std::int64_t>(place->field()->q());
  const std::int64_t last = static_cast<std::int64_t>(coeffs.size()) + prec / (r - 1) + 2;
  for (std::int64_t d = static_cast<std::int64_t>(coeffs.size()); d <= last; ++d)
    pts.push_back({d, tail_bound(d), true});
  return pts;
}

ZetaSeriesRow zeta_series_row(const FieldPtr& field, const PadicInt& y, unsigned d_max, std::int64_t prec,
                              const ZetaOptions& opt, const ValSeries* uniformizer) {
  if (prec < 1) throw DomainError("zeta_series_row: precision must be at least 1");
  if (y.p() != field->p()) throw DomainError("zeta_series_row: exponent prime differs from the characteristic");
  auto inf = Place::infinity(field);
  if (uniformizer) {
    if (uniformizer->is_zero() || uniformizer->val() != 1 || uniformizer->lead() != 1)
      throw DomainError("zeta_series_row: uniformizer must be positive of valuation 1");
    inf = uniformizer->place();
  }
  ZetaSeriesRow row;
  row.place = inf;
  row.y = y;
  row.d_max = d_max;
  row.prec = prec;
  const PadicInt ny = -y;
  for (unsigned d = 0; d <= d_max; ++d) {
    const std::int64_t lb = row.tail_bound(d);
    if (lb >= prec) {
      row.coeffs.push_back(ValSeries::zero(inf, lb));
      continue;
    }
    const ValSeries pid = uniformizer ? uniformizer->with_prec(prec).pow(d) : ValSeries::one(inf, prec);
    auto term = [&](std::uint64_t k) {
      const Poly n = monic_at(field, d, k, "T");
      const ValSeries un = uniformizer ? (ValSeries::from_poly(inf, n, prec) * pid).truncate_abs(prec)
                                       : one_unit_part(inf, n, prec);
      return unit_pow_padic(un, ny, prec);
    };
    ValSeries s = parallel_sum(ipow(field->q(), d), opt.threads, ValSeries::zero(inf, prec), term,
                               [&](ValSeries& a, const ValSeries& x) { a = (a + x).truncate_abs(prec); });
    if (s.is_zero()) s = ValSeries::zero(inf, std::max(s.abs_prec(), lb));
    row.coeffs.push_back(s);
  }
  return row;
}

ValSeries zeta_at_positive(const FieldPtr& field, unsigned i, std::int64_t prec, const ZetaOptions& opt) {
  if (i < 1) throw DomainError("zeta_at_positive: i must be at least 1");
  if (prec < 1) throw DomainError("zeta_at_positive: precision must be at least 1");
  auto inf = Place::infinity(field);
  const auto r = static_cast<std::int64_t>(field->q());
  ValSeries acc = ValSeries::zero(inf, prec);
  for (std::int64_t d = 0;; ++d) {
    // v(sum_{deg n = d} n^{-i}) >= d i + (r-1) d (d+1) / 2.
    const std::int64_t lb = d * i + (r - 1) * d * (d + 1) / 2;
    if (lb >= prec) break;
    const std::int64_t P = prec - d * static_cast<std::int64_t>(i);
    auto term = [&](std::uint64_t k) {
      return one_unit_part(inf, monic_at(field, static_cast<unsigned>(d), k, "T"), P).pow(-static_cast<std::int64_t>(i));
    };
    ValSeries s = parallel_sum(ipow(field->q(), static_cast<unsigned>(d)), opt.threads, ValSeries::zero(inf, P), term,
                               [&](ValSeries& a, const ValSeries& x) { a = (a + x).truncate_abs(P); });
    acc = (acc + s.shift(d * i)).truncate_abs(prec);
  }
  return acc;
}

WanReport wan_identity_check(const FieldPtr& field, std::uint64_t j, std::int64_t prec, const ZetaOptions& opt) {
  if (!has_trivial_zero(field, j)) throw DomainError("wan_identity_check: requires j > 0 with (r-1) | j");
  if (prec < 1) throw DomainError("wan_identity_check: precision must be at least 1");
  auto inf = Place::infinity(field);
  const ZetaPoly z = zeta_special_poly(field, j, opt);
  const ZetaPoly zv = vadic_zeta_poly(Poly::monomial(field, 1, 1), j, opt);
  WanReport rep;
  rep.prec = prec;
  const std::size_t D = std::max(z.coeffs.size(), zv.coeffs.size()) + 1;
  ValSeries left = ValSeries::zero(inf, ValSeries::kExactPrec);
  for (std::size_t d = 0; d < D; ++d) {
    if (d < zv.coeffs.size() && !zv.coeffs[d].is_zero()) {
      // T -> 1/T turns the coefficient of T^k into that of pi^k.
      const Poly& c = zv.coeffs[d];
      std::vector<Elem> pc(c.coeffs().begin(), c.coeffs().end());
      left = (left + ValSeries::from_pi_coeffs(inf, 0, pc, static_cast<std::int64_t>(pc.size()) + prec)).truncate_abs(prec);
    }
    const ValSeries right =
        d < z.coeffs.size() ? normalized_series(inf, z.coeffs[d], static_cast<std::int64_t>(d * j), prec)
                            : ValSeries::zero(inf, ValSeries::kExactPrec);
    const std::int64_t a = std::min(left.agreement(right), prec);
    rep.agreement.push_back(a);
    if (a < prec) rep.holds = false;
  }
  return rep;
}

namespace {

ZeroFieldReport analyse(const NewtonPolygon& np, const std::vector<ValSeries>& f, std::int64_t prec,
                        const ZetaSeriesRow* row) {
  ZeroFieldReport rep;
  rep.polygon = np;
  for (const auto& seg : np.segments) {
    ZeroRecord z;
    z.slope = seg.slope;
    z.length = seg.length();
    z.certified = seg.certified;
    z.simple = z.length == 1;
    z.k_rational = seg.certified && z.simple && seg.slope.is_integer();
    if (!seg.certified) rep.complete = false;
    if (seg.certified) {
      rep.all_simple = rep.all_simple && z.simple;
      rep.all_in_k = rep.all_in_k && z.k_rational;
    }
    if (z.k_rational) {
      std::int64_t target = prec;
      if (row) {
        // Precision supported by the computed coefficients and by the tail.
        const std::int64_t zeta = -seg.slope.num;
        const std::int64_t vdom = seg.v0 + seg.i0 * zeta;
        for (std::size_t k = 0; k < f.size(); ++k)
          target = std::min(target, f[k].abs_prec() + static_cast<std::int64_t>(k) * zeta - vdom);
        const auto r = static_cast<std::int64_t>(row->place->field()->q());
        const std::int64_t last = static_cast<std::int64_t>(f.size()) + row->prec / (r - 1) + 2;
        for (std::int64_t d = static_cast<std::int64_t>(f.size()); d <= last; ++d) {
          std::int64_t lb = row->tail_bound(d);
          if (d < static_cast<std::int64_t>(row->coeffs.size())) lb = std::max(lb, row->coeffs[d].abs_prec());
          target = std::min(target, lb + d * zeta - vdom);
        }
      }
      if (target >= 1) {
        auto h = hensel_zero_lift(f, seg, target);
        z.zero = h.zero;
        z.residual = h.residual;
      }
    }
    rep.zeros.push_back(std::move(z));
  }
  return rep;
}

}  // namespace

ZeroFieldReport zero_field_analysis(const ZetaPoly& z, std::int64_t prec) {
  if (z.coeffs.empty()) throw DomainError("zero_field_analysis: zero input");
  if (!z.coeffs[0].is_one()) throw DomainError("zero_field_analysis: constant coefficient must be 1");
  std::vector<NPPoint> pts;
  for (std::size_t d = 0; d < z.coeffs.size(); ++d) {
    NPPoint p;
    p.index = static_cast<std::int64_t>(d);
    if (!z.coeffs[d].is_zero()) p.val = -z.coeffs[d].degree();
    pts.push_back(p);
  }
  auto inf = Place::infinity(z.field);
  return analyse(newton_polygon(pts), poly_coeff_series(z, inf, prec + 2), prec, nullptr);
}

ZeroFieldReport zero_field_analysis(const ZetaSeriesRow& row, std::int64_t prec) {
  if (row.coeffs.empty() || row.coeffs[0].is_zero()) throw DomainError("zero_field_analysis: zero input");
  // Drop trailing coefficients that are zero to precision; the tail bound covers them.
  std::vector<ValSeries> f = row.coeffs;
  while (f.size() > 1 && f.back().is_zero()) f.pop_back();
  return analyse(newton_polygon(row.np_points()), f, prec, &row);
}

CovarianceReport pi_covariance_check(const FieldPtr& field, const PadicInt& y, const ValSeries& u, unsigned d_max,
                                     std::int64_t prec, const ZetaOptions& opt) {
  if (u.is_zero() || u.val() != 0 || u.lead() != 1) throw DomainError("pi_covariance_check: u must be a 1-unit");
  const PlacePtr& inf = u.place();
  const ValSeries pi1 = (u * ValSeries::uniformizer(inf, prec)).truncate_abs(prec + 1);
  const ZetaSeriesRow r1 = zeta_series_row(field, y, d_max, prec, opt, &pi1);
  const ZetaSeriesRow r2 = zeta_series_row(field, y, d_max, prec, opt);
  CovarianceReport rep;
  for (unsigned d = 0; d <= d_max; ++d) {
    const ValSeries expect = (unit_pow_padic(u, (-y) * static_cast<std::int64_t>(d), prec) * r2.coeffs[d]).truncate_abs(prec);
    const std::int64_t a = std::min(r1.coeffs[d].agreement(expect), prec);
    rep.coefficient_agreement.push_back(a);
    if (a < prec) rep.coefficients_match = false;
  }
  const auto z1 = zero_field_analysis(r1, prec), z2 = zero_field_analysis(r2, prec);
  std::vector<ValSeries> s1, s2;
  for (const auto& z : z1.zeros)
    if (z.zero) s1.push_back(*z.zero);
  const ValSeries uy = unit_pow_padic(u, y, prec);
  for (const auto& z : z2.zeros)
    if (z.zero) s2.push_back(*z.zero * uy);
  rep.zeros_1 = s1.size();
  rep.zeros_2 = s2.size();
  if (s1.size() != s2.size()) rep.zeros_match = false;
  for (const auto& a : s2) {
    std::int64_t best = -ValSeries::kExactPrec;
    bool matched = false;
    for (const auto& b : s1) {
      const std::int64_t ag = a.agreement(b);
      best = std::max(best, ag);
      const std::int64_t known = std::min(a.abs_prec(), b.abs_prec());
      if (ag >= known && known > a.val()) matched = true;
    }
    rep.zero_agreement.push_back(best);
    if (!matched) rep.zeros_match = false;
  }
  return rep;
}

namespace {

/// Splits c in F_{r^2} as a + b w with a, b in F_r (w = omega outside F_r).
struct Splitter {
  const FiniteField& F;
  unsigned m;  // r = p^m
  Elem w, den_inv;
  Splitter(const FiniteField& F2, unsigned m_) : F(F2), m(m_) {
    w = F.generator();
    den_inv = F.inv(F.sub(w, F.frobenius(w, m)));
  }
  std::pair<Elem, Elem> operator()(Elem c) const {
    const Elem b = F.mul(F.sub(c, F.frobenius(c, m)), den_inv);
    return {F.sub(c, F.mul(b, w)), b};
  }
};

std::pair<ValSeries, ValSeries> split_series(const ValSeries& s, const Splitter& sp) {
  if (s.is_zero()) return {s, s};
  std::vector<Elem> ua(s.unit().size()), ub(s.unit().size());
  for (std::size_t i = 0; i < s.unit().size(); ++i) std::tie(ua[i], ub[i]) = sp(s.unit()[i]);
  auto mk = [&](std::vector<Elem> c) {
    bool nz = std::any_of(c.begin(), c.end(), [](Elem e) { return e != 0; });
    if (!nz) return ValSeries::zero(s.place(), s.abs_prec());
    return ValSeries::make(s.place(), s.val(), Poly(s.place()->field(), std::move(c)), s.prec());
  };
  return {mk(std::move(ua)), mk(std::move(ub))};
}

}  // namespace

CmReport cm_hecke_coeffs(CmExample ex, const FieldPtr& field, const PadicInt& y, unsigned d_max, std::int64_t prec,
                         const ZetaOptions& opt) {
  if (prec < 1) throw DomainError("cm_hecke_coeffs: precision must be at least 1");
  if (y.p() != field->p()) throw DomainError("cm_hecke_coeffs: exponent prime differs from the characteristic");
  CmReport rep;
  rep.example = ex;
  const bool exact = y.is_exact() && y.exact_value() <= 0;
  const std::uint64_t j = exact ? static_cast<std::uint64_t>(-y.exact_value()) : 0;
  const PadicInt ny = -y;

  if (ex == CmExample::ConstantField) {
    const unsigned m = field->m();
    const FieldPtr F2 = FiniteField::of_order(field->q() * field->q());
    const Splitter sp(*F2, m);
    auto inf = Place::infinity(F2);
    for (unsigned d = 0; 2 * d <= d_max; ++d) {
      const std::int64_t D = 2 * static_cast<std::int64_t>(d);
      auto norm = [&](const Poly& g) {
        std::vector<Elem> c(g.coeffs().begin(), g.coeffs().end());
        for (auto& e : c) e = F2->frobenius(e, m);
        return g * Poly(F2, std::move(c));
      };
      ValSeries total;
      if (exact) {
        auto acc = parallel_sum(
            ipow(F2->q(), d), opt.threads, std::vector<Elem>{},
            [&](std::uint64_t k) {
              const Poly g = monic_at(F2, d, k, "T");
              return g * pow_charp(norm(g), j);
            },
            [&](std::vector<Elem>& a, const auto& x) {
              if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Poly>) {
                add_into(a, x, *F2);
              } else {
                if (a.size() < x.size()) a.resize(x.size(), 0);
                for (std::size_t i = 0; i < x.size(); ++i) a[i] = F2->add(a[i], x[i]);
              }
            });
        total = normalized_series(inf, Poly(F2, std::move(acc)), D * static_cast<std::int64_t>(j), prec);
      } else {
        const std::int64_t P = prec + d;
        total = parallel_sum(
            ipow(F2->q(), d), opt.threads, ValSeries::zero(inf, prec),
            [&](std::uint64_t k) {
              const Poly g = monic_at(F2, d, k, "T");
              const ValSeries w = unit_pow_padic(one_unit_part(inf, norm(g), P), ny, P);
              return (ValSeries::from_poly(inf, g, P) * w).truncate_abs(prec);
            },
            [&](ValSeries& a, const ValSeries& x) { a = (a + x).truncate_abs(prec); });
      }
      auto [a, b] = split_series(total, sp);
      rep.coeffs.push_back({D, a, b});
    }
  } else {
    if (field->q() != 3) throw DomainError("cm_hecke_coeffs: the geometric example is defined for r = 3");
    auto inf = Place::infinity(field);
    const Poly T = Poly::monomial(field, 1, 1);
    const Poly mT = -T;
    for (unsigned d = 0; d <= d_max; ++d) {
      // g = lambda^d + sum c_i lambda^i = a(T) + b(T) lambda, N(g) = a^2 + T b^2.
      auto parts = [&](std::uint64_t k) {
        const Poly g = monic_at(field, d, k, "l");
        Poly a(field), b(field), pw = T.one();
        for (std::size_t i = 0; i < g.size(); i += 2) {
          if (g[i]) a += pw.scale(g[i]);
          if (i + 1 < g.size() && g[i + 1]) b += pw.scale(g[i + 1]);
          pw = pw * mT;
        }
        return std::pair<Poly, Poly>{a, b};
      };
      ValSeries A, B;
      if (exact) {
        using Acc = std::pair<std::vector<Elem>, std::vector<Elem>>;
        auto acc = parallel_sum(
            ipow(3, d), opt.threads, Acc{},
            [&](std::uint64_t k) {
              auto [a, b] = parts(k);
              const Poly Nj = pow_charp(a * a + T * b * b, j);
              return std::pair<Poly, Poly>{a * Nj, b * Nj};
            },
            [&](Acc& s, const auto& x) {
              if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Acc>) {
                for (int h = 0; h < 2; ++h) {
                  auto& dst = h ? s.second : s.first;
                  const auto& src = h ? x.second : x.first;
                  if (dst.size() < src.size()) dst.resize(src.size(), 0);
                  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = field->add(dst[i], src[i]);
                }
              } else {
                add_into(s.first, x.first, *field);
                add_into(s.second, x.second, *field);
              }
            });
        const std::int64_t sh = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(j);
        A = normalized_series(inf, Poly(field, std::move(acc.first)), sh, prec);
        B = normalized_series(inf, Poly(field, std::move(acc.second)), sh, prec);
      } else {
        const std::int64_t P = prec + d;
        using Acc = std::pair<ValSeries, ValSeries>;
        const Acc zero{ValSeries::zero(inf, prec), ValSeries::zero(inf, prec)};
        auto acc = parallel_sum(
            ipow(3, d), opt.threads, zero,
            [&](std::uint64_t k) {
              auto [a, b] = parts(k);
              const ValSeries w = unit_pow_padic(one_unit_part(inf, a * a + T * b * b, P), ny, P);
              auto mulp = [&](const Poly& c) {
                return c.is_zero() ? ValSeries::zero(inf, ValSeries::kExactPrec)
                                   : (ValSeries::from_poly(inf, c, P) * w).truncate_abs(prec);
              };
              return Acc{mulp(a), mulp(b)};
            },
            [&](Acc& s, const Acc& x) {
              s.first = (s.first + x.first).truncate_abs(prec);
              s.second = (s.second + x.second).truncate_abs(prec);
            });
        A = acc.first;
        B = acc.second;
      }
      rep.coeffs.push_back({static_cast<std::int64_t>(d), A, B});
    }
  }
  rep.classification = "K";
  for (const auto& c : rep.coeffs)
    if (!c.b.is_zero()) rep.classification = "K1";
  return rep;
}

}  // namespace fqz
