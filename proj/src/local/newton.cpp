// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/newton.hpp"

#include <algorithm>
#include <numeric>

namespace fqz {

Rational Rational::make(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  return {n / g, d / g};
}

bool Rational::operator<(const Rational& b) const noexcept {
  return static_cast<__int128>(num) * b.den < static_cast<__int128>(b.num) * den;
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

NewtonPolygon newton_polygon(const std::vector<NPPoint>& pts) {
  NewtonPolygon np;
  np.points = pts;
  std::vector<std::pair<std::int64_t, std::int64_t>> exact;
  for (const auto& p : pts)
    if (p.val && !p.lower_bound) exact.emplace_back(p.index, *p.val);
  if (exact.empty()) throw DomainError("newton_polygon: no finite valuations");
  std::sort(exact.begin(), exact.end());
  if (exact.front().first != 0) throw DomainError("newton_polygon: index 0 must have a finite exact valuation");
  for (std::size_t i = 1; i < exact.size(); ++i)
    if (exact[i].first == exact[i - 1].first) throw DomainError("newton_polygon: duplicate index");

  // Andrew's monotone chain, lower hull; collinear points are dropped.
  std::vector<std::pair<std::int64_t, std::int64_t>> h;
  auto cross = [](auto o, auto a, auto b) {
    return static_cast<__int128>(a.first - o.first) * (b.second - o.second) -
           static_cast<__int128>(a.second - o.second) * (b.first - o.first);
  };
  for (const auto& p : exact) {
    while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
    h.push_back(p);
  }
  np.vertices = h;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    NPSegment s{h[k].first, h[k + 1].first, h[k].second, h[k + 1].second,
                Rational::make(h[k + 1].second - h[k].second, h[k + 1].first - h[k].first), true};
    for (const auto& p : pts) {
      if (!p.val || !p.lower_bound) continue;
      // strictly above: val * len > v0 * len + (i - i0) * dv
      const __int128 lhs = static_cast<__int128>(*p.val - s.v0) * s.length();
      const __int128 rhs = static_cast<__int128>(p.index - s.i0) * (s.v1 - s.v0);
      if (!(lhs > rhs)) s.certified = false;
    }
    np.segments.push_back(s);
  }
  return np;
}

ValSeries evaluate(const std::vector<ValSeries>& f, const ValSeries& z) {
  if (f.empty()) throw DomainError("evaluate: empty coefficient list");
  ValSeries acc = f.back();
  for (std::size_t k = f.size() - 1; k-- > 0;) acc = acc * z + f[k];
  return acc;
}

HenselResult hensel_zero_lift(const std::vector<ValSeries>& f, const NPSegment& seg, std::int64_t prec) {
  if (seg.length() != 1) throw DomainError("hensel_zero_lift: segment length > 1; zero not certified base-rational");
  if (!seg.slope.is_integer()) throw DomainError("hensel_zero_lift: non-integer slope; zero not base-rational");
  if (seg.i1 >= static_cast<std::int64_t>(f.size())) throw DomainError("hensel_zero_lift: segment outside f");
  const auto i = static_cast<std::size_t>(seg.i0);
  if (f[i].is_zero() || f[i + 1].is_zero()) throw DomainError("hensel_zero_lift: segment endpoints must be nonzero");
  const PlacePtr& pl = f[i].place();
  if (!pl->is_infinite()) throw DomainError("hensel_zero_lift: infinite place only");
  const std::int64_t zeta = -seg.slope.num;  // valuation of the zero
  const std::int64_t vdom = f[i].val() + static_cast<std::int64_t>(i) * zeta;

  // g(w) = pi^{-vdom} f(pi^zeta w): dominant coefficients at i and i+1 are units.
  std::vector<ValSeries> g;
  g.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    ValSeries b = f[k].shift(static_cast<std::int64_t>(k) * zeta - vdom);
    if (!b.is_zero() && b.val() < 0) throw DomainError("hensel_zero_lift: segment is not on the lower hull");
    g.push_back(b);
  }
  std::int64_t avail = ValSeries::kExactPrec;
  for (const auto& b : g) avail = std::min(avail, b.abs_prec());
  if (avail < prec) throw PrecisionError("hensel_zero_lift: coefficient precision below the requested residual", prec);

  const FiniteField& F = *pl->field();
  std::vector<ValSeries> dg;
  for (std::size_t k = 1; k < g.size(); ++k) dg.push_back(g[k].scale(F.from_int(static_cast<long long>(k))));

  const Elem c = F.neg(F.div(g[i].lead(), g[i + 1].lead()));
  ValSeries w = ValSeries::from_pi_coeffs(pl, 0, {c}, prec);
  HenselResult out;
  for (int it = 0; it < 64; ++it) {
    ValSeries r = evaluate(g, w).truncate_abs(prec);
    if (r.is_zero() || r.val() >= prec) {
      out.zero = w.shift(zeta);
      out.residual = r.is_zero() ? r.abs_prec() : r.val();
      out.iterations = it;
      return out;
    }
    ValSeries d = dg.empty() ? ValSeries() : evaluate(dg, w);
    if (d.is_zero() || d.val() != 0) throw InternalError("hensel_zero_lift: derivative is not a unit at the root");
    w = (w - r * d.inv()).truncate_abs(prec);
    out.iterations = it + 1;
  }
  throw InternalError("hensel_zero_lift: Newton iteration did not converge");
}

}  // namespace fqz
