// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/galois.hpp"

#include <algorithm>
#include <sstream>

#include "fqzeta/factor.hpp"

namespace fqz {

namespace xpoly {

void trim(XPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

std::int64_t degree(const XPoly& f) {
  XPoly g = f;
  trim(g);
  return static_cast<std::int64_t>(g.size()) - 1;
}

Poly content(const XPoly& f) {
  Poly g;
  bool have = false;
  for (const auto& c : f) {
    if (c.is_zero()) continue;
    g = have ? gcd(g, c) : c.monic();
    have = true;
  }
  if (!have) throw DomainError("xpoly::content: zero polynomial");
  return g;
}

XPoly primitive_part(const XPoly& f) {
  const Poly g = content(f);
  XPoly out;
  for (const auto& c : f) out.push_back(c.is_zero() ? c : div_exact(c, g));
  return out;
}

XPoly mul(const XPoly& a, const XPoly& b) {
  if (a.empty() || b.empty()) return {};
  XPoly r(a.size() + b.size() - 1, a[0].zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

XPoly reversed(const XPoly& f) {
  XPoly g = f;
  trim(g);
  std::reverse(g.begin(), g.end());
  trim(g);
  return g;
}

Poly eval(const XPoly& f, const Poly& a) {
  Poly acc = a.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * a + f[i];
  return acc;
}

std::string to_string(const XPoly& f, const std::string& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << f[i].to_string() << ")";
    if (i > 0) os << "*" << x << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return first ? "0" : os.str();
}

}  // namespace xpoly

namespace {

void check_prime(const Poly& v) {
  if (v.degree() < 1 || v.lead() != 1 || !is_irreducible(v)) throw DomainError("v must be monic irreducible");
}

bool eis_forward(const XPoly& f, const Poly& v) {
  const std::size_t n = f.size() - 1;
  if ((f[n] % v).is_zero()) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!(f[i] % v).is_zero()) return false;
  return !(f[0] % (v * v)).is_zero();
}

XPoly require_monic_degree(const XPoly& f, std::int64_t n, const char* what) {
  XPoly g = f;
  xpoly::trim(g);
  if (static_cast<std::int64_t>(g.size()) - 1 != n) throw DomainError(std::string(what) + ": wrong degree");
  if (!g.back().is_one()) throw DomainError(std::string(what) + ": polynomial must be monic");
  return g;
}

/// Bareiss determinant over A with row pivoting.
Poly bareiss_det(std::vector<std::vector<Poly>> M, const Poly& like) {
  const std::size_t n = M.size();
  if (n == 0) return like.one();
  Poly prev = like.one();
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && M[piv][k].is_zero()) ++piv;
    if (piv == n) return like.zero();
    if (piv != k) {
      std::swap(M[piv], M[k]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = div_exact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
    prev = M[k][k];
  }
  return neg ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

std::vector<Poly> monic_divisors(const Poly& c, std::size_t budget, bool& over) {
  over = false;
  if (c.degree() > 1000) {
    over = true;
    return {};
  }
  const auto fz = factor(c);
  std::size_t count = 1;
  for (const auto& fa : fz.factors) {
    count *= fa.mult + 1;
    if (count > budget) {
      over = true;
      return {};
    }
  }
  std::vector<Poly> divs{c.one()};
  for (const auto& fa : fz.factors) {
    std::vector<Poly> next;
    for (const auto& d : divs) {
      Poly pw = d;
      for (unsigned e = 0; e <= fa.mult; ++e) {
        next.push_back(pw);
        pw = pw * fa.f;
      }
    }
    divs = std::move(next);
  }
  return divs;
}

std::vector<Elem> units(const FiniteField& F) {
  std::vector<Elem> u;
  for (std::uint64_t a = 1; a < F.q(); ++a) u.push_back(static_cast<Elem>(a));
  return u;
}

bool prime_scan_ok(const FieldPtr& F, unsigned d) {
  if (!F->is_prime_field()) return false;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < d; ++i) {
    q *= F->q();
    if (q > FiniteField::kMaxOrder) return false;
  }
  return true;
}

std::optional<Poly> mod_prime_witness(const XPoly& f, unsigned bound) {
  const FieldPtr& F = f.back().field();
  for (unsigned d = 1; d <= bound && prime_scan_ok(F, d); ++d)
    for (const auto& v : monic_irreducibles(F, d, f.back().var()))
      if (!(f.back() % v).is_zero() && irreducible_mod_prime(f, v)) return v;
  return std::nullopt;
}

}  // namespace

EisensteinResult eisenstein_check(const XPoly& f0, const Poly& v) {
  check_prime(v);
  XPoly f = f0;
  xpoly::trim(f);
  if (f.size() < 2) throw DomainError("eisenstein_check: degree must be at least 1");
  EisensteinResult r;
  r.forward = eis_forward(f, v);
  if (!f[0].is_zero()) r.reverse = eis_forward(xpoly::reversed(f), v);
  return r;
}

std::vector<EisensteinWitness> eisenstein_scan(const XPoly& f0, unsigned degree_bound) {
  XPoly f = f0;
  xpoly::trim(f);
  if (f.size() < 2) throw DomainError("eisenstein_scan: degree must be at least 1");
  std::vector<EisensteinWitness> out;
  for (int orient = 0; orient < 2; ++orient) {
    const XPoly g = orient == 0 ? f : xpoly::reversed(f);
    if (g.size() != f.size()) continue;
    // Candidates divide every non-leading coefficient.
    XPoly low(g.begin(), g.end() - 1);
    bool all_zero = std::all_of(low.begin(), low.end(), [](const Poly& c) { return c.is_zero(); });
    if (all_zero) continue;
    const Poly c = xpoly::content(low);
    if (c.degree() < 1) continue;
    for (const auto& fa : factor(c).factors)
      if (fa.f.degree() <= static_cast<std::int64_t>(degree_bound) && eis_forward(g, fa.f))
        out.push_back({fa.f, orient == 0});
  }
  std::sort(out.begin(), out.end(), [](const EisensteinWitness& a, const EisensteinWitness& b) {
    if (a.v.degree() != b.v.degree()) return a.v.degree() < b.v.degree();
    auto ca = a.v.coeffs(), cb = b.v.coeffs();
    if (!std::equal(ca.begin(), ca.end(), cb.begin(), cb.end()))
      return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    return a.forward && !b.forward;
  });
  return out;
}

XPoly resolvent_cubic(const XPoly& f0) {
  const XPoly f = require_monic_degree(f0, 4, "resolvent_cubic");
  const FiniteField& F = f[0].F();
  if (F.p() == 2) throw DomainError("resolvent_cubic: characteristic 2 is not supported");
  // x -> x - a3/4 gives x^4 + p x^2 + q x + s.
  const Elem i4 = F.inv(F.from_int(4));
  const Poly h = f[3].scale(i4);  // a3/4
  const Poly &a2 = f[2], &a1 = f[1], &a0 = f[0];
  const Poly h2 = h * h;
  const Poly p = a2 - h2.scale(F.from_int(6));
  const Poly q = a1 - (h * a2).scale(F.from_int(2)) + (h2 * h).scale(F.from_int(8));
  const Poly s = a0 - h * a1 + h2 * a2 - (h2 * h2).scale(F.from_int(3));
  const Poly one = p.one();
  return {(p * s).scale(F.from_int(4)) - q * q, -s.scale(F.from_int(4)), -p, one};
}

Poly discriminant_x(const XPoly& f0) {
  XPoly f = f0;
  xpoly::trim(f);
  const std::size_t n = f.size() - 1;
  if (f.size() < 2 || n > 4) throw DomainError("discriminant_x: degree must be 1..4");
  const FiniteField& F = f[0].F();
  if (n == 1) return f[0].one();
  // Sylvester matrix of f (degree n) and f' (formal degree n-1).
  XPoly df;
  for (std::size_t i = 1; i <= n; ++i) df.push_back(f[i].scale(F.from_int(static_cast<long long>(i))));
  const std::size_t N = 2 * n - 1;
  std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N, f[0].zero()));
  for (std::size_t r = 0; r < n - 1; ++r)
    for (std::size_t i = 0; i <= n; ++i) M[r][r + i] = f[n - i];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) M[n - 1 + r][r + i] = df[n - 1 - i];
  Poly res = bareiss_det(std::move(M), f[0]);
  res = div_exact(res, f[n]);
  return (n * (n - 1) / 2) % 2 ? -res : res;
}

std::optional<Poly> sqrt_poly(const Poly& d) {
  const FiniteField& F = d.F();
  if (F.p() == 2) throw DomainError("sqrt_poly: characteristic 2 is not supported");
  if (d.is_zero()) return d;
  if (d.degree() % 2) return std::nullopt;
  const auto rs = roots(Poly(d.field(), std::vector<Elem>{F.neg(d.lead()), 0, 1}));
  if (rs.empty()) return std::nullopt;
  const auto m = static_cast<std::size_t>(d.degree() / 2);
  std::vector<Elem> s(m + 1, 0);
  s[m] = rs[0];
  const Elem inv2s = F.inv(F.mul(F.from_int(2), s[m]));
  for (std::size_t k = m; k-- > 0;) {
    // coefficient of T^{m+k}: 2 s_m s_k + sum_{i+j = m+k, k < i, j < m} s_i s_j
    Elem acc = d[m + k];
    for (std::size_t i = k + 1; i < m; ++i) {
      const std::size_t j = m + k - i;
      if (j <= k || j >= m) continue;
      acc = F.sub(acc, F.mul(s[i], s[j]));
    }
    s[k] = F.mul(acc, inv2s);
  }
  Poly r(d.field(), std::move(s), d.var());
  if (!(r * r == d)) return std::nullopt;
  return r;
}

bool disc_is_square(const Poly& d) {
  if (d.F().p() == 2) throw DomainError("disc_is_square: characteristic 2 is not supported");
  if (d.is_zero()) throw DomainError("disc_is_square: zero discriminant");
  return sqrt_poly(d).has_value();
}

bool irreducible_mod_prime(const XPoly& f0, const Poly& v) {
  XPoly f = f0;
  xpoly::trim(f);
  if (f.empty()) throw DomainError("irreducible_mod_prime: zero polynomial");
  const FieldPtr& F = f.back().field();
  if (!F->is_prime_field()) throw DomainError("irreducible_mod_prime: requires a prime constant field");
  check_prime(v);
  if ((f.back() % v).is_zero()) throw DomainError("irreducible_mod_prime: leading coefficient vanishes mod v");
  const auto e = static_cast<std::uint32_t>(v.degree());
  std::vector<std::uint32_t> mod(v.coeffs().begin(), v.coeffs().end());
  const FieldPtr Fv = e == 1 ? F : FiniteField::make(F->p(), e, mod);
  std::vector<Elem> red;
  for (const auto& c : f) {
    const Poly r = c % v;
    if (e == 1) {
      red.push_back(r.is_zero() ? 0 : r[0]);
      continue;
    }
    std::vector<std::uint32_t> dg(e, 0);
    for (std::size_t i = 0; i < r.size(); ++i) dg[i] = r[i];
    red.push_back(Fv->from_digits(dg));
  }
  return is_irreducible(Poly(Fv, std::move(red), "x"));
}

std::optional<std::vector<Poly>> roots_in_A(const XPoly& f0, std::size_t budget) {
  XPoly f = f0;
  xpoly::trim(f);
  if (f.size() < 2 || !f.back().is_one()) throw DomainError("roots_in_A: monic polynomial of degree >= 1 required");
  std::vector<Poly> out;
  // Strip factors of x.
  if (f[0].is_zero()) {
    out.push_back(f[0]);
    while (!f.empty() && f[0].is_zero()) f.erase(f.begin());
  }
  if (f.size() < 2) return out;
  const std::size_t n = f.size() - 1;
  // deg a <= max_i deg(c_i) / (n - i) for any root a.
  std::int64_t dmax = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!f[i].is_zero()) dmax = std::max<std::int64_t>(dmax, f[i].degree() / static_cast<std::int64_t>(n - i));
  bool over = false;
  const auto divs = monic_divisors(f[0], budget, over);
  if (over) return std::nullopt;
  const auto us = units(f[0].F());
  if (divs.size() * us.size() > budget) return std::nullopt;
  for (const auto& m : divs) {
    if (m.degree() > dmax) continue;
    for (Elem u : us) {
      const Poly a = m.scale(u);
      if (xpoly::eval(f, a).is_zero()) out.push_back(a);
    }
  }
  return out;
}

std::string to_string(GaloisGroup g) {
  switch (g) {
    case GaloisGroup::S4: return "S4";
    case GaloisGroup::A4: return "A4";
    case GaloisGroup::D4orC4: return "D4-or-C4";
    case GaloisGroup::V4: return "V4";
    case GaloisGroup::Reducible: return "reducible";
    case GaloisGroup::Undecided: return "undecided";
  }
  return "undecided";
}

namespace {

/// Looks for a factorization into two monic quadratics over A.
std::optional<bool> has_quadratic_factor(const XPoly& f, std::size_t budget) {
  const FiniteField& F = f[0].F();
  bool over = false;
  const auto divs = monic_divisors(f[0], budget, over);
  if (over) return std::nullopt;
  const auto us = units(F);
  if (divs.size() * us.size() > budget) return std::nullopt;
  const Elem i2 = F.inv(F.from_int(2));
  for (const auto& m : divs) {
    for (Elem u : us) {
      const Poly c = m.scale(u);
      const Poly c2 = div_exact(f[0], c);
      std::vector<Poly> bs;
      if (!(c == c2)) {
        const Poly num = f[1] - c * f[3], den = c2 - c;
        if (!divides(den, num)) continue;
        bs.push_back(div_exact(num, den));
      } else {
        const Poly disc = f[3] * f[3] - (f[2] - c.scale(F.from_int(2))).scale(F.from_int(4));
        auto sq = sqrt_poly(disc);
        if (!sq) continue;
        bs.push_back((f[3] + *sq).scale(i2));
        bs.push_back((f[3] - *sq).scale(i2));
      }
      for (const auto& b : bs) {
        const Poly b2 = f[3] - b;
        if (f[2] == c + c2 + b * b2 && f[1] == b * c2 + b2 * c) return true;
      }
    }
  }
  return false;
}

}  // namespace

GaloisReport quartic_galois_group(const XPoly& f0, unsigned scan_bound) {
  const XPoly f = require_monic_degree(f0, 4, "quartic_galois_group");
  GaloisReport rep;
  const FiniteField& F = f[0].F();
  if (F.p() == 2) {
    rep.note = "characteristic 2: classification not supported";
    return rep;
  }
  rep.discriminant = discriminant_x(f);
  if (rep.discriminant.is_zero()) {
    rep.note = "inseparable or repeated roots";
    rep.group = GaloisGroup::Reducible;
    return rep;
  }
  rep.disc_square = disc_is_square(rep.discriminant);

  if (auto w = eisenstein_scan(f, scan_bound); !w.empty()) {
    rep.irreducibility_witness = "eisenstein";
    rep.witness_prime = w.front().v;
  } else {
    // Exact factor search when the constant term is small, else reduction mod primes.
    auto rts = roots_in_A(f);
    if (rts && !rts->empty()) {
      rep.group = GaloisGroup::Reducible;
      rep.note = "linear factor over A";
      return rep;
    }
    std::optional<bool> quad;
    if (rts) quad = has_quadratic_factor(f, 200000);
    if (quad && *quad) {
      rep.group = GaloisGroup::Reducible;
      rep.note = "quadratic factor over A";
      return rep;
    }
    if (quad) {
      rep.irreducibility_witness = "factor-search";
    } else if (auto v = mod_prime_witness(f, scan_bound)) {
      rep.irreducibility_witness = "mod-prime";
      rep.witness_prime = *v;
    } else {
      rep.note = "irreducibility not certified";
      return rep;
    }
  }

  rep.resolvent = resolvent_cubic(f);
  // A monic cubic over A is reducible over k exactly when it has a root in A.
  if (auto rts = roots_in_A(rep.resolvent)) {
    rep.resolvent_roots = rts->size();
    rep.resolvent_irreducible = rts->empty();
  } else if (auto v = mod_prime_witness(rep.resolvent, scan_bound)) {
    rep.resolvent_irreducible = true;
    rep.resolvent_witness_prime = *v;
  } else {
    rep.note = "resolvent factorization not decided";
    return rep;
  }
  if (rep.resolvent_irreducible)
    rep.group = rep.disc_square ? GaloisGroup::A4 : GaloisGroup::S4;
  else
    rep.group = rep.resolvent_roots >= 3 ? GaloisGroup::V4 : GaloisGroup::D4orC4;
  return rep;
}

}  // namespace fqz
