// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/factor.hpp"

#include <algorithm>

namespace fqz {

namespace {

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

Poly var_poly(const Poly& like) { return Poly::monomial(like.field(), 1, 1, like.var()); }

}  // namespace

Poly Factorization::expand(const Poly& like) const {
  Poly r = Poly::constant(like.field(), lead, like.var());
  for (const auto& f : factors) r = r * pow(f.f, f.mult);
  return r;
}

Poly pth_root(const Poly& a) {
  const FiniteField& F = a.F();
  const std::uint32_t p = F.p();
  std::vector<Elem> v;
  if (!a.is_zero()) v.assign(static_cast<std::size_t>(a.degree()) / p + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (i % p != 0) throw DomainError("pth_root: not a p-th power");
    // x -> x^(p^(m-1)) inverts Frobenius on F_{p^m}.
    v[i / p] = F.frobenius(a[i], F.m() - 1);
  }
  return Poly(a.field(), std::move(v), a.var());
}

std::vector<Factor> squarefree_decomposition(const Poly& a) {
  if (a.is_zero()) throw DomainError("squarefree_decomposition: zero polynomial");
  std::vector<Factor> out;
  Poly f = a.monic();
  if (f.degree() == 0) return out;
  const unsigned p = a.F().p();
  Poly c = gcd(f, f.derivative());
  Poly w = div_exact(f, c);
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = div_exact(w, y);
    if (z.degree() > 0) out.push_back({z, i});
    ++i;
    w = y;
    c = div_exact(c, y);
  }
  if (c.degree() > 0) {
    for (auto& fc : squarefree_decomposition(pth_root(c))) out.push_back({fc.f, fc.mult * p});
  }
  std::sort(out.begin(), out.end(), [](const Factor& x, const Factor& y) {
    return x.mult != y.mult ? x.mult < y.mult : poly_less(x.f, y.f);
  });
  // Merge entries sharing a multiplicity (possible after the p-th root recursion).
  std::vector<Factor> merged;
  for (auto& fc : out) {
    if (!merged.empty() && merged.back().mult == fc.mult)
      merged.back().f = merged.back().f * fc.f;
    else
      merged.push_back(fc);
  }
  return merged;
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& a) {
  std::vector<std::pair<Poly, unsigned>> out;
  Poly f = a.monic();
  const Poly x = var_poly(f);
  Poly h = x % f;
  unsigned d = 0;
  while (f.degree() >= 2 * static_cast<std::int64_t>(d + 1)) {
    ++d;
    h = powmod(h, f.F().q(), f);
    Poly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = div_exact(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
  return out;
}

std::vector<Poly> equal_degree(const Poly& a, unsigned d, std::mt19937_64& rng) {
  Poly f = a.monic();
  const auto n = static_cast<unsigned>(f.degree());
  if (d == 0 || n % d != 0) throw DomainError("equal_degree: degree not a multiple of d");
  if (n == d) return {f};
  const FiniteField& F = f.F();
  std::vector<Poly> todo{f}, done;
  while (!todo.empty()) {
    Poly g = todo.back();
    todo.pop_back();
    if (static_cast<unsigned>(g.degree()) == d) {
      done.push_back(g);
      continue;
    }
    for (;;) {
      Poly t = random_poly(g.field(), static_cast<std::size_t>(g.degree() - 1), rng, false, g.var());
      if (t.degree() < 1) continue;
      Poly s;
      if (F.p() == 2) {
        // Absolute trace to F_2: sum of t^(2^i), i < m d.
        Poly acc = t % g, cur = acc;
        for (unsigned i = 1; i < F.m() * d; ++i) {
          cur = (cur * cur) % g;
          acc += cur;
        }
        s = acc;
      } else {
        // t^((q^d - 1)/2) = (t^(1 + q + ... + q^(d-1)))^((q-1)/2).
        Poly nrm = t % g, cur = nrm;
        for (unsigned i = 1; i < d; ++i) {
          cur = powmod(cur, F.q(), g);
          nrm = (nrm * cur) % g;
        }
        s = powmod(nrm, (F.q() - 1) / 2, g) - g.one();
      }
      if (s.is_zero()) continue;
      Poly h = gcd(s, g);
      if (h.degree() > 0 && h.degree() < g.degree()) {
        todo.push_back(h);
        todo.push_back(div_exact(g, h));
        break;
      }
    }
  }
  std::sort(done.begin(), done.end(), poly_less);
  return done;
}

Factorization factor(const Poly& a, std::uint64_t seed) {
  if (a.is_zero()) throw DomainError("factor: zero polynomial");
  Factorization out;
  out.lead = a.lead();
  std::mt19937_64 rng(seed);
  for (const auto& sf : squarefree_decomposition(a)) {
    for (const auto& [g, d] : distinct_degree(sf.f))
      for (auto& h : equal_degree(g, d, rng)) out.factors.push_back({h, sf.mult});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& x, const Factor& y) { return poly_less(x.f, y.f); });
  return out;
}

bool is_irreducible(const Poly& a) {
  if (a.degree() < 1) throw DomainError("is_irreducible: constant polynomial");
  const Poly f = a.monic();
  const auto n = static_cast<unsigned>(f.degree());
  if (n == 1) return true;
  const Poly x = var_poly(f);
  if (!(frobmod(x, n, f) - x).is_zero()) return false;
  for (unsigned l : prime_divisors(n)) {
    if (gcd(frobmod(x, n / l, f) - x, f).degree() > 0) return false;
  }
  return true;
}

std::vector<Elem> roots(const Poly& a, std::uint64_t seed) {
  if (a.is_zero()) throw DomainError("roots: zero polynomial");
  std::vector<Elem> out;
  if (a.degree() < 1) return out;
  Poly f = a.monic();
  const Poly x = var_poly(f);
  Poly g = gcd(powmod(x, f.F().q(), f) - x, f);
  if (g.degree() < 1) return out;
  std::mt19937_64 rng(seed);
  for (const auto& lin : equal_degree(g, 1, rng)) out.push_back(f.F().neg(lin[0]));
  std::sort(out.begin(), out.end());
  return out;
}

Elem resultant(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  const FiniteField& F = a.F();
  if (a.is_zero() || b.is_zero()) return 0;
  Elem acc = 1;
  Poly x = a, y = b;
  for (;;) {
    const std::int64_t m = x.degree(), n = y.degree();
    if (n == 0) return F.mul(acc, F.pow(y.lead(), static_cast<std::uint64_t>(m)));
    if (m == 0) return F.mul(acc, F.pow(x.lead(), static_cast<std::uint64_t>(n)));
    if (m < n) {
      // Res(x, y) = (-1)^{mn} Res(y, x)
      if ((m * n) % 2) acc = F.neg(acc);
      std::swap(x, y);
      continue;
    }
    Poly r = x % y;
    if (r.is_zero()) return 0;
    // Res(x, y) = (-1)^{mn} lc(y)^{m - deg r} Res(y, r)
    if ((m * n) % 2) acc = F.neg(acc);
    acc = F.mul(acc, F.pow(y.lead(), static_cast<std::uint64_t>(m - r.degree())));
    x = std::move(y);
    y = std::move(r);
  }
}

Elem discriminant(const Poly& a) {
  const std::int64_t n = a.degree();
  if (n < 2) throw DomainError("discriminant: degree must be at least 2");
  const FiniteField& F = a.F();
  const Poly da = a.derivative();
  Elem res = da.is_zero() ? 0 : resultant(a, da);
  if (res != 0) res = F.mul(res, F.pow(a.lead(), static_cast<std::uint64_t>(n - 1 - da.degree())));
  if (((n * (n - 1)) / 2) % 2) res = F.neg(res);
  return F.div(res, a.lead());
}

std::vector<Poly> monic_irreducibles(const FieldPtr& field, unsigned d, std::string var) {
  if (d == 0) throw DomainError("monic_irreducibles: degree must be positive");
  const std::uint64_t q = field->q();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) {
    total *= q;
    if (total > (std::uint64_t{1} << 26)) throw DomainError("monic_irreducibles: search space too large");
  }
  std::vector<Poly> out;
  std::vector<Elem> c(d + 1, 0);
  c[d] = 1;
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t t = k;
    for (unsigned i = 0; i < d; ++i) {
      c[i] = static_cast<Elem>(t % q);
      t /= q;
    }
    Poly f(field, c, var);
    if (is_irreducible(f)) out.push_back(f);
  }
  return out;
}

}  // namespace fqz
