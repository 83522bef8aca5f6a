// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/hyperderiv.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "fqzeta/padic.hpp"

namespace fqz {

Poly hyperderive(std::uint64_t j, const Poly& f) {
  if (j == 0) return f;
  if (f.degree() < static_cast<std::int64_t>(j)) return f.zero();
  const FiniteField& F = f.F();
  std::vector<Elem> out(f.size() - j, 0);
  for (std::size_t n = j; n < f.size(); ++n) {
    if (f[n] == 0) continue;
    const std::uint32_t b = binom_mod_p(n, j, F.p());
    if (b) out[n - j] = F.mul(f[n], F.from_int(b));
  }
  return Poly(f.field(), std::move(out), f.var());
}

RatFn hyperderive(std::uint64_t j, const RatFn& f) {
  if (j == 0 || f.is_zero()) return f;
  // a = b x  =>  D_j x = (D_j a - sum_{i>=1} D_i b D_{j-i} x) / b
  std::vector<RatFn> dx;
  dx.push_back(f);
  const RatFn binv = RatFn(f.den()).inv();
  for (std::uint64_t k = 1; k <= j; ++k) {
    RatFn acc(hyperderive(k, f.num()));
    for (std::uint64_t i = 1; i <= k; ++i) {
      Poly dib = hyperderive(i, f.den());
      if (!dib.is_zero()) acc -= RatFn(dib) * dx[k - i];
    }
    dx.push_back(acc * binv);
  }
  return dx.back();
}

bool leibniz_check(std::uint64_t n, const Poly& u, const Poly& v) {
  Poly rhs = u.zero();
  for (std::uint64_t i = 0; i <= n; ++i) rhs += hyperderive(i, u) * hyperderive(n - i, v);
  return hyperderive(n, u * v) == rhs;
}

std::vector<Partition> partitions(unsigned n, unsigned j) {
  std::vector<Partition> out;
  if (n == 0) return out;
  std::vector<unsigned> mu(n, 0);
  // Depth-first over mu_1, ..., mu_n in lexicographic order.
  auto rec = [&](auto&& self, unsigned idx, unsigned left_j, unsigned left_n) -> void {
    if (idx == n) {
      if (left_j == 0 && left_n == 0) out.push_back({n, j, mu});
      return;
    }
    const unsigned w = idx + 1;
    for (unsigned c = 0; c <= left_j && c * w <= left_n; ++c) {
      mu[idx] = c;
      self(self, idx + 1, left_j - c, left_n - c * w);
    }
    mu[idx] = 0;
  };
  rec(rec, 0, j, n);
  return out;
}

Elem multinomial_charp(const FieldPtr& field, std::uint64_t m, const Partition& mu) {
  using boost::multiprecision::cpp_int;
  if (mu.j > m) return 0;
  cpp_int num = 1, den = 1;
  for (std::uint64_t t = 0; t < mu.j; ++t) num *= cpp_int(m - t);
  for (unsigned c : mu.mu)
    for (unsigned t = 2; t <= c; ++t) den *= t;
  if (num % den != 0) throw InternalError("multinomial_charp: non-integral multinomial");
  const cpp_int q = num / den;
  return field->from_int(static_cast<long long>(static_cast<unsigned long long>(q % field->p())));
}

Poly composite_derivative(const Partition& mu, const Poly& f) {
  Poly acc = f.one();
  for (unsigned i = 0; i < mu.mu.size(); ++i)
    if (mu.mu[i]) acc = acc * pow(hyperderive(i + 1, f), mu.mu[i]);
  return acc;
}

Poly power_formula(const Poly& f, std::uint64_t m, unsigned n) {
  if (m < 1) throw DomainError("power_formula: m must be at least 1");
  if (n < 1) throw DomainError("power_formula: n must be at least 1");
  Poly total = f.zero();
  for (unsigned j = 1; j <= n; ++j) {
    if (j > m) break;  // M vanishes
    Poly inner = f.zero();
    for (const auto& mu : partitions(n, j)) {
      const Elem c = multinomial_charp(f.field(), m, mu);
      if (c) inner += composite_derivative(mu, f).scale(c);
    }
    if (!inner.is_zero()) total += pow(f, m - j) * inner;
  }
  return total;
}

bool vadic_continuity_bound(unsigned n, const Poly& c, const Poly& f, unsigned m) {
  if (m <= n) throw DomainError("vadic_continuity_bound: requires m > n (vacuous otherwise)");
  return divides(pow(f, m - n), hyperderive(n, c * pow(f, m)));
}

KElt extend_derivation(const KElt& x) {
  const auto& K = x.field();
  const auto& f = K->modulus();
  // d(lambda) for the generator.
  BPoly<RatFn> dT;  // coefficient-wise d/dT of f
  for (const auto& c : f) dT.push_back(hyperderive(1, c));
  bpoly::trim(dT);
  const auto du = bpoly::derivative(f, int_mul);
  const KElt lam = KElt::gen(K);
  const KElt num = dT.empty() ? lam.zero_like() : evaluate(dT, lam);
  const KElt dlam = -(num * evaluate(du, lam).inv());
  // d(sum c_i lambda^i) = sum c_i' lambda^i + i c_i lambda^{i-1} d(lambda)
  KElt acc = x.zero_like();
  KElt pw = x.one_like();  // lambda^i
  KElt pw_prev = x.zero_like();  // lambda^{i-1}
  for (std::size_t i = 0; i < x.rep().size(); ++i) {
    const RatFn& ci = x.rep()[i];
    acc += pw.scale(hyperderive(1, ci));
    if (i > 0) acc += (pw_prev * dlam).scale(int_mul(ci, static_cast<long long>(i)));
    pw_prev = pw;
    pw = pw * lam;
  }
  return acc;
}

}  // namespace fqz
