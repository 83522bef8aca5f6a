// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "fqzeta/hyperderiv.hpp"
#include "fqzeta/padic.hpp"

using namespace fqz;

namespace {

Poly P(const FieldPtr& F, std::vector<long long> c) { return Poly::from_ints(F, c); }

// D_n(f^m) by expanding f^m as a product and applying D_n term by term.
Poly direct(const Poly& f, std::uint64_t m, unsigned n) { return hyperderive(n, pow(f, m)); }

}  // namespace

TEST_CASE("hyperderivative basics") {
  auto F7 = FiniteField::prime(7);
  CHECK(hyperderive(1, P(F7, {0, 0, 0, 1})) == P(F7, {0, 0, 3}));
  auto F5 = FiniteField::prime(5);
  CHECK(hyperderive(2, P(F5, {0, 0, 0, 0, 0, 1})).is_zero());
  auto F2 = FiniteField::prime(2);
  CHECK(hyperderive(3, P(F2, {0, 1, 0, 0, 1})).is_zero());
  // D_2 T^4 = 6 T^2 over F_7.
  CHECK(hyperderive(2, P(F7, {0, 0, 0, 0, 1})) == P(F7, {0, 0, 6}));
  CHECK(hyperderive(0, P(F7, {1, 2})) == P(F7, {1, 2}));
  CHECK(hyperderive(9, P(F7, {1, 2})).is_zero());
  CHECK(hyperderive(1, Poly(F7)).is_zero());
}

TEST_CASE("hyperderivatives over a non-prime field") {
  auto F4 = FiniteField::of_order(4);
  const Elem g = F4->generator();
  Poly f(F4, std::vector<Elem>{1, g, 0, g});
  // D_1: coefficients n*c_n -> [g, 0, 3g = g].
  CHECK(hyperderive(1, f) == Poly(F4, std::vector<Elem>{g, 0, g}));
  CHECK(hyperderive(2, f) == Poly(F4, std::vector<Elem>{0, g}));
}

TEST_CASE("Leibniz and composition rules") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(p);
    for (int t = 0; t < 40; ++t) {
      Poly u = random_poly(F, rng() % 12, rng), v = random_poly(F, rng() % 12, rng);
      for (unsigned n = 0; n <= 8; ++n) CHECK(leibniz_check(n, u, v));
      for (unsigned i = 0; i <= 4; ++i)
        for (unsigned j = 0; j <= 4; ++j) {
          const Elem c = F->from_int(binom_mod_p(i + j, i, p));
          CHECK(hyperderive(i, hyperderive(j, u)) == hyperderive(i + j, u).scale(c));
        }
    }
  }
}

TEST_CASE("quotient hyperderivatives") {
  std::mt19937_64 rng(12);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(p);
    for (int t = 0; t < 20; ++t) {
      Poly a = random_poly(F, rng() % 6, rng), b = random_poly(F, 1 + rng() % 5, rng, true);
      if (a.is_zero()) continue;
      RatFn x(a, b);
      // D_n(b x) = D_n(a) by Leibniz on the product.
      for (unsigned n = 1; n <= 5; ++n) {
        RatFn s = RatFn::zero(F);
        for (unsigned i = 0; i <= n; ++i) s += RatFn(hyperderive(i, b)) * hyperderive(n - i, x);
        CHECK(s == RatFn(hyperderive(n, a)));
      }
      CHECK(hyperderive(3, RatFn(a)) == RatFn(hyperderive(3, a)));
    }
  }
}

TEST_CASE("partitions") {
  CHECK(partitions(4, 2).size() == 2);  // 3+1, 2+2
  CHECK(partitions(6, 3).size() == 3);  // 4+1+1, 3+2+1, 2+2+2
  CHECK(partitions(5, 5).size() == 1);
  CHECK(partitions(3, 4).empty());
  CHECK(partitions(0, 0).empty());
  for (unsigned n = 1; n <= 8; ++n) {
    std::size_t total = 0;
    for (unsigned j = 1; j <= n; ++j) {
      auto ps = partitions(n, j);
      for (std::size_t k = 1; k < ps.size(); ++k) CHECK(ps[k - 1].mu < ps[k].mu);
      for (const auto& mu : ps) {
        unsigned sj = 0, sn = 0;
        for (unsigned i = 0; i < n; ++i) sj += mu.mu[i], sn += (i + 1) * mu.mu[i];
        CHECK(sj == j);
        CHECK(sn == n);
      }
      total += ps.size();
    }
    static const std::size_t pn[] = {0, 1, 2, 3, 5, 7, 11, 15, 22};
    CHECK(total == pn[n]);
  }
}

TEST_CASE("multinomials") {
  auto F7 = FiniteField::prime(7);
  auto mu = partitions(4, 2);  // mu = (0,2,0,0) [2+2] and (1,0,1,0) [3+1]
  // m(m-1)/2! and m(m-1)/(1!1!)
  CHECK(multinomial_charp(F7, 5, mu[0]) == F7->from_int(10));
  CHECK(multinomial_charp(F7, 5, mu[1]) == F7->from_int(20));
  CHECK(multinomial_charp(F7, 1, mu[0]) == 0);
}

TEST_CASE("power formula against direct expansion") {
  std::mt19937_64 rng(13);
  int cases = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(p);
    for (int t = 0; t < 12; ++t) {
      Poly f = random_poly(F, rng() % 5, rng);
      for (unsigned m = 1; m <= 5; ++m)
        for (unsigned n = 1; n <= 6; ++n) {
          CHECK(power_formula(f, m, n) == direct(f, m, n));
          ++cases;
        }
    }
  }
  CHECK(cases >= 500);
  auto F3 = FiniteField::prime(3);
  CHECK_THROWS_AS(power_formula(P(F3, {1, 1}), 0, 2), DomainError);
  CHECK_THROWS_AS(power_formula(P(F3, {1, 1}), 2, 0), DomainError);
}

TEST_CASE("v-adic continuity of hyperderivatives") {
  std::mt19937_64 rng(14);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(p);
    for (int t = 0; t < 15; ++t) {
      Poly f = random_poly(F, 1 + rng() % 3, rng, true), c = random_poly(F, rng() % 4, rng);
      for (unsigned n = 1; n <= 4; ++n)
        for (unsigned m = n + 1; m <= n + 3; ++m) CHECK(vadic_continuity_bound(n, c, f, m));
    }
    CHECK_THROWS_AS(vadic_continuity_bound(2, P(F, {1}), P(F, {0, 1}), 2), DomainError);
  }
}

TEST_CASE("derivation on a separable extension") {
  auto F3 = FiniteField::prime(3);
  // lambda^2 = -T: d(lambda) = -1/(2 lambda) = 1/lambda over F_3.
  auto K = make_kext(to_bpoly({P(F3, {0, 1}), P(F3, {0}), P(F3, {1})}), "l");
  const KElt lam = KElt::gen(K);
  CHECK(extend_derivation(lam) == lam.inv());
  // Derivation laws.
  const KElt x = lam * lam * lam + KElt::from_base(K, RatFn(P(F3, {1, 1}))) * lam;
  const KElt y = lam + KElt::from_base(K, RatFn(P(F3, {2, 0, 1})));
  CHECK(extend_derivation(x * y) == extend_derivation(x) * y + x * extend_derivation(y));
  CHECK(extend_derivation(x + y) == extend_derivation(x) + extend_derivation(y));
  CHECK(extend_derivation(KElt::from_base(K, RatFn(P(F3, {0, 0, 1})))) ==
        KElt::from_base(K, RatFn(P(F3, {0, 2}))));

  auto F5 = FiniteField::prime(5);
  // lambda^2 + T lambda + T^3: d(lambda) = -(lambda + 3T^2) / (2 lambda + T).
  auto K5 = make_kext(to_bpoly({P(F5, {0, 0, 0, 1}), P(F5, {0, 1}), P(F5, {1})}), "l");
  const KElt l5 = KElt::gen(K5);
  const KElt T5 = KElt::from_base(K5, RatFn(P(F5, {0, 1})));
  const KElt expect = -(l5 + T5 * T5.scale(RatFn::constant(F5, 3))) / (l5.scale(RatFn::constant(F5, 2)) + T5);
  CHECK(extend_derivation(l5) == expect);
  // Differentiating the defining relation gives zero.
  CHECK(extend_derivation(l5 * l5 + T5 * l5 + T5 * T5 * T5).is_zero());

  CHECK_THROWS_AS(make_kext(to_bpoly({P(F3, {0}), P(F3, {0}), P(F3, {1})})), DomainError);
}
