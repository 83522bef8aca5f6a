// SPDX-License-Identifier: Apache-2.0
#include <map>
#include <random>

#include "doctest.h"
#include "fqzeta/padic.hpp"
#include "fqzeta/zeta.hpp"

using namespace fqz;

namespace {

Poly P(const FieldPtr& F, std::vector<long long> c) { return Poly::from_ints(F, c); }

std::vector<Poly> monics(const FieldPtr& F, unsigned d) {
  std::vector<Poly> out;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= F->q();
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<Elem> c(d + 1);
    std::uint64_t t = k;
    for (unsigned i = 0; i < d; ++i) c[i] = static_cast<Elem>(t % F->q()), t /= F->q();
    c[d] = 1;
    out.emplace_back(F, c);
  }
  return out;
}

// Plain repeated-squaring powers, no Frobenius shortcuts.
Poly naive_power_sum(const FieldPtr& F, unsigned d, std::uint64_t j, const Poly* skip_v = nullptr) {
  Poly s(F);
  for (const auto& n : monics(F, d)) {
    if (skip_v && (n % *skip_v).is_zero()) continue;
    s += pow(n, j);
  }
  return s;
}

// S_d(j) = -sum_{l > 0, (r-1) | l} binom(j, l) T^{j-l} S_{d-1}(j-l).
Poly recursive_power_sum(const FieldPtr& F, unsigned d, std::uint64_t j, std::map<std::pair<unsigned, std::uint64_t>, Poly>& memo) {
  if (d == 0) return Poly::constant(F, 1);
  auto key = std::make_pair(d, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Poly s(F);
  const std::uint64_t r = F->q();
  for (std::uint64_t l = r - 1; l <= j; l += r - 1) {
    const std::uint32_t b = binom_mod_p(j, l, F->p());
    if (!b) continue;
    s -= (recursive_power_sum(F, d - 1, j - l, memo) * Poly::monomial(F, 1, j - l)).scale(F->from_int(b));
  }
  memo.emplace(key, s);
  return s;
}

}  // namespace

TEST_CASE("power sums") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3), F5 = FiniteField::prime(5);
  CHECK(power_sum(F3, 0, 17).is_one());
  CHECK(power_sum(F2, 1, 1) == P(F2, {1}));
  CHECK(power_sum(F3, 1, 1).is_zero());
  CHECK(power_sum(F5, 3, 0).is_zero());
  for (auto F : {F2, F3, F5}) {
    std::map<std::pair<unsigned, std::uint64_t>, Poly> memo;
    for (unsigned d = 0; d <= (F->q() == 5 ? 2u : 3u); ++d)
      for (std::uint64_t j = 0; j <= 30; ++j) {
        const Poly s = power_sum(F, d, j);
        CHECK(s == naive_power_sum(F, d, j));
        CHECK(s == recursive_power_sum(F, d, j, memo));
      }
  }
  auto F4 = FiniteField::of_order(4);
  for (std::uint64_t j = 0; j <= 12; ++j) CHECK(power_sum(F4, 2, j) == naive_power_sum(F4, 2, j));
}

TEST_CASE("power sums do not depend on the thread count") {
  auto F3 = FiniteField::prime(3);
  ZetaOptions one, many;
  many.threads = 5;
  for (std::uint64_t j : {7u, 26u, 80u}) CHECK(power_sum(F3, 4, j, one) == power_sum(F3, 4, j, many));
}

TEST_CASE("special polynomials") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3), F5 = FiniteField::prime(5);
  auto z0 = zeta_special_poly(F3, 0);
  CHECK(z0.degree() == 0);
  CHECK(z0.coeffs[0].is_one());
  auto z = zeta_special_poly(F2, 1);
  REQUIRE(z.degree() == 1);
  CHECK(z.coeffs[1] == P(F2, {1}));
  auto zt = remove_trivial_zero(z);
  CHECK(zt.trivial_zero_removed);
  CHECK(zt.degree() == 0);
  auto z32 = remove_trivial_zero(zeta_special_poly(F3, 2));
  CHECK(!z32.at_one().is_zero());
  CHECK(remove_trivial_zero(zeta_special_poly(F5, 7)).coeffs == zeta_special_poly(F5, 7).coeffs);
  // Higher coefficients beyond the stopping degree vanish.
  for (auto F : {F2, F3}) {
    for (std::uint64_t j : {5u, 13u, 24u}) {
      auto zz = zeta_special_poly(F, j);
      for (unsigned d = static_cast<unsigned>(zz.degree()) + 1; d <= zz.stop_degree + 2; ++d)
        CHECK(power_sum(F, d, j).is_zero());
    }
  }
  // Trivial zeros and exact division.
  for (std::uint64_t j = 2; j <= 40; j += 2) {
    auto zz = zeta_special_poly(F3, j);
    CHECK(zz.at_one().is_zero());
    auto q = remove_trivial_zero(zz);
    // (1 - X) q = z
    std::vector<Poly> back(q.coeffs.size() + 1, Poly(F3));
    for (std::size_t d = 0; d < q.coeffs.size(); ++d) back[d] += q.coeffs[d], back[d + 1] -= q.coeffs[d];
    while (!back.empty() && back.back().is_zero()) back.pop_back();
    CHECK(back == zz.coeffs);
  }
}

TEST_CASE("remove_trivial_zero rejects inconsistent input") {
  auto F3 = FiniteField::prime(3);
  auto z = zeta_special_poly(F3, 2);
  z.coeffs[1] += P(F3, {1});
  CHECK_THROWS_AS(remove_trivial_zero(z), InternalError);
}

TEST_CASE("v-adic special polynomials") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3);
  const Poly T2 = P(F2, {0, 1});
  auto z = vadic_zeta_poly(T2, 0);
  REQUIRE(z.degree() >= 1);
  CHECK(z.coeffs[0].is_one());
  CHECK(z.coeffs[1] == P(F2, {1}));
  auto z1 = vadic_zeta_poly(T2, 1);
  CHECK(z1.coeffs[1] == P(F2, {1, 1}));
  for (auto F : {F2, F3}) {
    for (const Poly& v : {P(F, {0, 1}), P(F, {1, 1}), F->q() == 2 ? P(F, {1, 1, 1}) : P(F, {1, 0, 1})}) {
      for (std::uint64_t j : {1u, 2u, 5u, 8u}) {
        auto zv = vadic_zeta_poly(v, j);
        for (unsigned d = 0; d <= 4; ++d) {
          const Poly expect = naive_power_sum(F, d, j, &v);
          const Poly got = d < zv.coeffs.size() ? zv.coeffs[d] : Poly(F);
          CHECK(got == expect);
          // Multiples of v contribute v^j S_{d - deg v}(j).
          if (d >= static_cast<unsigned>(v.degree()))
            CHECK(naive_power_sum(F, d, j) - expect == pow(v, j) * power_sum(F, d - static_cast<unsigned>(v.degree()), j));
        }
      }
    }
  }
  CHECK_THROWS_AS(vadic_zeta_poly(P(F2, {0, 0, 1}), 1), DomainError);
  CHECK_THROWS_AS(vadic_zeta_poly(P(F3, {0, 2}), 1), DomainError);
}

TEST_CASE("Wan identity at small j") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3), F5 = FiniteField::prime(5);
  CHECK(wan_identity_check(F2, 1, 30).holds);
  CHECK(wan_identity_check(F3, 2, 30).holds);
  CHECK(wan_identity_check(F5, 4, 30).holds);
  for (std::uint64_t j = 2; j <= 20; j += 2) CHECK(wan_identity_check(F3, j, 40).holds);
  CHECK_THROWS_AS(wan_identity_check(F3, 3, 10), DomainError);
  CHECK_THROWS_AS(wan_identity_check(F3, 0, 10), DomainError);
}

TEST_CASE("series rows") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3);
  auto inf2 = Place::infinity(F2), inf3 = Place::infinity(F3);
  auto r0 = zeta_series_row(F3, PadicInt::exact(3, 0), 3, 20);
  CHECK(r0.coeffs[0] == ValSeries::one(inf3, 20));
  for (unsigned d = 1; d <= 3; ++d) CHECK(r0.coeffs[d].is_zero());
  auto r1 = zeta_series_row(F2, PadicInt::exact(2, -1), 2, 20);
  CHECK(r1.coeffs[1].agrees_with(ValSeries::uniformizer(inf2, 20), 20));
  // Exact y = -j: S_d = T^{-dj} power_sum(d, j).
  for (std::int64_t j : {2, 5, 7}) {
    auto row = zeta_series_row(F3, PadicInt::exact(3, -j), 3, 25);
    for (unsigned d = 1; d <= 3; ++d) {
      const Poly s = power_sum(F3, d, static_cast<std::uint64_t>(j));
      if (s.is_zero()) {
        CHECK(row.coeffs[d].is_zero());
        continue;
      }
      auto expect = ValSeries::from_poly(inf3, s, 60).shift(static_cast<std::int64_t>(d) * j);
      CHECK(row.coeffs[d].agrees_with(expect, 25));
    }
  }
  // y = 1, r = 3, d = 1: sum of inverses of the one-unit parts.
  auto row = zeta_series_row(F3, PadicInt::exact(3, 1), 1, 20);
  ValSeries s = ValSeries::zero(inf3, 20);
  for (const auto& n : monics(F3, 1)) s = s + one_unit_part(inf3, n, 20).inv();
  CHECK(row.coeffs[1].agrees_with(s, 20));
  // Tail bound holds on computed coefficients.
  auto ry = zeta_series_row(F2, PadicInt::residue(2, 45, 6), 5, 30);
  for (unsigned d = 0; d <= 5; ++d) {
    if (ry.coeffs[d].is_zero())
      CHECK(ry.coeffs[d].abs_prec() >= std::max<std::int64_t>(30, ry.tail_bound(d)));
    else
      CHECK(ry.coeffs[d].val() >= ry.tail_bound(d));
  }
  CHECK_THROWS_AS(zeta_series_row(F3, PadicInt::exact(2, 1), 2, 10), DomainError);
  CHECK_THROWS_AS(zeta_series_row(F2, PadicInt::residue(2, 3, 2), 3, 20), PrecisionError);
}

TEST_CASE("row tail bound from the digits of y") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3), F5 = FiniteField::prime(5);
  // Sharp on this row: v(S_2) = 10, v(S_3) = 72 against the coarse 6 and 12.
  auto row = zeta_series_row(F3, PadicInt::residue(3, 100, 6), 3, 80);
  CHECK(row.coeffs[2].val() == 10);
  CHECK(row.tail_bound(2) == 10);
  CHECK(row.coeffs[3].val() == 72);
  CHECK(row.tail_bound(3) == 72);
  CHECK(row.tail_bound(0) == 0);
  // Exact y = -j: S_d vanishes once the digits of j run out.
  auto ex = zeta_series_row(F2, PadicInt::exact(2, -3), 4, 20);
  CHECK(ex.coeffs[3].is_zero());
  CHECK(ex.tail_bound(3) > 1000000);
  CHECK(ex.tail_bound(2) <= ex.coeffs[2].val());
  // Property: a valid lower bound on every computed coefficient.
  std::mt19937_64 rng(11);
  for (auto F : {F2, F3, F5}) {
    const std::uint32_t p = F->p();
    const unsigned dmax = p == 5 ? 3 : 5;
    for (int k = 0; k < 12; ++k) {
      const PadicInt y = k % 3 == 0 ? PadicInt::exact(p, static_cast<std::int64_t>(rng() % 41) - 20)
                                    : PadicInt::residue(p, rng() % (p == 2 ? 64 : p == 3 ? 729 : 15625), 6);
      auto r = zeta_series_row(F, y, dmax, 40);
      for (unsigned d = 0; d <= dmax; ++d) {
        const auto& c = r.coeffs[d];
        if (!c.is_zero()) CHECK(c.val() >= r.tail_bound(d));
        CHECK(r.tail_bound(d) >= static_cast<std::int64_t>((p - 1) * d * (d + 1) / 2));
      }
    }
  }
}

TEST_CASE("zeta at positive integers") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3);
  auto inf2 = Place::infinity(F2);
  // Direct summation over monics of degree < 8 suffices for precision 8 at i = 1.
  ValSeries direct = ValSeries::zero(inf2, 8);
  for (unsigned d = 0; d < 8; ++d)
    for (const auto& n : monics(F2, d)) direct = (direct + ValSeries::from_poly(inf2, n, 8).inv()).truncate_abs(8);
  auto z = zeta_at_positive(F2, 1, 8);
  CHECK(z.agrees_with(direct, 8));
  for (unsigned i = 1; i <= 6; ++i) {
    auto zi = zeta_at_positive(F3, i, 20);
    CHECK(zi.val() == 0);
    CHECK(zi.lead() == 1);
    CHECK(zi.agreement(ValSeries::one(zi.place(), 20)) >= 1);
  }
  CHECK_THROWS_AS(zeta_at_positive(F2, 0, 8), DomainError);
}

TEST_CASE("zero fields of special polynomials") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3);
  auto rep = zero_field_analysis(remove_trivial_zero(zeta_special_poly(F2, 1)), 20);
  CHECK(rep.zeros.empty());
  CHECK(rep.all_in_k);
  // 1 + X has the zero X = 1 at r = 2.
  auto rep1 = zero_field_analysis(zeta_special_poly(F2, 1), 20);
  REQUIRE(rep1.zeros.size() == 1);
  CHECK(rep1.zeros[0].zero->agrees_with(ValSeries::one(Place::infinity(F2), 20), 20));
  for (std::uint64_t j = 1; j <= 60; ++j) {
    auto zt = remove_trivial_zero(zeta_special_poly(F3, j));
    auto r = zero_field_analysis(zt, 24);
    CHECK(r.all_simple);
    CHECK(r.all_in_k);
    // Re-substitute into coefficients carried at a higher precision.
    std::vector<ValSeries> f;
    auto inf = Place::infinity(F3);
    for (const auto& c : zt.coeffs)
      f.push_back(c.is_zero() ? ValSeries::zero(inf, ValSeries::kExactPrec) : ValSeries::from_poly(inf, c, 80));
    for (std::size_t k = 0; k < r.zeros.size(); ++k) {
      const auto& zr = r.zeros[k];
      const auto& seg = r.polygon.segments[k];
      CHECK(zr.k_rational);
      CHECK(zr.residual >= 24);
      CHECK(zr.zero->val() == -zr.slope.num);
      const std::int64_t vdom = seg.v0 - seg.i0 * seg.slope.num;
      CHECK(evaluate(f, *zr.zero).val() >= vdom + 24);
    }
  }
  ZetaPoly empty;
  empty.field = F3;
  CHECK_THROWS_AS(zero_field_analysis(empty, 10), DomainError);
}

TEST_CASE("zero fields of series rows") {
  auto F2 = FiniteField::prime(2);
  auto row = zeta_series_row(F2, PadicInt::residue(2, 37, 6), 7, 40);
  auto rep = zero_field_analysis(row, 40);
  std::size_t certified = 0;
  for (std::size_t k = 0; k < rep.zeros.size(); ++k) {
    const auto& z = rep.zeros[k];
    if (!z.certified) continue;
    ++certified;
    CHECK(z.k_rational);
    REQUIRE(z.zero);
    // f(z0) vanishes to the lifted precision on the normalised scale.
    const ValSeries fz = evaluate(row.coeffs, *z.zero);
    const auto& seg = rep.polygon.segments[k];
    CHECK(fz.val() >= z.residual + seg.v0 + seg.i0 * seg.slope.num * -1);
    CHECK(z.residual >= 10);
  }
  CHECK(certified >= 2);
  auto r0 = zero_field_analysis(zeta_series_row(F2, PadicInt::exact(2, 0), 4, 20), 20);
  CHECK(r0.zeros.empty());
}

TEST_CASE("uniformizer covariance") {
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3);
  auto inf3 = Place::infinity(F3);
  auto rep0 = pi_covariance_check(F3, PadicInt::exact(3, 1), ValSeries::one(inf3, 30), 3, 30);
  CHECK(rep0.coefficients_match);
  CHECK(rep0.zeros_match);
  const ValSeries u = ValSeries::from_pi_coeffs(inf3, 0, {1, 1}, 30);
  auto rep = pi_covariance_check(F3, PadicInt::exact(3, -2), u, 3, 30);
  CHECK(rep.coefficients_match);
  auto rep1 = pi_covariance_check(F3, PadicInt::exact(3, 1), u, 4, 30);
  CHECK(rep1.coefficients_match);
  CHECK(rep1.zeros_match);
  CHECK(rep1.zeros_1 >= 1);
  auto inf2 = Place::infinity(F2);
  auto rep2 = pi_covariance_check(F2, PadicInt::residue(2, 21, 6), ValSeries::from_pi_coeffs(inf2, 0, {1, 1}, 30), 6, 30);
  CHECK(rep2.coefficients_match);
  CHECK(rep2.zeros_match);
  CHECK_THROWS_AS(pi_covariance_check(F3, PadicInt::exact(3, 1), u.scale(2), 2, 10), DomainError);
}

TEST_CASE("CM Hecke coefficients") {
  auto F3 = FiniteField::prime(3), F2 = FiniteField::prime(2);
  auto inf3 = Place::infinity(F3);
  auto g0 = cm_hecke_coeffs(CmExample::Geometric, F3, PadicInt::exact(3, 0), 5, 20);
  CHECK(g0.classification == "K");
  CHECK(g0.coeffs[0].a == ValSeries::one(inf3, 20).truncate_abs(20));
  for (std::size_t d = 1; d < g0.coeffs.size(); ++d) {
    CHECK(g0.coeffs[d].a.is_zero());
    CHECK(g0.coeffs[d].b.is_zero());
  }
  // y = -1: sum_c (lambda + c)(T + c^2) = 2 lambda, normalised by T^{-1}.
  auto g1 = cm_hecke_coeffs(CmExample::Geometric, F3, PadicInt::exact(3, -1), 2, 20);
  CHECK(g1.classification == "K1");
  CHECK(g1.coeffs[1].a.is_zero());
  CHECK(g1.coeffs[1].b.agrees_with(ValSeries::from_pi_coeffs(inf3, 1, {2}, 20), 20));
  // Non-exact y agrees with the exact path for an exact negative integer passed as a residue.
  auto gr = cm_hecke_coeffs(CmExample::Geometric, F3, PadicInt::residue(3, 3 * 3 * 3 * 3 - 1, 4), 2, 15);
  for (std::size_t d = 0; d < gr.coeffs.size(); ++d) {
    CHECK(gr.coeffs[d].a.agrees_with(g1.coeffs[d].a, 15));
    CHECK(gr.coeffs[d].b.agrees_with(g1.coeffs[d].b, 15));
  }
  CHECK(cm_hecke_coeffs(CmExample::Geometric, F3, PadicInt::exact(3, 1), 2, 15).classification == "K1");
  CHECK_THROWS_AS(cm_hecke_coeffs(CmExample::Geometric, F2, PadicInt::exact(2, -1), 2, 10), DomainError);

  for (auto F : {F2, F3}) {
    for (std::int64_t y : {-1, -2, -3}) {
      auto c = cm_hecke_coeffs(CmExample::ConstantField, F, PadicInt::exact(F->p(), y), 4, 20);
      CHECK(c.classification == "K");
      CHECK(c.coeffs[1].degree == 2);
    }
    auto cy = cm_hecke_coeffs(CmExample::ConstantField, F, PadicInt::exact(F->p(), 1), 4, 15);
    CHECK(cy.classification == "K");
  }
}
