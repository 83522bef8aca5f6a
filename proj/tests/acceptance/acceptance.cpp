// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select
// criteria by number.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "fqzeta/carlitz.hpp"
#include "fqzeta/factor.hpp"
#include "fqzeta/galois.hpp"
#include "fqzeta/hyperderiv.hpp"
#include "fqzeta/lift.hpp"
#include "fqzeta/zeta.hpp"

using namespace fqz;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

Poly P(const FieldPtr& F, std::vector<long long> c) { return Poly::from_ints(F, c); }

// Fails the verdict with a message the first time cond is false.
void require(Verdict& v, bool cond, const std::string& what) {
  if (!cond && v.pass) {
    v.pass = false;
    v.detail = what;
  }
}

// 1. r = 5, j = 1249: degrees, S4, resolvent mod Phi_7, discriminant.
Verdict c1() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  auto F5 = FiniteField::prime(5);
  auto z = zeta_special_poly(F5, 1249);
  std::vector<std::int64_t> degs;
  for (const auto& c : z.coeffs) degs.push_back(c.degree());
  require(v, degs == std::vector<std::int64_t>{0, 1245, 2470, 3595, 4220}, "coefficient degrees differ");
  require(v, z.degree() == 4, "x^-1 degree is not 4");
  auto rep = quartic_galois_group(xpoly::reversed(z.coeffs));
  require(v, rep.group == GaloisGroup::S4, "group is " + to_string(rep.group));
  const Poly phi7 = P(F5, {1, 1, 1, 1, 1, 1, 1});
  require(v, irreducible_mod_prime(rep.resolvent, phi7), "resolvent reducible mod T^6+...+1");
  require(v, !rep.disc_square, "discriminant is a square");
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(v, s < 60, "runtime above 60 s");
  if (v.pass) v.detail = "degrees 1245/2470/3595/4220, S4, resolvent irreducible mod Phi_7, " + std::to_string(s) + " s";
  return v;
}

// 2. Trivial zeros.
Verdict c2() {
  Verdict v;
  std::size_t count = 0;
  for (unsigned r : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(r);
    for (std::uint64_t j = r - 1; j <= 200; j += r - 1) {
      auto z = zeta_special_poly(F, j);
      require(v, z.at_one().is_zero(), "z(1,-j) != 0 at r=" + std::to_string(r) + " j=" + std::to_string(j));
      try {
        remove_trivial_zero(z);
      } catch (const InternalError&) {
        require(v, false, "division by 1 - x^-1 inexact at j=" + std::to_string(j));
      }
      ++count;
    }
  }
  if (v.pass) v.detail = std::to_string(count) + " (r, j) pairs";
  return v;
}

// 3. Newton polygons of z~ and row spot checks.
Verdict c3() {
  Verdict v;
  std::size_t zeros = 0;
  for (unsigned r : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(r);
    for (std::uint64_t j = 1; j <= 200; ++j) {
      auto rep = zero_field_analysis(remove_trivial_zero(zeta_special_poly(F, j)), 20);
      const std::string at = " at r=" + std::to_string(r) + " j=" + std::to_string(j);
      require(v, rep.complete, "uncertified polygon" + at);
      for (const auto& s : rep.polygon.segments)
        require(v, s.length() == 1 && s.slope.is_integer(), "segment not of length 1 with integer slope" + at);
      for (const auto& z : rep.zeros) {
        require(v, z.k_rational && z.simple, "zero not simple in k" + at);
        require(v, z.residual >= 20, "residual below 20" + at);
        ++zeros;
      }
    }
  }
  // Rows at p-adic y known to 6 digits, series precision 40. d_max grows until
  // three vertices are certified or the tail bound passes the precision.
  std::mt19937_64 rng(3);
  std::size_t rows = 0, rows_ok = 0;
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(p);
    const std::uint64_t pM = p * p * p * p * p * p;
    for (int k = 0; k < 10; ++k) {
      const auto y = PadicInt::residue(p, rng() % pM, 6);
      std::size_t certified = 0;
      for (unsigned dmax = 2; certified < 3; ++dmax) {
        const ZetaSeriesRow row = zeta_series_row(F, y, dmax, 40);
        const ZeroFieldReport rep = zero_field_analysis(row, 40);
        std::set<std::int64_t> verts;
        for (std::size_t i = 0; i < rep.polygon.segments.size(); ++i) {
          const auto& seg = rep.polygon.segments[i];
          if (!seg.certified) continue;
          verts.insert(seg.i0);
          verts.insert(seg.i1);
          require(v, seg.length() == 1 && seg.slope.is_integer() && rep.zeros[i].k_rational && rep.zeros[i].zero,
                  "certified row segment without a simple zero in k at y=" + y.to_string());
        }
        certified = verts.size();
        if (row.tail_bound(dmax + 1) > 40) break;
      }
      ++rows;
      if (certified >= 3) ++rows_ok;
    }
  }
  require(v, rows_ok >= 10, "only " + std::to_string(rows_ok) + " rows with >= 3 certified vertices");
  if (v.pass) v.detail = std::to_string(zeros) + " zeros lifted; " + std::to_string(rows_ok) + " of " + std::to_string(rows) + " sampled rows with >= 3 certified vertices";
  return v;
}

// 4. Wan identity.
Verdict c4() {
  Verdict v;
  std::size_t count = 0;
  for (unsigned r : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(r);
    for (std::uint64_t j = r - 1; j <= 100; j += r - 1) {
      auto rep = wan_identity_check(F, j, 60);
      require(v, rep.holds && rep.prec == 60, "identity fails at r=" + std::to_string(r) + " j=" + std::to_string(j));
      ++count;
    }
  }
  if (v.pass) v.detail = std::to_string(count) + " (r, j) pairs to precision 60";
  return v;
}

// 5. Closed form of the lift.
Verdict c5() {
  Verdict v;
  auto F5 = FiniteField::prime(5);
  auto pb = LiftProblem::make({P(F5, {0, 0, 0, 1}), P(F5, {0, 1}), P(F5, {1})}, 2);
  auto X = separable_lift(pb);
  const KElt l = KElt::gen(pb.field);
  auto emb = [&](const Poly& a) { return KElt::from_base(pb.field, RatFn(theta_image(a))); };
  const KElt th = emb(P(F5, {0, 1}));
  const KElt expected = (-l - emb(P(F5, {3})) * th * th) / (emb(P(F5, {2})) * l + th);
  require(v, X[0] == l, "scalar part is not lambda");
  require(v, X[1] == expected, "eps coefficient differs from (-l-3t^2)/(2l+t)");
  if (v.pass) v.detail = "eps_lambda = ((-l - 3 theta^2)/(2 l + theta)) eps exactly";
  return v;
}

// 6. p-power obstruction.
Verdict c6() {
  Verdict v;
  auto F2 = FiniteField::prime(2), F3 = FiniteField::prime(3), F5 = FiniteField::prime(5);
  require(v, liftability_check(tangent_of_operator(P(F2, {0, 1}), 2), 2, 1).status == Liftability::Obstructed,
          "theta + eps not obstructed");
  for (auto F : {F2, F3, F5})
    for (unsigned s : {1u, 2u})
      for (std::size_t t : {1u, 2u, 5u}) {
        const KTangent x = KTangent::scalar(RatFn(theta_image(P(F, {1, 1, 1}))), t);
        require(v, liftability_check(x, F->p(), s).status == Liftability::ScalarOnly, "scalar target not scalar-only");
      }
  if (v.pass) v.detail = "theta + eps obstructed at p = 2; 18 scalar targets scalar-only";
  return v;
}

// 7. Hyperderivatives.
Verdict c7() {
  Verdict v;
  std::mt19937_64 rng(7);
  std::size_t power_cases = 0, bound_cases = 0, tight = 0;
  for (unsigned r : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(r);
    for (int k = 0; k < 60; ++k) {
      const Poly u = random_poly(F, rng() % 7, rng), w = random_poly(F, rng() % 7, rng);
      for (unsigned n = 0; n <= 8; ++n) require(v, leibniz_check(n, u, w), "Leibniz fails");
    }
    for (int k = 0; k < 200; ++k) {
      const Poly f = random_poly(F, rng() % 5, rng);
      const unsigned m = 1 + rng() % 5, n = 1 + rng() % 6;
      require(v, power_formula(f, m, n) == hyperderive(n, pow(f, m)), "power formula differs from expansion");
      ++power_cases;
    }
    for (unsigned d = 1; d <= 3; ++d) {
      const auto irr = monic_irreducibles(F, d);
      for (int k = 0; k < 12; ++k) {
        const Poly f = irr[rng() % irr.size()];
        const Poly c = random_poly(F, rng() % 4, rng);
        for (unsigned m = 2; m <= 8; ++m)
          for (unsigned n = 1; n < m; ++n) {
            require(v, vadic_continuity_bound(n, c, f, m), "f^(m-n) does not divide D_n(c f^m)");
            ++bound_cases;
            const Poly g = hyperderive(n, c * pow(f, m));
            if (!g.is_zero() && !divides(pow(f, m - n + 1), g)) ++tight;
          }
      }
    }
  }
  require(v, power_cases >= 500, "fewer than 500 power-formula cases");
  if (v.pass)
    v.detail = std::to_string(power_cases) + " power-formula cases, " + std::to_string(bound_cases) +
               " continuity cases (" + std::to_string(tight) + " tight)";
  return v;
}

// 8. tau^0 part of the tensor action.
Verdict c8() {
  Verdict v;
  std::mt19937_64 rng(8);
  for (unsigned r : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(r);
    for (int k = 0; k < 200; ++k) {
      const Poly a = random_poly(F, rng() % 7, rng);
      for (unsigned n = 1; n <= 4; ++n) {
        // Independent oracle: sum_i D_i(a)(theta) on the i-th superdiagonal.
        const auto C0 = tensor_power_action_mod(n, a, Poly::monomial(F, 1, 64), 0).coeff(0);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const Poly expect = j >= i ? theta_image(hyperderive(j - i, a)) : Poly(F, kTheta);
            require(v, C0(i, j) == expect, "tau^0 part differs at r=" + std::to_string(r));
          }
      }
    }
  }
  if (v.pass) v.detail = "600 random a, n = 1..4";
  return v;
}

// 9. e(M log tau) against the direct action through tau-degree 8.
Verdict c9() {
  Verdict v;
  const unsigned N = 8;
  std::string done;
  for (auto [r, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 2}, {3, 1}}) {
    auto F = FiniteField::prime(r);
    auto [e, l] = tensor_exp_log(F, n, N);
    for (const auto& a : {P(F, {0, 1}), P(F, {1, 0, 1}), P(F, {0, 1, 0, 1})}) {
      auto s = multivalued_operator(tangent_matrix(a, n), e, l, N);
      auto direct = tensor_power_action(n, a).map([](const Poly& x) { return RatFn(x); });
      require(v, s.agrees_through(direct, N),
              "mismatch at r=" + std::to_string(r) + " n=" + std::to_string(n) + " a=" + a.to_string());
    }
    done += (done.empty() ? "" : ", ") + std::string("(r=") + std::to_string(r) + ", n=" + std::to_string(n) + ")";
  }
  if (v.pass) v.detail = "C_a and C^(2)_a reconstructed through tau^8 for " + done;
  return v;
}

// 10. Bernoulli-Carlitz consistency at r = 3.
Verdict c10() {
  Verdict v;
  auto F = FiniteField::prime(3);
  auto inf = Place::infinity(F);
  const std::int64_t prec = 30;
  auto conv = [&](const RatFn& x) {
    return ValSeries::from_ratfn(inf, RatFn(x.num().with_var("T"), x.den().with_var("T")), prec);
  };
  auto x = [&](unsigned i) {
    return zeta_at_positive(F, i, prec) * ValSeries::from_poly(inf, carlitz_factorial(F, i).with_var("T"), prec) /
           conv(bernoulli_carlitz(F, i));
  };
  const ValSeries lhs = x(2) * x(2), rhs = x(4);
  const std::int64_t rel = lhs.agreement(rhs) - lhs.val();
  require(v, rel >= 25, "relative agreement " + std::to_string(rel));
  if (v.pass)
    v.detail = "agreement " + std::to_string(lhs.agreement(rhs)) + " at valuation " + std::to_string(lhs.val()) +
               " (relative " + std::to_string(rel) + ")";
  return v;
}

// 11. Uniformizer covariance.
Verdict c11() {
  Verdict v;
  std::size_t zeros = 0;
  for (unsigned r : {2u, 3u}) {
    auto F = FiniteField::prime(r);
    const ValSeries u = ValSeries::from_pi_coeffs(Place::infinity(F), 0, {1, 1}, 40);
    for (std::int64_t y : {1, -1, 3}) {
      auto rep = pi_covariance_check(F, PadicInt::exact(r, y), u, 4, 40);
      const std::string at = " at r=" + std::to_string(r) + " y=" + std::to_string(y);
      require(v, rep.coefficients_match, "coefficients differ" + at);
      require(v, rep.zeros_match, "zero sets differ" + at);
      for (auto a : rep.coefficient_agreement) require(v, a >= 40, "coefficient agreement below 40" + at);
      zeros += rep.zeros_1;
    }
  }
  if (v.pass) v.detail = "y in {1, -1, 3}, r in {2, 3}, precision 40, " + std::to_string(zeros) + " certified zeros matched";
  return v;
}

// 12. CM coefficient fields.
Verdict c12() {
  Verdict v;
  auto F3 = FiniteField::prime(3);
  auto inf = Place::infinity(F3);
  auto g0 = cm_hecke_coeffs(CmExample::Geometric, F3, PadicInt::exact(3, 0), 6, 20);
  require(v, !g0.coeffs.empty() && g0.coeffs[0].a == ValSeries::one(inf, 20).truncate_abs(20) && g0.coeffs[0].b.is_zero(),
          "constant coefficient is not 1");
  for (std::size_t d = 1; d < g0.coeffs.size(); ++d)
    require(v, g0.coeffs[d].a.is_zero() && g0.coeffs[d].b.is_zero(), "L(x, 0) has a nonconstant term");
  // Exact coefficients are stored as c(theta) pi^(D j), D = deg N. Membership
  // in F_r[theta]: no b part and no pi-digits above D j.
  auto polynomial = [](const ValSeries& a, std::int64_t top) {
    if (a.is_zero()) return true;
    if (a.abs_prec() <= top) return false;
    for (std::int64_t k = std::max(top + 1, a.val()); k < a.abs_prec(); ++k)
      if (a.coeff(k)) return false;
    return true;
  };
  for (auto F : {FiniteField::prime(2), F3})
    for (std::int64_t y : {-1, -2, -3}) {
      auto c = cm_hecke_coeffs(CmExample::ConstantField, F, PadicInt::exact(F->p(), y), 6, 40);
      require(v, c.classification == "K", "constant-field example leaves K");
      for (const auto& k : c.coeffs)
        require(v, k.b.is_zero() && polynomial(k.a, -y * k.degree), "coefficient outside F_r[theta]");
    }
  auto g1 = cm_hecke_coeffs(CmExample::Geometric, F3, PadicInt::exact(3, -1), 6, 20);
  bool outside = false;
  for (const auto& k : g1.coeffs) outside = outside || !k.b.is_zero();
  require(v, outside && g1.classification == "K1", "geometric example at y = -1 stays in K");
  if (v.pass) v.detail = "L(x, 0) = 1 through degree 6; constant-field coefficients in F_r[theta]; geometric y = -1 gives K1";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> crit{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = crit[i]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s [%.1f s]\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str(), s);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed ? 1 : 0;
}
