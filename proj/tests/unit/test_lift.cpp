// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "fqzeta/hyperderiv.hpp"
#include "fqzeta/lift.hpp"

using namespace fqz;

namespace {

Poly P(const FieldPtr& F, std::vector<long long> c) { return Poly::from_ints(F, c); }
RatFn th(const FieldPtr& F) { return RatFn(Poly::monomial(F, 1, 1, kTheta)); }
RatFn cst(const FieldPtr& F, long long c) { return RatFn(Poly::from_ints(F, {c}, kTheta)); }

KElt lam(const LiftProblem& pb) { return KElt::gen(pb.field); }
KElt emb(const LiftProblem& pb, const RatFn& x) { return KElt::from_base(pb.field, x); }

Poly random_poly(const FieldPtr& F, std::mt19937_64& rng, unsigned deg) {
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = static_cast<Elem>(rng() % F->q());
  return Poly(F, c);
}

}  // namespace

TEST_CASE("tangent of an operator") {
  auto F5 = FiniteField::prime(5);
  auto e = tangent_of_operator(P(F5, {0, 1}), 2);
  CHECK(e[0] == th(F5));
  CHECK(e[1] == cst(F5, 1));
  auto c = tangent_of_operator(P(F5, {0, 0, 0, 1}), 2);
  CHECK(c[0] == th(F5) * th(F5) * th(F5));
  CHECK(c[1] == cst(F5, 3) * th(F5) * th(F5));
  CHECK(tangent_of_operator(P(F5, {4}), 3).is_scalar());
  CHECK_THROWS_AS(tangent_of_operator(P(F5, {1}), 0), DomainError);
}

TEST_CASE("tangent inverse and extension to k") {
  auto F3 = FiniteField::prime(3);
  const RatFn t = th(F3);
  auto x = tangent_of_operator(P(F3, {0, 1}), 2);
  auto xi = tangent_invert(x);
  CHECK(xi[0] == t.inv());
  CHECK(xi[1] == -(t * t).inv());
  CHECK(x * xi == KTangent::scalar(cst(F3, 1), 2));
  auto one_eps = KTangent({cst(F3, 1), cst(F3, 1)}, 4);
  CHECK(one_eps * tangent_invert(one_eps) == KTangent::scalar(cst(F3, 1), 4));
  CHECK_THROWS_AS(tangent_invert(KTangent::eps(t, 3)), DomainError);

  CHECK(tangent_extend_K(RatFn(P(F3, {1}), P(F3, {0, 1})), 2) == xi);
  CHECK(tangent_extend_K(RatFn(P(F3, {0, 1})), 3) == tangent_of_operator(P(F3, {0, 1}), 3));
  // (T+1)/T * T = T+1.
  auto q = tangent_extend_K(RatFn(P(F3, {1, 1}), P(F3, {0, 1})), 3);
  CHECK(q * tangent_of_operator(P(F3, {0, 1}), 3) == tangent_of_operator(P(F3, {1, 1}), 3));
  // 1 + 1/T: coefficients 1 + 1/theta, -1/theta^2, 1/theta^3.
  CHECK(q[0] == cst(F3, 1) + t.inv());
  CHECK(q[1] == -(t * t).inv());
  CHECK(q[2] == (t * t * t).inv());
}

TEST_CASE("tangent extension is a ring map on k") {
  std::mt19937_64 rng(7);
  for (unsigned r : {2u, 3u, 5u}) {
    auto F = FiniteField::prime(r);
    for (int it = 0; it < 15; ++it) {
      Poly a = random_poly(F, rng, 3), b = random_poly(F, rng, 2), c = random_poly(F, rng, 3);
      if (b.is_zero()) b = P(F, {1, 1});
      if (c.is_zero()) c = P(F, {0, 1});
      const RatFn x(a, b), y(c, b * b + P(F, {0, 1}));
      for (std::size_t t : {1u, 2u, 4u}) {
        CHECK(tangent_extend_K(x * y, t) == tangent_extend_K(x, t) * tangent_extend_K(y, t));
        CHECK(tangent_extend_K(x + y, t) == tangent_extend_K(x, t) + tangent_extend_K(y, t));
      }
    }
  }
}

TEST_CASE("hyperderivatives of Laurent series") {
  auto F3 = FiniteField::prime(3);
  const RatFn x(P(F3, {1, 0, 2}), P(F3, {2, 1, 0, 1}));
  auto inf = Place::infinity(F3);
  auto fin = Place::finite(P(F3, {1, 1}));
  for (unsigned j = 0; j < 5; ++j) {
    const RatFn d = hyperderive(j, x);
    const ValSeries s = hyperderive(j, ValSeries::from_ratfn(inf, x, 20));
    CHECK(s.abs_prec() == ValSeries::from_ratfn(inf, x, 20).abs_prec() + static_cast<std::int64_t>(j));
    CHECK(s.agrees_with(ValSeries::from_ratfn(inf, d, 40), s.abs_prec()));
    const ValSeries u = hyperderive(j, ValSeries::from_ratfn(fin, x, 20));
    CHECK(u.abs_prec() == 20 - static_cast<std::int64_t>(j));
    CHECK(u.agrees_with(ValSeries::from_ratfn(fin, d, 40), u.abs_prec()));
  }
  auto tv = tangent_extend_K(ValSeries::from_ratfn(inf, x, 20), 3);
  CHECK(tv[1].agrees_with(ValSeries::from_ratfn(inf, hyperderive(1, x), 40), tv[1].abs_prec()));
}

TEST_CASE("separable lift: quadratic example at r = 5") {
  auto F5 = FiniteField::prime(5);
  auto pb = LiftProblem::make({P(F5, {0, 0, 0, 1}), P(F5, {0, 1}), P(F5, {1})}, 2);
  auto X = separable_lift(pb);
  const KElt l = lam(pb), t = emb(pb, th(F5));
  const KElt expected = (-l - emb(pb, cst(F5, 3)) * t * t) / (emb(pb, cst(F5, 2)) * l + t);
  CHECK(X[0] == l);
  CHECK(X[1] == expected);
  CHECK(lift_residual(pb, X) == KExtTangent::scalar(l.zero_like(), 2));
  CHECK(last_newton_steps() <= 2);
  // Order-1 coefficient is the derivative d lambda / dT.
  CHECK(X[1] == extend_derivation(l));
}

TEST_CASE("separable lift: trivial and substitution cases") {
  auto F3 = FiniteField::prime(3);
  for (std::size_t t = 1; t <= 5; ++t) {
    auto pb = LiftProblem::make({P(F3, {0, -1}), P(F3, {1})}, t);
    auto X = separable_lift(pb);
    auto E = tangent_of_operator(P(F3, {0, 1}), t);
    for (std::size_t i = 0; i < t; ++i) CHECK(X[i] == emb(pb, E[i]));
  }
  auto pb = LiftProblem::make({P(F3, {0, 1}), P(F3, {}), P(F3, {1})}, 2);
  auto X = separable_lift(pb);
  CHECK(X * X + KExtTangent({emb(pb, th(F3)), emb(pb, cst(F3, 1))}, 2) ==
        KExtTangent::scalar(lam(pb).zero_like(), 2));
  // lambda^2 = -T gives d lambda/dT = 1/lambda at r = 3.
  CHECK(X[1] == lam(pb).inv());
}

TEST_CASE("separable lift: corpus residuals") {
  std::mt19937_64 rng(2024);
  int solved = 0;
  for (int it = 0; it < 120 && solved < 30; ++it) {
    const unsigned r = std::vector<unsigned>{2, 3, 5}[it % 3];
    auto F = FiniteField::prime(r);
    const unsigned deg = 2 + static_cast<unsigned>(rng() % 3);
    const std::size_t t = 1 + rng() % 5;
    std::vector<Poly> f;
    for (unsigned i = 0; i < deg; ++i) f.push_back(random_poly(F, rng, 2));
    f.push_back(P(F, {1}));
    LiftProblem pb;
    try {
      pb = LiftProblem::make(f, t);
    } catch (const DomainError&) {
      continue;
    }
    auto X = separable_lift(pb);
    CHECK(X[0] == lam(pb));
    CHECK(lift_residual(pb, X) == KExtTangent::scalar(lam(pb).zero_like(), t));
    if (t >= 2) CHECK(X[1] == extend_derivation(lam(pb)));
    // Uniqueness: a perturbed start converges to the same lift.
    std::vector<KElt> c(t, lam(pb).zero_like());
    c[0] = lam(pb);
    for (std::size_t i = 1; i < t; ++i) c[i] = emb(pb, RatFn(random_poly(F, rng, 2).with_var(kTheta)));
    CHECK(separable_lift_from(pb, KExtTangent(c, t)) == X);
    ++solved;
  }
  CHECK(solved >= 20);
}

TEST_CASE("LiftProblem validation") {
  auto F3 = FiniteField::prime(3);
  CHECK_THROWS_AS(LiftProblem::make({P(F3, {1})}, 2), DomainError);
  CHECK_THROWS_AS(LiftProblem::make({P(F3, {0, 1}), P(F3, {1})}, 0), DomainError);
  // (u - T)(u + T) is reducible.
  CHECK_THROWS_AS(LiftProblem::make({P(F3, {0, 0, -1}), P(F3, {}), P(F3, {1})}, 2), DomainError);
  // u^3 - T is inseparable in characteristic 3.
  CHECK_THROWS_AS(LiftProblem::make({P(F3, {0, -1}), P(F3, {}), P(F3, {}), P(F3, {1})}, 2), DomainError);
  auto pb = LiftProblem::make({P(F3, {0, 1}), P(F3, {}), P(F3, {1})}, 3);
  CHECK_THROWS_AS(separable_lift_from(pb, KExtTangent::scalar(lam(pb), 2)), DomainError);
  CHECK_THROWS_AS(separable_lift_from(pb, KExtTangent::scalar(lam(pb) + lam(pb), 3)), DomainError);
}

TEST_CASE("lifted tangents form a ring map") {
  auto F5 = FiniteField::prime(5);
  auto pb = LiftProblem::make({P(F5, {0, 0, 0, 1}), P(F5, {0, 1}), P(F5, {1})}, 4);
  auto X = separable_lift(pb);
  const KElt l = lam(pb), t = emb(pb, th(F5));
  CHECK(lift_element(l, 4) == X);
  const KElt mu = l * l + t;
  const auto Emu = lift_element(mu, 4);
  auto lift_k = [&](const RatFn& x) { return tangent_extend_K(x, 4).map([&](const RatFn& c) { return emb(pb, c); }); };
  CHECK(Emu == X * X + lift_k(th(F5)));
  CHECK(lift_element(l + mu, 4) == X + Emu);
  CHECK(lift_element(l * mu, 4) == X * Emu);
  const KElt nu = l.inv() + emb(pb, th(F5).inv());
  CHECK(lift_element(nu, 4) == X.inv() + lift_k(th(F5).inv()));
}

TEST_CASE("constants lift as scalars") {
  auto F5 = FiniteField::prime(5);
  // u^2 + u + 1 is irreducible over F_5.
  auto pb = LiftProblem::make({P(F5, {1}), P(F5, {1}), P(F5, {1})}, 5);
  auto X = separable_lift(pb);
  CHECK(X.is_scalar());
  CHECK(X[0] == lam(pb));
  CHECK(extend_derivation(lam(pb)).is_zero());
}

TEST_CASE("liftability") {
  auto F2 = FiniteField::prime(2);
  auto F3 = FiniteField::prime(3);
  auto rep = liftability_check(tangent_of_operator(P(F2, {0, 1}), 2), 2, 1);
  CHECK(rep.status == Liftability::Obstructed);
  CHECK(!rep.reason.empty());
  CHECK(to_string(rep.status) == "obstructed");

  auto sc = liftability_check(KTangent::scalar(th(F3), 3), 3, 1);
  CHECK(sc.status == Liftability::ScalarOnly);
  CHECK(to_string(sc.status) == "scalar-only");

  // theta + theta^3 eps^3 at t = 5: witness theta eps.
  std::vector<RatFn> c(5, th(F3).zero_like());
  c[0] = th(F3);
  c[3] = th(F3) * th(F3) * th(F3);
  auto lr = liftability_check(KTangent(c, 5), 3, 1);
  REQUIRE(lr.status == Liftability::Liftable);
  REQUIRE(lr.witness);
  CHECK(lr.witness->pow(3) == KTangent(c, 5).nilpotent_part());
  CHECK((*lr.witness)[1] == th(F3));

  // A non-cube coefficient: still liftable over the perfect closure, no rational witness.
  c[3] = th(F3);
  auto nr = liftability_check(KTangent(c, 5), 3, 1);
  CHECK(nr.status == Liftability::Liftable);
  CHECK(!nr.witness);
  REQUIRE(nr.witness_powers.size() == 1);
  CHECK(nr.witness_powers[0] == th(F3));

  // eps^2 is not a 4th power at t = 5.
  std::vector<RatFn> d(5, th(F2).zero_like());
  d[2] = th(F2);
  CHECK(liftability_check(KTangent(d, 5), 2, 2).status == Liftability::Obstructed);
  CHECK(liftability_check(KTangent(d, 5), 2, 1).status == Liftability::Liftable);
  CHECK_THROWS_AS(liftability_check(KTangent(d, 5), 3, 1), DomainError);
  CHECK_THROWS_AS(liftability_check(KTangent(d, 5), 2, 0), DomainError);
}

TEST_CASE("q-th roots in k") {
  auto F3 = FiniteField::prime(3);
  const RatFn x(P(F3, {1, 0, 0, 2}).with_var(kTheta), P(F3, {0, 0, 0, 0, 0, 0, 1}).with_var(kTheta));
  auto r = qth_root(x, 3);
  REQUIRE(r);
  CHECK(r->pow(3) == x);
  CHECK(!qth_root(th(F3), 3));
  CHECK(qth_root(th(F3), 1) == th(F3));
  auto F4 = FiniteField::make(2, 2);
  const RatFn y(Poly(F4, {2, 0, 3}, kTheta));
  auto ry = qth_root(y, 2);
  REQUIRE(ry);
  CHECK(*ry * *ry == y);
}

TEST_CASE("multi-valued operators") {
  for (unsigned r : {2u, 3u}) {
    auto F = FiniteField::prime(r);
    const unsigned N = 3;
    auto [e1, l1] = tensor_exp_log(F, 1, N);
    const Poly a = P(F, {1, 0, 1});
    auto C = carlitz_action(a).map([](const Poly& x) { return RatFn(x); });
    SMat<RatFn> aI = SMat<RatFn>::scalar_matrix(1, RatFn(theta_image(a)));
    CHECK(multivalued_operator(aI, e1, l1, N).agrees_through(C, N));
    auto I1 = SMat<RatFn>::identity(1, th(F));
    CHECK(multivalued_operator(I1, e1, l1, N).agrees_through(TauMatSeries<RatFn>::identity(1, th(F)), N));

    auto [e2, l2] = tensor_exp_log(F, 2, N);
    auto C2 = tensor_power_action(2, a).map([](const Poly& x) { return RatFn(x); });
    CHECK(multivalued_operator(tangent_matrix(a, 2), e2, l2, N).agrees_through(C2, N));
    // Algebra map: M1 M2 goes to the composite.
    const Poly b = P(F, {0, 1});
    auto Ma = multivalued_operator(tangent_matrix(a, 2), e2, l2, N);
    auto Mb = multivalued_operator(tangent_matrix(b, 2), e2, l2, N);
    auto Mab = multivalued_operator(tangent_matrix(a, 2) * tangent_matrix(b, 2), e2, l2, N);
    CHECK(Mab.agrees_through(Ma.compose(Mb), N));

    CHECK_THROWS_AS(multivalued_operator(I1, e1, l1, N + 1), PrecisionError);
    CHECK_THROWS_AS(multivalued_operator(I1, e1, e1, N), DomainError);
    CHECK_THROWS_AS(multivalued_operator(tangent_matrix(a, 2), e1, l1, N), DomainError);
  }
}

TEST_CASE("tangent matrix matches the tau^0 part of the tensor action") {
  auto F5 = FiniteField::prime(5);
  const Poly a = P(F5, {3, 1, 0, 2, 1});
  auto M = tangent_matrix(a, 4);
  auto C = tensor_power_action(4, a);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(M(i, j) == RatFn(C.coeff(0)(i, j)));
}

TEST_CASE("v-adic lift") {
  auto F5 = FiniteField::prime(5);
  const std::vector<Poly> f{P(F5, {0, 0, 0, 1}), P(F5, {0, 1}), P(F5, {1})};
  const Poly v = P(F5, {-1, 1});
  auto pb = LiftProblem::make(f, 3);
  auto X = separable_lift(pb);
  const std::int64_t M = 20;
  auto vl = vadic_separable_lift(f, v, 3, M);
  CHECK(vl.prec >= 1);
  CHECK(vl.prec <= M);
  auto place = Place::finite(theta_image(v));
  for (std::size_t i = 0; i < 3; ++i) {
    const VElt d = vl.lift[i] - to_vadic(X[i], vl.field, place, M);
    for (const auto& c : d.rep())
      if (!c.is_zero()) CHECK(c.val() >= vl.prec);
  }
  for (const auto& c : vl.residual.coeffs())
    for (const auto& x : c.rep())
      if (!x.is_zero()) CHECK(x.val() >= vl.prec);

  // lambda in A: the lift is the image of tangent_of_operator.
  auto tr = vadic_separable_lift({P(F5, {0, -1}), P(F5, {1})}, v, 4, 10);
  auto E = tangent_of_operator(P(F5, {0, 1}), 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const ValSeries e = E[i].is_zero() ? ValSeries::zero(place, 10) : ValSeries::from_ratfn(place, E[i], 10);
    auto d = tr.lift[i] - VElt::from_base(tr.field, e);
    for (const auto& c : d.rep())
      if (!c.is_zero()) CHECK(c.val() >= tr.prec);
  }

  // v | disc: u^2 - T has discriminant 4T.
  CHECK_THROWS_AS(vadic_separable_lift({P(F5, {0, -1}), P(F5, {}), P(F5, {1})}, P(F5, {0, 1}), 2, 10),
                  DomainError);
  CHECK_THROWS_AS(vadic_separable_lift(f, v, 2, 0), DomainError);
  CHECK_THROWS_AS(vadic_separable_lift({P(F5, {1}), P(F5, {0, 1})}, P(F5, {0, 1}), 2, 10), DomainError);
}
