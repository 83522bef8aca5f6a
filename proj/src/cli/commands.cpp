// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cctype>
#include <random>

#include "fqzeta/carlitz.hpp"
#include "fqzeta/factor.hpp"
#include "fqzeta/galois.hpp"
#include "fqzeta/hyperderiv.hpp"
#include "fqzeta/lift.hpp"
#include "fqzeta/zeta.hpp"

namespace fqz::cli {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(bool b) { return b ? "true" : "false"; }

ZetaOptions zopt(const Common& c) { return ZetaOptions{c.threads}; }

std::uint32_t characteristic(const Common& c) { return c.field()->p(); }

PadicInt make_y(const Common& c, const YArg& y) {
  if (y.exact) return PadicInt::exact(characteristic(c), *y.exact);
  if (y.residue) return PadicInt::residue(characteristic(c), *y.residue, y.digits);
  throw DomainError("y is required (--y or --y-residue with --digits)");
}

Json poly_list(const std::vector<Poly>& v) {
  Json a = Json::array();
  for (const auto& p : v) a.push_back(to_json(p));
  return a;
}

Json zeta_poly_json(const ZetaPoly& z, Table& t) {
  Json degs = Json::array();
  t.header = {"d", "coefficient_degree", "valuation"};
  for (std::size_t d = 0; d < z.coeffs.size(); ++d) {
    const std::int64_t deg = z.coeffs[d].degree();
    degs.push_back(deg);
    t.rows.push_back({str(static_cast<std::int64_t>(d)), str(deg), z.coeffs[d].is_zero() ? "inf" : str(-deg)});
  }
  return {{"j", z.j},
          {"degree", z.degree()},
          {"coefficient_degrees", degs},
          {"coefficients", poly_list(z.coeffs)},
          {"trivial_zero_removed", z.trivial_zero_removed},
          {"stop_degree", z.stop_degree}};
}

Json polygon_json(const NewtonPolygon& np) {
  Json v = Json::array(), s = Json::array();
  for (const auto& [i, val] : np.vertices) v.push_back({i, val});
  for (const auto& g : np.segments)
    s.push_back({{"from", g.i0}, {"to", g.i1}, {"slope", g.slope.to_string()}, {"certified", g.certified}});
  return {{"vertices", v}, {"segments", s}};
}

Json zero_report_json(const ZeroFieldReport& rep, Table& t) {
  t.header = {"zero", "slope", "length", "certified", "simple", "k_rational", "residual", "zero_value"};
  Json zs = Json::array();
  for (std::size_t i = 0; i < rep.zeros.size(); ++i) {
    const auto& z = rep.zeros[i];
    Json j = {{"slope", z.slope.to_string()}, {"length", z.length},       {"certified", z.certified},
              {"simple", z.simple},           {"k_rational", z.k_rational}, {"residual", z.residual}};
    if (z.zero) j["zero"] = to_json(*z.zero);
    zs.push_back(j);
    t.rows.push_back({str(static_cast<std::int64_t>(i)), z.slope.to_string(), str(z.length), str(z.certified),
                      str(z.simple), str(z.k_rational), str(z.residual), z.zero ? z.zero->to_string() : ""});
  }
  return {{"polygon", polygon_json(rep.polygon)},
          {"zeros", zs},
          {"all_in_k", rep.all_in_k},
          {"all_simple", rep.all_simple},
          {"complete", rep.complete}};
}

template <class S, class F>
Json series_json(const TauMatSeries<S>& s, F&& enc) {
  Json out = Json::array();
  for (std::size_t k = 0; k < s.coeffs().size(); ++k) {
    const auto& m = s.coeffs()[k];
    if (m.is_zero()) continue;
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(enc(m(i, j)));
      rows.push_back(row);
    }
    out.push_back({{"tau", k}, {"matrix", rows}});
  }
  return out;
}

template <class S>
Table series_table(const TauMatSeries<S>& s) {
  Table t{{"tau", "row", "col", "entry"}, {}};
  for (std::size_t k = 0; k < s.coeffs().size(); ++k)
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j) {
        const auto& x = s.coeffs()[k](i, j);
        if (!x.is_zero()) t.rows.push_back({str(static_cast<std::int64_t>(k)), str(static_cast<std::int64_t>(i)),
                                            str(static_cast<std::int64_t>(j)), x.to_string()});
      }
  return t;
}

Json kelt_json(const KElt& x) {
  Json c = Json::array();
  for (std::size_t i = 0; i < x.field()->degree(); ++i) c.push_back(to_json(x.coeff(i)));
  return c;
}

}  // namespace

FieldPtr Common::field() const {
  if (r < 2 || r > (1u << 20)) throw DomainError("r must be a prime power in [2, 2^20]");
  return FiniteField::of_order(r);
}

Json Common::to_json() const {
  Json j = {{"r", r}, {"dmax", dmax}, {"seed", seed}};
  if (prec) j["prec"] = *prec;
  return j;
}

Json YArg::to_json() const {
  if (exact) return {{"y", *exact}};
  if (residue) return {{"y_residue", *residue}, {"digits", digits}};
  return Json::object();
}

std::vector<Poly> parse_bivariate(const FieldPtr& field, const std::string& text, const std::string& x,
                                  const std::string& y, const std::string& y_out) {
  const FiniteField& F = *field;
  std::vector<Poly> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw DomainError("parse: expected a number in '" + text + "'");
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
      if (v > (1ull << 40)) throw DomainError("parse: number too large");
    }
    return v;
  };
  auto match = [&](const std::string& name) {
    if (text.compare(i, name.size(), name) != 0) return false;
    const std::size_t e = i + name.size();
    if (e < n && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_')) return false;
    i = e;
    return true;
  };
  skip();
  if (i == n) throw DomainError("parse: empty input");
  bool first = true;
  while (true) {
    skip();
    if (i == n) break;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
      neg = text[i] == '-';
      ++i;
    } else if (!first) {
      throw DomainError("parse: expected '+' or '-' in '" + text + "'");
    }
    first = false;
    std::uint64_t coef = 1, ex = 0, ey = 0;
    for (bool more = true; more;) {
      skip();
      std::uint64_t* e = nullptr;
      if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coef = coef * (number() % F.p()) % F.p();
      } else if (match(x)) {
        e = &ex;
      } else if (match(y)) {
        e = &ey;
      } else {
        throw DomainError("parse: unexpected input at position " + std::to_string(i) + " in '" + text + "'");
      }
      if (e) {
        skip();
        std::uint64_t k = 1;
        if (i < n && text[i] == '^') {
          ++i;
          skip();
          k = number();
        }
        if (k > 100000) throw DomainError("parse: exponent too large");
        *e += k;
      }
      skip();
      more = i < n && text[i] == '*';
      if (more) ++i;
    }
    Elem c = F.from_int(static_cast<std::int64_t>(coef));
    if (neg) c = F.neg(c);
    if (out.size() <= ex) out.resize(ex + 1, Poly(field, y_out));
    out[ex] += Poly::monomial(field, c, ey, y_out);
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

Output cmd_zeta_poly(const Common& c, std::uint64_t j, bool tilde) {
  Output o;
  auto z = zeta_special_poly(c.field(), j, zopt(c));
  const bool trivial = has_trivial_zero(c.field(), j);
  if (tilde) z = remove_trivial_zero(z);
  o.result = zeta_poly_json(z, o.table);
  o.result["trivial_zero"] = trivial;
  return o;
}

Output cmd_zeta_row(const Common& c, const YArg& y) {
  Output o;
  const std::int64_t prec = c.prec_or(40);
  auto row = zeta_series_row(c.field(), make_y(c, y), c.dmax, prec, zopt(c));
  Json cs = Json::array();
  o.table.header = {"d", "valuation", "abs_prec"};
  for (std::size_t d = 0; d < row.coeffs.size(); ++d) {
    const auto& s = row.coeffs[d];
    cs.push_back(to_json(s));
    o.table.rows.push_back({str(static_cast<std::int64_t>(d)), s.is_zero() ? "inf" : str(s.val()), str(s.abs_prec())});
  }
  o.result = {{"y", row.y.to_string()}, {"dmax", row.d_max}, {"prec", prec}, {"coefficients", cs}};
  return o;
}

Output cmd_vadic_zeta(const Common& c, const std::string& v, std::uint64_t j) {
  Output o;
  const Poly vp = parse_poly(c.field(), v);
  o.result = zeta_poly_json(vadic_zeta_poly(vp, j, zopt(c)), o.table);
  o.result["v"] = to_json(vp);
  return o;
}

Output cmd_wan_check(const Common& c, std::uint64_t j) {
  Output o;
  const std::int64_t prec = c.prec_or(60);
  auto rep = wan_identity_check(c.field(), j, prec, zopt(c));
  o.result = {{"equal", rep.holds}, {"j", j}, {"prec", rep.prec}, {"agreement", rep.agreement}};
  o.table.header = {"d", "agreement"};
  for (std::size_t d = 0; d < rep.agreement.size(); ++d)
    o.table.rows.push_back({str(static_cast<std::int64_t>(d)), str(rep.agreement[d])});
  return o;
}

Output cmd_cm(const Common& c, const std::string& example, std::int64_t y) {
  CmExample ex;
  if (example == "constfield") ex = CmExample::ConstantField;
  else if (example == "geometric") ex = CmExample::Geometric;
  else throw DomainError("cm: --example must be constfield or geometric");
  Output o;
  const std::int64_t prec = c.prec_or(40);
  auto rep = cm_hecke_coeffs(ex, c.field(), PadicInt::exact(characteristic(c), y), c.dmax, prec, zopt(c));
  Json cs = Json::array();
  o.table.header = {"degree", "a", "b"};
  for (const auto& k : rep.coeffs) {
    cs.push_back({{"degree", k.degree}, {"a", to_json(k.a)}, {"b", to_json(k.b)}});
    o.table.rows.push_back({str(k.degree), k.a.to_string(), k.b.to_string()});
  }
  o.result = {{"example", example}, {"y", y}, {"prec", prec}, {"coefficients", cs},
              {"classification", rep.classification}};
  return o;
}

Output cmd_zero_report(const Common& c, std::optional<std::uint64_t> j, const YArg& y) {
  Output o;
  const std::int64_t prec = c.prec_or(20);
  if (j) {
    auto z = remove_trivial_zero(zeta_special_poly(c.field(), *j, zopt(c)));
    o.result = zero_report_json(zero_field_analysis(z, prec), o.table);
    o.result["j"] = *j;
  } else {
    auto row = zeta_series_row(c.field(), make_y(c, y), c.dmax, c.prec_or(40), zopt(c));
    o.result = zero_report_json(zero_field_analysis(row, prec), o.table);
    o.result["y"] = row.y.to_string();
  }
  o.result["prec"] = prec;
  return o;
}

Output cmd_galois(const Common& c, std::uint64_t j, const std::string& modprime, unsigned scan_bound,
                  bool factor_disc) {
  Output o;
  const FieldPtr F = c.field();
  auto z = remove_trivial_zero(zeta_special_poly(F, j, zopt(c)));
  const XPoly f = xpoly::reversed(z.coeffs);
  Json res = {{"j", j}, {"degree", xpoly::degree(f)}};
  Json cdeg = Json::array();
  for (const auto& a : f) cdeg.push_back(a.degree());
  res["coefficient_degrees"] = cdeg;
  o.table.header = {"key", "value"};
  if (xpoly::degree(f) != 4) {
    res["group"] = "n/a";
    res["note"] = "reciprocal polynomial is not a quartic";
    o.table.rows.push_back({"group", "n/a"});
    o.result = res;
    return o;
  }
  auto rep = quartic_galois_group(f, scan_bound);
  res["group"] = to_string(rep.group);
  res["irreducibility_witness"] = rep.irreducibility_witness;
  if (rep.witness_prime) res["witness_prime"] = to_json(*rep.witness_prime);
  Json rdeg = Json::array();
  for (const auto& a : rep.resolvent) rdeg.push_back(a.degree());
  res["resolvent_degrees"] = rdeg;
  res["resolvent_irreducible"] = rep.resolvent_irreducible;
  res["resolvent_roots"] = rep.resolvent_roots;
  if (rep.resolvent_witness_prime) res["resolvent_witness_prime"] = to_json(*rep.resolvent_witness_prime);
  res["discriminant_degree"] = rep.discriminant.degree();
  res["discriminant_square"] = rep.disc_square;
  if (!rep.note.empty()) res["note"] = rep.note;
  Json sqf = Json::array();
  bool odd = false;
  for (const auto& fc : squarefree_decomposition(rep.discriminant)) {
    sqf.push_back({{"degree", fc.f.degree()}, {"multiplicity", fc.mult}});
    if (fc.mult % 2 && fc.f.degree() > 0) odd = true;
  }
  res["discriminant_squarefree"] = sqf;
  res["discriminant_has_odd_part"] = odd;
  if (factor_disc) {
    Json fac = Json::array();
    for (const auto& fc : factor(rep.discriminant).factors)
      fac.push_back({{"factor", to_json(fc.f)}, {"multiplicity", fc.mult}});
    res["discriminant_factors"] = fac;
  }
  if (!modprime.empty()) {
    const Poly v = parse_poly(F, modprime);
    res["modprime"] = {{"v", to_json(v)},
                       {"quartic_irreducible", irreducible_mod_prime(f, v)},
                       {"resolvent_irreducible", irreducible_mod_prime(rep.resolvent, v)}};
    o.table.rows.push_back({"resolvent_irreducible_mod_v", str(irreducible_mod_prime(rep.resolvent, v))});
  }
  o.table.rows.insert(o.table.rows.begin(), {{"group", to_string(rep.group)},
                                             {"resolvent_irreducible", str(rep.resolvent_irreducible)},
                                             {"discriminant_square", str(rep.disc_square)}});
  o.result = res;
  return o;
}

Output cmd_carlitz(const Common& c, const std::string& action, bool exp, bool log, unsigned n) {
  const FieldPtr F = c.field();
  Output o;
  if (static_cast<int>(!action.empty()) + exp + log != 1)
    throw DomainError("carlitz: give exactly one of --action, --exp, --log");
  if (!action.empty()) {
    const Poly a = parse_poly(F, action);
    auto s = tensor_power_action(n, a);
    o.result = {{"a", to_json(a)}, {"n", n}, {"series", series_json(s, [](const Poly& x) { return to_json(x); })}};
    o.table = series_table(s);
    return o;
  }
  const auto N = static_cast<unsigned>(c.prec_or(4));
  auto [e, l] = tensor_exp_log(F, n, N);
  const auto& s = exp ? e : l;
  o.result = {{"n", n}, {"prec", N}, {"kind", exp ? "exp" : "log"},
              {"series", series_json(s, [](const RatFn& x) { return to_json(x); })}};
  o.table = series_table(s);
  return o;
}

Output cmd_bc(const Common& c, std::uint64_t i) {
  Output o;
  const RatFn b = bernoulli_carlitz(c.field(), i);
  o.result = {{"i", i}, {"value", to_json(b)}, {"text", b.to_string()}};
  o.table = {{"i", "value"}, {{str(static_cast<std::int64_t>(i)), b.to_string()}}};
  return o;
}

Output cmd_vreduce(const Common& c, unsigned n, const std::string& a, const std::string& v,
                   std::optional<std::int64_t> input_prec, unsigned tau) {
  const FieldPtr F = c.field();
  const Poly ap = parse_poly(F, a), vp = parse_poly(F, v);
  const std::int64_t M = c.prec_or(4);
  Output o;
  auto s = vadic_reduce_action(n, ap, input_prec, vp, M, tau);
  o.result = {{"n", n},
              {"v", to_json(vp)},
              {"prec", M},
              {"tau", tau},
              {"required_input_prec", vadic_required_precision(n, vp, M, tau)},
              {"series", series_json(s, [](const Poly& x) { return to_json(x); })}};
  o.table = series_table(s);
  return o;
}

Output cmd_hyper(const Common& c, const std::string& mode, std::uint64_t j, const std::string& f,
                 const std::string& cpoly, unsigned m, unsigned n) {
  const FieldPtr F = c.field();
  const Poly fp = f.empty() ? Poly(F) : parse_poly(F, f);
  Output o;
  o.table.header = {"key", "value"};
  if (mode == "derive") {
    const Poly d = hyperderive(j, fp);
    o.result = {{"j", j}, {"f", to_json(fp)}, {"value", to_json(d)}};
    o.table.rows.push_back({"value", d.to_string()});
  } else if (mode == "power-check") {
    const bool ok = power_formula(fp, m, n) == hyperderive(n, pow(fp, m));
    o.result = {{"m", m}, {"n", n}, {"f", to_json(fp)}, {"equal", ok}};
    o.table.rows.push_back({"equal", str(ok)});
  } else if (mode == "power-random") {
    // count random cases with deg f <= 4, m <= 5, n <= 6 from the seed.
    std::mt19937_64 rng(c.seed);
    std::size_t ok = 0;
    for (unsigned k = 0; k < m; ++k) {
      const Poly g = random_poly(F, 1 + rng() % 4, rng);
      const unsigned mm = 1 + static_cast<unsigned>(rng() % 5), nn = 1 + static_cast<unsigned>(rng() % 6);
      if (power_formula(g, mm, nn) == hyperderive(nn, pow(g, mm))) ++ok;
    }
    o.result = {{"cases", m}, {"passed", ok}, {"seed", c.seed}};
    o.table.rows.push_back({"passed", str(static_cast<std::int64_t>(ok))});
  } else if (mode == "vbound") {
    const Poly cp = cpoly.empty() ? Poly::constant(F, 1) : parse_poly(F, cpoly);
    const bool ok = vadic_continuity_bound(n, cp, fp, m);
    o.result = {{"m", m}, {"n", n}, {"f", to_json(fp)}, {"c", to_json(cp)}, {"divisible", ok}};
    o.table.rows.push_back({"divisible", str(ok)});
  } else {
    throw DomainError("hyper: unknown mode " + mode);
  }
  return o;
}

Output cmd_lift(const Common& c, const std::string& f, std::size_t t) {
  const FieldPtr F = c.field();
  auto pb = LiftProblem::make(parse_bivariate(F, f, "u", "T", "T"), t);
  auto X = separable_lift(pb);
  const unsigned steps = last_newton_steps();
  Output o;
  Json mod = Json::array(), eps = Json::array();
  for (const auto& m : pb.field->modulus()) mod.push_back(to_json(m));
  o.table.header = {"order", "coefficient"};
  for (std::size_t i = 1; i < t; ++i) {
    eps.push_back(kelt_json(X[i]));
    std::string s;
    for (std::size_t k = 0; k < pb.field->degree(); ++k)
      s += (k ? " ; " : "") + X[i].coeff(k).to_string();
    o.table.rows.push_back({str(static_cast<std::int64_t>(i)), s});
  }
  const bool resid = lift_residual(pb, X) == KExtTangent::scalar(X[0].zero_like(), t);
  o.result = {{"modulus", mod},
              {"t", t},
              {"eps_lambda", eps},
              {"residual_zero", resid},
              {"newton_steps", steps}};
  return o;
}

Output cmd_obstruction(const Common& c, const std::string& target, std::uint32_t p, unsigned s, std::size_t t) {
  const FieldPtr F = c.field();
  auto coeffs = parse_bivariate(F, target, "eps", "theta", kTheta);
  std::vector<RatFn> rc;
  for (const auto& x : coeffs) rc.push_back(RatFn(x));
  if (rc.empty()) rc.push_back(RatFn::zero(F, kTheta));
  if (rc.size() > t) throw DomainError("target has terms beyond eps^(t-1)");
  auto rep = liftability_check(KTangent(rc, t), p, s);
  Output o;
  o.result = {{"status", to_string(rep.status)}, {"q", rep.q}, {"reason", rep.reason}};
  Json w = Json::array();
  for (const auto& x : rep.witness_powers) w.push_back(to_json(x));
  o.result["witness_powers"] = w;
  if (rep.witness) {
    Json wc = Json::array();
    for (const auto& x : rep.witness->coeffs()) wc.push_back(to_json(x));
    o.result["witness"] = wc;
  }
  o.table = {{"status", "q", "reason"}, {{to_string(rep.status), std::to_string(rep.q), rep.reason}}};
  return o;
}

Output cmd_mvop(const Common& c, const std::string& a, unsigned n) {
  const FieldPtr F = c.field();
  const Poly ap = parse_poly(F, a);
  const auto N = static_cast<unsigned>(c.prec_or(4));
  auto [e, l] = tensor_exp_log(F, n, N);
  auto s = multivalued_operator(tangent_matrix(ap, n), e, l, N);
  const auto direct = tensor_power_action(n, ap).map([](const Poly& x) { return RatFn(x); });
  const bool eq = s.agrees_through(direct, N);
  Output o;
  o.result = {{"a", to_json(ap)}, {"n", n}, {"prec", N}, {"matches_action", eq},
              {"series", series_json(s, [](const RatFn& x) { return to_json(x); })}};
  o.table = series_table(s);
  return o;
}

}  // namespace fqz::cli
