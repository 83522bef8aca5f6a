// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/serialize.hpp"

#include <cctype>

namespace fqz {

Json to_json(const Poly& a) {
  const FiniteField& F = a.F();
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) coeffs.push_back(F.digits(a[i]));
  Json j = {{"p", F.p()}, {"m", F.m()}, {"var", a.var()}, {"coeffs", coeffs}};
  if (F.m() > 1) j["modulus"] = F.modulus();
  return j;
}

Poly poly_from_json(const Json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto m = j.value("m", 1u);
    FieldPtr F = m == 1 ? FiniteField::prime(p)
                        : (j.contains("modulus")
                               ? FiniteField::make(p, m, j.at("modulus").get<std::vector<std::uint32_t>>())
                               : FiniteField::make(p, m));
    std::vector<Elem> c;
    for (const auto& d : j.at("coeffs")) {
      auto digits = d.is_array() ? d.get<std::vector<std::uint32_t>>()
                                 : std::vector<std::uint32_t>{d.get<std::uint32_t>()};
      if (digits.size() > m) throw DomainError("poly_from_json: coefficient has too many digits");
      for (auto x : digits)
        if (x >= p) throw DomainError("poly_from_json: digit out of range");
      digits.resize(m, 0);
      c.push_back(F->from_digits(digits));
    }
    return Poly(F, std::move(c), j.value("var", std::string("T")));
  } catch (const Json::exception& e) {
    throw DomainError(std::string("poly_from_json: ") + e.what());
  }
}

Json to_json(const RatFn& a) { return {{"num", to_json(a.num())}, {"den", to_json(a.den())}}; }

Poly parse_poly(const FieldPtr& field, const std::string& text, const std::string& var) {
  Poly acc(field, var);
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> long long {
    long long v = 0;
    bool any = false;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i++] - '0');
      any = true;
      if (v > (1LL << 40)) throw DomainError("parse_poly: number too large");
    }
    if (!any) throw DomainError("parse_poly: expected a number in '" + text + "'");
    return v;
  };
  skip();
  if (i == n) throw DomainError("parse_poly: empty input");
  bool first = true;
  while (true) {
    skip();
    if (i == n) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw DomainError("parse_poly: expected '+' or '-' in '" + text + "'");
    }
    first = false;
    long long coef = 1;
    bool have_coef = false;
    if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coef = number();
      have_coef = true;
      skip();
      if (i < n && text[i] == '*') {
        ++i;
        skip();
      }
    }
    std::size_t e = 0;
    if (text.compare(i, var.size(), var) == 0 && !var.empty()) {
      i += var.size();
      e = 1;
      skip();
      if (i < n && text[i] == '^') {
        ++i;
        skip();
        e = static_cast<std::size_t>(number());
      }
    } else if (!have_coef) {
      throw DomainError("parse_poly: unexpected character in '" + text + "'");
    }
    acc += Poly::monomial(field, field->from_int(sign * coef), e, var);
  }
  return acc;
}

}  // namespace fqz
