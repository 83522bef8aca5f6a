// SPDX-License-Identifier: Apache-2.0
#include "fqzeta/kfield.hpp"

namespace fqz {

RatFn int_mul(const RatFn& c, long long n) { return c.scale(c.field()->from_int(n)); }

KExtPtr make_kext(const BPoly<RatFn>& f, std::string var) {
  BPoly<RatFn> g = f;
  bpoly::trim(g);
  if (g.size() < 2) throw DomainError("make_kext: modulus must have positive degree");
  auto df = bpoly::derivative(g, int_mul);
  if (df.empty() || bpoly::gcd(g, df).size() != 1)
    throw DomainError("make_kext: minimal polynomial is not separable");
  return std::make_shared<const KExt>(bpoly::monic(g), std::move(var));
}

BPoly<RatFn> to_bpoly(const std::vector<Poly>& coeffs) {
  BPoly<RatFn> out;
  for (const auto& c : coeffs) out.emplace_back(c);
  bpoly::trim(out);
  return out;
}

}  // namespace fqz
