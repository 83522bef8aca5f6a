// SPDX-License-Identifier: Apache-2.0
//
// JSON encodings: polynomials as {"p","m","var","coeffs":[[digits]...]}.

#pragma once

#include "fqzeta/poly.hpp"
#include "fqzeta/ratfn.hpp"
#include "json.hpp"

namespace fqz {

using Json = nlohmann::json;

Json to_json(const Poly& a);
/// Throws DomainError on malformed input. The modulus of an extension field
/// may be given under "modulus"; otherwise the default modulus is used.
Poly poly_from_json(const Json& j);
Json to_json(const RatFn& a);

/// Parse "T^3 + 2*T + 1" style text over the given field (prime-subfield
/// integer coefficients only).
Poly parse_poly(const FieldPtr& field, const std::string& text, const std::string& var = "T");

}  // namespace fqz
