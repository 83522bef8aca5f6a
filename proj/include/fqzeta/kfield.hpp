// SPDX-License-Identifier: Apache-2.0
//
// Separable extensions k[u]/(f) of k = F_r(theta).

#pragma once

#include <memory>
#include <string>

#include "fqzeta/ext.hpp"
#include "fqzeta/ratfn.hpp"

namespace fqz {

using KExt = ExtField<RatFn>;
using KExtPtr = std::shared_ptr<const KExt>;
using KElt = ExtElt<RatFn>;

/// k * n for an integer n, computed in the prime subfield.
RatFn int_mul(const RatFn& c, long long n);

/// Builds k[u]/(f) after checking that f is separable (gcd(f, f') = 1);
/// throws DomainError otherwise. f is made monic.
KExtPtr make_kext(const BPoly<RatFn>& f, std::string var = "u");

/// Lifts polynomial coefficients in T to a BPoly over k.
BPoly<RatFn> to_bpoly(const std::vector<Poly>& coeffs);

}  // namespace fqz
