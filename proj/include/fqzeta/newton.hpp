// SPDX-License-Identifier: Apache-2.0
//
// Newton polygons of polynomials and power series over a valued field, and
// Hensel extraction of the simple zeros attached to length-one segments.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqzeta/valseries.hpp"

namespace fqz {

struct Rational {
  std::int64_t num = 0, den = 1;
  static Rational make(std::int64_t n, std::int64_t d);
  bool is_integer() const noexcept { return den == 1; }
  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& b) const noexcept;
  std::string to_string() const;
};

struct NPPoint {
  std::int64_t index = 0;
  /// Missing means the coefficient is exactly zero.
  std::optional<std::int64_t> val;
  /// True when val is only a lower bound (coefficient not known to be nonzero).
  bool lower_bound = false;
};

struct NPSegment {
  std::int64_t i0, i1;  // endpoint indices
  std::int64_t v0, v1;  // endpoint valuations
  Rational slope;
  std::int64_t length() const noexcept { return i1 - i0; }
  /// Every lower-bound point lies strictly above the supporting line.
  bool certified = true;
};

struct NewtonPolygon {
  std::vector<NPPoint> points;
  std::vector<std::pair<std::int64_t, std::int64_t>> vertices;
  std::vector<NPSegment> segments;
};

/// Lower convex hull of the exactly known points; lower-bound points only
/// affect certification. Throws DomainError when index 0 is missing or has no
/// finite exact valuation.
NewtonPolygon newton_polygon(const std::vector<NPPoint>& points);

struct HenselResult {
  ValSeries zero;
  /// v(f(z0)) - v_dom where v_dom is the common valuation of the dominant terms.
  std::int64_t residual = 0;
  int iterations = 0;
};

/// Lifts the zero attached to a length-one integer-slope segment of the
/// polygon of f = sum f[k] z^k until the normalized residual reaches prec.
/// Refuses other segments with DomainError; throws PrecisionError when the
/// coefficient precision cannot support prec.
HenselResult hensel_zero_lift(const std::vector<ValSeries>& f, const NPSegment& seg, std::int64_t prec);

/// f(z) with ValSeries coefficients.
ValSeries evaluate(const std::vector<ValSeries>& f, const ValSeries& z);

}  // namespace fqz
