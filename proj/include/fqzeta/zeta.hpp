// SPDX-License-Identifier: Apache-2.0
//
// Zeta and L-series computations over A = F_r[T]: power sums over monic
// polynomials, the special polynomials z(x, -j), rows of the interpolated
// zeta function at y in Z_p, v-adic variants and two CM Hecke L-series.
//
// Series in x are written in X = 1/x: coefficient d multiplies X^d.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqzeta/newton.hpp"
#include "fqzeta/padic.hpp"
#include "fqzeta/poly.hpp"
#include "fqzeta/valseries.hpp"

namespace fqz {

struct ZetaOptions {
  /// Worker threads for sums over monic polynomials; results do not depend on it.
  unsigned threads = 1;
};

/// Sum of n^j over the r^d monic n of degree d (r = field order).
Poly power_sum(const FieldPtr& field, unsigned d, std::uint64_t j, const ZetaOptions& opt = {},
               const std::string& var = "T");

/// Sum of the base-r digits of j.
std::uint64_t digit_sum(std::uint64_t j, std::uint64_t r);

struct ZetaPoly {
  FieldPtr field;
  std::uint64_t j = 0;
  /// coeffs[d] multiplies X^d; trailing zeros removed.
  std::vector<Poly> coeffs;
  /// Set once remove_trivial_zero has been applied.
  bool trivial_zero_removed = false;
  /// Last degree at which a coefficient was computed by the stopping rule.
  unsigned stop_degree = 0;
  /// Finite place excluded from the sum (v-adic variant), empty otherwise.
  std::optional<Poly> v;

  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs.size()) - 1; }
  /// Value at x = 1, i.e. the sum of the coefficients.
  Poly at_one() const;
};

/// z(x, -j) = sum_d X^d S_d(j). Degrees are computed until d(r-1) exceeds the
/// base-r digit sum of j and two consecutive coefficients vanish.
ZetaPoly zeta_special_poly(const FieldPtr& field, std::uint64_t j, const ZetaOptions& opt = {});

/// True when (r-1) | j and j > 0.
bool has_trivial_zero(const FieldPtr& field, std::uint64_t j);

/// Divides by (1 - X) when the trivial zero is present; identity otherwise.
/// Throws InternalError if the division is not exact.
ZetaPoly remove_trivial_zero(const ZetaPoly& z);

/// Coefficients sum_{deg n = d, v does not divide n} n^j. Throws DomainError for
/// v not monic irreducible.
ZetaPoly vadic_zeta_poly(const Poly& v, std::uint64_t j, const ZetaOptions& opt = {});

struct ZetaSeriesRow {
  PlacePtr place;
  PadicInt y;
  unsigned d_max = 0;
  std::int64_t prec = 0;
  /// S_d(y) = sum_{deg n = d} <n>^{-y}, to absolute precision prec.
  std::vector<ValSeries> coeffs;

  /// Lower bound (r-1) d (d+1) / 2 on v(S_d(y)), valid for every y.
  std::int64_t tail_bound(std::int64_t d) const;
  /// Newton polygon points: exact where a coefficient is known to be nonzero,
  /// lower bounds for apparent zeros and for the uncomputed tail.
  std::vector<NPPoint> np_points() const;
};

/// Row of zeta(x, y) in X. With `uniformizer` set (a positive uniformizer
/// pi_1 = u / T, u a 1-unit) the one-unit parts are taken relative to it.
ZetaSeriesRow zeta_series_row(const FieldPtr& field, const PadicInt& y, unsigned d_max, std::int64_t prec,
                              const ZetaOptions& opt = {}, const ValSeries* uniformizer = nullptr);

/// zeta_A(i) = sum over monic n of n^{-i} to absolute precision prec.
ValSeries zeta_at_positive(const FieldPtr& field, unsigned i, std::int64_t prec, const ZetaOptions& opt = {});

struct WanReport {
  bool holds = true;
  std::int64_t prec = 0;
  /// Per X-degree: agreement of the two sides, capped at prec.
  std::vector<std::int64_t> agreement;
};

/// Compares (1 - X)^{-1} zeta_{A,(T)}(x, -j), with T -> 1/T on coefficients,
/// against the normalised zeta(x, -j). Throws DomainError unless (r-1) | j, j > 0.
WanReport wan_identity_check(const FieldPtr& field, std::uint64_t j, std::int64_t prec,
                             const ZetaOptions& opt = {});

struct ZeroRecord {
  Rational slope;
  std::int64_t length = 0;
  bool certified = false;
  bool simple = false;
  bool k_rational = false;
  /// Lifted zero in X and its normalised residual, when k_rational.
  std::optional<ValSeries> zero;
  std::int64_t residual = 0;
};

struct ZeroFieldReport {
  NewtonPolygon polygon;
  std::vector<ZeroRecord> zeros;
  bool all_in_k = true;
  bool all_simple = true;
  /// False when some part of the polygon could not be certified.
  bool complete = true;
};

/// Newton polygon and zero extraction for a special polynomial.
ZeroFieldReport zero_field_analysis(const ZetaPoly& z, std::int64_t prec);
/// Same for a series row; only certified segments are reported as zeros.
ZeroFieldReport zero_field_analysis(const ZetaSeriesRow& row, std::int64_t prec);

struct CovarianceReport {
  bool coefficients_match = true;
  bool zeros_match = true;
  std::vector<std::int64_t> coefficient_agreement;
  std::vector<std::int64_t> zero_agreement;
  std::size_t zeros_1 = 0, zeros_2 = 0;
};

/// Recomputes the row with pi_1 = u / T and checks S_d^(1) = u^{-dy} S_d^(2)
/// and that certified zeros correspond under z -> u^y z.
CovarianceReport pi_covariance_check(const FieldPtr& field, const PadicInt& y, const ValSeries& u, unsigned d_max,
                                     std::int64_t prec, const ZetaOptions& opt = {});

enum class CmExample { ConstantField, Geometric };

struct CmCoefficient {
  /// Degree of N(g) in T.
  std::int64_t degree = 0;
  /// Coefficient = a + b w, w the generator of the CM field over k
  /// (a fixed element of F_{r^2} outside F_r, resp. lambda with lambda^2 = -T).
  ValSeries a, b;
};

struct CmReport {
  CmExample example = CmExample::ConstantField;
  std::vector<CmCoefficient> coeffs;
  /// "K" when every b vanishes, "K1" otherwise.
  std::string classification;
};

/// Dirichlet coefficients sum_{g monic, deg N(g) = d} g <N(g)>^{-y} for d <= d_max.
/// The geometric example requires r = 3. Exact y <= 0 is summed exactly.
CmReport cm_hecke_coeffs(CmExample ex, const FieldPtr& field, const PadicInt& y, unsigned d_max, std::int64_t prec,
                         const ZetaOptions& opt = {});

}  // namespace fqz
