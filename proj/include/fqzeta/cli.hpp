// SPDX-License-Identifier: Apache-2.0
//
// Command-line runner: subcommands over the library, JSON/CSV emission,
// manifests and resumable parameter sweeps.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fqzeta/poly.hpp"
#include "fqzeta/serialize.hpp"
#include "fqzeta/valseries.hpp"

namespace fqz::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kPrecision = 3, kInternal = 4 };

inline constexpr int kSchema = 1;

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flat table with a mandatory header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 quoting: fields with a comma, quote or line break are quoted.
std::string csv_field(const std::string& s);
std::string to_csv(const Table& t);

/// Hex SHA-256 of a string.
std::string sha256_hex(const std::string& data);

/// Deterministic content hash of a JSON value (timings must be excluded by the caller).
std::string content_hash(const Json& j);

Json to_json(const ValSeries& x);

/// Parses "1..50", "2,4,6" or mixtures such as "1..5,9".
std::vector<std::int64_t> parse_int_list(const std::string& s);

/// Polynomial in two variables as a list of coefficients in `x` (low to high),
/// each a polynomial in `y`. Terms look like 3*T^2*u, u^2, -T.
std::vector<Poly> parse_bivariate(const FieldPtr& field, const std::string& text, const std::string& x,
                                  const std::string& y, const std::string& y_out);

}  // namespace fqz::cli
