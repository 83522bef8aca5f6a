// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fqzeta/cli.hpp"
#include "fqzeta/field.hpp"

namespace fqz::cli {

/// Options shared by every subcommand; settable from the config file.
struct Common {
  std::uint64_t r = 3;
  /// Unset means each command's own default.
  std::optional<std::int64_t> prec;
  unsigned dmax = 6;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  std::int64_t prec_or(std::int64_t d) const { return prec.value_or(d); }
  FieldPtr field() const;
  Json to_json() const;
};

struct Output {
  Json result;
  Table table;
};

/// p-adic y given either exactly or as a residue modulo p^digits.
struct YArg {
  std::optional<std::int64_t> exact;
  std::optional<std::uint64_t> residue;
  unsigned digits = 0;
  Json to_json() const;
};

Output cmd_zeta_poly(const Common& c, std::uint64_t j, bool tilde);
Output cmd_zeta_row(const Common& c, const YArg& y);
Output cmd_vadic_zeta(const Common& c, const std::string& v, std::uint64_t j);
Output cmd_wan_check(const Common& c, std::uint64_t j);
Output cmd_cm(const Common& c, const std::string& example, std::int64_t y);
Output cmd_zero_report(const Common& c, std::optional<std::uint64_t> j, const YArg& y);
Output cmd_galois(const Common& c, std::uint64_t j, const std::string& modprime, unsigned scan_bound,
                  bool factor_disc);
Output cmd_carlitz(const Common& c, const std::string& action, bool exp, bool log, unsigned n);
Output cmd_bc(const Common& c, std::uint64_t i);
Output cmd_vreduce(const Common& c, unsigned n, const std::string& a, const std::string& v,
                   std::optional<std::int64_t> input_prec, unsigned tau);
Output cmd_hyper(const Common& c, const std::string& mode, std::uint64_t j, const std::string& f,
                 const std::string& cpoly, unsigned m, unsigned n);
Output cmd_lift(const Common& c, const std::string& f, std::size_t t);
Output cmd_obstruction(const Common& c, const std::string& target, std::uint32_t p, unsigned s, std::size_t t);
Output cmd_mvop(const Common& c, const std::string& a, unsigned n);

}  // namespace fqz::cli
