// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqzeta/cli.hpp"

namespace fqz::cli {

/// Flat key-value sweep description: kind, r, j (lists or ranges such as
/// 1..50), prec, divisible (keep only j with (r-1) | j).
struct SweepSpec {
  std::string kind = "zero-report";
  std::vector<std::uint64_t> r;
  std::vector<std::uint64_t> j;
  std::int64_t prec = 20;
  bool divisible = false;

  Json to_json() const;
};

SweepSpec read_sweep_spec(const std::string& path);

struct SweepResult {
  Table table;
  std::size_t computed = 0, skipped = 0;
  std::string csv_hash;
};

/// One row per (r, j). With out_dir set, finished points are appended to
/// out_dir/sweep.points.jsonl and skipped on later runs; the table is written
/// to out_dir/sweep.csv. Rows do not depend on the thread count.
SweepResult run_sweep(const SweepSpec& spec, const std::string& out_dir, unsigned threads);

}  // namespace fqz::cli
