// SPDX-License-Identifier: Apache-2.0
#include "sweep.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "fqzeta/zeta.hpp"

namespace fqz::cli {

namespace {

namespace fs = std::filesystem;

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(bool b) { return b ? "true" : "false"; }

struct Point {
  std::uint64_t r;
  std::uint64_t j;
  std::string key;
};

std::vector<std::string> header_for(const std::string& kind) {
  if (kind == "zeta-poly") return {"r", "j", "status", "degree", "coefficient_degrees", "trivial_zero"};
  if (kind == "trivial-zero") return {"r", "j", "status", "trivial_zero", "vanishes_at_one", "division_exact"};
  if (kind == "zero-report") return {"r", "j", "status", "zeros", "all_simple", "all_in_k", "complete"};
  if (kind == "wan-check") return {"r", "j", "status", "equal", "min_agreement"};
  throw DomainError("sweep: unknown kind '" + kind + "'");
}

std::vector<std::string> compute(const SweepSpec& s, const Point& pt) {
  const FieldPtr F = FiniteField::of_order(pt.r);
  const ZetaOptions opt{1};
  std::vector<std::string> row{str(static_cast<std::int64_t>(pt.r)), str(static_cast<std::int64_t>(pt.j)), "ok"};
  try {
    if (s.kind == "zeta-poly") {
      auto z = zeta_special_poly(F, pt.j, opt);
      std::string degs;
      for (std::size_t d = 0; d < z.coeffs.size(); ++d) degs += (d ? ";" : "") + str(z.coeffs[d].degree());
      row.insert(row.end(), {str(z.degree()), degs, str(has_trivial_zero(F, pt.j))});
    } else if (s.kind == "trivial-zero") {
      auto z = zeta_special_poly(F, pt.j, opt);
      const bool tz = has_trivial_zero(F, pt.j);
      bool exact = true;
      try {
        remove_trivial_zero(z);
      } catch (const InternalError&) {
        exact = false;
      }
      row.insert(row.end(), {str(tz), str(z.at_one().is_zero()), str(exact)});
    } else if (s.kind == "zero-report") {
      auto rep = zero_field_analysis(remove_trivial_zero(zeta_special_poly(F, pt.j, opt)), s.prec);
      row.insert(row.end(), {str(static_cast<std::int64_t>(rep.zeros.size())), str(rep.all_simple),
                             str(rep.all_in_k), str(rep.complete)});
    } else {
      auto rep = wan_identity_check(F, pt.j, s.prec, opt);
      std::int64_t mn = rep.prec;
      for (auto a : rep.agreement) mn = std::min(mn, a);
      row.insert(row.end(), {str(rep.holds), str(mn)});
    }
  } catch (const DomainError& e) {
    row[2] = std::string("domain: ") + e.what();
  } catch (const PrecisionError& e) {
    row[2] = std::string("precision: ") + e.what();
  }
  row.resize(header_for(s.kind).size());
  return row;
}

}  // namespace

Json SweepSpec::to_json() const {
  return {{"kind", kind}, {"r", r}, {"j", j}, {"prec", prec}, {"divisible", divisible}};
}

SweepSpec read_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("sweep: cannot open spec file " + path);
  SweepSpec s;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::ParseError& e) {
    throw DomainError(std::string("sweep: spec parse error: ") + e.what());
  }
  for (const auto& it : items) {
    if (it.name == "++" || it.name == "--") continue;  // section markers
    std::string v;
    for (std::size_t i = 0; i < it.inputs.size(); ++i) v += (i ? "," : "") + it.inputs[i];
    const std::string key = it.fullname();
    auto to_u64 = [&](const std::vector<std::int64_t>& xs) {
      std::vector<std::uint64_t> out;
      for (auto x : xs) {
        if (x < 0) throw DomainError("sweep: negative value for " + key);
        out.push_back(static_cast<std::uint64_t>(x));
      }
      return out;
    };
    if (key == "kind") s.kind = v;
    else if (key == "r") s.r = to_u64(parse_int_list(v));
    else if (key == "j") s.j = to_u64(parse_int_list(v));
    else if (key == "prec") {
      auto p = parse_int_list(v);
      if (p.size() != 1 || p[0] < 1) throw DomainError("sweep: prec must be one positive integer");
      s.prec = p[0];
    } else if (key == "divisible") {
      if (v != "true" && v != "false") throw DomainError("sweep: divisible must be true or false");
      s.divisible = v == "true";
    } else {
      throw DomainError("sweep: unknown key '" + key + "'");
    }
  }
  header_for(s.kind);
  for (auto r : s.r)
    if (r < 2 || r > (1u << 20)) throw DomainError("sweep: bad r");
  return s;
}

SweepResult run_sweep(const SweepSpec& spec, const std::string& out_dir, unsigned threads) {
  for (auto r : spec.r) FiniteField::of_order(r);  // rejects non prime powers early
  std::vector<Point> pts;
  for (auto r : spec.r)
    for (auto j : spec.j) {
      if (spec.divisible && (j == 0 || j % (r - 1))) continue;
      pts.push_back({r, j, spec.kind + ";r=" + std::to_string(r) + ";j=" + std::to_string(j) +
                               ";prec=" + std::to_string(spec.prec)});
    }

  // Completed points from earlier runs.
  std::map<std::string, std::vector<std::string>> done;
  fs::path jsonl;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    jsonl = fs::path(out_dir) / "sweep.points.jsonl";
    std::ifstream in(jsonl);
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      try {
        const Json j = Json::parse(line);
        auto row = j.at("row").get<std::vector<std::string>>();
        if (content_hash(j.at("row")) == j.at("hash").get<std::string>()) done[j.at("key")] = std::move(row);
      } catch (const Json::exception&) {
        // A torn final line from an interrupted run: recompute that point.
      }
    }
  }

  SweepResult res;
  res.table.header = header_for(spec.kind);
  std::vector<std::vector<std::string>> rows(pts.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto it = done.find(pts[i].key);
    if (it != done.end() && it->second.size() == res.table.header.size()) rows[i] = it->second;
    else todo.push_back(i);
  }
  res.skipped = pts.size() - todo.size();
  res.computed = todo.size();

  std::ofstream emit;
  if (!jsonl.empty()) emit.open(jsonl, std::ios::app);
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) {
      const std::size_t i = todo[k];
      auto row = compute(spec, pts[i]);
      std::lock_guard<std::mutex> lk(mu);
      if (emit.is_open()) {
        const Json rj = row;
        emit << Json{{"key", pts[i].key}, {"hash", content_hash(rj)}, {"row", rj}}.dump() << '\n' << std::flush;
      }
      rows[i] = std::move(row);
    }
  };
  const unsigned w = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(todo.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < w; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  res.table.rows = std::move(rows);
  res.csv_hash = sha256_hex(to_csv(res.table));
  if (!out_dir.empty()) {
    std::ofstream(fs::path(out_dir) / "sweep.csv", std::ios::binary) << to_csv(res.table);
  }
  return res;
}

}  // namespace fqz::cli
