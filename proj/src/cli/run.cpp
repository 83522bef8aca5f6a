// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fqzeta/errors.hpp"
#include "sweep.hpp"

namespace fqz::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

void write_file(const std::filesystem::path& p, const std::string& data) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw DomainError("cannot write " + p.string());
  os << data;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeta special polynomials, Galois tools and multi-valued operators over F_r[T]", "fqzeta-run"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file for the global options (flags win)");

  Common c;
  std::int64_t prec = 0;
  std::string out_dir;
  bool csv = false, timings = false;
  app.add_option("--r", c.r, "Field order (prime power)")->capture_default_str();
  auto* prec_opt = app.add_option("--prec", prec, "Precision (default depends on the command)")
                       ->check(CLI::PositiveNumber);
  app.add_option("--dmax", c.dmax, "Degree cutoff for series rows")->capture_default_str();
  app.add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (never affects results)")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--out", out_dir, "Directory for result, CSV and manifest files");
  app.add_flag("--csv", csv, "Emit a CSV table instead of JSON");
  app.add_flag("--timings", timings, "Include wall-clock timings in stdout (not hashed)");

  std::string name;

  auto sub = [&](const std::string& n, const std::string& help) {
    auto* s = app.add_subcommand(n, help);
    s->callback([&, n] { name = n; });
    return s;
  };

  std::uint64_t j = 0, i_bc = 0;
  bool tilde = false;
  YArg y;
  std::int64_t y_exact = 0;
  std::uint64_t y_res = 0;
  auto add_y = [&](CLI::App* s) {
    auto* yo = s->add_option("--y", y_exact, "Exact integer y");
    auto* yr = s->add_option("--y-residue", y_res, "y modulo p^digits");
    auto* yd = s->add_option("--digits", y.digits, "Known p-adic digits of y")->check(CLI::Range(1u, 62u));
    yr->needs(yd);
    yo->excludes(yr);
    s->parse_complete_callback([&, yo, yr] {
      if (yo->count()) y.exact = y_exact;
      if (yr->count()) y.residue = y_res;
    });
  };

  auto* zp = sub("zeta-poly", "Special polynomial z(x, -j)");
  zp->add_option("--j", j, "j >= 0")->required();
  zp->add_flag("--tilde", tilde, "Remove the trivial zero");

  auto* zr = sub("zeta-row", "Row of zeta(x, y) for y in Z_p");
  add_y(zr);

  std::string vpoly;
  auto* vz = sub("vadic-zeta", "v-adic special polynomial");
  vz->add_option("--v", vpoly, "Monic irreducible v, e.g. 'T + 1'")->required();
  vz->add_option("--j", j)->required();

  auto* wc = sub("wan-check", "Compare the v = (T) zeta polynomial with the normalised one");
  wc->add_option("--j", j)->required();

  std::string example;
  auto* cm = sub("cm", "Dirichlet coefficients of the CM Hecke L-series examples");
  cm->add_option("--example", example)->required()->check(CLI::IsMember({"constfield", "geometric"}));
  cm->add_option("--y", y_exact, "Exact integer y")->required();

  auto* zrep = sub("zero-report", "Newton polygon and zeros of z~(x, -j) or of a row");
  std::optional<std::uint64_t> zj;
  auto* zjo = zrep->add_option("--j", j);
  add_y(zrep);

  std::string modprime;
  unsigned scan_bound = 6;
  bool factor_disc = false;
  auto* ga = sub("galois", "Galois group of the reciprocal quartic of z~(x, -j)");
  ga->add_option("--j", j)->required();
  ga->add_option("--modprime", modprime, "Also test irreducibility modulo this prime");
  ga->add_option("--scan-bound", scan_bound, "Degree bound for Eisenstein primes")->capture_default_str();
  ga->add_flag("--factor-disc", factor_disc, "Fully factor the discriminant (slow for large j)");

  std::string action;
  bool exp = false, log = false;
  unsigned n = 1;
  auto* ca = sub("carlitz", "Carlitz module, tensor powers, exponential and logarithm");
  ca->add_option("--action", action, "a in A: print C^{(x)n}_a");
  ca->add_flag("--exp", exp, "Exponential through tau-degree prec (default 4)");
  ca->add_flag("--log", log, "Logarithm through tau-degree prec (default 4)");
  ca->add_option("--n", n, "Tensor power")->check(CLI::Range(1u, 16u))->capture_default_str();

  auto* bc = sub("bc", "Bernoulli-Carlitz number BC_i");
  bc->add_option("--i", i_bc)->required();

  std::string apx;
  std::int64_t in_prec = 0;
  unsigned tau = 4;
  auto* vr = sub("vreduce", "Action of an approximant of a v-adic integer modulo v^prec");
  vr->add_option("--n", n)->check(CLI::Range(1u, 8u));
  vr->add_option("--a", apx, "Approximant in A")->required();
  vr->add_option("--v", vpoly, "Monic prime v")->required();
  auto* inp = vr->add_option("--input-prec", in_prec, "Precision of the approximant (exact when omitted)");
  vr->add_option("--tau", tau, "tau-degree bound")->capture_default_str();

  std::string f, cpoly;
  unsigned m = 1, count = 0;
  bool power_check = false, vbound = false;
  auto* hy = sub("hyper", "Hyperderivatives");
  hy->add_option("--j", j);
  hy->add_option("--f", f, "Polynomial in T");
  hy->add_flag("--power-check", power_check, "Compare the power formula for D_n(f^m) with direct expansion");
  auto* rnd = hy->add_option("--random", count, "Check the power formula on this many random cases");
  hy->add_flag("--vbound", vbound, "Check f^(m-n) | D_n(c f^m)");
  hy->add_option("--c", cpoly, "c for --vbound (default 1)");
  hy->add_option("--m", m);
  hy->add_option("--n", n);

  std::size_t t = 2;
  bool obstruction = false;
  std::string target;
  std::uint32_t p = 2;
  unsigned s = 1;
  auto* li = sub("lift", "Tangent lift of a separable algebraic element, or the p-power obstruction");
  li->add_option("--f", f, "Minimal polynomial in u over A, e.g. 'u^2 + T*u + T^3'");
  li->add_option("--t", t, "Nilpotency order")->check(CLI::Range(1u, 64u))->capture_default_str();
  li->add_flag("--check-obstruction", obstruction, "Decide X^(p^s) = target instead");
  li->add_option("--target", target, "Target in theta and eps, e.g. 'theta + eps'");
  li->add_option("--p", p);
  li->add_option("--s", s);

  auto* mv = sub("mvop", "e(M log tau) for M the tangent matrix of a, compared with the direct action");
  mv->add_option("--a", apx)->required();
  mv->add_option("--n", n)->check(CLI::Range(1u, 8u));

  std::string spec_path;
  auto* sw = sub("sweep", "Resumable parameter sweep from a key=value spec file");
  sw->add_option("--spec", spec_path)->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (prec_opt->count()) c.prec = prec;
  if (zjo->count()) zj = j;

  Json cfg = c.to_json();
  Output o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (name == "zeta-poly") {
      cfg.update({{"j", j}, {"tilde", tilde}});
      o = cmd_zeta_poly(c, j, tilde);
    } else if (name == "zeta-row") {
      cfg.update(y.to_json());
      o = cmd_zeta_row(c, y);
    } else if (name == "vadic-zeta") {
      cfg.update({{"v", vpoly}, {"j", j}});
      o = cmd_vadic_zeta(c, vpoly, j);
    } else if (name == "wan-check") {
      cfg["j"] = j;
      o = cmd_wan_check(c, j);
    } else if (name == "cm") {
      cfg.update({{"example", example}, {"y", y_exact}});
      o = cmd_cm(c, example, y_exact);
    } else if (name == "zero-report") {
      if (zj) cfg["j"] = *zj;
      else cfg.update(y.to_json());
      if (!zj && !y.exact && !y.residue) throw DomainError("zero-report: give --j or a y");
      o = cmd_zero_report(c, zj, y);
    } else if (name == "galois") {
      cfg.update({{"j", j}, {"modprime", modprime}, {"scan_bound", scan_bound}, {"factor_disc", factor_disc}});
      o = cmd_galois(c, j, modprime, scan_bound, factor_disc);
    } else if (name == "carlitz") {
      cfg.update({{"action", action}, {"exp", exp}, {"log", log}, {"n", n}});
      o = cmd_carlitz(c, action, exp, log, n);
    } else if (name == "bc") {
      cfg["i"] = i_bc;
      o = cmd_bc(c, i_bc);
    } else if (name == "vreduce") {
      std::optional<std::int64_t> ip;
      if (inp->count()) ip = in_prec;
      cfg.update({{"n", n}, {"a", apx}, {"v", vpoly}, {"tau", tau}});
      if (ip) cfg["input_prec"] = *ip;
      o = cmd_vreduce(c, n, apx, vpoly, ip, tau);
    } else if (name == "hyper") {
      std::string mode = "derive";
      if (power_check + vbound + (rnd->count() > 0) > 1)
        throw DomainError("hyper: give at most one of --power-check, --vbound, --random");
      if (power_check) mode = "power-check";
      if (vbound) mode = "vbound";
      if (rnd->count()) mode = "power-random";
      if (mode != "power-random" && f.empty()) throw DomainError("hyper: --f is required");
      cfg.update({{"mode", mode}, {"j", j}, {"f", f}, {"c", cpoly}, {"m", m}, {"n", n}, {"count", count}});
      o = cmd_hyper(c, mode, j, f, cpoly, mode == "power-random" ? count : m, n);
    } else if (name == "lift") {
      if (obstruction) {
        if (target.empty()) throw DomainError("lift --check-obstruction: --target is required");
        cfg.update({{"target", target}, {"p", p}, {"s", s}, {"t", t}});
        o = cmd_obstruction(c, target, p, s, t);
      } else {
        if (f.empty()) throw DomainError("lift: --f is required");
        cfg.update({{"f", f}, {"t", t}});
        o = cmd_lift(c, f, t);
      }
    } else if (name == "mvop") {
      cfg.update({{"a", apx}, {"n", n}});
      o = cmd_mvop(c, apx, n);
    } else if (name == "sweep") {
      const SweepSpec spec = read_sweep_spec(spec_path);
      cfg = spec.to_json();
      auto res = run_sweep(spec, out_dir, c.threads);
      o.table = res.table;
      o.result = {{"points", res.table.rows.size()}, {"csv_sha256", res.csv_hash}};
      if (out_dir.empty()) o.result["rows"] = res.table.rows;
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      const Json run_stats = {{"computed", res.computed}, {"skipped", res.skipped}};
      Json doc = {{"schema", kSchema}, {"command", name}, {"config", cfg}, {"result", o.result}, {"version", kVersion}};
      doc["config_hash"] = content_hash(cfg);
      doc["content_hash"] = content_hash(Json{{"command", name}, {"config", cfg}, {"result", o.result}});
      if (!out_dir.empty()) {
        Json man = doc;
        man.erase("result");
        man["run"] = run_stats;
        man["timings"] = {{"total_ms", ms}};
        write_file(std::filesystem::path(out_dir) / "sweep.manifest.json", man.dump(2) + "\n");
      }
      doc["run"] = run_stats;
      if (timings) doc["timings"] = {{"total_ms", ms}};
      out << (csv ? to_csv(o.table) : doc.dump(2) + "\n");
      return kOk;
    }
  } catch (const PrecisionError& e) {
    err << "precision shortfall: " << e.what();
    if (e.required() >= 0) err << " (required " << e.required() << ")";
    err << "\n";
    return kPrecision;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  Json doc = {{"schema", kSchema}, {"command", name}, {"config", cfg}, {"result", o.result}, {"version", kVersion}};
  doc["config_hash"] = content_hash(Json{{"command", name}, {"config", cfg}});
  doc["content_hash"] = content_hash(Json{{"command", name}, {"config", cfg}, {"result", o.result}});
  try {
    if (!out_dir.empty()) {
      namespace fs = std::filesystem;
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / (name + ".json"), doc.dump(2) + "\n");
      write_file(fs::path(out_dir) / (name + ".csv"), to_csv(o.table));
      Json man = doc;
      man.erase("result");
      man["files"] = {name + ".json", name + ".csv"};
      man["timings"] = {{"total_ms", ms}};
      write_file(fs::path(out_dir) / (name + ".manifest.json"), man.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (timings) doc["timings"] = {{"total_ms", ms}};
  out << (csv ? to_csv(o.table) : doc.dump(2) + "\n");
  return kOk;
}

}  // namespace fqz::cli
