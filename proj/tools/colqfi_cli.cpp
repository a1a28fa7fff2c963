// colqfi: QFI scans for collective-noise metrology.
//
//   colqfi scan-time     [--config FILE] [--key value ...]
//   colqfi scan-rotation [--config FILE] [--key value ...]
//   colqfi steady-map    [--config FILE] [--n N]
//   colqfi verify
//
// Exit codes: 0 success, 1 configuration error, 2 verification failure.

#include "colqfi/run_config.hpp"
#include "colqfi/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using colqfi::ConfigError;
using colqfi::KeyValues;
using colqfi::RunConfig;

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> flags;
};

void add_config_flags(CLI::App* sub, Invocation& inv) {
  sub->add_option("--config", inv.config_path, "key = value configuration file");
  for (const auto& key : colqfi::config_keys())
    sub->add_option("--" + key, inv.flags[key], "overrides config key '" + key + "'");
}

RunConfig resolve(const Invocation& inv) {
  KeyValues kv;
  if (!inv.config_path.empty()) kv = colqfi::load_key_values(inv.config_path);
  for (const auto& [key, value] : inv.flags)
    if (!value.empty()) kv[key] = value;
  return colqfi::build_run_config(kv);
}

// Writes through a sibling temporary so a failed run leaves no partial file.
template <typename Emit>
void emit_output(const RunConfig& cfg, Emit&& emit) {
  if (cfg.out.empty()) {
    emit(std::cout);
    return;
  }
  const std::string tmp = cfg.out + ".partial";
  try {
    {
      std::ofstream os(tmp);
      if (!os) throw ConfigError("cannot write " + cfg.out);
      emit(os);
      if (!os) throw ConfigError("write to " + cfg.out + " failed");
    }
    std::filesystem::rename(tmp, cfg.out);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

int report_failed_cells(const std::vector<colqfi::ScanResult>& rows) {
  int failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].ok()) continue;
    ++failed;
    std::cerr << "colqfi: row " << i << " failed: " << rows[i].error << '\n';
  }
  return failed;
}

int run_scan_time(const RunConfig& cfg) {
  const colqfi::SchemeSpec scheme{cfg.scheme, cfg.noise, cfg.times};
  colqfi::ScanOptions opt;
  opt.optimize_alpha = !cfg.alpha.has_value();
  opt.alpha_grid = cfg.alpha_grid;
  opt.steady = cfg.steady;
  opt.threads = cfg.threads;
  const auto rows = colqfi::scan(scheme, cfg.probes(), opt);
  emit_output(cfg, [&](std::ostream& os) { colqfi::write_scan_rows(os, rows, cfg.format); });
  report_failed_cells(rows);
  return 0;
}

int run_scan_rotation(const RunConfig& cfg) {
  const colqfi::SchemeSpec scheme{cfg.scheme, cfg.noise, cfg.times};
  const std::vector<double> alphas = colqfi::make_grid(cfg.alpha_scan);
  std::vector<colqfi::ProbeSpec> probes;
  for (const auto& base : cfg.probes()) {
    for (double a : alphas) {
      auto p = base;
      p.alpha = a;
      probes.push_back(p);
    }
  }
  colqfi::ScanOptions opt;
  opt.steady = cfg.steady;
  opt.threads = cfg.threads;
  const auto rows = colqfi::scan(scheme, probes, opt);
  emit_output(cfg, [&](std::ostream& os) { colqfi::write_scan_rows(os, rows, cfg.format); });
  report_failed_cells(rows);
  return 0;
}

int run_steady_map(const RunConfig& cfg) {
  if (cfg.n < 2) throw ConfigError("steady-map needs n >= 2");
  const auto table = colqfi::optimize_bsd_split(cfg.n, cfg.threads == 1 ? 1 : 2);
  emit_output(cfg, [&](std::ostream& os) { colqfi::write_split_table(os, cfg.n, table, cfg.format); });
  return 0;
}

int run_verify() {
  bool all = true;
  for (const auto& c : colqfi::run_verification()) {
    std::printf("%s  %-48s max_dev=%.3e tol=%.1e\n", c.pass() ? "PASS" : "FAIL", c.name.c_str(),
                c.max_deviation, c.tolerance);
    all = all && c.pass();
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Fisher information under collective phase noise"};
  app.require_subcommand(1);

  Invocation time_inv, rot_inv, map_inv;
  auto* scan_time = app.add_subcommand("scan-time", "QFI versus measurement time");
  add_config_flags(scan_time, time_inv);
  auto* scan_rot = app.add_subcommand("scan-rotation", "QFI versus rotation angle at fixed times");
  add_config_flags(scan_rot, rot_inv);
  auto* steady_map = app.add_subcommand("steady-map", "BSD split optimization per excitation number");
  add_config_flags(steady_map, map_inv);
  auto* verify = app.add_subcommand("verify", "cross-check numeric pipeline against closed forms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (*scan_time) return run_scan_time(resolve(time_inv));
    if (*scan_rot) return run_scan_rotation(resolve(rot_inv));
    if (*steady_map) return run_steady_map(resolve(map_inv));
    if (*verify) return run_verify();
  } catch (const std::exception& e) {
    std::cerr << "colqfi: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
