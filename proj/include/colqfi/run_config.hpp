// Run configuration for the command-line driver: flat `key = value` files
// with `#` comments, grid construction, and CSV / JSON-lines serialization.

#pragma once

#include "colqfi/schemes.hpp"
#include "colqfi/steady_forms.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace colqfi {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

// Keys understood by the driver; each is also accepted as `--<key>`.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scheme",  "family",   "n",         "n1",        "k1",          "k2",
      "alpha",   "gamma_delta_b", "tau_c", "t_min",    "t_max",       "t_count",
      "t_spacing", "times",  "alpha_min", "alpha_max", "alpha_count", "alpha_grid",
      "steady",  "out",      "format",    "threads"};
  return keys;
}

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}
}  // namespace detail

inline KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    kv[key] = detail::trim(line.substr(eq + 1));
  }
  return kv;
}

inline KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_key_values(in);
}

enum class OutputFormat { Csv, Jsonl };
enum class Spacing { Linear, Log };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  Spacing spacing = Spacing::Linear;
};

inline std::vector<double> make_grid(const GridSpec& g) {
  if (g.count < 1) throw ConfigError("grid needs at least one point");
  if (g.count > 1 && !(g.max >= g.min)) throw ConfigError("grid max must be >= min");
  if (g.spacing == Spacing::Log && !(g.min > 0.0))
    throw ConfigError("log grid needs a positive minimum");
  std::vector<double> out(g.count);
  if (g.count == 1) {
    out[0] = g.min;
    return out;
  }
  for (int i = 0; i < g.count; ++i) {
    const double f = static_cast<double>(i) / (g.count - 1);
    out[i] = g.spacing == Spacing::Linear
                 ? g.min + f * (g.max - g.min)
                 : std::exp(std::log(g.min) + f * (std::log(g.max) - std::log(g.min)));
  }
  out.back() = g.max;
  return out;
}

struct RunConfig {
  SchemeKind scheme = SchemeKind::Standard;
  std::vector<ProbeFamily> families{ProbeFamily::Ghz};
  int n = 8;
  std::optional<int> n1{};
  std::optional<int> k1{};
  std::optional<int> k2{};
  std::optional<double> alpha{0.0};  // empty: optimize per time
  NoiseParams noise{};
  std::vector<double> times{};
  GridSpec alpha_scan{0.0, std::numbers::pi, 41, Spacing::Linear};
  int alpha_grid = 201;
  bool steady = false;
  std::string out{};
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 1;

  // Expanded probe list. Symmetric-only families ignore n1; PRODUCT_PLUS is
  // split only under a DI scheme; n1 defaults to n/2 and k1, k2 to half of
  // their partitions.
  std::vector<ProbeSpec> probes() const {
    std::vector<ProbeSpec> out_probes;
    const bool di = scheme != SchemeKind::Standard;
    for (ProbeFamily f : families) {
      ProbeSpec p;
      p.family = f;
      p.n = n;
      p.alpha = alpha.value_or(0.0);
      const int split = n1.value_or(n / 2);
      switch (f) {
        case ProbeFamily::Ghz:
        case ProbeFamily::DickeSymmetric: p.n1 = 0; break;
        case ProbeFamily::ProductPlus: p.n1 = di ? split : 0; break;
        case ProbeFamily::DfsOptimal: p.n1 = n / 2; break;
        case ProbeFamily::Bsd:
          p.n1 = split;
          p.k1 = k1.value_or(split / 2);
          p.k2 = k2.value_or((n - split) / 2);
          break;
        case ProbeFamily::GhzBipartite: p.n1 = split; break;
      }
      validate_probe(p);
      out_probes.push_back(p);
    }
    return out_probes;
  }
};

namespace detail {
inline int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}
}  // namespace detail

inline RunConfig build_run_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (const auto& k : config_keys()) known = known || k == key;
    if (!known) throw ConfigError("unknown key '" + key + "'");
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };

  RunConfig c;
  if (auto v = get("scheme")) {
    const auto kind = parse_scheme_kind(*v);
    if (!kind) throw ConfigError("unknown scheme '" + *v + "'");
    c.scheme = *kind;
  }
  if (auto v = get("family")) {
    c.families.clear();
    for (const auto& name : detail::split(*v, ',')) {
      const auto f = parse_probe_family(name);
      if (!f) throw ConfigError("unknown probe family '" + name + "'");
      c.families.push_back(*f);
    }
    if (c.families.empty()) throw ConfigError("family list is empty");
  }
  if (auto v = get("n")) c.n = detail::to_int("n", *v);
  if (auto v = get("n1")) c.n1 = detail::to_int("n1", *v);
  if (auto v = get("k1")) c.k1 = detail::to_int("k1", *v);
  if (auto v = get("k2")) c.k2 = detail::to_int("k2", *v);
  if (auto v = get("alpha")) {
    if (*v == "opt") c.alpha.reset();
    else c.alpha = detail::to_double("alpha", *v);
  }

  double gdb = c.noise.gamma_delta_b, tau = c.noise.tau_c;
  if (auto v = get("gamma_delta_b")) gdb = detail::to_double("gamma_delta_b", *v);
  if (auto v = get("tau_c")) tau = detail::to_double("tau_c", *v);
  try {
    c.noise = NoiseParams(gdb, tau);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }

  if (auto v = get("times")) {
    for (const auto& item : detail::split(*v, ',')) c.times.push_back(detail::to_double("times", item));
  } else if (get("t_min") || get("t_max") || get("t_count")) {
    GridSpec g{1e-5 * c.noise.tau_c, 10.0 * c.noise.tau_c, 50, Spacing::Log};
    if (auto v = get("t_min")) g.min = detail::to_double("t_min", *v);
    if (auto v = get("t_max")) g.max = detail::to_double("t_max", *v);
    if (auto v = get("t_count")) g.count = detail::to_int("t_count", *v);
    if (auto v = get("t_spacing")) {
      if (*v == "lin") g.spacing = Spacing::Linear;
      else if (*v == "log") g.spacing = Spacing::Log;
      else throw ConfigError("t_spacing must be lin or log");
    }
    c.times = make_grid(g);
  } else {
    c.times = make_grid({1e-5 * c.noise.tau_c, 10.0 * c.noise.tau_c, 50, Spacing::Log});
  }
  for (double t : c.times)
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("times must be finite and >= 0");

  if (auto v = get("alpha_min")) c.alpha_scan.min = detail::to_double("alpha_min", *v);
  if (auto v = get("alpha_max")) c.alpha_scan.max = detail::to_double("alpha_max", *v);
  if (auto v = get("alpha_count")) c.alpha_scan.count = detail::to_int("alpha_count", *v);
  if (c.alpha_scan.count < 1) throw ConfigError("alpha_count must be >= 1");
  if (auto v = get("alpha_grid")) c.alpha_grid = detail::to_int("alpha_grid", *v);
  if (c.alpha_grid < 2) throw ConfigError("alpha_grid must be >= 2");
  if (auto v = get("steady")) c.steady = detail::to_bool("steady", *v);
  if (auto v = get("out")) c.out = *v;
  if (auto v = get("format")) {
    if (*v == "csv") c.format = OutputFormat::Csv;
    else if (*v == "jsonl") c.format = OutputFormat::Jsonl;
    else throw ConfigError("format must be csv or jsonl");
  }
  if (auto v = get("threads")) {
    const int t = detail::to_int("threads", *v);
    if (t < 0) throw ConfigError("threads must be >= 0");
    c.threads = static_cast<unsigned>(t);
  }
  if (c.n < 1) throw ConfigError("n must be >= 1");
  if (c.times.empty() && !c.steady) throw ConfigError("time grid is empty");
  return c;
}

// %.17g, which round-trips every double.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kUnitsComment =
    "# units: T [s], alpha [rad], gamma_delta_b [rad/s], tau_c [s], F_phase [1], F_freq [s^2]";

inline void write_scan_rows(std::ostream& os, const std::vector<ScanResult>& rows,
                            OutputFormat format) {
  if (format == OutputFormat::Csv) {
    os << kUnitsComment << '\n';
    os << "scheme,family,n,n1,k1,k2,alpha,T,F_phase,F_freq,alpha_opt_flag\n";
    for (const auto& r : rows) {
      os << to_string(r.scheme) << ',' << to_string(r.probe.family) << ',' << r.probe.n << ','
         << r.probe.n1 << ',' << r.probe.k1 << ',' << r.probe.k2 << ','
         << format_real(r.probe.alpha) << ',' << format_real(r.t) << ','
         << format_real(r.f_phase) << ',' << format_real(r.f_freq) << ','
         << (r.alpha_optimized ? 1 : 0) << '\n';
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].ok()) os << "# error row " << i << ": " << rows[i].error << '\n';
    return;
  }
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["scheme"] = to_string(r.scheme);
    j["family"] = to_string(r.probe.family);
    j["n"] = r.probe.n;
    j["n1"] = r.probe.n1;
    j["k1"] = r.probe.k1;
    j["k2"] = r.probe.k2;
    j["alpha"] = r.probe.alpha;
    j["T"] = r.t;  // infinity (steady state) serializes as null
    j["F_phase"] = r.f_phase;
    j["F_freq"] = r.f_freq;
    j["alpha_opt_flag"] = r.alpha_optimized ? 1 : 0;
    if (!r.ok()) j["error"] = r.error;
    os << j.dump() << '\n';
  }
}

inline void write_split_table(std::ostream& os, int n, const std::vector<SplitOptimum>& table,
                              OutputFormat format) {
  if (format == OutputFormat::Csv) {
    os << "# steady-state DI QFI of BSD probes maximized over (n1, k1) per total excitations k\n";
    os << "n,k,max_qfi,n1,k1\n";
    for (const auto& row : table)
      for (const auto& [n1, k1] : row.argmax)
        os << n << ',' << row.k << ',' << format_real(row.max_qfi) << ',' << n1 << ',' << k1
           << '\n';
    return;
  }
  for (const auto& row : table) {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["k"] = row.k;
    j["max_qfi"] = row.max_qfi;
    auto& args = j["argmax"] = nlohmann::json::array();
    for (const auto& [n1, k1] : row.argmax) args.push_back({{"n1", n1}, {"k1", k1}});
    os << j.dump() << '\n';
  }
}

}  // namespace colqfi
