#include "rotwave/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rotwave/errors.hpp"

namespace rotwave {

namespace {

struct BadValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& v) {
  std::size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw BadValue("expected a number, got '" + v + "'");
  }
  if (pos != v.size()) throw BadValue("expected a number, got '" + v + "'");
  if (!std::isfinite(d)) throw BadValue("value must be finite");
  return d;
}

long to_long(const std::string& v) {
  std::size_t pos = 0;
  long d;
  try {
    d = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw BadValue("expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw BadValue("expected an integer, got '" + v + "'");
  return d;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw BadValue("expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  if (out.empty()) throw BadValue("expected a comma-separated list of numbers");
  return out;
}

std::string list_str(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s;
}

void range(double v, double lo, double hi, bool lo_open, const char* what) {
  const bool ok = (lo_open ? v > lo : v >= lo) && v <= hi;
  if (!ok) {
    std::ostringstream os;
    os << "out of range: " << num(v) << " (expected " << what << ")";
    throw BadValue(os.str());
  }
}

struct Key {
  std::function<void(ExperimentConfig&, const std::string&)> parse;
  std::function<std::string(const ExperimentConfig&)> emit;
};

using Table = std::map<std::string, std::map<std::string, Key>>;

Key real(double ExperimentConfig::*m, double lo, double hi, bool lo_open, const char* what) {
  return {[=](ExperimentConfig& c, const std::string& v) {
            const double d = to_double(v);
            range(d, lo, hi, lo_open, what);
            c.*m = d;
          },
          [=](const ExperimentConfig& c) { return num(c.*m); }};
}

Key param(double PhysicalParams::*m, double lo, double hi, bool lo_open, const char* what) {
  return {[=](ExperimentConfig& c, const std::string& v) {
            const double d = to_double(v);
            range(d, lo, hi, lo_open, what);
            c.params.*m = d;
          },
          [=](const ExperimentConfig& c) { return num(c.params.*m); }};
}

Key real_list(std::vector<double> ExperimentConfig::*m, double lo, bool lo_open, const char* what) {
  return {[=](ExperimentConfig& c, const std::string& v) {
            auto l = to_list(v);
            for (double d : l) range(d, lo, INFINITY, lo_open, what);
            c.*m = l;
          },
          [=](const ExperimentConfig& c) { return list_str(c.*m); }};
}

const Table& table() {
  constexpr double inf = INFINITY;
  static const Table t = [] {
    Table t;
    auto& ph = t["physics"];
    ph["epsilon"] = param(&PhysicalParams::epsilon, 0.0, inf, false, ">= 0");
    ph["mu"] = param(&PhysicalParams::mu, 0.0, inf, true, "> 0");
    ph["omega"] = param(&PhysicalParams::omega, 0.0, inf, false, ">= 0");
    ph["p"] = param(&PhysicalParams::p, -inf, inf, false, "finite");
    ph["lambda"] = param(&PhysicalParams::lambda, -1.0 / 6.0, 1.0 / 3.0, false, "in [-1/6, 1/3]");
    ph["theta"] = {[](ExperimentConfig& c, const std::string& v) {
                     const double d = to_double(v);
                     range(d, 0.0, 1.0, false, "in [0, 1]");
                     c.params.lambda = lambda_from_theta(d);
                   },
                   nullptr};
    ph["regime_M"] = param(&PhysicalParams::regime_M, 0.0, inf, true, "> 0");
    ph["regime_mu0"] = param(&PhysicalParams::regime_mu0, 0.0, inf, true, "> 0");
    ph["enforce_regime"] = {
        [](ExperimentConfig& c, const std::string& v) { c.params.enforce_regime = to_bool(v); },
        [](const ExperimentConfig& c) { return std::string(c.params.enforce_regime ? "true" : "false"); }};
    ph["family"] = {[](ExperimentConfig& c, const std::string& v) {
                      if (v == "velocity" || v == "gbbm") c.family = Family::velocity;
                      else if (v == "rch") c.family = Family::rch;
                      else if (v == "surface") c.family = Family::surface;
                      else if (v == "surface-rch") c.family = Family::surface_rch;
                      else throw BadValue("expected velocity|rch|surface|surface-rch, got '" + v + "'");
                    },
                    [](const ExperimentConfig& c) { return std::string(to_string(c.family)); }};
    ph["surface_form"] = {[](ExperimentConfig& c, const std::string& v) {
                            if (v == "printed") c.surface_form = SurfaceForm::printed;
                            else if (v == "consistent") c.surface_form = SurfaceForm::consistent;
                            else throw BadValue("expected printed|consistent, got '" + v + "'");
                          },
                          [](const ExperimentConfig& c) { return std::string(to_string(c.surface_form)); }};
    ph["theta_convention"] = {
        [](ExperimentConfig& c, const std::string& v) {
          try {
            c.theta_convention = theta_convention_from_string(v);
          } catch (const DomainError& e) {
            throw BadValue(e.what());
          }
        },
        [](const ExperimentConfig& c) { return std::string(to_string(c.theta_convention)); }};

    auto& gr = t["grid"];
    gr["n"] = {[](ExperimentConfig& c, const std::string& v) {
                 const long n = to_long(v);
                 if (n < 32 || (n & (n - 1)) != 0)
                   throw BadValue("out of range: " + v + " (expected a power of two >= 32)");
                 c.grid.n = static_cast<std::size_t>(n);
               },
               [](const ExperimentConfig& c) { return std::to_string(c.grid.n); }};
    gr["length"] = {[](ExperimentConfig& c, const std::string& v) {
                      const double d = to_double(v);
                      range(d, 0.0, inf, true, "> 0");
                      c.grid.length = d;
                    },
                    [](const ExperimentConfig& c) { return num(c.grid.length); }};
    gr["backend"] = {[](ExperimentConfig& c, const std::string& v) {
                       try {
                         c.grid.backend = backend_from_string(v);
                       } catch (const DomainError& e) {
                         throw BadValue(e.what());
                       }
                     },
                     [](const ExperimentConfig& c) { return std::string(to_string(c.grid.backend)); }};
    gr["dealias"] = {[](ExperimentConfig& c, const std::string& v) { c.grid.dealias = to_bool(v); },
                     [](const ExperimentConfig& c) { return std::string(c.grid.dealias ? "true" : "false"); }};

    auto& in = t["initial"];
    in["profile"] = {[](ExperimentConfig& c, const std::string& v) {
                       if (v != "sech2" && v != "gaussian" && v != "file")
                         throw BadValue("expected sech2|gaussian|file, got '" + v + "'");
                       c.initial.profile = v;
                     },
                     [](const ExperimentConfig& c) { return c.initial.profile; }};
    in["amplitude"] = {[](ExperimentConfig& c, const std::string& v) { c.initial.amplitude = to_double(v); },
                       [](const ExperimentConfig& c) { return num(c.initial.amplitude); }};
    in["width"] = {[](ExperimentConfig& c, const std::string& v) {
                     const double d = to_double(v);
                     range(d, 0.0, inf, true, "> 0");
                     c.initial.width = d;
                   },
                   [](const ExperimentConfig& c) { return num(c.initial.width); }};
    in["center"] = {[](ExperimentConfig& c, const std::string& v) { c.initial.center = to_double(v); },
                    [](const ExperimentConfig& c) { return num(c.initial.center); }};
    in["file"] = {[](ExperimentConfig& c, const std::string& v) { c.initial.file = v; },
                  [](const ExperimentConfig& c) { return c.initial.file; }};
    in["rgn_start"] = {[](ExperimentConfig& c, const std::string& v) {
                         if (v == "matched") c.initial.rgn_start = RgnStart::matched;
                         else if (v == "eta-only") c.initial.rgn_start = RgnStart::eta_only;
                         else throw BadValue("expected matched|eta-only, got '" + v + "'");
                       },
                       [](const ExperimentConfig& c) {
                         return std::string(c.initial.rgn_start == RgnStart::matched ? "matched" : "eta-only");
                       }};

    auto& tm = t["time"];
    tm["t_end"] = real(&ExperimentConfig::t_end, 0.0, inf, false, ">= 0");
    tm["dt"] = real(&ExperimentConfig::dt, 0.0, inf, true, "> 0");
    tm["dt_out"] = real(&ExperimentConfig::dt_out, 0.0, inf, false, ">= 0");

    auto& so = t["solver"];
    so["b0"] = real(&ExperimentConfig::b0, 0.0, 1.0, true, "in (0, 1]");
    so["elliptic_tol"] = real(&ExperimentConfig::elliptic_tol, 0.0, 1.0, true, "in (0, 1]");
    so["elliptic_maxit"] = {[](ExperimentConfig& c, const std::string& v) {
                              const long n = to_long(v);
                              if (n < 1 || n > 1000000) throw BadValue("out of range: " + v + " (expected >= 1)");
                              c.elliptic_maxit = static_cast<int>(n);
                            },
                            [](const ExperimentConfig& c) { return std::to_string(c.elliptic_maxit); }};
    so["cfl"] = real(&ExperimentConfig::cfl, 0.0, 10.0, true, "in (0, 10]");

    auto& ex = t["experiment"];
    ex["mu_list"] = real_list(&ExperimentConfig::mu_list, 0.0, true, "> 0");
    ex["omega_list"] = real_list(&ExperimentConfig::omega_list, 0.0, false, ">= 0");
    ex["sobolev_s"] = real(&ExperimentConfig::sobolev_s, 0.0, inf, false, ">= 0");
    ex["probe_times"] = real_list(&ExperimentConfig::probe_times, 0.0, true, "> 0");
    ex["t_fixed"] = real(&ExperimentConfig::t_fixed, 0.0, inf, true, "> 0");

    auto& out = t["output"];
    out["dir"] = {[](ExperimentConfig& c, const std::string& v) {
                    if (v.empty()) throw BadValue("output dir must not be empty");
                    c.out_dir = v;
                  },
                  [](const ExperimentConfig& c) { return c.out_dir; }};
    return t;
  }();
  return t;
}

// emission order
const std::vector<std::pair<std::string, std::vector<std::string>>>& layout() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> l = {
      {"physics",
       {"epsilon", "mu", "omega", "p", "lambda", "regime_M", "regime_mu0", "enforce_regime",
        "family", "surface_form", "theta_convention"}},
      {"grid", {"n", "length", "backend", "dealias"}},
      {"initial", {"profile", "amplitude", "width", "center", "file", "rgn_start"}},
      {"time", {"t_end", "dt", "dt_out"}},
      {"solver", {"b0", "elliptic_tol", "elliptic_maxit", "cfl"}},
      {"experiment", {"mu_list", "omega_list", "sobolev_s", "probe_times", "t_fixed"}},
      {"output", {"dir"}},
  };
  return l;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::vector<std::string> errors;
  int first_line = 0;
  auto error = [&](int line, const std::string& msg) {
    if (!first_line) first_line = line;
    errors.push_back("line " + std::to_string(line) + ": " + msg);
  };

  const Table& tab = table();
  std::istringstream in(text);
  std::string raw, section;
  std::set<std::string> seen;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find_first_of("#;");
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        error(line, "malformed section header '" + s + "'");
        continue;
      }
      section = trim(s.substr(1, s.size() - 2));
      if (!tab.count(section)) error(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      error(line, "expected 'key = value', got '" + s + "'");
      continue;
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) {
      error(line, "key '" + key + "' appears before any [section]");
      continue;
    }
    const auto sec = tab.find(section);
    if (sec == tab.end()) continue;  // already reported
    const auto k = sec->second.find(key);
    if (k == sec->second.end()) {
      error(line, "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    if (!seen.insert(section + "." + key).second) {
      error(line, "duplicate key '" + key + "' in [" + section + "]");
      continue;
    }
    try {
      k->second.parse(cfg, value);
    } catch (const BadValue& e) {
      error(line, "'" + key + "': " + e.what());
    }
  }

  if (errors.empty()) {
    // cross-field checks
    if (cfg.initial.profile == "file" && cfg.initial.file.empty())
      errors.push_back("[initial] profile = file needs a 'file' key");
    if (cfg.dt_out > 0.0 && cfg.dt > cfg.dt_out)
      errors.push_back("[time] dt must not exceed dt_out");
  }
  if (!errors.empty()) {
    std::string msg;
    for (std::size_t i = 0; i < errors.size(); ++i) msg += (i ? "\n" : "") + errors[i];
    throw ConfigError(msg, first_line);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  const Table& tab = table();
  std::ostringstream os;
  bool first = true;
  for (const auto& [section, keys] : layout()) {
    if (!first) os << "\n";
    first = false;
    os << "[" << section << "]\n";
    for (const auto& k : keys) {
      const std::string v = tab.at(section).at(k).emit(c);
      if (k == "file" && v.empty()) continue;
      os << k << " = " << v << "\n";
    }
  }
  return os.str();
}

}  // namespace rotwave
