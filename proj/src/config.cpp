#include "nudge2d/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "nudge2d/errors.hpp"
#include "nudge2d/seeding.hpp"

namespace nudge2d {
namespace {

constexpr std::string_view kKnownKeys[] = {
    "solver.n",           "solver.nu",           "solver.dt",
    "solver.startup",     "solver.gevrey_sigma", "forcing.grashof",
    "forcing.band_lo",    "forcing.band_hi",     "run.seed",
    "run.spinup_time",    "run.diagnostics_every", "run.checkpoint_every",
    "run.horizon",        "run.sample_interval", "nudging.mu",
    "nudging.subdomain",  "nudging.side_fraction", "nudging.radius",
    "nudging.center_x",   "nudging.center_y",    "nudging.period",
    "nudging.stride_p",   "nudging.interpolant", "nudging.spectral_cutoff",
    "errors.regions",     "output.snapshot_times", "output.mask_times",
    "verify.mode",        "verify.subdomain",    "verify.side_fraction",
    "verify.radius",      "verify.center_x",     "verify.center_y",
    "verify.period",      "verify.K_list",       "verify.samples_per_K",
    "verify.estimator",   "verify.p_list",       "verify.ensemble",
    "verify.band",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace

bool Config::known_key(std::string_view key) {
  return std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) != std::end(kKnownKeys);
}

Config Config::parse(std::string_view text) {
  Config config;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'section.key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.find('.') == std::string::npos) {
      throw ConfigError(where + ": key '" + key + "' is not of the form section.key");
    }
    if (!known_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": key '" + key + "' has an empty value");
    if (config.entries_.count(key) != 0) {
      throw ConfigError(where + ": key '" + key + "' repeats line " +
                        std::to_string(config.entries_.find(key)->second.line));
    }
    config.entries_.emplace(key, Entry{value, line_no});
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool Config::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

void Config::fail(std::string_view key, const std::string& message) const {
  const auto it = entries_.find(key);
  const std::string where = it != entries_.end() ? "line " + std::to_string(it->second.line) + ": " : "";
  throw ConfigError(where + "key '" + std::string(key) + "': " + message);
}

const std::string& Config::raw(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key '" + std::string(key) + "'");
  return it->second.value;
}

std::string Config::get_string(std::string_view key) const { return raw(key); }

std::string Config::get_string(std::string_view key, std::string fallback) const {
  return has(key) ? raw(key) : std::move(fallback);
}

double Config::get_double(std::string_view key) const {
  const std::string& value = raw(key);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    fail(key, "expected a finite number, got '" + value + "'");
  }
  return v;
}

double Config::get_double(std::string_view key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t Config::get_int(std::string_view key) const {
  const std::string& value = raw(key);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    fail(key, "expected an integer, got '" + value + "'");
  }
  return v;
}

std::int64_t Config::get_int(std::string_view key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_uint(std::string_view key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string& value = raw(key);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (value.front() == '-' || end == value.c_str() || *end != '\0' || errno == ERANGE) {
    fail(key, "expected a non-negative integer, got '" + value + "'");
  }
  return v;
}

std::vector<double> Config::get_doubles(std::string_view key) const {
  std::vector<double> out;
  if (!has(key)) return out;
  for (const auto& item : split_list(raw(key))) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0' || !std::isfinite(v)) {
      fail(key, "expected a comma-separated list of numbers, got '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<int> Config::get_ints(std::string_view key) const {
  std::vector<int> out;
  if (!has(key)) return out;
  for (const auto& item : split_list(raw(key))) {
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0') {
      fail(key, "expected a comma-separated list of integers, got '" + item + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::uint64_t master_seed(const Config& config) { return config.get_uint("run.seed", 0); }

SolverConfig solver_config(const Config& config) {
  SolverConfig out;
  const auto n = config.get_int("solver.n");
  try {
    out.grid = Grid(static_cast<int>(n));
  } catch (const ContractError& e) {
    throw ConfigError("key 'solver.n': " + std::string(e.what()));
  }
  out.nu = config.get_double("solver.nu");
  out.dt = config.get_double("solver.dt");
  out.gevrey_sigma = config.get_double("solver.gevrey_sigma", 0.0);
  const std::string startup = config.get_string("solver.startup", "euler_ab2");
  if (startup == "euler_ab2") {
    out.startup = Startup::kEulerAb2;
  } else if (startup == "rk4") {
    out.startup = Startup::kRungeKutta4;
  } else {
    throw ConfigError("key 'solver.startup': expected euler_ab2 or rk4, got '" + startup + "'");
  }
  out.forcing.grashof = config.get_double("forcing.grashof", out.forcing.grashof);
  out.forcing.band_lo = static_cast<int>(config.get_int("forcing.band_lo", out.forcing.band_lo));
  out.forcing.band_hi = static_cast<int>(config.get_int("forcing.band_hi", out.forcing.band_hi));
  out.forcing.nu = out.nu;
  out.forcing.seed = derive_seed(master_seed(config), "forcing");
  try {
    out.validate();
  } catch (const ContractError& e) {
    throw ConfigError(std::string("solver section: ") + e.what());
  }
  return out;
}

SpinupSettings spinup_settings(const Config& config) {
  SpinupSettings s;
  s.duration = config.get_double("run.spinup_time", 0.0);
  if (s.duration < 0.0) throw ConfigError("key 'run.spinup_time': must be >= 0");
  s.diagnostics_every = config.get_uint("run.diagnostics_every", s.diagnostics_every);
  s.checkpoint_every = config.get_uint("run.checkpoint_every", s.checkpoint_every);
  return s;
}

SubdomainSpec subdomain_from(const Config& config, const std::string& prefix) {
  const std::string name = config.get_string(prefix + "subdomain", "full");
  SubdomainSpec spec;
  try {
    if (name.rfind("omega", 0) == 0) {
      spec = named_subdomain(name);
    } else {
      spec.kind = parse_subdomain_kind(name);
    }
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + prefix + "subdomain': " + e.what());
  }
  spec.side_fraction = config.get_double(prefix + "side_fraction", spec.side_fraction);
  spec.radius = config.get_double(prefix + "radius", spec.radius);
  spec.center_x = config.get_double(prefix + "center_x", spec.center_x);
  spec.center_y = config.get_double(prefix + "center_y", spec.center_y);
  spec.period = config.get_double(prefix + "period", spec.period);
  try {
    spec.validate();
  } catch (const ContractError& e) {
    throw ConfigError("subdomain '" + prefix + "': " + e.what());
  }
  return spec;
}

NudgingParams nudging_params(const Config& config) {
  NudgingParams p;
  p.mu = config.get_double("nudging.mu", p.mu);
  if (p.mu < 0.0) throw ConfigError("key 'nudging.mu': must be >= 0");
  p.observation.subdomain = subdomain_from(config, "nudging.");
  p.observation.stride_p = static_cast<int>(config.get_int("nudging.stride_p", 0));
  try {
    p.observation.interpolant =
        parse_interpolant_kind(config.get_string("nudging.interpolant", "nodal_smooth"));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("key 'nudging.interpolant': ") + e.what());
  }
  if (config.has("nudging.spectral_cutoff")) {
    p.observation.spectral_cutoff = static_cast<int>(config.get_int("nudging.spectral_cutoff"));
  }
  return p;
}

TwinSettings twin_settings(const Config& config, const NudgingParams& nudging) {
  TwinSettings s;
  s.horizon = config.get_double("run.horizon");
  if (s.horizon < 0.0) throw ConfigError("key 'run.horizon': must be >= 0");
  s.sample_interval = config.get_double("run.sample_interval", s.sample_interval);
  if (!(s.sample_interval > 0.0)) throw ConfigError("key 'run.sample_interval': must be > 0");
  if (config.has("errors.regions")) {
    for (const auto& name : split_list(config.raw("errors.regions"))) {
      if (name == "observed") {
        s.regions.push_back(nudging.observation.subdomain);
        continue;
      }
      try {
        s.regions.push_back(named_subdomain(name));
      } catch (const ConfigError& e) {
        throw ConfigError("key 'errors.regions': " + std::string(e.what()));
      }
    }
  }
  s.snapshot_times = config.get_doubles("output.snapshot_times");
  s.mask_times = config.get_doubles("output.mask_times");
  return s;
}

VerifySettings verify_settings(const Config& config) {
  VerifySettings s;
  s.mode = config.get_string("verify.mode", s.mode);
  if (s.mode != "spectral" && s.mode != "volume" && s.mode != "nodal") {
    throw ConfigError("key 'verify.mode': expected spectral, volume or nodal, got '" + s.mode + "'");
  }
  s.mask = subdomain_from(config, "verify.");
  if (config.has("verify.K_list")) s.K_list = config.get_ints("verify.K_list");
  s.samples_per_K = static_cast<int>(config.get_int("verify.samples_per_K", s.samples_per_K));
  try {
    s.estimator = parse_ratio_estimator(config.get_string("verify.estimator", "sampled"));
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("key 'verify.estimator': ") + e.what());
  }
  if (config.has("verify.p_list")) s.p_list = config.get_ints("verify.p_list");
  s.ensemble = static_cast<int>(config.get_int("verify.ensemble", s.ensemble));
  s.band = static_cast<int>(config.get_int("verify.band", s.band));
  return s;
}

}  // namespace nudge2d
