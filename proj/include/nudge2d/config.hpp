#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nudge2d/assimilation.hpp"
#include "nudge2d/inequality_lab.hpp"
#include "nudge2d/solver.hpp"

namespace nudge2d {

/// Flat `section.key = value` configuration.  `#` starts a comment; blank
/// lines are ignored.  Keys are validated against the documented set, and
/// every error names the line and key.
class Config {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  /// Raw value; throws ConfigError "missing key" if absent.
  const std::string& raw(std::string_view key) const;

  std::string get_string(std::string_view key) const;
  std::string get_string(std::string_view key, std::string fallback) const;
  double get_double(std::string_view key) const;
  double get_double(std::string_view key, double fallback) const;
  std::int64_t get_int(std::string_view key) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(std::string_view key) const;
  std::vector<int> get_ints(std::string_view key) const;

  /// Entries in key order, for echoing into a manifest.
  const std::map<std::string, Entry, std::less<>>& entries() const noexcept { return entries_; }

  /// Whether `key` is one of the documented configuration keys.
  static bool known_key(std::string_view key);

 private:
  [[noreturn]] void fail(std::string_view key, const std::string& message) const;
  std::map<std::string, Entry, std::less<>> entries_;
};

/// run.seed (default 0).
std::uint64_t master_seed(const Config& config);

/// solver.n, solver.nu, solver.dt are required; forcing.* and the rest
/// default.  The forcing seed derives from the master seed.
SolverConfig solver_config(const Config& config);

struct SpinupSettings {
  double duration = 0.0;
  std::uint64_t diagnostics_every = 100;
  std::uint64_t checkpoint_every = 0;
};
SpinupSettings spinup_settings(const Config& config);

/// The nudging.* subdomain and observation keys.
NudgingParams nudging_params(const Config& config);

struct TwinSettings {
  double horizon = 0.0;
  double sample_interval = 1.0;
  std::vector<SubdomainSpec> regions;
  std::vector<double> snapshot_times;
  std::vector<double> mask_times;
};
TwinSettings twin_settings(const Config& config, const NudgingParams& nudging);

struct VerifySettings {
  std::string mode = "spectral";  ///< spectral | volume | nodal
  SubdomainSpec mask{};
  std::vector<int> K_list{2, 4, 6, 8};
  int samples_per_K = 20;
  RatioEstimator estimator = RatioEstimator::kSampled;
  std::vector<int> p_list{1, 2, 3, 4};
  int ensemble = 20;
  int band = 8;
};
VerifySettings verify_settings(const Config& config);

/// Subdomain from a name (full, omega1..omega4, mobile_quarter,
/// mobile_sixteenth) or a kind plus parameters under `prefix`.
SubdomainSpec subdomain_from(const Config& config, const std::string& prefix);

}  // namespace nudge2d
