#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sievelab/pair_law.hpp"
#include "sievelab/wlaw.hpp"

namespace sievelab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitTestFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitUnsupportedRegime = 3;

/// Flat key-value experiment description. Keys are validated against the
/// subcommand (and law family) allowlist; unknown keys are hard errors so a
/// typo cannot silently change a long run.
struct experiment_config {
  std::string subcommand;  // simulate | limit-check | shotnoise | moments
  std::map<std::string, std::string> kv;
};

/// Parses `key = value` lines; '#' starts a comment. Does not validate keys
/// (that happens per subcommand at run time).
experiment_config parse_config_text(const std::string& text,
                                    const std::string& subcommand);

/// Canonical serialization: subcommand, then sorted key=value lines.
std::string canonical_config(const experiment_config& cfg);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const experiment_config& cfg);

w_law law_from_config(const experiment_config& cfg);
pair_law pair_from_config(const experiment_config& cfg);

struct run_result {
  int exit_code = kExitPass;
  std::string csv;          // per-trial table (simulate, moments)
  std::string report_json;  // machine-readable report
  std::string plot_csv;     // (series,x,y) rows when plot data is requested
  std::string message;      // human-readable status / error text
};

run_result cmd_simulate(const experiment_config& cfg);
run_result cmd_limit_check(const experiment_config& cfg);
run_result cmd_shotnoise(const experiment_config& cfg);
run_result cmd_moments(const experiment_config& cfg);

/// Dispatch on cfg.subcommand; config errors come back as exit code 2
/// rather than exceptions.
run_result run_experiment(const experiment_config& cfg);

}  // namespace sievelab
