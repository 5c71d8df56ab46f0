#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace hartogs::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAuditFailure = 1;
inline constexpr int kExitConfigError = 2;

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> output;
  std::optional<std::uint64_t> seed;
  std::optional<int> density;
  std::optional<std::string> curve;
  std::optional<int> random;
  int max_degree = 3;
  std::optional<std::string> function;
  std::vector<std::string> tolerance_overrides;
};

/// Load the config named by the options and apply --seed and --tolerance.
RunConfig resolve_config(const CommandOptions& opt);

/// Names of the audits run by `verify`, in report order.
const std::vector<std::string>& audit_manifest();

json run_verify(const RunConfig& cfg);
std::string construct_csv(const RunConfig& cfg, int density);
json run_intersect(const RunConfig& cfg, const CommandOptions& opt);
json run_continue(const RunConfig& cfg, const std::string& function_spec);

/// Subcommands: write their artifact and return the process exit code.
/// Errors are reported on `err`.
int cmd_construct(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_intersect(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_continue(const CommandOptions& opt, std::ostream& out, std::ostream& err);

/// Copy of a report with every "runtime_ms" field removed.
json strip_runtime(json report);

} // namespace hartogs::app
