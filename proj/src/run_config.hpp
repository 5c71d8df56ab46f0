#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hartogs/hartogs_figure.hpp"

namespace hartogs::app {

using json = nlohmann::ordered_json;

/// Everything a subcommand needs: the disc family, the D-bar cutoff, the
/// tolerance record, the seed and named sample densities.
struct RunConfig {
  DiscFamilyConfigd family;
  double t_clamp_delta = 1e-6;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::map<std::string, int> densities = default_densities();

  static std::map<std::string, int> default_densities();

  HartogsFigure<double> figure() const { return {family, tol}; }
  SmoothedDisc<double> smoothed_disc() const { return {family, t_clamp_delta, tol}; }
  int density(const std::string& name) const { return densities.at(name); }
};

json complex_to_json(std::complex<double> z);
json vector_to_json(const C3Vectord& z);

json to_json(const RunConfig& cfg);
json tolerances_to_json(const Tolerances& tol);

/// Parse and validate the structural invariants. Throws Error(ConfigInvalid)
/// with the JSON path of the offending field.
RunConfig from_json(const json& j);

/// Read a config file. Throws Error(ConfigInvalid) for syntax errors (with
/// line and column) and for invalid fields; Error(InvalidArgument) for IO.
RunConfig load_run_config(const std::filesystem::path& path);

/// Apply "name=value" to the tolerance record.
void apply_tolerance_override(Tolerances& tol, std::string_view assignment);

std::vector<std::string> tolerance_names();

/// Write `content` to a temporary sibling of `path` and rename it into place.
void write_atomically(const std::filesystem::path& path, std::string_view content);

} // namespace hartogs::app
