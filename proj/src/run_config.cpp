#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <unistd.h>

namespace hartogs::app {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

struct ToleranceField {
  const char* name;
  double Tolerances::*member;
};

constexpr ToleranceField kToleranceFields[] = {
    {"zero_vector", &Tolerances::zero_vector},
    {"canonical_eq", &Tolerances::canonical_eq},
    {"degeneracy", &Tolerances::degeneracy},
    {"line_residual", &Tolerances::line_residual},
    {"on_line", &Tolerances::on_line},
    {"bezout", &Tolerances::bezout},
    {"transversality", &Tolerances::transversality},
    {"newton", &Tolerances::newton},
    {"chart_singular", &Tolerances::chart_singular},
    {"variety_residual", &Tolerances::variety_residual},
    {"origin_anchor", &Tolerances::origin_anchor},
    {"holomorphy", &Tolerances::holomorphy},
    {"holomorphy_control", &Tolerances::holomorphy_control},
    {"crossing_margin", &Tolerances::crossing_margin},
    {"injectivity_margin", &Tolerances::injectivity_margin},
    {"collision", &Tolerances::collision},
    {"exclusion", &Tolerances::exclusion},
    {"taylor_zero", &Tolerances::taylor_zero},
    {"blowup_point", &Tolerances::blowup_point},
    {"blowup_continuity", &Tolerances::blowup_continuity},
    {"schedule_flatness", &Tolerances::schedule_flatness},
    {"flatness_offset", &Tolerances::flatness_offset},
    {"boundary_pole", &Tolerances::boundary_pole},
    {"blowup_ratio", &Tolerances::blowup_ratio},
    {"continuation", &Tolerances::continuation},
    {"localization", &Tolerances::localization},
    {"curve_min", &Tolerances::curve_min},
};

void set_tolerance(Tolerances& tol, const std::string& name, double value) {
  if (!std::isfinite(value) || value <= 0) invalid(fmt::format("tolerances.{}: must be a positive finite number", name));
  if (name == "newton_max_iter") {
    if (value != std::floor(value) || value > 10000) invalid("tolerances.newton_max_iter: must be an integer in [1, 10000]");
    tol.newton_max_iter = static_cast<int>(value);
    return;
  }
  for (const auto& f : kToleranceFields) {
    if (name == f.name) {
      tol.*f.member = value;
      return;
    }
  }
  invalid(fmt::format("unknown tolerance '{}'", name));
}

std::complex<double> complex_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid(fmt::format("{}: expected a complex number [re, im]", path));
  }
  const std::complex<double> z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) invalid(fmt::format("{}: non-finite value", path));
  return z;
}

C3Vectord vector_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) invalid(fmt::format("{}: expected three complex numbers", path));
  C3Vectord z;
  for (int i = 0; i < 3; ++i) z[i] = complex_from(j[i], fmt::format("{}[{}]", path, i));
  return z;
}

double real_from(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(fmt::format("{}: expected a number", path));
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(fmt::format("{}: non-finite value", path));
  return v;
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) invalid(fmt::format("{}: unknown field '{}'", path, key));
  }
}

constexpr std::array<std::pair<const char*, std::array<int, 2>>, 6> kQuadEntries{{
    {"S11", {0, 0}}, {"S12", {0, 1}}, {"S13", {0, 2}}, {"S22", {1, 1}}, {"S23", {1, 2}}, {"S33", {2, 2}}}};

} // namespace

std::map<std::string, int> RunConfig::default_densities() {
  return {{"bezout", 1000},          {"construct", 100},       {"disc_injectivity", 200},
          {"figure_injectivity", 5000}, {"grid_oracle", 512},  {"holomorphy_circles", 200},
          {"multistart", 64},        {"schedule_grid", 10000}, {"sweep_grid", 64},
          {"variety_grid", 32}};
}

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const C3Vectord& z) {
  return json::array({complex_to_json(z[0]), complex_to_json(z[1]), complex_to_json(z[2])});
}

json tolerances_to_json(const Tolerances& tol) {
  json j = json::object();
  for (const auto& f : kToleranceFields) j[f.name] = tol.*f.member;
  j["newton_max_iter"] = tol.newton_max_iter;
  return j;
}

json to_json(const RunConfig& cfg) {
  json quad = json::object();
  for (const auto& [name, ij] : kQuadEntries) quad[name] = complex_to_json(cfg.family.quadric.quad()(ij[0], ij[1]));
  json j;
  j["quadric"] = {{"linear", vector_to_json(cfg.family.quadric.linear())}, {"quadratic", quad}};
  j["submersion"] = vector_to_json(cfg.family.F.coeffs());
  j["c0"] = complex_to_json(cfg.family.c0);
  j["rho"] = cfg.family.rho;
  j["epsilon"] = cfg.family.epsilon;
  j["V_radius"] = cfg.family.V_radius;
  j["t_clamp_delta"] = cfg.t_clamp_delta;
  j["tolerances"] = tolerances_to_json(cfg.tol);
  j["seed"] = cfg.seed;
  j["densities"] = json(cfg.densities);
  return j;
}

RunConfig from_json(const json& j) {
  if (!j.is_object()) invalid("config: expected a JSON object");
  reject_unknown(j, "config",
                 {"quadric", "submersion", "c0", "rho", "epsilon", "V_radius", "t_clamp_delta", "tolerances", "seed", "densities"});
  RunConfig cfg;

  C3Vectord linear = cfg.family.quadric.linear();
  C3Matrixd quad = cfg.family.quadric.quad();
  if (j.contains("quadric")) {
    const json& q = j["quadric"];
    if (!q.is_object()) invalid("quadric: expected an object");
    reject_unknown(q, "quadric", {"linear", "quadratic"});
    if (q.contains("linear")) linear = vector_from(q["linear"], "quadric.linear");
    if (q.contains("quadratic")) {
      const json& s = q["quadratic"];
      if (!s.is_object()) invalid("quadric.quadratic: expected an object with entries S11 S12 S13 S22 S23 S33");
      reject_unknown(s, "quadric.quadratic", {"S11", "S12", "S13", "S22", "S23", "S33"});
      quad.setZero();
      for (const auto& [name, ij] : kQuadEntries) {
        if (!s.contains(name)) continue;
        const auto v = complex_from(s[name], fmt::format("quadric.quadratic.{}", name));
        quad(ij[0], ij[1]) = v;
        quad(ij[1], ij[0]) = v;
      }
    }
  }
  try {
    cfg.family.quadric = Quadricd(linear, quad);
    if (j.contains("submersion")) cfg.family.F = SubmersionF<double>(vector_from(j["submersion"], "submersion"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigInvalid) throw;
    invalid(e.what());
  }

  if (j.contains("c0")) cfg.family.c0 = complex_from(j["c0"], "c0");
  if (j.contains("rho")) cfg.family.rho = real_from(j["rho"], "rho");
  if (j.contains("epsilon")) cfg.family.epsilon = real_from(j["epsilon"], "epsilon");
  if (j.contains("V_radius")) cfg.family.V_radius = real_from(j["V_radius"], "V_radius");
  if (j.contains("t_clamp_delta")) cfg.t_clamp_delta = real_from(j["t_clamp_delta"], "t_clamp_delta");
  if (!(cfg.t_clamp_delta > 0 && cfg.t_clamp_delta < 1)) invalid("t_clamp_delta: must lie in (0, 1)");

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) invalid("tolerances: expected an object");
    for (const auto& [name, value] : t.items()) set_tolerance(cfg.tol, name, real_from(value, "tolerances." + name));
  }
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      invalid("seed: expected an unsigned 64-bit integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("densities")) {
    const json& d = j["densities"];
    if (!d.is_object()) invalid("densities: expected an object");
    for (const auto& [name, value] : d.items()) {
      if (!cfg.densities.count(name)) invalid(fmt::format("densities: unknown density '{}'", name));
      if (!value.is_number_integer() || value.get<std::int64_t>() < 2 || value.get<std::int64_t>() > 10000000) {
        invalid(fmt::format("densities.{}: expected an integer in [2, 10^7]", name));
      }
      cfg.densities[name] = value.get<int>();
    }
  }
  check_structure(cfg.family);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    const auto nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const auto col = upto - (nl == std::string::npos ? 0 : nl + 1) + 1;
    const std::string what = e.what();
    const auto reason = what.find(": ", what.find("column"));
    invalid(fmt::format("{}:{}:{}: JSON {}", path.string(), line, col,
                        reason == std::string::npos ? std::string("syntax error") : what.substr(reason + 2)));
  }
  return from_json(j);
}

void apply_tolerance_override(Tolerances& tol, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) invalid(fmt::format("--tolerance expects NAME=VALUE, got '{}'", assignment));
  const std::string name(assignment.substr(0, eq));
  const std::string_view text = assignment.substr(eq + 1);
  double value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    invalid(fmt::format("--tolerance {}: '{}' is not a number", name, text));
  }
  set_tolerance(tol, name, value);
}

std::vector<std::string> tolerance_names() {
  std::vector<std::string> names;
  for (const auto& f : kToleranceFields) names.emplace_back(f.name);
  names.emplace_back("newton_max_iter");
  return names;
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += fmt::format(".tmp{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, fmt::format("cannot write '{}'", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorKind::InvalidArgument, fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::InvalidArgument, fmt::format("cannot move output into '{}'", path.string()));
  }
}

} // namespace hartogs::app
