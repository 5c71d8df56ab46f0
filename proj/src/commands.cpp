#include "commands.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "curve_spec.hpp"

namespace hartogs::app {
namespace {

// Outcome of one audit: the audited quantity, its threshold and which side passes.
struct Outcome {
  double value = 0;
  double threshold = 0;
  bool upper_bound = true; // pass iff value < threshold; otherwise value > threshold
  bool extra_ok = true;    // additional pass conditions
  json worst = json::object();
  json details = json::object();
};

json error_json(const std::exception& e) {
  json j;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    j["kind"] = std::string(to_string(err->kind()));
    if (const auto* deg = dynamic_cast<const DegenerateQuadricError*>(&e)) j["discriminant"] = deg->discriminant();
  } else {
    j["kind"] = "Exception";
  }
  j["message"] = e.what();
  return j;
}

json run_audit(const std::string& name, const std::function<Outcome()>& body) {
  json rec;
  rec["name"] = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = body();
    const bool ok = (o.upper_bound ? o.value < o.threshold : o.value > o.threshold) && o.extra_ok;
    rec["passed"] = ok;
    rec["value"] = o.value;
    rec["threshold"] = o.threshold;
    rec["relation"] = o.upper_bound ? "<" : ">";
    rec["margin"] = o.upper_bound ? o.threshold - o.value : o.value - o.threshold;
    rec["worst"] = o.worst;
    rec["details"] = o.details;
  } catch (const std::exception& e) {
    rec["passed"] = false;
    rec["error"] = error_json(e);
  }
  rec["runtime_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

json tw(double t, std::complex<double> w) { return {{"t", t}, {"w", complex_to_json(w)}}; }

Outcome audit_line_extraction(const RunConfig& cfg) {
  const auto lines = lines_through_origin(cfg.family.quadric, cfg.tol);
  Outcome o;
  o.threshold = cfg.tol.line_residual;
  o.value = std::max(lines[0].residual(cfg.family.quadric), lines[1].residual(cfg.family.quadric));
  const double separation = proj_distance(lines[0].direction, lines[1].direction);
  o.extra_ok = separation > cfg.tol.degeneracy;
  o.details = {{"L1", vector_to_json(lines[0].direction.rep())},
               {"L2", vector_to_json(lines[1].direction.rep())},
               {"separation", separation}};
  return o;
}

Outcome audit_bezout(const RunConfig& cfg) {
  const auto& h = cfg.family.quadric;
  const auto lp = line_points(h, cfg.tol);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = cfg.density("bezout");
  Outcome o;
  o.threshold = cfg.tol.bezout;
  int drawn = 0;
  for (int accepted = 0; accepted < n; ++drawn) {
    if (drawn > 100 * n) throw Error(ErrorKind::NoConvergence, "could not sample points of H off the lines");
    C3Vectord v;
    for (int i = 0; i < 3; ++i) v[i] = {normal(rng), normal(rng)};
    v.normalize();
    const std::complex<double> quad = v.transpose() * h.quad() * v;
    const std::complex<double> lin = bilinear(h.linear(), v);
    if (std::abs(quad) < 1e-3 || std::abs(lin) < 1e-3) continue;
    const C3Vectord z = (-lin / quad) * v;
    const auto pz = project<double>(z);
    if (proj_distance(pz, lp[0]) < 1e-3 || proj_distance(pz, lp[1]) < 1e-3) continue;
    ++accepted;
    const auto roots = bezout_intersection(h, z, cfg.tol);
    double err = std::numeric_limits<double>::infinity();
    if (!roots.on_line() && roots.roots.size() == 2) {
      const auto& r = roots.roots;
      err = std::min(std::max(std::abs(r[0]), std::abs(r[1] - 1.0)), std::max(std::abs(r[1]), std::abs(r[0] - 1.0)));
    }
    if (!(err <= o.value)) {
      o.value = err;
      o.worst = {{"z", vector_to_json(z)}};
    }
  }
  o.details = {{"samples", n}, {"draws", drawn}};
  return o;
}

Outcome audit_transversality(const RunConfig& cfg) {
  const auto lines = lines_through_origin(cfg.family.quadric, cfg.tol);
  const auto cert = transversality_certificate(cfg.family.quadric, cfg.family.F.coeffs(), lines, cfg.tol);
  Outcome o;
  o.upper_bound = false;
  o.value = cert.min_margin();
  o.threshold = cert.threshold;
  o.details = {{"L1", cert.line1}, {"L2", cert.line2}, {"H", cert.hypersurface}};
  return o;
}

Outcome audit_on_variety(const RunConfig& cfg) {
  const int n = cfg.density("variety_grid");
  const auto ws = sunflower<double>(n, 1.0);
  Outcome o;
  o.threshold = cfg.tol.variety_residual;
  for (int i = 0; i < n; ++i) {
    const double t = double(i) / double(n - 1);
    const auto c = phi(cfg.family, t);
    for (const auto& w : ws) {
      const C3Vectord z = disc_eval(cfg.family, t, w, cfg.tol);
      const double r = std::max(std::abs(cfg.family.quadric(z)), std::abs(cfg.family.F(z) - c));
      if (!(r <= o.value)) {
        o.value = r;
        o.worst = tw(t, w);
      }
    }
  }
  o.details = {{"grid", fmt::format("{}x{}", n, n)}};
  return o;
}

Outcome audit_origin_anchor(const RunConfig& cfg) {
  Outcome o;
  o.threshold = cfg.tol.origin_anchor;
  o.value = disc_eval(cfg.family, 1.0, std::complex<double>(0), cfg.tol).norm();
  return o;
}

Outcome audit_containment(const RunConfig& cfg) {
  const auto s = containment_sup(cfg.family, 17, 8, 64, cfg.tol);
  Outcome o;
  o.value = s.sup_norm;
  o.threshold = cfg.family.epsilon;
  o.worst = tw(s.t, s.w);
  return o;
}

Outcome audit_line_crossings(const RunConfig& cfg) {
  Outcome o;
  o.upper_bound = false;
  o.value = std::numeric_limits<double>::infinity();
  o.threshold = cfg.tol.crossing_margin;
  double worst_w = 0;
  for (int i = 0; i < 33; ++i) {
    const double t = 0.96875 * double(i) / 32.0;
    const auto x = line_crossings(cfg.family, t, cfg.tol);
    for (int k = 0; k < 2; ++k) {
      worst_w = std::max(worst_w, std::abs(x[k].w));
      if (x[k].margin < o.value) {
        o.value = x[k].margin;
        o.worst = tw(t, x[k].w);
        o.worst["line"] = k + 1;
      }
    }
  }
  const auto x0 = line_crossings(cfg.family, 0.0, cfg.tol);
  o.details = {{"max_abs_w", worst_w},
               {"t0_L1_w", complex_to_json(x0[0].w)},
               {"t0_L2_w", complex_to_json(x0[1].w)}};
  return o;
}

Outcome audit_holomorphy(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = cfg.density("holomorphy_circles");
  Outcome o;
  o.threshold = cfg.tol.holomorphy;
  for (int i = 0; i < n; ++i) {
    const double t = unit(rng);
    const double radius = 0.05 + 0.45 * unit(rng);
    const auto center = std::polar((1.0 - radius) * std::sqrt(unit(rng)), two_pi<double>() * unit(rng));
    const AnalyticDisc<double> disc{cfg.family, t, cfg.tol};
    const double r = holomorphy_residual<double>(disc, center, radius, 64);
    if (!(r <= o.value)) {
      o.value = r;
      o.worst = tw(t, center);
      o.worst["radius"] = radius;
    }
  }
  o.details = {{"circles", n}, {"nodes", 64}};
  return o;
}

Outcome audit_holomorphy_control(const RunConfig& cfg) {
  const AnalyticDisc<double> disc{cfg.family, 0.5, cfg.tol};
  auto perturbed = [&](std::complex<double> w) {
    return C3Vectord(disc(w) + C3Vectord::Constant(0.01 * std::conj(w)));
  };
  Outcome o;
  o.upper_bound = false;
  o.threshold = cfg.tol.holomorphy_control;
  o.value = holomorphy_residual<double>(perturbed, 0.1, 0.5, 64);
  o.details = {{"perturbation", "0.01*conj(w)"}, {"t", 0.5}, {"center", complex_to_json(0.1)}, {"radius", 0.5}};
  return o;
}

Outcome injectivity_outcome(const InjectivityReport<double>& rep, const Tolerances& tol) {
  Outcome o;
  o.upper_bound = false;
  o.value = rep.min_same_disc_ratio;
  o.threshold = tol.injectivity_margin;
  o.extra_ok = rep.violation_count == 0;
  o.worst = tw(rep.same_disc_t, rep.same_disc_w);
  json violations = json::array();
  for (const auto& v : rep.violations) {
    violations.push_back({{"kind", v.kind},
                          {"a", tw(v.t_a, v.w_a)},
                          {"b", tw(v.t_b, v.w_b)},
                          {"distance", v.distance},
                          {"point", vector_to_json(v.point)}});
  }
  o.details = {{"samples", rep.n_samples},
               {"cross_collisions", rep.cross_collisions},
               {"collisions_near_L1", rep.collisions_near_L1},
               {"collisions_near_L2", rep.collisions_near_L2},
               {"violation_count", rep.violation_count},
               {"violations", violations}};
  return o;
}

Outcome audit_disc_injectivity(const RunConfig& cfg) {
  std::vector<double> ts;
  for (int i = 0; i < 10; ++i) ts.push_back(0.1 * i);
  const auto groups = disc_samples(cfg.family, ts, cfg.density("disc_injectivity"), cfg.tol);
  return injectivity_outcome(injectivity_audit(groups, line_points(cfg.family.quadric, cfg.tol), cfg.tol), cfg.tol);
}

Outcome audit_figure_injectivity(const RunConfig& cfg) {
  const auto groups = figure_samples(cfg.figure(), cfg.density("figure_injectivity"));
  return injectivity_outcome(injectivity_audit(groups, line_points(cfg.family.quadric, cfg.tol), cfg.tol), cfg.tol);
}

Outcome audit_figure_line_clearance(const RunConfig& cfg) {
  const auto lp = line_points(cfg.family.quadric, cfg.tol);
  const auto fig = cfg.figure();
  Outcome o;
  o.upper_bound = false;
  o.value = std::numeric_limits<double>::infinity();
  o.threshold = 0.1 * std::abs(cfg.family.c0) / cfg.family.rho;
  for (int i = 0; i <= 64; ++i) {
    const double t = i / 64.0;
    for (int k = 0; k < 128; ++k) {
      const double theta = two_pi<double>() * k / 128.0;
      const auto p = figure_eval(fig, WPoint<double>{CylinderPoint<double>{theta, t}});
      const double d = std::min(proj_distance(p, lp[0]), proj_distance(p, lp[1]));
      if (d < o.value) {
        o.value = d;
        o.worst = tw(t, std::polar(1.0, theta));
      }
    }
  }
  return o;
}

Outcome audit_schedule_monotonicity(const RunConfig& cfg) {
  const int n = cfg.density("schedule_grid");
  Outcome o;
  o.threshold = 1;
  long double min_gap_log2 = std::numeric_limits<long double>::infinity();
  int violations = 0;
  int resolvable = 0;
  bool prefix = true;
  for (int i = 0; i + 1 < n; ++i) {
    const long double ta = static_cast<long double>(i) / n;
    const long double tb = static_cast<long double>(i + 1) / n;
    const long double ea = schedule_excess(ta);
    const long double eb = schedule_excess(tb);
    if (!(ea > eb)) {
      ++violations;
      continue;
    }
    min_gap_log2 = std::min(min_gap_log2, std::log2(ea - eb));
    const double ra = radius_schedule(double(i) / n);
    const double rb = radius_schedule(double(i + 1) / n);
    if (!(ra >= rb)) ++violations;
    if (prefix && ra > rb) {
      resolvable = i + 1;
    } else {
      prefix = false;
    }
  }
  o.value = violations;
  o.extra_ok = radius_schedule(0.0) == 1.0;
  o.details = {{"grid", n},
               {"r0", radius_schedule(0.0)},
               {"min_excess_gap_log2", static_cast<double>(min_gap_log2)},
               {"double_strict_prefix", resolvable}};
  return o;
}

Outcome audit_schedule_flatness(const RunConfig& cfg) {
  using ld = long double;
  const ld s = cfg.tol.flatness_offset;
  const ld t = 1.0L - s;
  const ld h = s * s * 0.01L;
  auto g = [](ld x) { return schedule_excess(x); };
  const ld d1 = (g(t + h) - g(t - h)) / (2 * h);
  const ld d2 = (g(t + h) - 2 * g(t) + g(t - h)) / (h * h);
  const ld d3 = (g(t + 2 * h) - 2 * g(t + h) + 2 * g(t - h) - g(t - 2 * h)) / (2 * h * h * h);
  Outcome o;
  o.threshold = cfg.tol.schedule_flatness;
  o.value = static_cast<double>(std::max({std::abs(d1), std::abs(d2), std::abs(d3)}));
  o.worst = {{"t", static_cast<double>(t)}};
  o.details = {{"d1", static_cast<double>(d1)}, {"d2", static_cast<double>(d2)}, {"d3", static_cast<double>(d3)},
               {"step", static_cast<double>(h)}};
  return o;
}

Outcome audit_blowup_point(const RunConfig& cfg) {
  const auto p = blowup_eval(cfg.family, std::complex<double>(0), cfg.tol);
  const auto oracle = project<double>(disc_derivative(cfg.family, 1.0, std::complex<double>(0), cfg.tol));
  Outcome o;
  o.threshold = cfg.tol.blowup_point;
  o.value = proj_distance(p, oracle);
  o.details = {{"blowup_eval_0", vector_to_json(p.rep())},
               {"order", tangent_direction(cfg.family, cfg.tol).order}};
  return o;
}

Outcome audit_blowup_continuity(const RunConfig& cfg) {
  const auto p0 = blowup_eval(cfg.family, std::complex<double>(0), cfg.tol);
  json dist = json::object();
  double prev = std::numeric_limits<double>::infinity();
  Outcome o;
  o.threshold = cfg.tol.blowup_continuity;
  for (double r : {1e-2, 1e-3, 1e-4}) {
    const double d = proj_distance(p0, blowup_eval(cfg.family, std::complex<double>(r), cfg.tol));
    dist[fmt::format("{:g}", r)] = d;
    o.extra_ok = o.extra_ok && d < prev;
    prev = d;
    o.value = d;
  }
  o.details = {{"distances", dist}};
  return o;
}

using AuditFn = Outcome (*)(const RunConfig&);

const std::vector<std::pair<std::string, AuditFn>>& audits() {
  static const std::vector<std::pair<std::string, AuditFn>> table{
      {"line_extraction", audit_line_extraction},
      {"bezout_sampling", audit_bezout},
      {"transversality", audit_transversality},
      {"on_variety_residuals", audit_on_variety},
      {"origin_anchor", audit_origin_anchor},
      {"containment", audit_containment},
      {"line_crossings", audit_line_crossings},
      {"holomorphy", audit_holomorphy},
      {"holomorphy_control", audit_holomorphy_control},
      {"disc_injectivity", audit_disc_injectivity},
      {"figure_injectivity", audit_figure_injectivity},
      {"figure_line_clearance", audit_figure_line_clearance},
      {"schedule_monotonicity", audit_schedule_monotonicity},
      {"schedule_flatness", audit_schedule_flatness},
      {"blowup_point", audit_blowup_point},
      {"blowup_continuity", audit_blowup_continuity},
  };
  return table;
}

json report_header(const RunConfig& cfg, const std::string& command) {
  json j;
  j["tool"] = "hartogs";
  j["version"] = HARTOGS_VERSION;
  j["command"] = command;
  j["limitations"] = json::array(
      {"Audits are sampled: injectivity, containment and curve minima are checked on finite samples, not certified.",
       "The constancy statement quantifies over all holomorphic functions on all neighborhoods; only the continuation "
       "mechanism is exercised, on rational function elements."});
  j["config"] = to_json(cfg);
  return j;
}

void emit(const CommandOptions& opt, std::ostream& out, const std::string& text) {
  if (opt.output) {
    write_atomically(*opt.output, text);
  } else {
    out << text;
  }
}

template <typename Body> int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

void require_generic(const RunConfig& cfg) { validate_family(cfg.family, cfg.tol); }

std::string csv_row(std::string_view tag, double p1, double p2, const ProjectivePoint<double>& p) {
  const auto& z = p.rep();
  return fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", tag, p1, p2, z[0].real(),
                     z[0].imag(), z[1].real(), z[1].imag(), z[2].real(), z[2].imag());
}

json minimum_json(const CurveMinimum<double>& m) {
  return {{"value", m.value}, {"chart", m.chart}, {"param1", m.param1}, {"param2", m.param2}, {"point", vector_to_json(m.point)}};
}

} // namespace

RunConfig resolve_config(const CommandOptions& opt) {
  RunConfig cfg = load_run_config(opt.config);
  if (opt.seed) cfg.seed = *opt.seed;
  for (const auto& a : opt.tolerance_overrides) apply_tolerance_override(cfg.tol, a);
  if (opt.density) {
    if (*opt.density < 2) throw Error(ErrorKind::ConfigInvalid, "--density must be at least 2");
    cfg.densities["construct"] = *opt.density;
  }
  return cfg;
}

const std::vector<std::string>& audit_manifest() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : audits()) v.push_back(name);
    return v;
  }();
  return names;
}

json run_verify(const RunConfig& cfg) {
  json j = report_header(cfg, "verify");
  json records = json::array();
  int failed = 0;
  for (const auto& [name, fn] : audits()) {
    records.push_back(run_audit(name, [&cfg, fn = fn] { return fn(cfg); }));
    if (!records.back()["passed"].get<bool>()) ++failed;
  }
  j["audits"] = records;
  j["summary"] = {{"total", records.size()}, {"failed", failed}, {"passed", failed == 0}};
  return j;
}

std::string construct_csv(const RunConfig& cfg, int n) {
  const auto fig = cfg.figure();
  const auto disc = cfg.smoothed_disc();
  std::string out = "chart,param1,param2,z1_re,z1_im,z2_re,z2_im,z3_re,z3_im\n";
  for (const auto& w : sunflower<double>(n, 1.0)) {
    out += csv_row("base", w.real(), w.imag(), figure_eval(fig, WPoint<double>{BasePoint<double>{w}}));
  }
  for (int i = 0; i < n; ++i) {
    const double t = double(i) / double(n - 1);
    for (int k = 0; k < n; ++k) {
      const double theta = two_pi<double>() * k / n;
      out += csv_row("cylinder", t, theta, figure_eval(fig, WPoint<double>{CylinderPoint<double>{theta, t}}));
    }
  }
  for (const auto& w : sunflower<double>(n, 0.5)) {
    out += csv_row("cap", w.real(), w.imag(), smoothed_disc_eval(disc, SmoothedRegion<double>{CapPoint<double>{w}}));
  }
  for (int i = 0; i < n; ++i) {
    const double t = std::min(disc.t_max(), disc.t_max() * double(i) / double(n - 1));
    for (int k = 0; k < n; ++k) {
      const double theta = two_pi<double>() * k / n;
      out += csv_row("collar", t, theta, smoothed_disc_eval(disc, SmoothedRegion<double>{CollarPoint<double>{t, theta}}));
    }
  }
  return out;
}

json run_intersect(const RunConfig& cfg, const CommandOptions& opt) {
  std::vector<std::pair<std::string, HomogeneousPolynomiald>> curves;
  if (opt.curve) {
    auto q = parse_polynomial(*opt.curve);
    if (q.is_zero()) throw Error(ErrorKind::InvalidArgument, "curve spec '" + *opt.curve + "' is the zero polynomial (Q != 0 required)");
    curves.emplace_back(*opt.curve, std::move(q));
  } else if (opt.random) {
    if (*opt.random < 1 || opt.max_degree < 1) throw Error(ErrorKind::InvalidArgument, "--random and --max-degree must be positive");
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < *opt.random; ++i) {
      auto q = random_polynomial(1 + i % opt.max_degree, rng);
      curves.emplace_back(format_polynomial(q), std::move(q));
    }
  } else {
    throw Error(ErrorKind::InvalidArgument, "intersect needs --curve SPEC or --random N");
  }

  const auto disc = cfg.smoothed_disc();
  const auto fig = cfg.figure();
  const int multistart = cfg.density("multistart");
  json j = report_header(cfg, "intersect");
  json list = json::array();
  int failed = 0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto& [spec, q] = curves[i];
    const auto m = curve_min_on_disc(disc, q, multistart, cfg.seed + i);
    const auto mf = curve_min_on_figure(fig, q, multistart, cfg.seed + i);
    const bool ok = m.value < cfg.tol.curve_min;
    if (!ok) ++failed;
    list.push_back({{"curve", spec},
                    {"degree", q.degree()},
                    {"passed", ok},
                    {"threshold", cfg.tol.curve_min},
                    {"min_on_smoothed_disc", minimum_json(m)},
                    {"min_on_figure", minimum_json(mf)},
                    {"runtime_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}});
  }
  j["curves"] = list;
  j["summary"] = {{"total", curves.size()}, {"failed", failed}, {"passed", failed == 0}};
  return j;
}

json run_continue(const RunConfig& cfg, const std::string& function_spec) {
  const auto f = parse_function(function_spec, cfg.family, cfg.tol);
  json j = report_header(cfg, "continue");
  j["function"] = {{"spec", function_spec},
                   {"numerator", format_polynomial(f.numerator())},
                   {"denominator", format_polynomial(f.denominator())},
                   {"degree", f.degree()}};
  const auto grid = uniform_grid<double>(cfg.density("sweep_grid"));
  const auto start = std::chrono::steady_clock::now();
  ContinuationReport<double> rep;
  try {
    rep = continuation_sweep(f, cfg.family, grid, SweepOptions<double>{}, cfg.tol);
  } catch (const HypothesisViolatedError<double>& e) {
    j["hypotheses"] = {{"passed", false},
                       {"message", e.what()},
                       {"t", e.t()},
                       {"w", complex_to_json(e.w())},
                       {"denominator_magnitude", e.magnitude()}};
    j["summary"] = {{"passed", false}};
    return j;
  }
  j["hypotheses"] = {{"passed", true}};
  json records = json::array();
  // A clean sweep must reconstruct everywhere; a flagged sweep must localize
  // its pole. Near t* the quadrature error grows with the pole's proximity to
  // the circle and is reported, not judged.
  bool ok = true;
  for (const auto& r : rep.records) {
    if (rep.clean() && !(r.reconstruction_error < cfg.tol.continuation)) ok = false;
    records.push_back({{"t", r.t},
                       {"boundary_min", r.boundary_min},
                       {"winding", r.winding},
                       {"pole_count", r.pole_count},
                       {"reconstruction_error", r.reconstruction_error},
                       {"interior_ratio", r.interior_ratio},
                       {"blowup", r.blowup}});
  }
  j["records"] = records;
  if (rep.t_star) {
    j["t_star"] = {{"value", *rep.t_star},
                   {"bracket", {rep.t_star_lo, rep.t_star_hi}},
                   {"winding", rep.winding_at_t_star}};
    ok = ok && rep.winding_at_t_star >= 1 && rep.t_star_hi - rep.t_star_lo <= cfg.tol.localization;
  } else {
    j["t_star"] = nullptr;
    ok = ok && rep.origin_value && std::isfinite(std::abs(*rep.origin_value));
  }
  j["origin_value"] = rep.origin_value ? complex_to_json(*rep.origin_value) : json(nullptr);
  j["runtime_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  j["summary"] = {{"clean", rep.clean()}, {"passed", ok}};
  return j;
}

int cmd_construct(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opt);
    require_generic(cfg);
    emit(opt, out, construct_csv(cfg, cfg.density("construct")));
    return kExitOk;
  });
}

int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opt);
    const json report = run_verify(cfg);
    emit(opt, out, report.dump(2) + "\n");
    for (const auto& a : report["audits"]) {
      if (!a["passed"].get<bool>()) err << "audit failed: " << a["name"].get<std::string>() << "\n";
    }
    return report["summary"]["passed"].get<bool>() ? kExitOk : kExitAuditFailure;
  });
}

int cmd_intersect(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = resolve_config(opt);
    require_generic(cfg);
    const json report = run_intersect(cfg, opt);
    emit(opt, out, report.dump(2) + "\n");
    return report["summary"]["passed"].get<bool>() ? kExitOk : kExitAuditFailure;
  });
}

int cmd_continue(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opt.function) throw Error(ErrorKind::InvalidArgument, "continue needs --function SPEC");
    const RunConfig cfg = resolve_config(opt);
    require_generic(cfg);
    const json report = run_continue(cfg, *opt.function);
    emit(opt, out, report.dump(2) + "\n");
    return report["summary"]["passed"].get<bool>() ? kExitOk : kExitAuditFailure;
  });
}

json strip_runtime(json report) {
  if (report.is_object()) {
    report.erase("runtime_ms");
    for (auto& [key, value] : report.items()) value = strip_runtime(value);
  } else if (report.is_array()) {
    for (auto& value : report) value = strip_runtime(value);
  }
  return report;
}

} // namespace hartogs::app
