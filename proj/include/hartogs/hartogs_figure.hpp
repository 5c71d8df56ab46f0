#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "hartogs/disc_family.hpp"

namespace hartogs {

/// 2^{1/(t-1)} for t < 1, extended by 0 for t >= 1 (flat at t = 1).
template <typename Scalar> Scalar schedule_excess(Scalar t) {
  using std::pow;
  if (!(t < Scalar(1))) return Scalar(0);
  return pow(Scalar(2), Scalar(1) / (t - Scalar(1)));
}

/// r(t) = 1/2 + 2^{1/(t-1)} on [0, 1): r(0) = 1, decreasing to 1/2.
template <typename Scalar> Scalar radius_schedule(Scalar t) {
  if (!(t >= Scalar(0) && t < Scalar(1))) throw Error(ErrorKind::DomainError, "radius_schedule: t outside [0, 1)");
  return Scalar(0.5) + schedule_excess(t);
}

/// Point of the base disc Delta x {0}.
template <typename Scalar> struct BasePoint {
  std::complex<Scalar> w;
};

/// Point (e^{i theta}, t) of the cylinder S^1 x [0, 1].
template <typename Scalar> struct CylinderPoint {
  Scalar theta = 0;
  Scalar t = 0;
};

template <typename Scalar> using WPoint = std::variant<BasePoint<Scalar>, CylinderPoint<Scalar>>;

/// The thin Hartogs figure Phi o A(W), W = Delta x {0} u S^1 x [0, 1].
template <typename Scalar> struct HartogsFigure {
  DiscFamilyConfig<Scalar> family;
  Tolerances tol{};
};

namespace detail {

template <typename Scalar>
ProjectivePoint<Scalar> project_or_invalid(const C3Vector<Scalar>& z, const Tolerances& tol) {
  try {
    return project<Scalar>(z, Scalar(tol.zero_vector));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ZeroVector) {
      throw Error(ErrorKind::ConfigInvalid, "a parameter point is sent to the origin of C^3");
    }
    throw;
  }
}

} // namespace detail

template <typename Scalar>
ProjectivePoint<Scalar> figure_eval(const HartogsFigure<Scalar>& fig, const WPoint<Scalar>& point) {
  C3Vector<Scalar> z;
  if (const auto* base = std::get_if<BasePoint<Scalar>>(&point)) {
    z = disc_eval(fig.family, Scalar(0), base->w, fig.tol);
  } else {
    const auto& cyl = std::get<CylinderPoint<Scalar>>(point);
    z = disc_eval(fig.family, cyl.t, std::polar(Scalar(1), cyl.theta), fig.tol);
  }
  return detail::project_or_invalid(z, fig.tol);
}

/// First nonvanishing Taylor coefficient of w -> A_1(w) at 0, extracted by a
/// Cauchy integral on |w| = radius.
template <typename Scalar> struct TangentDirection {
  int order = 0;
  C3Vector<Scalar> coefficient;
  ProjectivePoint<Scalar> point;
};

template <typename Scalar>
TangentDirection<Scalar> tangent_direction(const DiscFamilyConfig<Scalar>& cfg, const Tolerances& tol = {},
                                           Scalar radius = Scalar(0.1), int nodes = 64) {
  constexpr int kMaxOrder = 4;
  std::array<C3Vector<Scalar>, kMaxOrder> coeffs;
  for (auto& c : coeffs) c.setZero();
  for (int k = 0; k < nodes; ++k) {
    const std::complex<Scalar> e = std::polar(Scalar(1), two_pi<Scalar>() * Scalar(k) / Scalar(nodes));
    const C3Vector<Scalar> value = disc_eval(cfg, Scalar(1), radius * e, tol);
    std::complex<Scalar> e_inv = std::conj(e);
    for (int j = 0; j < kMaxOrder; ++j, e_inv *= std::conj(e)) coeffs[j] += value * e_inv;
  }
  Scalar scale = radius;
  for (int j = 0; j < kMaxOrder; ++j, scale *= radius) {
    const C3Vector<Scalar> a = coeffs[j] / (Scalar(nodes) * scale);
    if (a.cwiseAbs().maxCoeff() >= Scalar(tol.taylor_zero)) return {j + 1, a, project<Scalar>(a)};
  }
  throw Error(ErrorKind::AllCoefficientsZero, "the first four Taylor coefficients of A_1 at 0 vanish");
}

/// Phi o A_1 extended across w = 0 by its tangent direction.
template <typename Scalar>
ProjectivePoint<Scalar> blowup_eval(const DiscFamilyConfig<Scalar>& cfg, std::complex<Scalar> w, const Tolerances& tol = {}) {
  if (!(std::abs(w) <= Scalar(0.5) + Scalar(1e-12))) throw Error(ErrorKind::DomainError, "blowup_eval: |w| > 1/2");
  if (w != std::complex<Scalar>(0)) {
    const C3Vector<Scalar> z = disc_eval(cfg, Scalar(1), w, tol);
    if (z.norm() >= Scalar(tol.zero_vector)) return project<Scalar>(z);
  }
  return tangent_direction(cfg, tol).point;
}

/// Cap point w of A_1(Delta(1/2)).
template <typename Scalar> struct CapPoint {
  std::complex<Scalar> w;
};

/// Collar point A_t(r(t) e^{i theta}).
template <typename Scalar> struct CollarPoint {
  Scalar t = 0;
  Scalar theta = 0;
};

template <typename Scalar> using SmoothedRegion = std::variant<CapPoint<Scalar>, CollarPoint<Scalar>>;

/// The smoothed disc: the cap A_1(Delta(1/2)) and the collar of circles of
/// radius r(t), t in [0, 1 - t_clamp_delta].
template <typename Scalar> struct SmoothedDisc {
  DiscFamilyConfig<Scalar> family;
  Scalar t_clamp_delta = Scalar(1e-6);
  Tolerances tol{};

  Scalar t_max() const { return Scalar(1) - t_clamp_delta; }
};

template <typename Scalar>
ProjectivePoint<Scalar> smoothed_disc_eval(const SmoothedDisc<Scalar>& d, const SmoothedRegion<Scalar>& region) {
  if (const auto* cap = std::get_if<CapPoint<Scalar>>(&region)) return blowup_eval(d.family, cap->w, d.tol);
  const auto& collar = std::get<CollarPoint<Scalar>>(region);
  if (!(collar.t >= Scalar(0) && collar.t <= d.t_max())) {
    throw Error(ErrorKind::DomainError, "smoothed_disc_eval: collar t outside [0, 1 - t_clamp_delta]");
  }
  const std::complex<Scalar> w = std::polar(radius_schedule(collar.t), collar.theta);
  return detail::project_or_invalid(disc_eval(d.family, collar.t, w, d.tol), d.tol);
}

/// Samples of one disc or circle: parameters w at fixed t and their images.
template <typename Scalar> struct SampleGroup {
  std::string label;
  Scalar t = 0;
  std::vector<std::complex<Scalar>> w;
  std::vector<ProjectivePoint<Scalar>> points;
};

/// n points spread evenly over |w| <= radius (sunflower spiral), centre included.
template <typename Scalar> std::vector<std::complex<Scalar>> sunflower(int n, Scalar radius) {
  const Scalar golden = two_pi<Scalar>() * (Scalar(1) - Scalar(1) / Scalar(1.6180339887498948482L));
  std::vector<std::complex<Scalar>> w;
  w.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Scalar r = k == 0 ? Scalar(0) : radius * std::sqrt((Scalar(k) + Scalar(0.5)) / Scalar(n));
    w.push_back(std::polar(r, golden * Scalar(k)));
  }
  return w;
}

/// Samples of the full discs Phi o A_t for each t, including both line crossings.
template <typename Scalar>
std::vector<SampleGroup<Scalar>> disc_samples(const DiscFamilyConfig<Scalar>& cfg, const std::vector<Scalar>& ts,
                                              int per_disc, const Tolerances& tol = {}) {
  std::vector<SampleGroup<Scalar>> groups;
  for (Scalar t : ts) {
    SampleGroup<Scalar> g{"disc", t, sunflower<Scalar>(per_disc, Scalar(1)), {}};
    if (t < Scalar(1)) {
      for (const auto& x : line_crossings(cfg, t, tol)) g.w.push_back(x.w);
    }
    for (const auto& w : g.w) g.points.push_back(detail::project_or_invalid(disc_eval(cfg, t, w, tol), tol));
    groups.push_back(std::move(g));
  }
  return groups;
}

/// Samples of the figure: the base disc and the circles A_t(S^1), t in (0, 1].
/// The circle t = 0 is the base disc boundary and is sampled once, with the base.
template <typename Scalar>
std::vector<SampleGroup<Scalar>> figure_samples(const HartogsFigure<Scalar>& fig, int n_samples) {
  const int n_base = std::max(16, n_samples / 5);
  const int n_circles = std::max(2, static_cast<int>(std::sqrt(Scalar(n_samples - n_base) / Scalar(2))));
  const int per_circle = std::max(8, (n_samples - n_base) / n_circles);
  std::vector<SampleGroup<Scalar>> groups;
  SampleGroup<Scalar> base{"base", Scalar(0), sunflower<Scalar>(n_base, Scalar(1)), {}};
  for (const auto& w : base.w) base.points.push_back(figure_eval(fig, WPoint<Scalar>{BasePoint<Scalar>{w}}));
  groups.push_back(std::move(base));
  for (int i = 1; i <= n_circles; ++i) {
    const Scalar t = Scalar(i) / Scalar(n_circles);
    SampleGroup<Scalar> g{"cylinder", t, {}, {}};
    for (int k = 0; k < per_circle; ++k) {
      const Scalar theta = two_pi<Scalar>() * Scalar(k) / Scalar(per_circle);
      g.w.push_back(std::polar(Scalar(1), theta));
      g.points.push_back(figure_eval(fig, WPoint<Scalar>{CylinderPoint<Scalar>{theta, t}}));
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

/// Samples of the smoothed disc: the cap and collar circles.
template <typename Scalar>
std::vector<SampleGroup<Scalar>> smoothed_disc_samples(const SmoothedDisc<Scalar>& d, int n_samples) {
  const int n_cap = std::max(16, n_samples / 5);
  const int n_circles = std::max(2, static_cast<int>(std::sqrt(Scalar(n_samples - n_cap) / Scalar(2))));
  const int per_circle = std::max(8, (n_samples - n_cap) / n_circles);
  std::vector<SampleGroup<Scalar>> groups;
  SampleGroup<Scalar> cap{"cap", Scalar(1), sunflower<Scalar>(n_cap, Scalar(0.5)), {}};
  for (const auto& w : cap.w) cap.points.push_back(smoothed_disc_eval(d, SmoothedRegion<Scalar>{CapPoint<Scalar>{w}}));
  groups.push_back(std::move(cap));
  for (int i = 0; i < n_circles; ++i) {
    const Scalar t = d.t_max() * Scalar(i) / Scalar(n_circles);
    SampleGroup<Scalar> g{"collar", t, {}, {}};
    const Scalar r = radius_schedule(t);
    for (int k = 0; k < per_circle; ++k) {
      const Scalar theta = two_pi<Scalar>() * Scalar(k) / Scalar(per_circle);
      g.w.push_back(std::polar(r, theta));
      g.points.push_back(smoothed_disc_eval(d, SmoothedRegion<Scalar>{CollarPoint<Scalar>{t, theta}}));
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

template <typename Scalar> struct InjectivityViolation {
  std::string kind; // "same-disc" or "cross-disc"
  Scalar t_a = 0;
  std::complex<Scalar> w_a;
  Scalar t_b = 0;
  std::complex<Scalar> w_b;
  Scalar distance = 0;
  C3Vector<Scalar> point;
};

template <typename Scalar> struct InjectivityReport {
  std::size_t n_samples = 0;
  Scalar min_same_disc_ratio = std::numeric_limits<Scalar>::infinity(); // min d_P / |w_a - w_b|
  Scalar same_disc_t = 0;
  std::complex<Scalar> same_disc_w;
  std::size_t cross_collisions = 0;
  std::size_t collisions_near_L1 = 0;
  std::size_t collisions_near_L2 = 0;
  std::size_t violation_count = 0;
  std::vector<InjectivityViolation<Scalar>> violations; // first 64, in scan order
  Scalar ratio_margin = 0;

  bool passed() const { return violation_count == 0 && min_same_disc_ratio > ratio_margin; }
};

/// Sampled injectivity of a union of projected discs: within one group the
/// images separate at least linearly in w; across groups every near-collision
/// lies within `exclusion` of L1~ or L2~.
template <typename Scalar>
InjectivityReport<Scalar> injectivity_audit(const std::vector<SampleGroup<Scalar>>& groups,
                                            const std::array<ProjectivePoint<Scalar>, 2>& line_points,
                                            const Tolerances& tol = {}) {
  struct Flat {
    int group;
    std::complex<Scalar> w;
    C3Vector<Scalar> u;
    const ProjectivePoint<Scalar>* p;
  };
  std::vector<Flat> flat;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    for (std::size_t k = 0; k < groups[g].points.size(); ++k) {
      flat.push_back({g, groups[g].w[k], groups[g].points[k].unit(), &groups[g].points[k]});
    }
  }
  InjectivityReport<Scalar> rep;
  rep.n_samples = flat.size();
  rep.ratio_margin = Scalar(tol.injectivity_margin);
  const Scalar collision = Scalar(tol.collision);
  const Scalar exclusion = Scalar(tol.exclusion);
  auto record = [&](InjectivityViolation<Scalar> v) {
    ++rep.violation_count;
    if (rep.violations.size() < 64) rep.violations.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      const Flat& a = flat[i];
      const Flat& b = flat[j];
      const Scalar s2 = std::norm(a.u.dot(b.u));
      Scalar d = std::sqrt(std::max(Scalar(0), Scalar(1) - s2));
      if (d < Scalar(1e-6)) d = proj_distance(*a.p, *b.p);
      if (a.group == b.group) {
        const Scalar dw = std::abs(a.w - b.w);
        if (dw == Scalar(0)) continue;
        const Scalar ratio = d / dw;
        if (ratio < rep.min_same_disc_ratio) {
          rep.min_same_disc_ratio = ratio;
          rep.same_disc_t = groups[a.group].t;
          rep.same_disc_w = a.w;
        }
        if (ratio <= rep.ratio_margin) {
          record({"same-disc", groups[a.group].t, a.w, groups[b.group].t, b.w, d, a.p->rep()});
        }
      } else if (d < collision) {
        ++rep.cross_collisions;
        const Scalar d1 = std::max(proj_distance(*a.p, line_points[0]), proj_distance(*b.p, line_points[0]));
        const Scalar d2 = std::max(proj_distance(*a.p, line_points[1]), proj_distance(*b.p, line_points[1]));
        if (d1 <= exclusion) {
          ++rep.collisions_near_L1;
        } else if (d2 <= exclusion) {
          ++rep.collisions_near_L2;
        } else {
          record({"cross-disc", groups[a.group].t, a.w, groups[b.group].t, b.w, d, a.p->rep()});
        }
      }
    }
  }
  return rep;
}

template <typename Scalar> std::array<ProjectivePoint<Scalar>, 2> line_points(const Quadric<Scalar>& h, const Tolerances& tol = {}) {
  const auto lines = lines_through_origin(h, tol);
  return {lines[0].direction, lines[1].direction};
}

} // namespace hartogs
