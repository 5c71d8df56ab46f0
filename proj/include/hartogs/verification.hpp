#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hartogs/hartogs_figure.hpp"
#include "hartogs/nelder_mead.hpp"

namespace hartogs {

/// A rational function N/D on P_2 lifted to C^3 (N, D homogeneous of equal degree).
template <typename Scalar> class FunctionElement {
public:
  FunctionElement(HomogeneousPolynomial<Scalar> numerator, HomogeneousPolynomial<Scalar> denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (num_.degree() != den_.degree()) {
      throw Error(ErrorKind::InvalidArgument, "numerator and denominator degrees differ (" + std::to_string(num_.degree()) +
                                                  " vs " + std::to_string(den_.degree()) + ")");
    }
    if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "denominator is the zero polynomial");
  }

  static FunctionElement constant(std::complex<Scalar> c) {
    return FunctionElement(HomogeneousPolynomial<Scalar>::constant(c), HomogeneousPolynomial<Scalar>::constant(1));
  }

  const HomogeneousPolynomial<Scalar>& numerator() const noexcept { return num_; }
  const HomogeneousPolynomial<Scalar>& denominator() const noexcept { return den_; }
  int degree() const noexcept { return den_.degree(); }

  std::complex<Scalar> operator()(const C3Vector<Scalar>& z) const { return num_(z) / den_(z); }
  std::complex<Scalar> operator()(const ProjectivePoint<Scalar>& p) const { return (*this)(p.unit()); }

  /// Largest Euler residual of N and D at z (homogeneity check).
  Scalar homogeneity_residual(const C3Vector<Scalar>& z) const {
    return std::max(std::abs(euler_residual(num_, z)), std::abs(euler_residual(den_, z)));
  }

private:
  HomogeneousPolynomial<Scalar> num_;
  HomogeneousPolynomial<Scalar> den_;
};

using FunctionElementd = FunctionElement<double>;

namespace detail {

template <typename Scalar, typename Fn>
Scalar winding_segment(const Fn& fn, Scalar a, std::complex<Scalar> va, Scalar b, std::complex<Scalar> vb, int depth) {
  const Scalar turn = std::arg(vb / va);
  if (std::abs(turn) <= Scalar(0.25) || depth >= 24) return turn;
  const Scalar m = Scalar(0.5) * (a + b);
  const std::complex<Scalar> vm = fn(m);
  return winding_segment(fn, a, va, m, vm, depth + 1) + winding_segment(fn, m, vm, b, vb, depth + 1);
}

} // namespace detail

/// Winding number of theta -> fn(theta) around 0 over [0, 2 pi], with
/// adaptive refinement of the initial n-node polygon wherever the argument
/// turns by more than 1/4 radian between nodes.
template <typename Scalar, typename Fn> int winding_number(const Fn& fn, int n_nodes = 4096) {
  Scalar total = 0;
  std::complex<Scalar> first = fn(Scalar(0));
  std::complex<Scalar> prev = first;
  Scalar prev_theta = 0;
  for (int k = 1; k <= n_nodes; ++k) {
    const Scalar theta = two_pi<Scalar>() * Scalar(k) / Scalar(n_nodes);
    const std::complex<Scalar> v = k == n_nodes ? first : fn(theta);
    total += detail::winding_segment(fn, prev_theta, prev, theta, v, 0);
    prev = v;
    prev_theta = theta;
  }
  return static_cast<int>(std::lround(total / two_pi<Scalar>()));
}

/// Winding of D o A_t around the unit circle: the number of zeros of D o A_t in the disc.
template <typename Scalar>
int denominator_winding(const HomogeneousPolynomial<Scalar>& den, const DiscFamilyConfig<Scalar>& cfg, Scalar t,
                        int n_nodes = 4096, const Tolerances& tol = {}) {
  return winding_number<Scalar>(
      [&](Scalar theta) { return den(disc_eval(cfg, t, std::polar(Scalar(1), theta), tol)); }, n_nodes);
}

/// min over boundary nodes of |D| on unit representatives of A_t(zeta).
template <typename Scalar>
std::pair<Scalar, Scalar> boundary_denominator_min(const HomogeneousPolynomial<Scalar>& den, const DiscFamilyConfig<Scalar>& cfg,
                                                   Scalar t, int n_nodes, const Tolerances& tol = {}) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  Scalar where = 0;
  for (int k = 0; k < n_nodes; ++k) {
    const Scalar theta = two_pi<Scalar>() * Scalar(k) / Scalar(n_nodes);
    const Scalar v = normalized_magnitude(den, project<Scalar>(disc_eval(cfg, t, std::polar(Scalar(1), theta), tol)));
    if (v < best) {
      best = v;
      where = theta;
    }
  }
  return {best, where};
}

/// Values of the Cauchy integral (1 / 2 pi i) \oint f(A_t(zeta)) / (zeta - w) d zeta
/// at each target w, by the n-node trapezoid rule on |zeta| = 1.
template <typename Scalar>
std::vector<std::complex<Scalar>> cauchy_reconstruct(const FunctionElement<Scalar>& f, const DiscFamilyConfig<Scalar>& cfg,
                                                     Scalar t, const std::vector<std::complex<Scalar>>& w_targets,
                                                     int n_nodes, const Tolerances& tol = {}) {
  std::vector<std::complex<Scalar>> zeta(static_cast<std::size_t>(n_nodes));
  std::vector<std::complex<Scalar>> values(static_cast<std::size_t>(n_nodes));
  for (int k = 0; k < n_nodes; ++k) {
    zeta[k] = std::polar(Scalar(1), two_pi<Scalar>() * Scalar(k) / Scalar(n_nodes));
    const ProjectivePoint<Scalar> p = project<Scalar>(disc_eval(cfg, t, zeta[k], tol));
    if (!(normalized_magnitude(f.denominator(), p) > Scalar(tol.boundary_pole))) {
      throw Error(ErrorKind::BoundaryPole, "denominator vanishes on the boundary circle of A_t at t = " + std::to_string(double(t)));
    }
    values[k] = f(p);
  }
  std::vector<std::complex<Scalar>> out;
  out.reserve(w_targets.size());
  for (const auto& w : w_targets) {
    if (!(std::abs(w) < Scalar(1))) throw Error(ErrorKind::DomainError, "cauchy_reconstruct: target outside the open disc");
    std::complex<Scalar> acc(0);
    for (int k = 0; k < n_nodes; ++k) acc += values[k] * zeta[k] / (zeta[k] - w);
    out.push_back(acc / Scalar(n_nodes));
  }
  return out;
}

/// Direct value of the degree-0 element along A_t, using the tangent direction
/// where the disc passes through the origin of C^3.
template <typename Scalar>
std::complex<Scalar> element_on_disc(const FunctionElement<Scalar>& f, const DiscFamilyConfig<Scalar>& cfg, Scalar t,
                                     std::complex<Scalar> w, const Tolerances& tol = {}) {
  const C3Vector<Scalar> z = disc_eval(cfg, t, w, tol);
  if (z.norm() < Scalar(tol.zero_vector)) return f(tangent_direction(cfg, tol).point);
  return f(project<Scalar>(z));
}

template <typename Scalar> struct ContinuationRecord {
  Scalar t = 0;
  Scalar boundary_min = 0;        // min |D| on A_t(S^1), unit representatives
  int winding = 0;                // zeros of D o A_t inside the disc
  int pole_count = 0;             // winding minus the forced zeros at the origin (t = 1)
  Scalar reconstruction_error = 0; // max |Cauchy value - direct value| on the test targets
  Scalar interior_ratio = 0;       // max interior |f| / max boundary |f|
  bool blowup = false;
};

template <typename Scalar> struct ContinuationReport {
  std::vector<ContinuationRecord<Scalar>> records;
  std::optional<Scalar> t_star;        // first flagged parameter, refined by bisection
  Scalar t_star_lo = 0, t_star_hi = 0; // bracket of the refinement
  int winding_at_t_star = 0;
  std::optional<std::complex<Scalar>> origin_value; // continuation at (t, w) = (1, 0)
  bool clean() const { return !t_star.has_value(); }
};

template <typename Scalar> struct SweepOptions {
  int n_nodes = 256;         // Cauchy quadrature nodes
  int winding_nodes = 4096;
  int boundary_nodes = 512;  // hypothesis audit on each boundary circle
  int base_disc_samples = 4096;
  std::vector<std::complex<Scalar>> targets{Scalar(0), Scalar(0.3), std::complex<Scalar>(0, 0.5),
                                            Scalar(-0.4), std::complex<Scalar>(0.25, 0.25)};
};

/// Raised when f is not finite on A_0(closed disc) or on a sampled boundary circle.
template <typename Scalar> class HypothesisViolatedError : public Error {
public:
  HypothesisViolatedError(const std::string& what, Scalar t, std::complex<Scalar> w, Scalar magnitude)
      : Error(ErrorKind::HypothesisViolated, what), t_(t), w_(w), magnitude_(magnitude) {}
  Scalar t() const { return t_; }
  std::complex<Scalar> w() const { return w_; }
  Scalar magnitude() const { return magnitude_; }

private:
  Scalar t_;
  std::complex<Scalar> w_;
  Scalar magnitude_;
};

/// Zeros of D o A_1 forced at w = 0 by A_1(0) = 0: degree times the tangent order.
template <typename Scalar>
int origin_multiplicity(const FunctionElement<Scalar>& f, const DiscFamilyConfig<Scalar>& cfg, const Tolerances& tol = {}) {
  if (f.degree() == 0) return 0;
  return f.degree() * tangent_direction(cfg, tol).order;
}

/// Hypotheses of the continuity principle: f finite on A_0 (closed disc) and
/// on every boundary circle of the grid. Throws HypothesisViolatedError.
template <typename Scalar>
void check_sweep_hypotheses(const FunctionElement<Scalar>& f, const DiscFamilyConfig<Scalar>& cfg,
                            const std::vector<Scalar>& t_grid, const SweepOptions<Scalar>& opt, const Tolerances& tol = {}) {
  const Scalar bound = Scalar(tol.boundary_pole);
  for (const auto& w : sunflower<Scalar>(opt.base_disc_samples, Scalar(1))) {
    const Scalar v = normalized_magnitude(f.denominator(), project<Scalar>(disc_eval(cfg, Scalar(0), w, tol)));
    if (!(v > bound)) throw HypothesisViolatedError<Scalar>("pole curve meets the base disc A_0", Scalar(0), w, v);
  }
  if (denominator_winding(f.denominator(), cfg, Scalar(0), opt.winding_nodes, tol) != 0) {
    throw HypothesisViolatedError<Scalar>("pole curve meets the base disc A_0 between samples", Scalar(0), Scalar(0), Scalar(0));
  }
  for (Scalar t : t_grid) {
    const auto [v, theta] = boundary_denominator_min(f.denominator(), cfg, t, opt.boundary_nodes, tol);
    if (!(v > bound)) {
      throw HypothesisViolatedError<Scalar>("pole curve meets the boundary circle of A_t", t, std::polar(Scalar(1), theta), v);
    }
  }
}

/// Continue f from A_0 along the family by boundary Cauchy integrals. Each
/// grid disc is checked against direct evaluation; the first disc whose
/// interior contains a pole is flagged and localized by bisection on the
/// winding number.
template <typename Scalar>
ContinuationReport<Scalar> continuation_sweep(const FunctionElement<Scalar>& f, const DiscFamilyConfig<Scalar>& cfg,
                                              const std::vector<Scalar>& t_grid, const SweepOptions<Scalar>& opt = {},
                                              const Tolerances& tol = {}) {
  check_sweep_hypotheses(f, cfg, t_grid, opt, tol);
  const int forced = origin_multiplicity(f, cfg, tol);
  auto poles = [&](Scalar t) {
    const int wn = denominator_winding(f.denominator(), cfg, t, opt.winding_nodes, tol);
    return std::pair{wn, wn - (t == Scalar(1) ? forced : 0)};
  };

  ContinuationReport<Scalar> rep;
  std::vector<std::complex<Scalar>> interior;
  for (int r = 1; r <= 12; ++r) {
    for (int k = 0; k < 32; ++k) {
      interior.push_back(std::polar(Scalar(r) / Scalar(13), two_pi<Scalar>() * Scalar(k) / Scalar(32)));
    }
  }
  for (Scalar t : t_grid) {
    ContinuationRecord<Scalar> rec;
    rec.t = t;
    rec.boundary_min = boundary_denominator_min(f.denominator(), cfg, t, opt.boundary_nodes, tol).first;
    std::tie(rec.winding, rec.pole_count) = poles(t);

    const auto cauchy = cauchy_reconstruct(f, cfg, t, opt.targets, opt.n_nodes, tol);
    for (std::size_t i = 0; i < opt.targets.size(); ++i) {
      const std::complex<Scalar> direct = element_on_disc(f, cfg, t, opt.targets[i], tol);
      const Scalar err = std::abs(cauchy[i] - direct);
      rec.reconstruction_error = std::max(rec.reconstruction_error, std::isfinite(err) ? err : std::numeric_limits<Scalar>::infinity());
    }
    Scalar boundary_max = 0;
    for (int k = 0; k < 256; ++k) {
      boundary_max = std::max(boundary_max, std::abs(element_on_disc(f, cfg, t, std::polar(Scalar(1), two_pi<Scalar>() * Scalar(k) / Scalar(256)), tol)));
    }
    Scalar interior_max = 0;
    for (const auto& w : interior) {
      const Scalar v = std::abs(element_on_disc(f, cfg, t, w, tol));
      interior_max = std::max(interior_max, std::isfinite(v) ? v : std::numeric_limits<Scalar>::infinity());
    }
    rec.interior_ratio = boundary_max > Scalar(0) ? interior_max / boundary_max : interior_max;
    rec.blowup = rec.interior_ratio > Scalar(tol.blowup_ratio) || rec.pole_count >= 1;
    rep.records.push_back(rec);
  }

  for (std::size_t k = 0; k < rep.records.size(); ++k) {
    if (!rep.records[k].blowup) continue;
    Scalar lo = k == 0 ? rep.records[k].t : rep.records[k - 1].t;
    Scalar hi = rep.records[k].t;
    if (k > 0 && rep.records[k].pole_count >= 1) {
      while (hi - lo > Scalar(0.25) * Scalar(tol.localization)) {
        const Scalar mid = Scalar(0.5) * (lo + hi);
        (poles(mid).second >= 1 ? hi : lo) = mid;
      }
    }
    rep.t_star = Scalar(0.5) * (lo + hi);
    rep.t_star_lo = lo;
    rep.t_star_hi = hi;
    rep.winding_at_t_star = poles(hi).first;
    break;
  }

  if (!t_grid.empty() && t_grid.back() == Scalar(1)) {
    rep.origin_value = cauchy_reconstruct(f, cfg, Scalar(1), {Scalar(0)}, opt.n_nodes, tol).front();
  }
  return rep;
}

template <typename Scalar> std::vector<Scalar> uniform_grid(int n) {
  std::vector<Scalar> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? Scalar(0) : Scalar(i) / Scalar(n - 1);
  return g;
}

/// A degree-1 element F/D whose pole line passes through A_{t_mark}(w_mark)
/// and, among a pencil of candidates through that point, stays farthest from
/// the base disc A_0.
template <typename Scalar>
FunctionElement<Scalar> pole_crossing_element(const DiscFamilyConfig<Scalar>& cfg, Scalar t_mark = Scalar(0.5),
                                              std::complex<Scalar> w_mark = Scalar(0.6), const Tolerances& tol = {}) {
  const C3Vector<Scalar> p = disc_eval(cfg, t_mark, w_mark, tol);
  const auto n = detail::annihilator(C3Vector<Scalar>(p / p.norm()));
  const auto base = sunflower<Scalar>(512, Scalar(1));
  std::vector<ProjectivePoint<Scalar>> base_points;
  for (const auto& w : base) base_points.push_back(project<Scalar>(disc_eval(cfg, Scalar(0), w, tol)));

  C3Vector<Scalar> best_a = n.row(0).transpose();
  Scalar best_margin = -1;
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j < 32; ++j) {
      const Scalar psi = Scalar(0.25) * two_pi<Scalar>() * Scalar(i) / Scalar(16);
      const std::complex<Scalar> phase = std::polar(Scalar(1), two_pi<Scalar>() * Scalar(j) / Scalar(32));
      const C3Vector<Scalar> a = std::cos(psi) * n.row(0).transpose() + std::sin(psi) * phase * n.row(1).transpose();
      const auto line = HomogeneousPolynomial<Scalar>::linear(a);
      Scalar margin = std::numeric_limits<Scalar>::infinity();
      for (const auto& q : base_points) margin = std::min(margin, normalized_magnitude(line, q));
      if (margin > best_margin) {
        best_margin = margin;
        best_a = a;
      }
      if (i == 0) break;
    }
  }
  return FunctionElement<Scalar>(HomogeneousPolynomial<Scalar>::linear(cfg.F.coeffs()),
                                 HomogeneousPolynomial<Scalar>::linear(best_a));
}

/// Result of minimizing |Q| over a two-chart parametrized set.
template <typename Scalar> struct CurveMinimum {
  Scalar value = std::numeric_limits<Scalar>::infinity();
  std::string chart; // disc chart (Re w, Im w) or circle-family chart (t, theta)
  Scalar param1 = 0;
  Scalar param2 = 0;
  C3Vector<Scalar> point = C3Vector<Scalar>::Zero();
};

/// A set covered by a disc chart |w| <= disc_radius and a circle-family
/// chart (t, theta), t in [0, t_max]. Both D-bar (cap, collar) and the
/// figure (base, cylinder) have this shape.
template <typename Scalar> struct TwoChartSet {
  std::string disc_name;
  std::string circles_name;
  Scalar disc_radius = 1;
  Scalar t_max = 1;
  std::function<ProjectivePoint<Scalar>(std::complex<Scalar>)> disc;
  std::function<ProjectivePoint<Scalar>(Scalar, Scalar)> circles;

  ProjectivePoint<Scalar> eval(bool in_disc, Scalar p1, Scalar p2) const {
    return in_disc ? disc(std::complex<Scalar>(p1, p2)) : circles(p1, p2);
  }

  /// Pull a chart point back into its domain; returns the squared excursion.
  Scalar clamp(bool in_disc, Scalar& p1, Scalar& p2) const {
    if (in_disc) {
      const Scalar r = std::hypot(p1, p2);
      if (r <= disc_radius) return 0;
      p1 *= disc_radius / r;
      p2 *= disc_radius / r;
      return (r - disc_radius) * (r - disc_radius);
    }
    const Scalar clamped = std::clamp(p1, Scalar(0), t_max);
    const Scalar excursion = (p1 - clamped) * (p1 - clamped);
    p1 = clamped;
    return excursion;
  }
};

template <typename Scalar> TwoChartSet<Scalar> charts_of(const SmoothedDisc<Scalar>& d) {
  return {"cap", "collar", Scalar(0.5), d.t_max(),
          [d](std::complex<Scalar> w) { return smoothed_disc_eval(d, SmoothedRegion<Scalar>{CapPoint<Scalar>{w}}); },
          [d](Scalar t, Scalar theta) { return smoothed_disc_eval(d, SmoothedRegion<Scalar>{CollarPoint<Scalar>{t, theta}}); }};
}

template <typename Scalar> TwoChartSet<Scalar> charts_of(const HartogsFigure<Scalar>& fig) {
  return {"base", "cylinder", Scalar(1), Scalar(1),
          [fig](std::complex<Scalar> w) { return figure_eval(fig, WPoint<Scalar>{BasePoint<Scalar>{w}}); },
          [fig](Scalar t, Scalar theta) { return figure_eval(fig, WPoint<Scalar>{CylinderPoint<Scalar>{theta, t}}); }};
}

/// Multistart Nelder-Mead for min |Q| over a two-chart set: starts alternate
/// between the charts, are drawn uniformly from `seed`, minimize |Q|^2 and are
/// polished by Newton's method on (Re, Im) of Q on the canonical representative.
template <typename Scalar>
CurveMinimum<Scalar> curve_min_on_charts(const TwoChartSet<Scalar>& set, const HomogeneousPolynomial<Scalar>& q, int multistart,
                                         std::uint64_t seed, int max_iter = 200) {
  if (q.is_zero()) throw Error(ErrorKind::InvalidArgument, "curve minimum: Q must be nonzero");
  if (multistart < 2) throw Error(ErrorKind::InvalidArgument, "curve minimum: need at least two starts");
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> unit(0, 1);
  CurveMinimum<Scalar> best;

  for (int s = 0; s < multistart; ++s) {
    const bool in_disc = s % 2 == 0;
    Vec2 x0;
    if (in_disc) {
      const std::complex<Scalar> w = std::polar(set.disc_radius * std::sqrt(unit(rng)), two_pi<Scalar>() * unit(rng));
      x0 << w.real(), w.imag();
    } else {
      x0 << set.t_max * unit(rng), two_pi<Scalar>() * unit(rng);
    }
    auto objective = [&](const Vec2& x) {
      Scalar p1 = x[0], p2 = x[1];
      const Scalar excursion = set.clamp(in_disc, p1, p2);
      return std::norm(q(set.eval(in_disc, p1, p2).unit())) + excursion;
    };
    const Vec2 step = in_disc ? Vec2(0.1 * set.disc_radius, 0.1 * set.disc_radius) : Vec2(0.05, 0.2);
    auto nm = nelder_mead<Scalar, 2>(objective, x0, step, max_iter);

    // Newton polish on h = Q(rep) / |rep|^d, a smooth map R^2 -> C near a zero.
    Vec2 x = nm.x;
    set.clamp(in_disc, x[0], x[1]);
    Scalar fx = objective(x);
    auto h = [&](const Vec2& y) {
      const auto p = set.eval(in_disc, y[0], y[1]);
      return q(p.rep()) / std::pow(p.rep().norm(), Scalar(q.degree()));
    };
    for (int it = 0; it < 8 && fx > Scalar(0); ++it) {
      const Scalar eps = Scalar(1e-7);
      const std::complex<Scalar> h0 = h(x);
      Eigen::Matrix<Scalar, 2, 2> jac;
      bool ok = true;
      for (int c = 0; c < 2 && ok; ++c) {
        Vec2 xp = x, xm = x;
        xp[c] += eps;
        xm[c] -= eps;
        Vec2 cp = xp, cm = xm;
        ok = set.clamp(in_disc, cp[0], cp[1]) == Scalar(0) && set.clamp(in_disc, cm[0], cm[1]) == Scalar(0);
        if (!ok) break;
        const std::complex<Scalar> dh = (h(xp) - h(xm)) / (Scalar(2) * eps);
        jac(0, c) = dh.real();
        jac(1, c) = dh.imag();
      }
      if (!ok || std::abs(jac.determinant()) < Scalar(1e-14)) break;
      Vec2 trial = x - jac.inverse() * Vec2(h0.real(), h0.imag());
      if (set.clamp(in_disc, trial[0], trial[1]) > Scalar(0)) break;
      const Scalar ft = objective(trial);
      if (!(ft < fx)) break;
      x = trial;
      fx = ft;
    }

    const auto p = set.eval(in_disc, x[0], x[1]);
    const Scalar value = normalized_magnitude(q, p);
    if (value < best.value) best = {value, in_disc ? set.disc_name : set.circles_name, x[0], x[1], p.rep()};
  }
  return best;
}

/// min |Q| over the smoothed disc (cap chart and collar chart).
template <typename Scalar>
CurveMinimum<Scalar> curve_min_on_disc(const SmoothedDisc<Scalar>& d, const HomogeneousPolynomial<Scalar>& q, int multistart,
                                       std::uint64_t seed, int max_iter = 200) {
  return curve_min_on_charts(charts_of(d), q, multistart, seed, max_iter);
}

/// min |Q| over the thin Hartogs figure (base chart and cylinder chart).
template <typename Scalar>
CurveMinimum<Scalar> curve_min_on_figure(const HartogsFigure<Scalar>& fig, const HomogeneousPolynomial<Scalar>& q, int multistart,
                                         std::uint64_t seed, int max_iter = 200) {
  return curve_min_on_charts(charts_of(fig), q, multistart, seed, max_iter);
}

template <typename Scalar> struct FigureMargin {
  Scalar value = std::numeric_limits<Scalar>::infinity();
  std::string part; // "base" or "cylinder"
  Scalar t = 0;
  std::complex<Scalar> w;
};

/// min |Q| over a dense sample of the figure (base disc and boundary cylinder).
template <typename Scalar>
FigureMargin<Scalar> figure_neighborhood_margin(const HartogsFigure<Scalar>& fig, const HomogeneousPolynomial<Scalar>& q,
                                                int density = 200) {
  FigureMargin<Scalar> m;
  for (const auto& w : sunflower<Scalar>(density * density, Scalar(1))) {
    const Scalar v = normalized_magnitude(q, figure_eval(fig, WPoint<Scalar>{BasePoint<Scalar>{w}}));
    if (v < m.value) m = {v, "base", Scalar(0), w};
  }
  for (int i = 0; i < density; ++i) {
    const Scalar t = Scalar(i) / Scalar(density - 1);
    for (int k = 0; k < density; ++k) {
      const Scalar theta = two_pi<Scalar>() * Scalar(k) / Scalar(density);
      const Scalar v = normalized_magnitude(q, figure_eval(fig, WPoint<Scalar>{CylinderPoint<Scalar>{theta, t}}));
      if (v < m.value) m = {v, "cylinder", t, std::polar(Scalar(1), theta)};
    }
  }
  return m;
}

} // namespace hartogs
