#pragma once

#include <array>
#include <string>
#include <vector>

#include "hartogs/quadric.hpp"

namespace hartogs {

/// Linear submersion F(z) = a.z; its level sets F_c cut H in the curves S_c.
template <typename Scalar> class SubmersionF {
public:
  explicit SubmersionF(const C3Vector<Scalar>& coeffs) : coeffs_(coeffs) {
    if (!all_finite(coeffs_) || coeffs_.norm() == Scalar(0)) {
      throw Error(ErrorKind::InvalidArgument, "F must be a finite nonzero linear functional");
    }
  }

  /// F = z1 + z2 + z3.
  static SubmersionF standard() { return SubmersionF(C3Vector<Scalar>(1, 1, 1)); }

  const C3Vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  std::complex<Scalar> operator()(const C3Vector<Scalar>& z) const { return bilinear(coeffs_, z); }
  bool operator==(const SubmersionF& other) const { return coeffs_ == other.coeffs_; }

private:
  C3Vector<Scalar> coeffs_;
};

/// The family A_t(w) = point of S_{phi(t)} with first coordinate rho * w,
/// on the branch through the origin, with phi(t) = c0 (1 - t).
template <typename Scalar> struct DiscFamilyConfig {
  Quadric<Scalar> quadric = Quadric<Scalar>::standard();
  SubmersionF<Scalar> F = SubmersionF<Scalar>::standard();
  std::complex<Scalar> c0 = Scalar(0.1);
  Scalar rho = Scalar(0.2);
  Scalar epsilon = Scalar(1.0);
  Scalar V_radius = Scalar(0.5);
  /// Use the closed form when (quadric, F) is the standard pair.
  bool allow_closed_form = true;

  bool is_standard_pair() const {
    return quadric == Quadric<Scalar>::standard() && F == SubmersionF<Scalar>::standard();
  }
};

using DiscFamilyConfigd = DiscFamilyConfig<double>;

/// Cheap invariants: c0 != 0, |c0| <= V_radius, rho >= 2|c0|, positive radii.
template <typename Scalar> void check_structure(const DiscFamilyConfig<Scalar>& cfg) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
  if (!(cfg.rho > 0)) fail("rho > 0 violated");
  if (!(cfg.epsilon > 0)) fail("epsilon > 0 violated");
  if (!(cfg.V_radius > 0)) fail("V_radius > 0 violated");
  if (!std::isfinite(std::abs(cfg.c0))) fail("c0 must be finite");
  if (std::abs(cfg.c0) == Scalar(0)) fail("c0 != 0 violated: every disc would pass through the origin");
  if (std::abs(cfg.c0) > cfg.V_radius) fail("|c0| <= V_radius violated");
  if (cfg.rho < Scalar(2) * std::abs(cfg.c0)) fail("rho >= 2|c0| violated");
}

/// phi(t) = c0 (1 - t), an embedding of [0, 1] into V with phi(1) = 0.
template <typename Scalar> std::complex<Scalar> phi(const DiscFamilyConfig<Scalar>& cfg, Scalar t) {
  if (!(t >= Scalar(0) && t <= Scalar(1))) throw Error(ErrorKind::DomainError, "phi: t outside [0, 1]");
  return cfg.c0 * (Scalar(1) - t);
}

namespace detail {

template <typename Scalar> using C2Vector = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar> using C2Matrix = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Jacobian of (P, F) with respect to (z2, z3).
template <typename Scalar>
C2Matrix<Scalar> chart_jacobian(const DiscFamilyConfig<Scalar>& cfg, const C3Vector<Scalar>& z) {
  const C3Vector<Scalar> g = cfg.quadric.gradient(z);
  C2Matrix<Scalar> j;
  j << g[1], g[2], cfg.F.coeffs()[1], cfg.F.coeffs()[2];
  return j;
}

template <typename Scalar>
C2Matrix<Scalar> checked_inverse(const C2Matrix<Scalar>& j, const Tolerances& tol) {
  const std::complex<Scalar> det = j.determinant();
  const Scalar scale = std::max(Scalar(1), j.cwiseAbs().maxCoeff());
  if (std::abs(det) < Scalar(tol.chart_singular) * scale * scale) {
    throw Error(ErrorKind::ChartSingular, "the (z2, z3) Jacobian of (P, F) is singular: z1 is not a chart of S_c");
  }
  C2Matrix<Scalar> inv;
  inv << j(1, 1), -j(0, 1), -j(1, 0), j(0, 0);
  return inv / det;
}

template <typename Scalar>
C2Vector<Scalar> residual(const DiscFamilyConfig<Scalar>& cfg, const C3Vector<Scalar>& z, std::complex<Scalar> c) {
  return C2Vector<Scalar>(cfg.quadric(z), cfg.F(z) - c);
}

/// Newton corrector in (z2, z3) at fixed (c, z1). Returns false if it stalls.
template <typename Scalar>
bool correct(const DiscFamilyConfig<Scalar>& cfg, C3Vector<Scalar>& z, std::complex<Scalar> c, const Tolerances& tol) {
  for (int it = 0; it < tol.newton_max_iter; ++it) {
    const C2Vector<Scalar> r = residual(cfg, z, c);
    const C2Vector<Scalar> step = checked_inverse(chart_jacobian(cfg, z), tol) * r;
    z[1] -= step[0];
    z[2] -= step[1];
    const Scalar scale = std::max(Scalar(1), z.norm());
    if (step.norm() <= Scalar(tol.newton) * scale) return true;
    if (!all_finite(z)) return false;
  }
  return false;
}

/// Track the branch through the origin from (c, z1) = (0, 0) to the target:
/// first along c with z1 = 0, then along z1. Euler predictor, Newton corrector,
/// step halving on corrector failure.
template <typename Scalar>
C3Vector<Scalar> track_branch(const DiscFamilyConfig<Scalar>& cfg, std::complex<Scalar> c, std::complex<Scalar> z1,
                              const Tolerances& tol) {
  C3Vector<Scalar> z = C3Vector<Scalar>::Zero();
  for (int stage = 0; stage < 2; ++stage) {
    const std::complex<Scalar> target = stage == 0 ? c : z1;
    if (target == std::complex<Scalar>(0)) continue;
    auto at = [&](Scalar s) {
      return stage == 0 ? std::pair{s * c, std::complex<Scalar>(0)} : std::pair{c, s * z1};
    };
    Scalar s = 0;
    Scalar ds = Scalar(1) / 16;
    int halvings = 0;
    while (s < Scalar(1)) {
      const Scalar s_next = std::min(Scalar(1), s + ds);
      const auto [c_now, z1_now] = at(s);
      const auto [c_next, z1_next] = at(s_next);
      // Predictor: dz/ds = -J^{-1} dG/ds.
      C2Vector<Scalar> dg;
      const C3Vector<Scalar> grad = cfg.quadric.gradient(z);
      dg << grad[0] * (z1_next - z1_now), cfg.F.coeffs()[0] * (z1_next - z1_now) - (c_next - c_now);
      C3Vector<Scalar> trial = z;
      const C2Vector<Scalar> dy = -checked_inverse(chart_jacobian(cfg, z), tol) * dg;
      trial[0] = z1_next;
      trial[1] += dy[0];
      trial[2] += dy[1];
      bool ok = false;
      try {
        ok = correct(cfg, trial, c_next, tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ChartSingular || halvings > 30) throw;
      }
      if (ok) {
        z = trial;
        s = s_next;
        ds = std::min(Scalar(1) / 16, ds * Scalar(2));
      } else {
        ds /= 2;
        if (++halvings > 30) throw Error(ErrorKind::NoConvergence, "curve_point: Newton corrector did not converge");
      }
    }
  }
  return z;
}

} // namespace detail

/// The point of S_c = H cap F_c with first coordinate z1, on the branch of the
/// z1-chart that contains the origin of S_0.
template <typename Scalar>
C3Vector<Scalar> curve_point(const DiscFamilyConfig<Scalar>& cfg, std::complex<Scalar> c, std::complex<Scalar> z1,
                             const Tolerances& tol = {}) {
  if (cfg.allow_closed_form && cfg.is_standard_pair()) {
    const std::complex<Scalar> denom = Scalar(1) + z1;
    if (std::abs(denom) < Scalar(tol.chart_singular)) {
      throw Error(ErrorKind::ChartSingular, "z1 = -1 is outside the z1-chart of S_c");
    }
    const std::complex<Scalar> z2 = (c - z1) / denom;
    return C3Vector<Scalar>(z1, z2, z1 * z2);
  }
  return detail::track_branch(cfg, c, z1, tol);
}

/// dA/dz1 along S_c at z (implicit differentiation of (P, F) = (0, c)).
template <typename Scalar>
C3Vector<Scalar> curve_tangent(const DiscFamilyConfig<Scalar>& cfg, const C3Vector<Scalar>& z, const Tolerances& tol = {}) {
  const C3Vector<Scalar> grad = cfg.quadric.gradient(z);
  const detail::C2Vector<Scalar> rhs(grad[0], cfg.F.coeffs()[0]);
  const detail::C2Vector<Scalar> d = -detail::checked_inverse(detail::chart_jacobian(cfg, z), tol) * rhs;
  return C3Vector<Scalar>(Scalar(1), d[0], d[1]);
}

/// A_t(w) = curve_point(phi(t), rho w) for |w| <= 1.
template <typename Scalar>
C3Vector<Scalar> disc_eval(const DiscFamilyConfig<Scalar>& cfg, Scalar t, std::complex<Scalar> w, const Tolerances& tol = {}) {
  if (!(std::abs(w) <= Scalar(1) + Scalar(1e-12))) throw Error(ErrorKind::DomainError, "disc_eval: |w| > 1");
  return curve_point(cfg, phi(cfg, t), cfg.rho * w, tol);
}

/// dA_t/dw.
template <typename Scalar>
C3Vector<Scalar> disc_derivative(const DiscFamilyConfig<Scalar>& cfg, Scalar t, std::complex<Scalar> w, const Tolerances& tol = {}) {
  const C3Vector<Scalar> z = curve_point(cfg, phi(cfg, t), cfg.rho * w, tol);
  return cfg.rho * curve_tangent(cfg, z, tol);
}

/// One member A_t of the family, usable as a map w -> C^3.
template <typename Scalar> struct AnalyticDisc {
  DiscFamilyConfig<Scalar> config;
  Scalar t = 0;
  Tolerances tol{};

  C3Vector<Scalar> operator()(std::complex<Scalar> w) const { return disc_eval(config, t, w, tol); }
};

/// Holomorphy defect of `map` on the circle |w - center| = radius using n
/// trapezoid nodes: the worst coordinate of the mean-value defect
/// |A(center) - mean A| and of the Cauchy-Goursat moments |mean A e^{ik theta}|,
/// k = 1..4, which vanish for holomorphic maps. The moments catch harmonic
/// non-holomorphic terms such as conj(w) that satisfy the mean-value property.
template <typename Scalar, typename Map>
Scalar holomorphy_residual(const Map& map, std::complex<Scalar> center, Scalar radius, int n_samples) {
  if (n_samples < 4) throw Error(ErrorKind::InvalidArgument, "holomorphy_residual needs at least 4 nodes");
  if (!(radius > 0) || std::abs(center) + radius > Scalar(1) + Scalar(1e-12)) {
    throw Error(ErrorKind::DomainError, "holomorphy_residual: circle leaves the unit disc");
  }
  constexpr int kMoments = 4;
  C3Vector<Scalar> mean = C3Vector<Scalar>::Zero();
  std::array<C3Vector<Scalar>, kMoments> moments;
  for (auto& m : moments) m.setZero();
  for (int k = 0; k < n_samples; ++k) {
    const Scalar theta = two_pi<Scalar>() * Scalar(k) / Scalar(n_samples);
    const std::complex<Scalar> e = std::polar(Scalar(1), theta);
    const C3Vector<Scalar> value = map(center + radius * e);
    mean += value;
    std::complex<Scalar> ek = e;
    for (int j = 0; j < kMoments; ++j, ek *= e) moments[j] += value * ek;
  }
  mean /= Scalar(n_samples);
  Scalar worst = (map(center) - mean).cwiseAbs().maxCoeff();
  for (auto& m : moments) worst = std::max(worst, (m / Scalar(n_samples)).cwiseAbs().maxCoeff());
  return worst;
}

template <typename Scalar> struct LineCrossing {
  std::complex<Scalar> w;
  C3Vector<Scalar> point;
  Scalar margin = 0;   // |d/dw| of the two coordinates vanishing on the line
  Scalar residual = 0; // size of those coordinates at the crossing
};

namespace detail {

/// Rows spanning the bilinear annihilator of v, each of unit norm.
template <typename Scalar> Eigen::Matrix<std::complex<Scalar>, 2, 3> annihilator(const C3Vector<Scalar>& v) {
  int m = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) > std::abs(v[m])) m = i;
  }
  Eigen::Matrix<std::complex<Scalar>, 2, 3> n = Eigen::Matrix<std::complex<Scalar>, 2, 3>::Zero();
  for (int r = 0; r < 2; ++r) {
    const int a = (m + 1 + r) % 3;
    n(r, a) = v[m];
    n(r, m) = -v[a];
    n.row(r) /= n.row(r).norm();
  }
  return n;
}

} // namespace detail

/// Where A_t meets L1 and L2, found by Gauss-Newton in w on the two
/// coordinates vanishing on each line, seeded at the exact point
/// (c / F(v)) v of L cap F_c.
template <typename Scalar>
std::array<LineCrossing<Scalar>, 2> line_crossings(const DiscFamilyConfig<Scalar>& cfg, Scalar t, const Tolerances& tol = {}) {
  if (!(t >= Scalar(0) && t < Scalar(1))) throw Error(ErrorKind::DomainError, "line_crossings: t outside [0, 1)");
  const std::complex<Scalar> c = phi(cfg, t);
  const auto lines = lines_through_origin(cfg.quadric, tol);
  std::array<LineCrossing<Scalar>, 2> out;
  for (int i = 0; i < 2; ++i) {
    const C3Vector<Scalar> v = lines[i].direction.unit();
    const auto n = detail::annihilator(v);
    auto g = [&](std::complex<Scalar> w) -> detail::C2Vector<Scalar> {
      return n * curve_point(cfg, c, cfg.rho * w, tol);
    };
    auto solve_from = [&](std::complex<Scalar> w) {
      for (int it = 0; it < tol.newton_max_iter; ++it) {
        const C3Vector<Scalar> z = curve_point(cfg, c, cfg.rho * w, tol);
        const detail::C2Vector<Scalar> jac = n * (cfg.rho * curve_tangent(cfg, z, tol));
        const detail::C2Vector<Scalar> r = n * z;
        const Scalar jj = jac.squaredNorm();
        if (jj == Scalar(0)) break;
        const std::complex<Scalar> step = jac.dot(r) / jj;
        w -= step;
        if (std::abs(step) <= Scalar(tol.newton)) break;
      }
      return w;
    };
    const std::complex<Scalar> fv = cfg.F(v);
    std::complex<Scalar> w = solve_from(std::abs(fv) > Scalar(0) ? (c / fv * v)[0] / cfg.rho : std::complex<Scalar>(0));
    const Scalar accept = Scalar(1e3) * Scalar(tol.newton) * std::max(Scalar(1), std::abs(c));
    if (!(g(w).norm() <= accept)) {
      // Seed landed on the other sheet of the z1-projection: restart from the
      // best point of a polar grid on the unit disc.
      Scalar best = std::numeric_limits<Scalar>::infinity();
      std::complex<Scalar> seed = 0;
      for (int ir = 0; ir <= 32; ++ir) {
        for (int it = 0; it < 64; ++it) {
          const std::complex<Scalar> cand = std::polar(Scalar(ir) / 32, two_pi<Scalar>() * Scalar(it) / 64);
          const Scalar val = g(cand).norm();
          if (val < best) {
            best = val;
            seed = cand;
          }
        }
      }
      w = solve_from(seed);
      if (!(g(w).norm() <= accept)) {
        throw Error(ErrorKind::NoConvergence, "line_crossings: no crossing with L" + std::to_string(i + 1));
      }
    }
    if (std::abs(w) >= Scalar(1)) {
      throw Error(ErrorKind::CrossingOutsideDisc, "line_crossings: crossing with L" + std::to_string(i + 1) + " has |w| >= 1");
    }
    const C3Vector<Scalar> z = curve_point(cfg, c, cfg.rho * w, tol);
    out[i].w = w;
    out[i].point = z;
    out[i].residual = (n * z).norm();
    out[i].margin = (n * (cfg.rho * curve_tangent(cfg, z, tol))).norm();
  }
  return out;
}

/// Sup of |A_t(w)| over a (t, polar w) sample grid and where it is attained.
template <typename Scalar> struct ContainmentSample {
  Scalar sup_norm = 0;
  Scalar t = 0;
  std::complex<Scalar> w;
};

template <typename Scalar>
ContainmentSample<Scalar> containment_sup(const DiscFamilyConfig<Scalar>& cfg, int n_t, int n_r, int n_theta,
                                          const Tolerances& tol = {}) {
  ContainmentSample<Scalar> s;
  for (int i = 0; i < n_t; ++i) {
    const Scalar t = n_t == 1 ? Scalar(0) : Scalar(i) / Scalar(n_t - 1);
    for (int r = 1; r <= n_r; ++r) {
      for (int k = 0; k < n_theta; ++k) {
        const std::complex<Scalar> w = std::polar(Scalar(r) / Scalar(n_r), two_pi<Scalar>() * Scalar(k) / Scalar(n_theta));
        const Scalar v = disc_eval(cfg, t, w, tol).norm();
        if (v > s.sup_norm) s = {v, t, w};
      }
    }
  }
  return s;
}

/// Full validation: structure, distinct lines, transversality, the z1-chart at
/// the origin and containment in B(0, epsilon). Throws ConfigInvalid naming
/// the first violated invariant.
template <typename Scalar> void validate_family(const DiscFamilyConfig<Scalar>& cfg, const Tolerances& tol = {}) {
  check_structure(cfg);
  std::array<OriginLine<Scalar>, 2> lines{OriginLine<Scalar>{project<Scalar>(C3Vector<Scalar>(1, 0, 0))},
                                          OriginLine<Scalar>{project<Scalar>(C3Vector<Scalar>(0, 1, 0))}};
  try {
    lines = lines_through_origin(cfg.quadric, tol);
  } catch (const DegenerateQuadricError& e) {
    throw Error(ErrorKind::ConfigInvalid, std::string("quadric is not generic (") + e.what() + ")");
  }
  const auto cert = transversality_certificate(cfg.quadric, cfg.F.coeffs(), lines, tol);
  if (!cert.passed()) {
    throw Error(ErrorKind::ConfigInvalid, "transversality certificate failed (min margin " + std::to_string(cert.min_margin()) + ")");
  }
  try {
    const auto s = containment_sup(cfg, 9, 4, 32, tol);
    if (!(s.sup_norm < cfg.epsilon)) {
      throw Error(ErrorKind::ConfigInvalid, "containment sup |A_t(w)| < epsilon violated (sup " + std::to_string(s.sup_norm) + ")");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigInvalid) throw;
    throw Error(ErrorKind::ConfigInvalid, std::string("disc family cannot be evaluated: ") + e.what());
  }
}

} // namespace hartogs
