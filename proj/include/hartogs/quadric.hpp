#pragma once

#include <array>
#include <vector>

#include "hartogs/projective.hpp"

namespace hartogs {

/// Quadric hypersurface H = {P = 0} through the origin, P(z) = l.z + z^T S z.
template <typename Scalar> class Quadric {
public:
  Quadric(const C3Vector<Scalar>& linear, const C3Matrix<Scalar>& quad)
      : linear_(linear), quad_(Scalar(0.5) * (quad + quad.transpose())) {
    if (!all_finite(linear_) || !quad_.allFinite()) {
      throw Error(ErrorKind::InvalidArgument, "non-finite quadric coefficient");
    }
    if (linear_.norm() == Scalar(0)) {
      throw Error(ErrorKind::InvalidArgument, "quadric has no linear part, H is singular at the origin");
    }
  }

  /// P = z3 - z1 z2.
  static Quadric standard() {
    C3Matrix<Scalar> s = C3Matrix<Scalar>::Zero();
    s(0, 1) = s(1, 0) = Scalar(-0.5);
    return Quadric(C3Vector<Scalar>(0, 0, 1), s);
  }

  const C3Vector<Scalar>& linear() const noexcept { return linear_; }
  const C3Matrix<Scalar>& quad() const noexcept { return quad_; }

  std::complex<Scalar> operator()(const C3Vector<Scalar>& z) const {
    return bilinear(linear_, z) + std::complex<Scalar>(z.transpose() * quad_ * z);
  }

  C3Vector<Scalar> gradient(const C3Vector<Scalar>& z) const { return linear_ + Scalar(2) * quad_ * z; }

  Quadric scaled(std::complex<Scalar> lambda) const { return Quadric(lambda * linear_, lambda * quad_); }

  bool operator==(const Quadric& other) const {
    return linear_ == other.linear_ && quad_ == other.quad_;
  }

private:
  C3Vector<Scalar> linear_;
  C3Matrix<Scalar> quad_;
};

using Quadricd = Quadric<double>;

template <typename Scalar>
C3Vector<Scalar> gradient(const Quadric<Scalar>& h, const C3Vector<Scalar>& z) {
  return h.gradient(z);
}

/// A complex line through the origin of C^3.
template <typename Scalar> struct OriginLine {
  ProjectivePoint<Scalar> direction;

  /// max(|l.v|, |v^T S v|) on the unit representative.
  Scalar residual(const Quadric<Scalar>& h) const {
    const C3Vector<Scalar> v = direction.unit();
    return std::max(std::abs(bilinear(h.linear(), v)), std::abs(std::complex<Scalar>(v.transpose() * h.quad() * v)));
  }
};

/// Roots (x : y) of a x^2 + 2 b xy + c y^2, as homogeneous pairs. The larger
/// of -(b +- sqrt(b^2 - ac)) is used for both roots so neither suffers cancellation.
template <typename Scalar>
std::array<std::array<std::complex<Scalar>, 2>, 2>
homogeneous_quadratic_roots(std::complex<Scalar> a, std::complex<Scalar> b, std::complex<Scalar> c) {
  const std::complex<Scalar> sq = std::sqrt(b * b - a * c);
  const std::complex<Scalar> plus = b + sq;
  const std::complex<Scalar> minus = b - sq;
  const std::complex<Scalar> q = -(std::abs(plus) >= std::abs(minus) ? plus : minus);
  return {{{q, a}, {c, q}}};
}

/// The two lines through the origin contained in H.
template <typename Scalar>
std::array<OriginLine<Scalar>, 2> lines_through_origin(const Quadric<Scalar>& h, const Tolerances& tol = {}) {
  const C3Vector<Scalar>& l = h.linear();
  int m = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(l[i]) > std::abs(l[m])) m = i;
  }
  const int a = (m + 1) % 3;
  const int b = (m + 2) % 3;
  C3Vector<Scalar> u1 = C3Vector<Scalar>::Zero();
  C3Vector<Scalar> u2 = C3Vector<Scalar>::Zero();
  u1[a] = 1;
  u1[m] = -l[a] / l[m];
  u2[b] = 1;
  u2[m] = -l[b] / l[m];

  const auto& s = h.quad();
  const std::complex<Scalar> ca = u1.transpose() * s * u1;
  const std::complex<Scalar> cb = u1.transpose() * s * u2;
  const std::complex<Scalar> cc = u2.transpose() * s * u2;
  const Scalar scale = std::max({std::abs(ca), std::abs(cb), std::abs(cc)});
  const Scalar disc = std::abs(cb * cb - ca * cc);

  if (scale <= Scalar(tol.degeneracy) * std::max(Scalar(1), Scalar(s.norm()))) {
    throw DegenerateQuadricError("restricted quadratic vanishes identically: H contains a plane of lines",
                                 static_cast<double>(disc));
  }
  if (disc < Scalar(tol.degeneracy) * scale * scale) {
    throw DegenerateQuadricError("restricted quadratic has a double root: tangent plane meets H in one line",
                                 static_cast<double>(disc));
  }

  const auto roots = homogeneous_quadratic_roots(ca, cb, cc);
  std::array<OriginLine<Scalar>, 2> lines{
      OriginLine<Scalar>{project<Scalar>(roots[0][0] * u1 + roots[0][1] * u2)},
      OriginLine<Scalar>{project<Scalar>(roots[1][0] * u1 + roots[1][1] * u2)}};
  return lines;
}

/// Roots in t of P(t z) = t (l.z) + t^2 (z^T S z).
template <typename Scalar> struct BezoutRoots {
  enum class Kind { Finite, OnLine };
  Kind kind = Kind::Finite;
  std::vector<std::complex<Scalar>> roots; // with multiplicity; empty for OnLine
  bool root_at_infinity = false;           // quadratic coefficient vanished
  std::complex<Scalar> linear_coeff;
  std::complex<Scalar> quadratic_coeff;

  bool on_line() const noexcept { return kind == Kind::OnLine; }
};

template <typename Scalar>
BezoutRoots<Scalar> bezout_intersection(const Quadric<Scalar>& h, const C3Vector<Scalar>& z, const Tolerances& tol = {}) {
  if (z.norm() < Scalar(tol.zero_vector)) throw Error(ErrorKind::ZeroVector, "bezout_intersection at the origin");
  BezoutRoots<Scalar> out;
  out.linear_coeff = bilinear(h.linear(), z);
  out.quadratic_coeff = z.transpose() * h.quad() * z;
  const Scalar zn = z.norm();
  const bool lin_zero = std::abs(out.linear_coeff) <= Scalar(tol.on_line) * h.linear().norm() * zn;
  const bool quad_zero = std::abs(out.quadratic_coeff) <= Scalar(tol.on_line) * Scalar(h.quad().norm()) * zn * zn;
  if (lin_zero && quad_zero) {
    out.kind = BezoutRoots<Scalar>::Kind::OnLine;
    return out;
  }
  out.roots.push_back(0);
  if (quad_zero) {
    out.root_at_infinity = true;
  } else {
    out.roots.push_back(lin_zero ? std::complex<Scalar>(0) : -out.linear_coeff / out.quadratic_coeff);
  }
  return out;
}

/// Margins certifying that {F = 0} meets L1, L2 and H transversally at the origin.
template <typename Scalar> struct TransversalityReport {
  Scalar line1 = 0;       // |dF(v1)| on the unit direction of L1
  Scalar line2 = 0;       // |dF(v2)|
  Scalar hypersurface = 0; // smallest singular value of [grad P(0); dF]
  Scalar threshold = 0;

  Scalar min_margin() const { return std::min({line1, line2, hypersurface}); }
  bool passed() const { return min_margin() > threshold; }
};

template <typename Scalar>
TransversalityReport<Scalar> transversality_certificate(const Quadric<Scalar>& h, const C3Vector<Scalar>& f,
                                                        const std::array<OriginLine<Scalar>, 2>& lines,
                                                        const Tolerances& tol = {}) {
  if (f.norm() == Scalar(0)) throw Error(ErrorKind::InvalidArgument, "F must be a nonzero functional");
  TransversalityReport<Scalar> r;
  r.threshold = Scalar(tol.transversality);
  r.line1 = std::abs(bilinear(f, lines[0].direction.unit()));
  r.line2 = std::abs(bilinear(f, lines[1].direction.unit()));
  Eigen::Matrix<std::complex<Scalar>, 2, 3> rows;
  rows.row(0) = h.gradient(C3Vector<Scalar>::Zero()).transpose();
  rows.row(1) = f.transpose();
  Eigen::JacobiSVD<Eigen::Matrix<std::complex<Scalar>, 2, 3>> svd(rows);
  r.hypersurface = svd.singularValues()(1);
  return r;
}

} // namespace hartogs
