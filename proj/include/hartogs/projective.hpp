#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "hartogs/core.hpp"

namespace hartogs {

/// A point of P_2(C) stored through a canonical representative: the
/// largest-modulus coordinate (first one on ties) is scaled to exactly 1.
template <typename Scalar> class ProjectivePoint {
public:
  const C3Vector<Scalar>& rep() const noexcept { return rep_; }
  int norm_index() const noexcept { return norm_index_; }

  /// Representative of unit Euclidean norm.
  C3Vector<Scalar> unit() const { return rep_ / rep_.norm(); }

  /// Canonical form of an arbitrary nonzero representative. Canonical input
  /// is returned unchanged, so canonicalize(canonicalize(z)) is bit-identical.
  static ProjectivePoint canonicalize(const C3Vector<Scalar>& z) {
    const Scalar slack = Scalar(8) * std::numeric_limits<Scalar>::epsilon();
    Scalar max_mod = 0;
    for (int i = 0; i < 3; ++i) max_mod = std::max(max_mod, std::abs(z[i]));
    for (int k = 0; k < 3; ++k) {
      if (z[k] == std::complex<Scalar>(1, 0) && max_mod <= Scalar(1) + slack) {
        return ProjectivePoint(z, k);
      }
    }
    int index = 0;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(z[i]) >= max_mod * (Scalar(1) - slack)) {
        index = i;
        break;
      }
    }
    C3Vector<Scalar> rep = z / z[index];
    rep[index] = std::complex<Scalar>(1, 0);
    return ProjectivePoint(rep, index);
  }

private:
  ProjectivePoint(const C3Vector<Scalar>& rep, int index) : rep_(rep), norm_index_(index) {}

  C3Vector<Scalar> rep_;
  int norm_index_ = 0;
};

using ProjectivePointd = ProjectivePoint<double>;

/// Phi: C^3 \ {0} -> P_2(C), the class of the line through z and the origin.
template <typename Scalar>
ProjectivePoint<Scalar> project(const C3Vector<Scalar>& z, Scalar zero_eps = Scalar(1e-14)) {
  if (!all_finite(z)) throw Error(ErrorKind::InvalidArgument, "non-finite coordinate in project()");
  if (z.norm() < zero_eps) throw Error(ErrorKind::ZeroVector, "projection of a vector at the origin");
  return ProjectivePoint<Scalar>::canonicalize(z);
}

template <typename Scalar>
ProjectivePoint<Scalar> make_point(std::complex<Scalar> a, std::complex<Scalar> b, std::complex<Scalar> c) {
  return project<Scalar>(C3Vector<Scalar>(a, b, c));
}

/// Chordal Fubini-Study distance sqrt(1 - |<p,q>|^2), evaluated as the norm of
/// the component of one unit representative orthogonal to the other, which
/// keeps full relative accuracy for nearby points.
template <typename Scalar>
Scalar proj_distance(const ProjectivePoint<Scalar>& p, const ProjectivePoint<Scalar>& q) {
  const C3Vector<Scalar> u = p.unit();
  const C3Vector<Scalar> v = q.unit();
  const Scalar d_uv = (u - v.dot(u) * v).norm();
  const Scalar d_vu = (v - u.dot(v) * u).norm();
  return std::min(Scalar(1), Scalar(0.5) * (d_uv + d_vu));
}

/// Exponent triple (i, j, k) of the monomial z1^i z2^j z3^k.
using Exponent = std::array<int, 3>;

/// Homogeneous polynomial on C^3 stored sparsely by exponent triple.
template <typename Scalar> class HomogeneousPolynomial {
public:
  using Terms = std::map<Exponent, std::complex<Scalar>>;

  explicit HomogeneousPolynomial(int degree = 0) : degree_(degree) {
    if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative polynomial degree");
  }

  HomogeneousPolynomial(int degree, const Terms& terms) : HomogeneousPolynomial(degree) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  /// Linear form a.z.
  static HomogeneousPolynomial linear(const C3Vector<Scalar>& a) {
    HomogeneousPolynomial q(1);
    q.add_term({1, 0, 0}, a[0]);
    q.add_term({0, 1, 0}, a[1]);
    q.add_term({0, 0, 1}, a[2]);
    return q;
  }

  static HomogeneousPolynomial constant(std::complex<Scalar> c) {
    HomogeneousPolynomial q(0);
    q.add_term({0, 0, 0}, c);
    return q;
  }

  void add_term(const Exponent& e, std::complex<Scalar> c) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_) {
      throw Error(ErrorKind::InvalidArgument, "monomial exponents do not sum to the degree");
    }
    auto& slot = terms_[e];
    slot += c;
    if (slot == std::complex<Scalar>(0)) terms_.erase(e);
  }

  int degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient_norm() const {
    Scalar s = 0;
    for (const auto& [e, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
  }

  std::complex<Scalar> operator()(const C3Vector<Scalar>& z) const {
    const auto pw = powers(z);
    std::complex<Scalar> acc(0);
    for (const auto& [e, c] : terms_) acc += c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
    return acc;
  }

  /// Holomorphic gradient (dQ/dz1, dQ/dz2, dQ/dz3).
  C3Vector<Scalar> gradient(const C3Vector<Scalar>& z) const {
    const auto pw = powers(z);
    C3Vector<Scalar> g = C3Vector<Scalar>::Zero();
    for (const auto& [e, c] : terms_) {
      for (int j = 0; j < 3; ++j) {
        if (e[j] == 0) continue;
        std::complex<Scalar> m = c * Scalar(e[j]);
        for (int i = 0; i < 3; ++i) m *= pw[i][i == j ? e[i] - 1 : e[i]];
        g[j] += m;
      }
    }
    return g;
  }

private:
  std::array<std::vector<std::complex<Scalar>>, 3> powers(const C3Vector<Scalar>& z) const {
    std::array<std::vector<std::complex<Scalar>>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      pw[i].resize(static_cast<std::size_t>(degree_) + 1);
      pw[i][0] = 1;
      for (int k = 1; k <= degree_; ++k) pw[i][k] = pw[i][k - 1] * z[i];
    }
    return pw;
  }

  int degree_ = 0;
  Terms terms_;
};

using HomogeneousPolynomiald = HomogeneousPolynomial<double>;

template <typename Scalar>
std::complex<Scalar> eval_homogeneous(const HomogeneousPolynomial<Scalar>& q, const C3Vector<Scalar>& z) {
  return q(z);
}

/// sum_j z_j dQ/dz_j - d Q; identically zero for homogeneous Q, so its size
/// measures floating-point evaluation error.
template <typename Scalar>
std::complex<Scalar> euler_residual(const HomogeneousPolynomial<Scalar>& q, const C3Vector<Scalar>& z) {
  return (q.gradient(z).transpose() * z).value() - Scalar(q.degree()) * q(z);
}

/// |Q| on the unit-norm representative of p: scale invariant, zero iff p is on {Q = 0}.
template <typename Scalar>
Scalar normalized_magnitude(const HomogeneousPolynomial<Scalar>& q, const ProjectivePoint<Scalar>& p) {
  return std::abs(q(p.unit()));
}

} // namespace hartogs
