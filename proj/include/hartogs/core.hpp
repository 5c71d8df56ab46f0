#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace hartogs {

template <typename Scalar> using Complex = std::complex<Scalar>;

/// A point (or direction) of C^3.
template <typename Scalar> using C3Vector = Eigen::Matrix<std::complex<Scalar>, 3, 1>;

template <typename Scalar> using C3Matrix = Eigen::Matrix<std::complex<Scalar>, 3, 3>;

using C3Vectord = C3Vector<double>;
using C3Matrixd = C3Matrix<double>;
using Complexd = std::complex<double>;

enum class ErrorKind {
  ZeroVector,
  DegenerateQuadric,
  DomainError,
  ChartSingular,
  NoConvergence,
  CrossingOutsideDisc,
  ConfigInvalid,
  AllCoefficientsZero,
  BoundaryPole,
  HypothesisViolated,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::ZeroVector: return "ZeroVector";
  case ErrorKind::DegenerateQuadric: return "DegenerateQuadric";
  case ErrorKind::DomainError: return "DomainError";
  case ErrorKind::ChartSingular: return "ChartSingular";
  case ErrorKind::NoConvergence: return "NoConvergence";
  case ErrorKind::CrossingOutsideDisc: return "CrossingOutsideDisc";
  case ErrorKind::ConfigInvalid: return "ConfigInvalid";
  case ErrorKind::AllCoefficientsZero: return "AllCoefficientsZero";
  case ErrorKind::BoundaryPole: return "BoundaryPole";
  case ErrorKind::HypothesisViolated: return "HypothesisViolated";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Raised by line extraction; carries the modulus of the restricted discriminant.
class DegenerateQuadricError : public Error {
public:
  DegenerateQuadricError(const std::string& what, double discriminant)
      : Error(ErrorKind::DegenerateQuadric, what), discriminant_(discriminant) {}

  double discriminant() const noexcept { return discriminant_; }

private:
  double discriminant_;
};

/// Every numerical threshold used by the library, with defaults.
struct Tolerances {
  double zero_vector = 1e-14;       // project(): below this norm z counts as the origin
  double canonical_eq = 1e-12;      // componentwise equality of canonical representatives
  double degeneracy = 1e-10;        // relative discriminant of the restricted quadratic
  double line_residual = 1e-10;     // OriginLine defining equations
  double on_line = 1e-12;           // relative size of vanishing Bezout coefficients
  double bezout = 1e-8;             // roots {0, 1}
  double transversality = 1e-6;     // certificate threshold
  double newton = 1e-13;            // corrector stopping tolerance
  int newton_max_iter = 50;
  double chart_singular = 1e-12;    // |det| of the (z2, z3) Jacobian, relative
  double variety_residual = 1e-10;  // |P(A)|, |F(A) - phi|
  double origin_anchor = 1e-12;     // |A_1(0)|
  double holomorphy = 1e-8;
  double holomorphy_control = 1e-3; // perturbed control must exceed this
  double crossing_margin = 1e-8;
  double injectivity_margin = 1e-3; // lower bound of d_P / |dw| within one disc
  double collision = 1e-4;
  double exclusion = 1e-2;
  double taylor_zero = 1e-12;
  double blowup_point = 1e-10;
  double blowup_continuity = 1e-3;
  double schedule_flatness = 1e-20;
  double flatness_offset = 1e-2;    // flatness probed at t = 1 - offset
  double boundary_pole = 1e-8;
  double blowup_ratio = 1e3;
  double continuation = 1e-8;
  double localization = 1e-3;
  double curve_min = 1e-6;
};

template <typename Scalar> bool all_finite(const C3Vector<Scalar>& z) {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) return false;
  }
  return true;
}

/// Bilinear (non-conjugating) pairing a.z used for linear functionals on C^3.
template <typename Scalar>
std::complex<Scalar> bilinear(const C3Vector<Scalar>& a, const C3Vector<Scalar>& z) {
  return a.transpose() * z;
}

template <typename Scalar> constexpr Scalar two_pi() {
  return Scalar(2) * Scalar(3.14159265358979323846264338327950288L);
}

} // namespace hartogs
