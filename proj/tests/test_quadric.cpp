#include <doctest.h>

#include "hartogs/quadric.hpp"
#include "test_support.hpp"

using namespace hartogs;
using hartogs::test::random_complex;
using hartogs::test::random_vector;

namespace {

Quadricd random_quadric(std::mt19937_64& rng) {
  C3Matrixd s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s(i, j) = random_complex(rng);
  }
  return Quadricd(random_vector(rng), s);
}

// z1 + z2 + z1 z2: the tangent plane z1 + z2 = 0 meets H in the single double line [1:-1:0].
Quadricd degenerate_quadric() {
  C3Matrixd s = C3Matrixd::Zero();
  s(0, 1) = s(1, 0) = 0.5;
  return Quadricd(C3Vectord(1, 1, 0), s);
}

bool same_class(const ProjectivePoint<double>& p, const C3Vectord& z, double tol) {
  return proj_distance(p, project<double>(z)) < tol;
}

} // namespace

TEST_CASE("default quadric evaluates z3 - z1 z2") {
  const auto h = Quadricd::standard();
  CHECK(h(C3Vectord(1, 2, 3)) == std::complex<double>(1, 0));
  const C3Vectord g = gradient(h, C3Vectord(1, 2, 3));
  CHECK(std::abs(g[0] - (-2.0)) < 1e-15);
  CHECK(std::abs(g[1] - (-1.0)) < 1e-15);
  CHECK(std::abs(g[2] - 1.0) < 1e-15);
}

TEST_CASE("gradient matches central differences on random quadrics") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const auto h = random_quadric(rng);
    const C3Vectord z = random_vector(rng);
    const C3Vectord g = h.gradient(z);
    for (int j = 0; j < 3; ++j) {
      C3Vectord zp = z, zm = z;
      zp[j] += 1e-6;
      zm[j] -= 1e-6;
      REQUIRE(std::abs((h(zp) - h(zm)) / 2e-6 - g[j]) < 1e-7 * std::max(1.0, std::abs(g[j])));
    }
  }
}

TEST_CASE("quadric without linear part is rejected") {
  CHECK_THROWS_AS(Quadricd(C3Vectord::Zero(), C3Matrixd::Identity()), Error);
}

TEST_CASE("default lines are the first two coordinate axes") {
  const auto lines = lines_through_origin(Quadricd::standard());
  const bool direct = same_class(lines[0].direction, C3Vectord(1, 0, 0), 1e-10) &&
                      same_class(lines[1].direction, C3Vectord(0, 1, 0), 1e-10);
  const bool swapped = same_class(lines[1].direction, C3Vectord(1, 0, 0), 1e-10) &&
                       same_class(lines[0].direction, C3Vectord(0, 1, 0), 1e-10);
  CHECK((direct || swapped));
}

TEST_CASE("extracted lines lie in H and are distinct") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 500; ++k) {
    const auto h = random_quadric(rng);
    const auto lines = lines_through_origin(h);
    for (const auto& l : lines) {
      REQUIRE(l.residual(h) < 1e-10 * std::max(1.0, h.quad().norm()));
      // Every point of the line is on H.
      const C3Vectord v = l.direction.unit();
      const std::complex<double> s = random_complex(rng);
      REQUIRE(std::abs(h(C3Vectord(s * v))) < 1e-9 * std::max(1.0, std::norm(s) * h.quad().norm()));
    }
    REQUIRE(proj_distance(lines[0].direction, lines[1].direction) > 1e-8);
  }
}

TEST_CASE("degenerate quadric is reported with its discriminant") {
  try {
    lines_through_origin(degenerate_quadric());
    FAIL("expected DegenerateQuadric");
  } catch (const DegenerateQuadricError& e) {
    CHECK(e.kind() == ErrorKind::DegenerateQuadric);
    CHECK(e.discriminant() < 1e-10);
  }
  // A pure linear quadric contains the whole tangent plane.
  CHECK_THROWS_AS(lines_through_origin(Quadricd(C3Vectord(0, 0, 1), C3Matrixd::Zero())), DegenerateQuadricError);
}

TEST_CASE("homogeneous quadratic roots survive cancellation") {
  // x^2 + 2 b x y + c y^2 with b = 1e8: roots x/y = -b -+ sqrt(b^2 - c), one of them tiny.
  const std::complex<double> a = 1.0, b = 1e8, c = 1.0;
  const auto r = homogeneous_quadratic_roots(a, b, c);
  for (const auto& root : r) {
    const std::complex<double> x = root[0], y = root[1];
    const double scale = std::norm(x) + std::norm(y);
    REQUIRE(std::abs(a * x * x + 2.0 * b * x * y + c * y * y) < 1e-6 * scale * std::abs(b));
  }
  const std::complex<double> small = r[1][0] / r[1][1];
  const std::complex<double> big = r[0][0] / r[0][1];
  CHECK(std::abs(small.real() - (-0.5e-8)) < 1e-20);
  CHECK(std::abs(big.real() - (-2e8)) < 1.0);
}

TEST_CASE("Bezout roots on the default quadric") {
  const auto h = Quadricd::standard();
  // P(t (1, 2, 3)) = 3 t - 2 t^2.
  const auto r = bezout_intersection(h, C3Vectord(1, 2, 3));
  REQUIRE_FALSE(r.on_line());
  REQUIRE(r.roots.size() == 2);
  CHECK(std::abs(r.roots[0]) == 0.0);
  CHECK(std::abs(r.roots[1] - 1.5) < 1e-15);

  const auto on_l1 = bezout_intersection(h, C3Vectord(2, 0, 0));
  CHECK(on_l1.on_line());
  CHECK(on_l1.roots.empty());

  // (0, 0, 1): the quadratic coefficient vanishes, second root at infinity.
  const auto inf = bezout_intersection(h, C3Vectord(0, 0, 1));
  CHECK(inf.root_at_infinity);
  CHECK(inf.roots.size() == 1);

  // Tangent direction through the origin: double root at 0.
  const auto tangent = bezout_intersection(h, C3Vectord(1, 1, 0));
  REQUIRE(tangent.roots.size() == 2);
  CHECK(std::abs(tangent.roots[1]) == 0.0);

  CHECK_THROWS_AS(bezout_intersection(h, C3Vectord(C3Vectord::Zero())), Error);
}

TEST_CASE("points of H off the lines meet H again only at the origin") {
  std::mt19937_64 rng(23);
  const auto h = Quadricd::standard();
  for (int k = 0; k < 1000; ++k) {
    const std::complex<double> z1 = random_complex(rng), z2 = random_complex(rng);
    if (std::abs(z1) < 1e-3 || std::abs(z2) < 1e-3) continue;
    const auto r = bezout_intersection(h, C3Vectord(z1, z2, z1 * z2));
    REQUIRE(r.roots.size() == 2);
    REQUIRE(std::abs(r.roots[0]) < 1e-8);
    REQUIRE(std::abs(r.roots[1] - 1.0) < 1e-8);
  }
}

TEST_CASE("transversality certificate of the default pair") {
  const auto h = Quadricd::standard();
  const auto lines = lines_through_origin(h);
  const auto cert = transversality_certificate(h, C3Vectord(1, 1, 1), lines);
  CHECK(cert.line1 == doctest::Approx(1.0));
  CHECK(cert.line2 == doctest::Approx(1.0));
  // Rows (0, 0, 1) and (1, 1, 1): Gram eigenvalues 2 -+ sqrt 2.
  CHECK(cert.hypersurface == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-12));
  CHECK(cert.passed());
  CHECK(cert.min_margin() > 1e-2);
}

TEST_CASE("F = z3 fails transversality") {
  const auto h = Quadricd::standard();
  const auto cert = transversality_certificate(h, C3Vectord(0, 0, 1), lines_through_origin(h));
  CHECK(cert.line1 < 1e-15);
  CHECK(cert.line2 < 1e-15);
  CHECK(cert.hypersurface < 1e-15);
  CHECK_FALSE(cert.passed());
  CHECK_THROWS_AS(transversality_certificate(h, C3Vectord(C3Vectord::Zero()), lines_through_origin(h)), Error);
}
