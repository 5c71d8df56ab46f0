#include <doctest.h>

#include "hartogs/disc_family.hpp"
#include "test_support.hpp"

using namespace hartogs;
using hartogs::test::random_complex;

namespace {

DiscFamilyConfigd tracked() {
  DiscFamilyConfigd cfg;
  cfg.allow_closed_form = false;
  return cfg;
}

DiscFamilyConfigd perturbed_f() {
  DiscFamilyConfigd cfg;
  cfg.F = SubmersionF<double>(C3Vectord(1.01, 1, 1));
  return cfg;
}

// A non-default pair: a tilted quadric and a generic F, all tracked numerically.
DiscFamilyConfigd generic_pair() {
  C3Matrixd s = C3Matrixd::Zero();
  s(0, 1) = s(1, 0) = std::complex<double>(-0.5, 0.1);
  s(0, 0) = 0.2;
  s(2, 2) = std::complex<double>(0, 0.3);
  DiscFamilyConfigd cfg;
  cfg.quadric = Quadricd(C3Vectord(0.1, 0, 1), s);
  cfg.F = SubmersionF<double>(C3Vectord(1, std::complex<double>(0.9, 0.1), 1.2));
  return cfg;
}

std::vector<std::complex<double>> grid_w(int n) {
  std::vector<std::complex<double>> w;
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) w.push_back(std::polar(double(r) / (n - 1), two_pi<double>() * k / n));
  }
  return w;
}

double variety_residual(const DiscFamilyConfigd& cfg, double t, std::complex<double> w) {
  const C3Vectord z = disc_eval(cfg, t, w);
  return std::max(std::abs(cfg.quadric(z)), std::abs(cfg.F(z) - phi(cfg, t)));
}

} // namespace

TEST_CASE("closed form at t = 0, w = 1/4") {
  const C3Vectord z = disc_eval(DiscFamilyConfigd{}, 0.0, std::complex<double>(0.25));
  CHECK(std::abs(z[0] - 0.05) < 1e-15);
  CHECK(std::abs(z[1] - 0.05 / 1.05) < 1e-15);
  CHECK(std::abs(z[2] - 0.0025 / 1.05) < 1e-15);
  CHECK(std::abs(z[1] - 0.047619047619047616) < 1e-15);
  CHECK(std::abs(z[2] - 0.002380952380952381) < 1e-15);
}

TEST_CASE("Newton tracking reproduces the closed form") {
  const auto exact = DiscFamilyConfigd{};
  const auto newton = tracked();
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (const auto& w : grid_w(9)) {
      const C3Vectord a = disc_eval(exact, t, w);
      const C3Vectord b = disc_eval(newton, t, w);
      REQUIRE((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("discs stay on H and in the fibre of F") {
  for (const auto& cfg : {DiscFamilyConfigd{}, tracked(), perturbed_f(), generic_pair()}) {
    double worst = 0;
    for (int i = 0; i < 32; ++i) {
      const double t = i / 31.0;
      for (const auto& w : grid_w(6)) worst = std::max(worst, variety_residual(cfg, t, w));
    }
    CHECK(worst < 1e-10);
    CHECK(disc_eval(cfg, 1.0, std::complex<double>(0)).norm() < 1e-12);
  }
}

TEST_CASE("A_t is smooth in t with second-order central differences") {
  // Closed form: dz2/dt = -c0 / (1 + z1), dz3/dt = z1 dz2/dt, dz1/dt = 0.
  const DiscFamilyConfigd cfg;
  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    const std::complex<double> w = std::polar(std::sqrt(std::uniform_real_distribution<double>(0, 1)(rng)),
                                              std::uniform_real_distribution<double>(0, two_pi<double>())(rng));
    const double t = 0.5;
    const std::complex<double> z1 = cfg.rho * w;
    const C3Vectord exact(0, -cfg.c0 / (1.0 + z1), -z1 * cfg.c0 / (1.0 + z1));
    for (double h : {1e-2, 5e-3}) {
      const C3Vectord fd = (disc_eval(cfg, t + h, w) - disc_eval(cfg, t - h, w)) / (2 * h);
      REQUIRE((fd - exact).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  // Generic tracking: Richardson ratio of the central difference error is about 4.
  const auto gen = generic_pair();
  const std::complex<double> w(0.3, 0.4);
  auto fd = [&](double h) { return C3Vectord((disc_eval(gen, 0.5 + h, w) - disc_eval(gen, 0.5 - h, w)) / (2 * h)); };
  const C3Vectord d1 = fd(0.04), d2 = fd(0.02), d3 = fd(0.01);
  const double e1 = (d1 - d2).norm(), e2 = (d2 - d3).norm();
  CHECK(e1 < 1e-3);
  if (e2 > 1e-13) CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("disc derivative matches central differences in w") {
  for (const auto& cfg : {DiscFamilyConfigd{}, generic_pair()}) {
    for (const auto& w : {std::complex<double>(0.1, 0.2), std::complex<double>(-0.5, 0.3)}) {
      const double h = 1e-6;
      const C3Vectord fd = (disc_eval(cfg, 0.3, w + h) - disc_eval(cfg, 0.3, w - h)) / (2 * h);
      CHECK((fd - disc_derivative(cfg, 0.3, w)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("parameter map and structural invariants") {
  DiscFamilyConfigd cfg;
  CHECK(phi(cfg, 0.0) == cfg.c0);
  CHECK(phi(cfg, 1.0) == std::complex<double>(0));
  CHECK_THROWS_AS(phi(cfg, 1.5), Error);
  CHECK_THROWS_AS(disc_eval(cfg, 0.5, std::complex<double>(1.1)), Error);

  auto expect_invalid = [](DiscFamilyConfigd c, const char* fragment) {
    try {
      check_structure(c);
      FAIL("expected ConfigInvalid");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigInvalid);
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  DiscFamilyConfigd c = cfg;
  c.c0 = 0;
  expect_invalid(c, "c0 != 0");
  c = cfg;
  c.rho = 0.15;
  expect_invalid(c, "rho >= 2|c0|");
  c = cfg;
  c.c0 = 0.6;
  c.rho = 2;
  expect_invalid(c, "V_radius");
  c = cfg;
  c.epsilon = -1;
  expect_invalid(c, "epsilon");
  CHECK_NOTHROW(validate_family(cfg));
}

TEST_CASE("containment in the epsilon ball") {
  const auto s = containment_sup(DiscFamilyConfigd{}, 17, 8, 64);
  CHECK(s.sup_norm < 1.0);
  // |A_t(w)| <= |(0.2, 0.3/0.8, 0.2*0.3/0.8)| bounds the default family.
  CHECK(s.sup_norm < std::hypot(0.2, 0.375, 0.075) + 1e-12);
}

TEST_CASE("holomorphy residual vanishes on the family") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& cfg : {DiscFamilyConfigd{}, generic_pair()}) {
    for (int i = 0; i < 10; ++i) {
      const AnalyticDisc<double> disc{cfg, i / 9.0, {}};
      for (int k = 0; k < 20; ++k) {
        const double r = 0.05 + 0.45 * u(rng);
        const auto c = std::polar((1 - r) * std::sqrt(u(rng)), two_pi<double>() * u(rng));
        REQUIRE(holomorphy_residual<double>(disc, c, r, 64) < 1e-8);
      }
    }
  }
  const auto constant = [](std::complex<double>) { return C3Vectord(1, 2, 3); };
  CHECK(holomorphy_residual<double>(constant, 0.0, 0.5, 64) < 1e-15);
}

TEST_CASE("anti-holomorphic control is detected at both centers") {
  const AnalyticDisc<double> disc{DiscFamilyConfigd{}, 0.5, {}};
  const auto perturbed = [&](std::complex<double> w) { return C3Vectord(disc(w) + C3Vectord::Constant(0.01 * std::conj(w))); };
  for (double center : {0.0, 0.1}) {
    const double r = holomorphy_residual<double>(perturbed, center, 0.5, 64);
    CHECK(r > 1e-3);
    // The first moment picks up 0.01 * r exactly.
    CHECK(r == doctest::Approx(0.005).epsilon(1e-6));
  }
  // The bare mean-value defect is blind to conj(w): conj is harmonic.
  C3Vectord mean = C3Vectord::Zero();
  for (int k = 0; k < 64; ++k) mean += perturbed(0.1 + 0.5 * std::polar(1.0, two_pi<double>() * k / 64));
  CHECK((mean / 64.0 - perturbed(0.1)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("line crossings of the default family") {
  const DiscFamilyConfigd cfg;
  const auto x = line_crossings(cfg, 0.0);
  const auto& l1 = std::abs(x[0].point[0]) > std::abs(x[1].point[0]) ? x[0] : x[1];
  const auto& l2 = &l1 == &x[0] ? x[1] : x[0];
  CHECK(std::abs(l1.w - 0.5) < 1e-14);
  CHECK((l1.point - C3Vectord(0.1, 0, 0)).norm() < 1e-14);
  CHECK(std::abs(l2.w) < 1e-14);
  CHECK((l2.point - C3Vectord(0, 0.1, 0)).norm() < 1e-14);
  for (double t = 0; t < 1; t += 0.05) {
    for (const auto& c : line_crossings(cfg, t)) {
      REQUIRE(c.margin > 1e-8);
      REQUIRE(std::abs(c.w) < 1.0);
      REQUIRE(c.residual < 1e-12);
    }
  }
  CHECK_THROWS_AS(line_crossings(cfg, 1.0), Error);
}

TEST_CASE("perturbed F: Newton crossings agree with a dense-sampling argmin") {
  const auto cfg = perturbed_f();
  const auto lines = lines_through_origin(cfg.quadric);
  for (double t : {0.0, 0.4}) {
    const auto x = line_crossings(cfg, t);
    for (int i = 0; i < 2; ++i) {
      const C3Vectord v = lines[i].direction.unit();
      const auto n = detail::annihilator(v);
      double best = std::numeric_limits<double>::infinity();
      std::complex<double> arg;
      const int m = 201;
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          const std::complex<double> w(-1 + 2.0 * a / (m - 1), -1 + 2.0 * b / (m - 1));
          if (std::abs(w) > 1) continue;
          const double val = (n * disc_eval(cfg, t, w)).norm();
          if (val < best) {
            best = val;
            arg = w;
          }
        }
      }
      CHECK(std::abs(x[i].w - arg) < 2.0 / (m - 1));
      CHECK(x[i].residual < 1e-12);
      CHECK(x[i].residual <= best);
    }
  }
}

TEST_CASE("each disc separates its samples") {
  const DiscFamilyConfigd cfg;
  std::vector<std::complex<double>> w;
  for (int k = 0; k < 200; ++k) {
    const double r = std::sqrt((k + 0.5) / 200.0);
    w.push_back(std::polar(r, 2.399963229728653 * k));
  }
  for (double t : {0.0, 0.3, 0.7, 1.0}) {
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < w.size(); ++a) {
      const auto pa = project<double>(disc_eval(cfg, t, w[a]));
      for (std::size_t b = a + 1; b < w.size(); ++b) {
        min_sep = std::min(min_sep, proj_distance(pa, project<double>(disc_eval(cfg, t, w[b]))));
      }
    }
    CHECK(min_sep > 1e-6);
  }
}
