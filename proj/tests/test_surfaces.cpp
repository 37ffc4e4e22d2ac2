#include "admflux/errors.hpp"
#include "admflux/surfaces.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace admflux;
using namespace admflux::testing;
using std::numbers::pi;

TEST_CASE("Gauss-Gegenbauer rules integrate polynomials exactly") {
  for (double a : {0.0, 0.5, 1.0, 1.5}) {
    for (int count : {1, 2, 5, 13}) {
      const GaussRule rule = gauss_gegenbauer(count, a);
      for (int deg = 0; deg <= 2 * count - 1; ++deg) {
        double got = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          got += rule.weights[i] * std::pow(rule.nodes[i], deg);
        }
        // int_{-1}^{1} t^deg (1 - t^2)^a dt = B((deg+1)/2, a+1) for even deg.
        const double expected =
            deg % 2 ? 0.0
                    : std::tgamma(0.5 * (deg + 1)) * std::tgamma(a + 1.0) /
                          std::tgamma(0.5 * (deg + 1) + a + 1.0);
        CHECK(std::abs(got - expected) < 1e-14);
      }
    }
  }
  CHECK_THROWS_AS(gauss_gegenbauer(0, 0.0), Error);
  CHECK_THROWS_AS(gauss_gegenbauer(3, -1.0), Error);
}

TEST_CASE("unit sphere areas") {
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(unit_sphere_area(4) == doctest::Approx(2 * pi * pi).epsilon(1e-15));
  CHECK(unit_sphere_area(5) == doctest::Approx(8.0 * pi * pi / 3.0).epsilon(1e-15));
}

TEST_CASE("sphere quadrature: area, normals, symmetry") {
  for (int order : {2, 7, 24, 61}) {
    const QuadSurface s = sphere_quadrature(3, 2.0, order);
    CHECK(s.kind == SurfaceKind::sphere);
    CHECK(s.nominal_radius == 2.0);
    CHECK(std::abs(s.area() - 16 * pi) <= 1e-12 * 16 * pi);
    Vector first = Vector::Zero(3);
    for (const auto& node : s.nodes) {
      CHECK(std::abs(node.normal.norm() - 1.0) < 1e-15);
      CHECK((node.x - 2.0 * node.normal).norm() < 1e-14);
      first += node.weight * node.normal;
    }
    CHECK(first.cwiseAbs().maxCoeff() < 1e-12);
  }
  // Antipodal invariance of the node set.
  const QuadSurface s = sphere_quadrature(3, 1.0, 10);
  for (const auto& node : s.nodes) {
    bool found = false;
    for (const auto& other : s.nodes) {
      found = found || ((other.x + node.x).norm() < 1e-14 &&
                        std::abs(other.weight - node.weight) < 1e-15);
    }
    CHECK(found);
  }
}

TEST_CASE("higher-dimensional sphere areas") {
  CHECK(std::abs(sphere_quadrature(4, 1.0, 8).area() - 2 * pi * pi) < 1e-10);
  CHECK(std::abs(sphere_quadrature(5, 1.5, 6).area() - unit_sphere_area(5) * std::pow(1.5, 4)) <
        1e-10);
}

TEST_CASE("sphere quadrature is exact for monomials up to its order") {
  for (int order : {6, 12, 24}) {
    const QuadSurface s = sphere_quadrature(3, 1.0, order);
    for (int a = 0; a <= order; ++a)
      for (int b = 0; a + b <= order; ++b)
        for (int c = 0; a + b + c <= order; ++c) {
          double got = 0.0;
          for (const auto& node : s.nodes) {
            got += node.weight * std::pow(node.x(0), a) * std::pow(node.x(1), b) *
                   std::pow(node.x(2), c);
          }
          const double expected = monomial_moment_s2(a, b, c);
          CHECK(std::abs(got - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
        }
  }
}

TEST_CASE("ellipsoid quadrature") {
  const QuadSurface round = ellipsoid_quadrature(vec({3, 3, 3}), 16);
  const QuadSurface sphere = sphere_quadrature(3, 3.0, 16);
  CHECK(round.kind == SurfaceKind::ellipsoid);
  CHECK(std::abs(round.area() - sphere.area()) < 1e-12 * sphere.area());
  REQUIRE(round.nodes.size() == sphere.nodes.size());
  for (std::size_t i = 0; i < round.nodes.size(); ++i) {
    CHECK((round.nodes[i].x - sphere.nodes[i].x).norm() < 1e-13);
  }

  const QuadSurface e = ellipsoid_quadrature(vec({2, 1, 1}), 48);
  CHECK(e.nominal_radius == 1.0);
  CHECK(std::abs(e.area() - prolate_area(2.0, 1.0)) < 1e-10);
  double flux = 0.0;
  for (const auto& node : e.nodes) {
    flux += node.weight * node.x.dot(node.normal);
    CHECK(std::abs(node.normal.norm() - 1.0) < 1e-14);
    // The normal is parallel to the gradient of the implicit equation.
    const Vector grad = vec({node.x(0) / 4.0, node.x(1), node.x(2)});
    CHECK((grad.normalized() - node.normal).norm() < 1e-14);
    CHECK(node.x.norm() >= e.nominal_radius - 1e-15);
  }
  CHECK(std::abs(flux - 8 * pi) < 1e-10);
}

TEST_CASE("ellipsoid family area grows like r^2") {
  double ratio0 = 0.0;
  for (double r : {10.0, 100.0, 1000.0}) {
    const double ratio = ellipsoid_quadrature(vec({2 * r, r, r}), 24).area() / (r * r);
    if (ratio0 == 0.0) ratio0 = ratio;
    CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-10));
  }
}

TEST_CASE("translate moves nodes and recomputes the nominal radius") {
  const QuadSurface s = translate(sphere_quadrature(3, 5.0, 12), vec({1, 0, 0}));
  double closest = 1e300;
  for (const auto& node : s.nodes) closest = std::min(closest, node.x.norm());
  CHECK(s.nominal_radius == closest);
  CHECK(s.nominal_radius >= 4.0);
  CHECK(std::abs(s.area() - 100 * pi) < 1e-10);
}

TEST_CASE("surface construction errors") {
  CHECK_THROWS_AS(sphere_quadrature(2, 1.0, 8), Error);
  CHECK_THROWS_AS(sphere_quadrature(3, 0.0, 8), Error);
  CHECK_THROWS_AS(sphere_quadrature(3, 1.0, 1), Error);
  CHECK_THROWS_AS(ellipsoid_quadrature(vec({1, -1, 1}), 8), Error);
  CHECK_THROWS_AS(ellipsoid_quadrature(vec({1, 1}), 8), Error);
}

TEST_CASE("g-normal and g-area") {
  const Vector nu = vec({0.6, 0.0, 0.8});
  const MetricNormal flat = g_normal_and_area(MetricJet2::flat(3), nu, 2.0);
  CHECK((flat.normal - nu).norm() < 1e-16);
  CHECK(flat.weight == doctest::Approx(2.0).epsilon(1e-16));

  // Conformal: g = u^4 delta gives nu_g = u^-2 nu_e and w_g = u^4 w_e.
  const double u = 1.3;
  MetricJet2 conf(3);
  for (int i = 0; i < 3; ++i) conf.set_g(i, i, std::pow(u, 4));
  const MetricNormal m = g_normal_and_area(conf, nu, 2.0);
  CHECK((m.normal - nu / (u * u)).norm() < 1e-15);
  CHECK(m.weight == doctest::Approx(2.0 * std::pow(u, 4)).epsilon(1e-14));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const MetricJet2 jet = random_jet(rng, 3, 0.3);
    const Vector dir = random_point(rng, 3, 1.0, 1.0);
    const MetricNormal g = g_normal_and_area(jet, dir, 1.0);
    CHECK(std::abs(g.normal.dot(jet.g() * g.normal) - 1.0) < 1e-12);
    // g-orthogonal to every Euclidean tangent vector t (t . nu_e = 0).
    const Vector t = dir.unitOrthogonal();
    CHECK(std::abs(t.dot(jet.g() * g.normal)) < 1e-12);
    CHECK(g.normal.dot(dir) > 0.0);
  }
}

TEST_CASE("g-normal stays close to the Euclidean normal on Schwarzschild spheres") {
  const MetricField f = catalog::build(catalog::schwarzschild_spec(3, 1.0, vec({1, 2, 3})));
  double prev = 1e300;
  for (double r : {10.0, 40.0, 160.0, 640.0}) {
    double sup = 0.0;
    for (const auto& node : sphere_quadrature(3, r, 12).nodes) {
      const MetricJet2 jet = f.jet(node.x);
      const MetricNormal g = g_normal_and_area(jet, node.normal, node.weight);
      const double dev = (g.normal - node.normal).norm();
      CHECK(dev <= 2.0 * jet.h().cwiseAbs().maxCoeff());
      sup = std::max(sup, dev);
    }
    CHECK(sup * std::sqrt(r) < prev);
    prev = sup * std::sqrt(r);
  }
}
