// Shared fixtures and independent closed forms for the test suites.
#pragma once

#include "admflux/catalog.hpp"
#include "admflux/jet.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace admflux::testing {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

/// Uniform direction times a radius drawn from [r_lo, r_hi].
inline Point random_point(std::mt19937_64& rng, int n, double r_lo, double r_hi) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> radius(r_lo, r_hi);
  Point p(n);
  for (int i = 0; i < n; ++i) p(i) = normal(rng);
  return p.normalized() * radius(rng);
}

/// Jet with g = I + (small symmetric noise) and arbitrary symmetric derivatives.
inline MetricJet2 random_jet(std::mt19937_64& rng, int n, double spread = 0.2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MetricJet2 jet(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      jet.set_h(i, j, spread * u(rng));
      for (int k = 0; k < n; ++k) {
        jet.set_dg(k, i, j, u(rng));
        for (int l = k; l < n; ++l) jet.set_ddg(k, l, i, j, u(rng));
      }
    }
  return jet;
}

/// Conformal factor u = 1 + sum_k a_k s^{-k} about the origin and its Laplacian
/// in R^n, from Delta s^{-k} = k (k + 2 - n) s^{-k-2}.
struct RadialConformal {
  int n;
  std::vector<double> a;

  double u(double s) const {
    double v = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * std::pow(s, -double(i + 1));
    return v;
  }
  double du(double s) const {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double k = double(i + 1);
      v -= k * a[i] * std::pow(s, -k - 1.0);
    }
    return v;
  }
  double laplacian(double s) const {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double k = double(i + 1);
      v += a[i] * k * (k + 2.0 - n) * std::pow(s, -k - 2.0);
    }
    return v;
  }
  /// R = -4(n-1)/(n-2) u^{-(n+2)/(n-2)} Delta u for g = u^{4/(n-2)} delta.
  double scalar_curvature(double s) const {
    return -4.0 * (n - 1) / (n - 2) * std::pow(u(s), -double(n + 2) / (n - 2)) *
           laplacian(s);
  }
};

/// ADM flux for g = u^{4/(n-2)} delta on S_r: with phi = u^{4/(n-2)}, the
/// integrand is -(n-1) phi'(r), so m(r) = -r^{n-1} phi'(r) / 2.
inline double conformal_adm_closed_form(const RadialConformal& c, double r) {
  const double p = 4.0 / (c.n - 2);
  const double dphi = p * std::pow(c.u(r), p - 1.0) * c.du(r);
  return -0.5 * std::pow(r, c.n - 1) * dphi;
}

inline double schwarzschild_adm_n3(double m, double r) {
  return m * std::pow(1.0 + m / (2.0 * r), 3);
}

/// Area of the prolate spheroid with semi-axes (a, b, b), a > b.
inline double prolate_area(double a, double b) {
  const double e = std::sqrt(1.0 - (b * b) / (a * a));
  return 2.0 * std::numbers::pi * b * b * (1.0 + a / (b * e) * std::asin(e));
}

/// Integral of x^a y^b z^c over the unit sphere S^2.
inline double monomial_moment_s2(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  const double al = 0.5 * (a + 1), be = 0.5 * (b + 1), ga = 0.5 * (c + 1);
  return 2.0 * std::tgamma(al) * std::tgamma(be) * std::tgamma(ga) / std::tgamma(al + be + ga);
}

/// Compactly supported (to rounding) perturbation of flat space near the origin.
inline catalog::CatalogSpec bump_on_flat(int n = 3) {
  catalog::Bump bump;
  bump.amplitude = 0.05;
  bump.width = 3.0;
  bump.location = Vector::Zero(n);
  bump.location(0) = 8.0;
  bump.location(1) = -5.0;
  return catalog::perturbed_spec(catalog::flat_spec(n), bump);
}

}  // namespace admflux::testing
