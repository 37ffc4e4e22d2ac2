#include "admflux/surfaces.hpp"

#include "admflux/curvature.hpp"
#include "admflux/errors.hpp"
#include "admflux/summation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace admflux {

GaussRule gauss_gegenbauer(int count, double exponent) {
  if (count < 1) {
    throw Error(ErrorKind::invalid_argument, "gauss rule needs at least one node");
  }
  if (!(exponent > -1.0)) {
    throw Error(ErrorKind::invalid_argument, "gegenbauer exponent must exceed -1");
  }
  const double a = exponent;
  Vector diag = Vector::Zero(count);
  Vector sub = Vector::Zero(count);  // sub(k - 1) = sqrt(beta_k), k = 1 .. count
  for (int k = 1; k <= count; ++k) {
    const double kk = k;
    const double beta =
        kk * (kk + 2.0 * a) / ((2.0 * kk + 2.0 * a + 1.0) * (2.0 * kk + 2.0 * a - 1.0));
    sub(k - 1) = std::sqrt(beta);
  }
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(a + 1.0) /
                     std::tgamma(a + 1.5);

  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(count));
  rule.weights.resize(static_cast<std::size_t>(count));
  if (count == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  eig.computeFromTridiagonal(diag, sub.head(count - 1), Eigen::EigenvaluesOnly);
  // Polish each node with Newton on the orthonormal recurrence; the weight is
  // the reciprocal Christoffel function 1 / sum_k p_k(t)^2.
  for (int i = 0; i < count; ++i) {
    long double t = eig.eigenvalues()(i);
    long double christoffel = 0.0L;
    for (int iter = 0; iter < 3; ++iter) {
      long double p_prev = 0.0L, p = 1.0L / std::sqrt(static_cast<long double>(mu0));
      long double d_prev = 0.0L, d = 0.0L;
      christoffel = 0.0L;
      for (int k = 0; k < count; ++k) {
        christoffel += p * p;
        const long double b_next = sub(k);
        const long double b_here = k > 0 ? sub(k - 1) : 0.0L;
        const long double p_next = (t * p - b_here * p_prev) / b_next;
        const long double d_next = (p + t * d - b_here * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
      }
      if (iter < 2) t -= p / d;
    }
    rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(t);
    rule.weights[static_cast<std::size_t>(i)] = static_cast<double>(1.0L / christoffel);
  }
  // Symmetrize: the exact rule is invariant under t -> -t.
  for (int i = 0, j = count - 1; i < j; ++i, --j) {
    const double t = 0.5 * (rule.nodes[static_cast<std::size_t>(j)] -
                            rule.nodes[static_cast<std::size_t>(i)]);
    const double w = 0.5 * (rule.weights[static_cast<std::size_t>(i)] +
                            rule.weights[static_cast<std::size_t>(j)]);
    rule.nodes[static_cast<std::size_t>(i)] = -t;
    rule.nodes[static_cast<std::size_t>(j)] = t;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(j)] = w;
  }
  if (count % 2 == 1) rule.nodes[static_cast<std::size_t>(count / 2)] = 0.0;
  return rule;
}

GaussRule gauss_legendre(int count) { return gauss_gegenbauer(count, 0.0); }

double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double QuadSurface::area() const {
  CompensatedSum sum;
  for (const auto& node : nodes) sum.add(node.weight);
  return sum.value();
}

namespace {

struct UnitNode {
  Vector xi;
  double weight;
};

// Hyperspherical chart: xi_1 = cos t1, xi_2 = sin t1 cos t2, ...,
// last two components share the azimuth. Polar angle k (1-based) carries
// the weight sin^{n-1-k}, i.e. (1 - t^2)^{(n-2-k)/2} in t = cos theta_k.
std::vector<UnitNode> unit_sphere_nodes(int n, int order) {
  const int polar_count = order / 2 + 1;
  const int azimuth_count = 2 * (order / 2 + 1);

  std::vector<GaussRule> polar;
  for (int k = 1; k <= n - 2; ++k) {
    polar.push_back(gauss_gegenbauer(polar_count, 0.5 * (n - 2 - k)));
  }

  std::vector<UnitNode> nodes;
  std::vector<int> idx(static_cast<std::size_t>(n - 2), 0);
  const double dphi = 2.0 * std::numbers::pi / azimuth_count;
  while (true) {
    Vector xi(n);
    double scale = 1.0;
    double weight = 1.0;
    for (int k = 0; k < n - 2; ++k) {
      const auto& rule = polar[static_cast<std::size_t>(k)];
      const double t = rule.nodes[static_cast<std::size_t>(idx[k])];
      xi(k) = scale * t;
      scale *= std::sqrt(std::max(0.0, 1.0 - t * t));
      weight *= rule.weights[static_cast<std::size_t>(idx[k])];
    }
    for (int p = 0; p < azimuth_count; ++p) {
      // Offset by half a step keeps the node set antipodally symmetric and
      // avoids putting nodes on a coordinate plane.
      const double phi = (p + 0.5) * dphi;
      Vector x = xi;
      x(n - 2) = scale * std::cos(phi);
      x(n - 1) = scale * std::sin(phi);
      nodes.push_back({std::move(x), weight * dphi});
    }
    int k = n - 3;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == polar_count) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return nodes;
}

void check_order(int n, int order) {
  if (n < 3) {
    throw Error(ErrorKind::invalid_argument,
                "unsupported dimension " + std::to_string(n) + " (need n >= 3)");
  }
  if (order < 2) {
    throw Error(ErrorKind::invalid_argument,
                "quadrature order must be >= 2, got " + std::to_string(order));
  }
}

}  // namespace

QuadSurface sphere_quadrature(int n, double r, int order) {
  check_order(n, order);
  if (!(r > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "sphere radius must be positive");
  }
  QuadSurface surf;
  surf.dim = n;
  surf.kind = SurfaceKind::sphere;
  surf.semi_axes = Vector::Constant(n, r);
  surf.nominal_radius = r;
  surf.order = order;
  const double area_scale = std::pow(r, n - 1);
  for (auto& u : unit_sphere_nodes(n, order)) {
    surf.nodes.push_back({r * u.xi, u.xi, u.weight * area_scale});
  }
  return surf;
}

QuadSurface ellipsoid_quadrature(const Vector& semi_axes, int order) {
  const int n = static_cast<int>(semi_axes.size());
  check_order(n, order);
  if (!(semi_axes.minCoeff() > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "ellipsoid semi-axes must be positive");
  }
  QuadSurface surf;
  surf.dim = n;
  surf.kind = SurfaceKind::ellipsoid;
  surf.semi_axes = semi_axes;
  surf.nominal_radius = semi_axes.minCoeff();
  surf.order = order;
  const double det = semi_axes.prod();
  for (auto& u : unit_sphere_nodes(n, order)) {
    Vector conormal = u.xi.cwiseQuotient(semi_axes);
    const double len = conormal.norm();
    surf.nodes.push_back(
        {u.xi.cwiseProduct(semi_axes), conormal / len, u.weight * det * len});
  }
  return surf;
}

QuadSurface translate(const QuadSurface& surface, const Vector& shift) {
  QuadSurface out = surface;
  double rmin = std::numeric_limits<double>::infinity();
  for (auto& node : out.nodes) {
    node.x += shift;
    rmin = std::min(rmin, node.x.norm());
  }
  out.kind = SurfaceKind::custom;
  out.nominal_radius = rmin;
  return out;
}

MetricNormal g_normal_and_area(const Matrix& g, const Matrix& ginv,
                               const Vector& nu_e, double w_e) {
  const Vector raised = ginv * nu_e;
  const double len = std::sqrt(nu_e.dot(raised));
  return {raised / len, w_e * std::sqrt(g.determinant()) * len};
}

MetricNormal g_normal_and_area(const MetricJet2& jet, const Vector& nu_e,
                               double w_e) {
  return g_normal_and_area(jet.g(), inverse_metric(jet.g()), nu_e, w_e);
}

}  // namespace admflux
