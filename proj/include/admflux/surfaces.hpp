#pragma once

#include "admflux/jet.hpp"

#include <vector>

namespace admflux {

/// Gauss rule on [-1, 1] for the weight (1 - t^2)^exponent.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch on the symmetric Jacobi recurrence; exponent > -1.
/// Exact for polynomials of degree <= 2 * count - 1.
GaussRule gauss_gegenbauer(int count, double exponent);
GaussRule gauss_legendre(int count);

/// omega_{n-1}: area of the unit sphere in R^n (omega_2 = 4 pi).
double unit_sphere_area(int n);

struct SurfaceNode {
  Point x;
  Vector normal;  // Euclidean unit outward normal nu_e
  double weight;  // Euclidean area weight
};

enum class SurfaceKind { sphere, ellipsoid, custom };

/// Weighted quadrature on a closed surface in R^n.
struct QuadSurface {
  int dim = 0;
  std::vector<SurfaceNode> nodes;
  SurfaceKind kind = SurfaceKind::custom;
  /// Semi-axes for ellipsoids, (r, ..., r) for spheres.
  Vector semi_axes;
  /// inf over the surface of |x|.
  double nominal_radius = 0.0;
  int order = 0;

  double area() const;
};

/// Product rule on S_r = dB(r): Gauss-Gegenbauer in each polar angle and a
/// uniform azimuth grid. Exact for polynomials of degree <= order, and the
/// node set is invariant under x -> -x.
QuadSurface sphere_quadrature(int n, double r, int order);

/// Image of the unit-sphere rule under x -> diag(semi_axes) x, with the
/// exact ellipsoid normal and area weight w_sphere * det(A) * |A^{-1} xi|.
QuadSurface ellipsoid_quadrature(const Vector& semi_axes, int order);

/// Same surface moved by `shift`; nominal radius recomputed from the nodes.
QuadSurface translate(const QuadSurface& surface, const Vector& shift);

struct MetricNormal {
  Vector normal;  // nu_g, unit and outward with respect to g
  double weight;  // g-area weight
};

/// Converts a Euclidean normal and area weight to their g-counterparts:
/// nu_g^i = g^{ij} nu_j / |nu|_{g^{-1}},  w_g = w_e sqrt(det g) |nu|_{g^{-1}}.
MetricNormal g_normal_and_area(const MetricJet2& jet, const Vector& nu_e,
                               double w_e);
MetricNormal g_normal_and_area(const Matrix& g, const Matrix& ginv,
                               const Vector& nu_e, double w_e);

}  // namespace admflux
