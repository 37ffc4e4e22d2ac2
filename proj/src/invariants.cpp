#include "admflux/invariants.hpp"

#include "admflux/curvature.hpp"
#include "admflux/errors.hpp"
#include "admflux/summation.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace admflux {

namespace {

void check_surface(const MetricField& field, const QuadSurface& surface) {
  if (surface.dim != field.dim()) {
    throw Error(ErrorKind::invalid_argument, "surface and field dimensions differ");
  }
}

void check_mass(double mass) {
  if (!(std::abs(mass) >= kMinCenterMass)) {
    std::ostringstream msg;
    msg << "center of mass undefined: |mass| = " << std::abs(mass) << " < "
        << kMinCenterMass;
    throw Error(ErrorKind::undefined_center, msg.str());
  }
}

void check_axis(int axis, int n) {
  if (axis < 0 || axis >= n) {
    throw Error(ErrorKind::invalid_argument,
                "axis " + std::to_string(axis) + " out of range for dimension " +
                    std::to_string(n));
  }
}

void check_smooth(const MetricField& field) {
  if (!field.info().globally_smooth) {
    throw Error(ErrorKind::domain,
                "field '" + field.info().name +
                    "' is not smooth inside the surface; use the annulus form");
  }
}

// Sum over nodes of fn(node, jet) with a fixed-order compensated reduction.
template <typename Fn>
double integrate(const MetricField& field, const QuadSurface& surface, Fn&& fn) {
  CompensatedSum sum;
  for (const auto& node : surface.nodes) sum.add(fn(node, field.jet(node.x)));
  return sum.value();
}

template <typename Fn>
Vector integrate_vector(const MetricField& field, const QuadSurface& surface, Fn&& fn) {
  const int n = field.dim();
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(n));
  for (const auto& node : surface.nodes) {
    const Vector v = fn(node, field.jet(node.x));
    for (int a = 0; a < n; ++a) sums[static_cast<std::size_t>(a)].add(v(a));
  }
  Vector out(n);
  for (int a = 0; a < n; ++a) out(a) = sums[static_cast<std::size_t>(a)].value();
  return out;
}

// (g_ij,j - g_jj,i) as a covector in i.
Vector mass_flux_covector(const MetricJet2& jet) {
  const int n = jet.dim();
  Vector v = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i) += jet.dg(j, i, j) - jet.dg(i, j, j);
  return v;
}

// (h_ia nu^i - h_ii nu^a) as a vector in a.
Vector boundary_group(const MetricJet2& jet, const Vector& nu) {
  const Matrix h = jet.h();
  return h * nu - h.trace() * nu;
}

// sum_k (g_ki,kj + g_kj,ki - g_ij,kk - g_kk,ij) as a matrix in (i, j).
Matrix linearized_ricci_twice(const MetricJet2& jet) {
  const int n = jet.dim();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        m(i, j) += jet.ddg(k, j, k, i) + jet.ddg(k, i, k, j) - jet.ddg(k, k, i, j) -
                   jet.ddg(i, j, k, k);
  return m;
}

}  // namespace

Vector field_X(const Point& x) { return x; }

Vector field_Y(int axis, const Point& x) {
  const int n = static_cast<int>(x.size());
  check_axis(axis, n);
  Vector y = -2.0 * x(axis) * x;
  y(axis) += x.squaredNorm();
  return y;
}

double adm_mass_at(const MetricField& field, const QuadSurface& surface) {
  check_surface(field, surface);
  const int n = field.dim();
  const double flux = integrate(field, surface, [](const SurfaceNode& node, const MetricJet2& jet) {
    return node.weight * mass_flux_covector(jet).dot(node.normal);
  });
  return flux / (2.0 * (n - 1) * unit_sphere_area(n));
}

double intrinsic_mass_at(const MetricField& field, const QuadSurface& surface) {
  check_surface(field, surface);
  const int n = field.dim();
  const double flux = integrate(field, surface, [](const SurfaceNode& node, const MetricJet2& jet) {
    const CurvatureBundle c = curvature(jet);
    const MetricNormal mn = g_normal_and_area(jet.g(), c.ginv, node.normal, node.weight);
    return mn.weight * field_X(node.x).dot(c.einstein * mn.normal);
  });
  return flux / ((n - 1) * (2.0 - n) * unit_sphere_area(n));
}

Vector cs_center_at(const MetricField& field, const QuadSurface& surface, double mass) {
  check_surface(field, surface);
  check_mass(mass);
  const int n = field.dim();
  const Vector flux =
      integrate_vector(field, surface, [](const SurfaceNode& node, const MetricJet2& jet) {
        // g_ij,i - g_ii,j is the mass covector again since g is symmetric.
        const double radial = mass_flux_covector(jet).dot(node.normal);
        return Vector(node.weight *
                      (node.x * radial - boundary_group(jet, node.normal)));
      });
  return flux / (2.0 * (n - 1) * unit_sphere_area(n) * mass);
}

Vector intrinsic_center_at(const MetricField& field, const QuadSurface& surface,
                           double mass) {
  check_surface(field, surface);
  check_mass(mass);
  const int n = field.dim();
  const Vector flux =
      integrate_vector(field, surface, [n](const SurfaceNode& node, const MetricJet2& jet) {
        const CurvatureBundle c = curvature(jet);
        const MetricNormal mn = g_normal_and_area(jet.g(), c.ginv, node.normal, node.weight);
        const Vector en = c.einstein * mn.normal;
        Vector v(n);
        for (int a = 0; a < n; ++a) v(a) = mn.weight * field_Y(a, node.x).dot(en);
        return v;
      });
  return flux / (2.0 * (n - 1) * (n - 2) * unit_sphere_area(n) * mass);
}

MassPair mass_pair(const MetricField& field, const QuadSurface& surface) {
  MassPair p;
  p.r = surface.nominal_radius;
  p.adm = adm_mass_at(field, surface);
  p.intrinsic = intrinsic_mass_at(field, surface);
  p.difference = p.adm - p.intrinsic;
  return p;
}

CenterPair center_pair(const MetricField& field, const QuadSurface& surface,
                       double mass) {
  CenterPair p;
  p.r = surface.nominal_radius;
  p.cs = cs_center_at(field, surface, mass);
  p.intrinsic = intrinsic_center_at(field, surface, mass);
  p.mass_used = mass;
  return p;
}

namespace {

double residual_X_raw(const MetricField& field, const QuadSurface& surface) {
  check_surface(field, surface);
  const int n = field.dim();
  return integrate(field, surface, [n](const SurfaceNode& node, const MetricJet2& jet) {
    const Vector& nu = node.normal;
    const double lhs = -node.x.dot(linearized_ricci_twice(jet) * nu);
    // mass_flux_covector(j) = g_kj,k - g_kk,j.
    const double rhs1 = (n - 2.0) * mass_flux_covector(jet).dot(nu);
    double trace_term = 0.0;  // -g_kj,kj + g_kk,jj
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) trace_term += -jet.ddg(k, j, k, j) + jet.ddg(j, j, k, k);
    const double rhs2 = trace_term * node.x.dot(nu);
    return node.weight * (lhs - rhs1 - rhs2);
  });
}

double residual_Y_raw(const MetricField& field, const QuadSurface& surface, int axis) {
  check_surface(field, surface);
  const int n = field.dim();
  check_axis(axis, n);
  return integrate(field, surface, [n, axis](const SurfaceNode& node, const MetricJet2& jet) {
    const Vector& nu = node.normal;
    const Vector y = field_Y(axis, node.x);
    const double lhs = y.dot(linearized_ricci_twice(jet) * nu);
    double trace_term = 0.0;  // g_kj,kj - g_kk,jj
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) trace_term += jet.ddg(k, j, k, j) - jet.ddg(j, j, k, k);
    const double rhs1 = trace_term * y.dot(nu);
    const double rhs2 =
        2.0 * (n - 2) *
        (node.x(axis) * mass_flux_covector(jet).dot(nu) - boundary_group(jet, nu)(axis));
    return node.weight * (lhs - rhs1 - rhs2);
  });
}

}  // namespace

double ibp_residual_X(const MetricField& field, const QuadSurface& surface) {
  check_smooth(field);
  return residual_X_raw(field, surface);
}

double ibp_residual_Y(const MetricField& field, const QuadSurface& surface, int axis) {
  check_smooth(field);
  return residual_Y_raw(field, surface, axis);
}

double ibp_residual_X_annulus(const MetricField& field, const QuadSurface& outer,
                              const QuadSurface& inner) {
  return residual_X_raw(field, outer) - residual_X_raw(field, inner);
}

double ibp_residual_Y_annulus(const MetricField& field, const QuadSurface& outer,
                              const QuadSurface& inner, int axis) {
  return residual_Y_raw(field, outer, axis) - residual_Y_raw(field, inner, axis);
}

MomentReport scalar_curvature_moment(const MetricField& field, double r0, double r1,
                                     std::optional<int> axis,
                                     const MomentOptions& options) {
  const int n = field.dim();
  if (!(r1 > r0) || !(r0 > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "moment radii must satisfy 0 < r0 < r1");
  }
  if (!(r0 >= field.inner_radius())) {
    std::ostringstream msg;
    msg << "moment inner radius " << r0 << " is below the field's inner radius "
        << field.inner_radius();
    throw Error(ErrorKind::domain, msg.str());
  }
  if (axis) check_axis(*axis, n);
  if (options.radial_nodes < 1) {
    throw Error(ErrorKind::invalid_argument, "need at least one radial node");
  }
  const int shells = options.shells > 0
                         ? options.shells
                         : std::max(1, static_cast<int>(std::ceil(std::log2(r1 / r0) - 1e-12)));
  const GaussRule radial = gauss_legendre(options.radial_nodes);

  MomentReport report;
  report.axis = axis;
  CompensatedSum total;
  for (int s = 0; s < shells; ++s) {
    const double a = r0 * std::pow(r1 / r0, double(s) / shells);
    const double b = s + 1 == shells ? r1 : r0 * std::pow(r1 / r0, double(s + 1) / shells);
    CompensatedSum shell;
    for (std::size_t q = 0; q < radial.nodes.size(); ++q) {
      const double rho = 0.5 * (a + b) + 0.5 * (b - a) * radial.nodes[q];
      const double wr = 0.5 * (b - a) * radial.weights[q];
      const QuadSurface sphere = sphere_quadrature(n, rho, options.order);
      for (const auto& node : sphere.nodes) {
        const MetricJet2 jet = field.jet(node.x);
        const double density = curvature(jet).scalar * std::sqrt(jet.g().determinant());
        const double weight = axis ? node.x(*axis) : 1.0;
        shell.add(wr * node.weight * weight * density);
      }
    }
    report.shells.push_back({a, b, shell.value()});
    total.add(shell.value());
  }
  report.total = total.value();
  return report;
}

}  // namespace admflux
