#pragma once

#include "admflux/metric_field.hpp"
#include "admflux/surfaces.hpp"

#include <optional>
#include <vector>

namespace admflux {

/// Center functionals refuse masses below this magnitude.
inline constexpr double kMinCenterMass = 1e-8;

/// Dilation field X = x^i d_i.
Vector field_X(const Point& x);

/// Special conformal field Y_(axis)^i = |x|^2 delta^{axis,i} - 2 x^axis x^i.
/// `axis` is zero-based.
Vector field_Y(int axis, const Point& x);

/// m(S) = 1/(2(n-1) omega) * int (g_ij,j - g_jj,i) nu_e^i dsigma_e.
double adm_mass_at(const MetricField& field, const QuadSurface& surface);

/// m_I(S) = 1/((n-1)(2-n) omega) * int (Ric - R g/2)(X, nu_g) dsigma_g.
double intrinsic_mass_at(const MetricField& field, const QuadSurface& surface);

/// Hamiltonian center with h in place of g in the boundary group:
/// c^a = 1/(2(n-1) omega m) int [x^a (g_ij,i - g_ii,j) nu^j - (h_ia nu^i - h_ii nu^a)].
Vector cs_center_at(const MetricField& field, const QuadSurface& surface, double mass);

/// c_I^a = 1/(2(n-1)(n-2) omega m) int (Ric - R g/2)(Y_(a), nu_g) dsigma_g.
Vector intrinsic_center_at(const MetricField& field, const QuadSurface& surface,
                           double mass);

struct MassPair {
  double r = 0.0;
  double adm = 0.0;
  double intrinsic = 0.0;
  double difference = 0.0;
};
MassPair mass_pair(const MetricField& field, const QuadSurface& surface);

struct CenterPair {
  double r = 0.0;
  Vector cs;
  Vector intrinsic;
  double mass_used = 0.0;
};
CenterPair center_pair(const MetricField& field, const QuadSurface& surface,
                       double mass);

/// LHS - RHS of the exact dilation identity on a closed surface:
///   int (-g_ki,kj - g_kj,ki + g_ij,kk + g_kk,ij) x^i nu^j
///     = (n-2) int (g_kj,k - g_kk,j) nu^j + int (-g_kj,kj + g_kk,jj) x^i nu^i.
/// Requires a globally smooth field (FieldInfo::globally_smooth).
double ibp_residual_X(const MetricField& field, const QuadSurface& surface);

/// Same for Y_(axis):
///   int (g_ki,kj + g_kj,ki - g_ij,kk - g_kk,ij) Y^i nu^j
///     = int (g_kj,kj - g_kk,jj) Y^i nu^i
///       + 2(n-2) int [x^a (g_ki,k - g_kk,i) nu^i - (h_ka nu^k - h_kk nu^a)].
double ibp_residual_Y(const MetricField& field, const QuadSurface& surface, int axis);

/// Annulus forms: residual(outer) - residual(inner). The identities hold on
/// the region between the surfaces, so no global smoothness is needed.
double ibp_residual_X_annulus(const MetricField& field, const QuadSurface& outer,
                              const QuadSurface& inner);
double ibp_residual_Y_annulus(const MetricField& field, const QuadSurface& outer,
                              const QuadSurface& inner, int axis);

struct ShellIntegral {
  double r_inner = 0.0;
  double r_outer = 0.0;
  double value = 0.0;
};

struct MomentReport {
  std::optional<int> axis;  // nullopt: int R_g dv_g; otherwise int x^axis R_g dv_g
  std::vector<ShellIntegral> shells;
  double total = 0.0;
};

struct MomentOptions {
  /// Geometric shells between r0 and r1; 0 picks ratio <= 2 per shell.
  int shells = 0;
  int radial_nodes = 16;
  int order = 24;
};

/// Volume integral of R_g (or x^axis R_g) against dv_g over B(r1) \ B(r0),
/// by radial Gauss-Legendre times sphere quadrature, shell by shell.
MomentReport scalar_curvature_moment(const MetricField& field, double r0, double r1,
                                     std::optional<int> axis,
                                     const MomentOptions& options = {});

}  // namespace admflux
