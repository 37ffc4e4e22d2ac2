#pragma once

#include "admflux/invariants.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace admflux {

enum class Functional { adm_mass, intrinsic_mass, cs_center, intrinsic_center };

/// Throws ErrorKind::invalid_argument for unknown names.
Functional parse_functional(std::string_view name);
std::string_view functional_name(Functional f);
bool is_center(Functional f);

/// Radii for a sweep; spheres S_r, or ellipsoids with semi-axes r * axis_ratios.
struct Schedule {
  std::vector<double> radii;
  Vector axis_ratios;

  static Schedule spheres(std::vector<double> radii);
  static Schedule ellipsoids(std::vector<double> radii, Vector axis_ratios);
  /// start * ratio^k for k = 0 .. count-1.
  static Schedule geometric(double start, double ratio, int count);

  bool is_ellipsoid() const { return axis_ratios.size() > 0; }
  QuadSurface surface(std::size_t index, int dim, int order) const;
};

/// value(r) ~ limit + amplitude * r^{-rate}.
struct PowerLawFit {
  double limit = 0.0;
  double amplitude = 0.0;
  double rate = 0.0;
  double residual = 0.0;  // root-mean-square misfit
  bool constant = false;  // spread below the flatness threshold; limit = last value
};

/// Least squares in (limit, amplitude) for each rate, with the rate chosen
/// where the profiled misfit is stationary. Needs >= 3 samples.
PowerLawFit fit_power_law(std::span<const double> radii, std::span<const double> values,
                          double flat_threshold = 0.0);

struct ConvergenceReport {
  std::string quantity;
  std::vector<double> radii;
  std::vector<Vector> values;
  std::vector<int> orders;  // quadrature order actually used per radius
  std::vector<PowerLawFit> fits;
  Vector fitted_limit;
  double fitted_rate = 0.0;  // slowest non-constant component
  double residual = 0.0;
  double tolerance = 0.0;
  bool verdict = false;
  std::optional<double> mass_used;

  int components() const { return static_cast<int>(fitted_limit.size()); }
};

struct SweepOptions {
  int order = 24;
  /// Double the order until consecutive values agree within `agreement`.
  bool adaptive = true;
  double agreement = 1e-8;
  int max_order = 384;
  /// Convergence tolerance, scaled by max(1, |limit|) per component.
  double tolerance = 1e-4;
  /// Mass for the center functionals; defaults to the fitted ADM limit.
  std::optional<double> mass;
  int threads = 0;
};

/// Number of tail samples used by the fit: max(3, ceil(count / 2)).
std::size_t fit_window(std::size_t count);

ConvergenceReport sweep(const MetricField& field, Functional functional,
                        const Schedule& schedule, const SweepOptions& options = {});
ConvergenceReport sweep(const MetricField& field, std::string_view functional,
                        const Schedule& schedule, const SweepOptions& options = {});

/// Per-radius a - b, fitted; verdict iff every component's limit is within
/// `tolerance` of zero.
ConvergenceReport compare(const ConvergenceReport& a, const ConvergenceReport& b,
                          double tolerance = 1e-4);

}  // namespace admflux
