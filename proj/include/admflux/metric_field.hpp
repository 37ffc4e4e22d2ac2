#pragma once

#include "admflux/jet.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace admflux {

/// Known facts about a field, carried alongside it for tests and reports.
struct FieldInfo {
  std::string name = "custom";
  std::optional<double> expected_mass;
  std::optional<Vector> expected_center;
  /// True when the field is C^3 on all of R^n, so the exact
  /// integration-by-parts identities hold on any closed surface.
  bool globally_smooth = false;
};

/// A metric on R^n \ B(inner_radius), evaluatable to second order.
///
/// Cheap to copy; the jet function is shared and must be reentrant.
class MetricField {
 public:
  using JetFunction = std::function<MetricJet2(const Point&)>;

  MetricField(int dim, double inner_radius, JetFunction jet, FieldInfo info = {});

  int dim() const { return dim_; }
  double inner_radius() const { return inner_radius_; }
  const FieldInfo& info() const { return *info_; }

  bool contains(const Point& x) const;

  /// Jet at x. Throws ErrorKind::domain when |x| < inner_radius.
  MetricJet2 jet(const Point& x) const;

 private:
  int dim_;
  double inner_radius_;
  std::shared_ptr<const JetFunction> jet_;
  std::shared_ptr<const FieldInfo> info_;
};

/// Free-function spelling of MetricField::jet.
MetricJet2 jet2(const MetricField& field, const Point& x);

/// Field whose jet at x is the original jet at x - shift.
MetricField translated(const MetricField& field, const Vector& shift);

using MatrixFunction = std::function<Matrix(const Point&)>;

/// Default finite-difference step: max(1e-4, 1e-4 |x|).
double default_fd_step(const Point& x);

/// Jet from metric values by second-order central differences.
/// Mixed second derivatives use the four-point cross stencil.
MetricJet2 fd_jet2(const MatrixFunction& values, const Point& x, double h);
MetricJet2 fd_jet2(const MatrixFunction& values, const Point& x);

/// Parity split of every component function of the jet.
/// even = (J(x) + J(-x)) / 2 and odd = (J(x) - J(-x)) / 2 entrywise.
struct ParitySplit {
  MetricJet2 even;
  MetricJet2 odd;
};
ParitySplit parity_split(const MetricField& field, const Point& x);

enum class DecayPart { all, odd };

/// Scaled sup norms |x|^{|a|+tau} |d^a h| on spheres of increasing radius.
struct DecayReport {
  double tau = 0.0;
  DecayPart part = DecayPart::all;
  std::vector<double> radii;
  /// sups[r][order] for derivative orders 0, 1, 2.
  std::vector<std::array<double, 3>> sups;
  /// Per order: decreasing over the last half of the schedule.
  std::array<bool, 3> decreasing{};

  bool passed() const { return decreasing[0] && decreasing[1] && decreasing[2]; }
};

/// True iff the tail (last ceil(n/2) entries) strictly decreases.
/// Entries below `zero_floor` count as zero, and a run of zeros passes.
bool decreasing_tail(std::span<const double> values, double zero_floor = 1e-14);

/// Angular samples are the nodes of sphere_quadrature(n, r, sample_order).
DecayReport decay_report(const MetricField& field, std::span<const double> radii,
                         double tau, DecayPart part, int sample_order = 12);

}  // namespace admflux
