#pragma once

#include "admflux/metric_field.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace admflux::catalog {

struct Flat {};

/// Isotropic Schwarzschild: g = u^{4/(n-2)} delta, u = 1 + m / (2 |x-c|^{n-2}).
struct Schwarzschild {
  double mass = 1.0;
  Vector center;  // empty means the origin
};

/// g = u^{4/(n-2)} delta with u = 1 + sum_k coefficients[k-1] |x-c|^{-k}.
struct Conformal {
  std::vector<double> coefficients;
  Vector center;
};

enum class BumpParity { none, even, odd };

/// h_ij = amplitude * exp(-|y|^2/w^2) * (pattern_ij + y_i y_j / w^2), y = x - location.
/// even/odd parity adds/subtracts the mirror bump centered at -location.
struct Bump {
  double amplitude = 0.05;
  double width = 2.0;
  Vector location;
  BumpParity parity = BumpParity::none;
  Matrix pattern;  // empty means identity plus 1/2 in the (0,1) slot
};

struct CatalogSpec;

struct Perturbed {
  std::shared_ptr<const CatalogSpec> base;
  Bump bump;
};

struct CatalogSpec {
  int dim = 3;
  std::variant<Flat, Schwarzschild, Conformal, Perturbed> kind;
  /// Overrides the default inner radius; validated against the family.
  std::optional<double> inner_radius;
};

CatalogSpec flat_spec(int n);
CatalogSpec schwarzschild_spec(int n, double mass, Vector center = {});
CatalogSpec conformal_spec(int n, std::vector<double> coefficients, Vector center = {});
CatalogSpec perturbed_spec(CatalogSpec base, Bump bump);

/// Field with analytic jets and metadata (expected mass/center when known).
MetricField build(const CatalogSpec& spec);

/// Flat metric plus h_11 = amplitude * x^1 / |x|^{n/2+1}: an odd perturbation
/// decaying exactly like |x|^{-n/2}. Requires |amplitude| < 1.
MetricField rt_violator(int n, double amplitude);

/// Analytic jet of a single bump term (no parity mirror), for tests.
MetricJet2 bump_jet(const Bump& bump, int n, const Point& x);

}  // namespace admflux::catalog
