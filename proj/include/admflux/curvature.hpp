#pragma once

#include "admflux/jet.hpp"

#include <vector>

namespace admflux {

/// Largest accepted condition number of g before it is treated as singular.
inline constexpr double kMaxMetricCondition = 1e12;

/// g^{-1}, rejecting metrics that are not positive definite or whose
/// condition number exceeds kMaxMetricCondition.
Matrix inverse_metric(const Matrix& g);

struct Christoffel {
  int dim = 0;
  std::vector<double> gamma;   // Gamma^k_ij at (k, i, j)
  std::vector<double> dgamma;  // d_l Gamma^k_ij at (l, k, i, j)

  double at(int k, int i, int j) const { return gamma[(k * dim + i) * dim + j]; }
  double deriv(int l, int k, int i, int j) const {
    return dgamma[((l * dim + k) * dim + i) * dim + j];
  }
};

struct CurvatureBundle {
  Christoffel christoffel;
  Matrix ginv;
  Matrix ricci;
  double scalar = 0.0;
  Matrix einstein;
};

Christoffel christoffel(const MetricJet2& jet);
Christoffel christoffel(const MetricJet2& jet, const Matrix& ginv);

/// R_ij = d_k G^k_ji - d_j G^k_ki + G^k_kl G^l_ji - G^k_jl G^l_ki.
Matrix ricci(const MetricJet2& jet);
double scalar_curvature(const MetricJet2& jet);
/// Ric - R g / 2.
Matrix einstein(const MetricJet2& jet);

/// Flat-space linearization sum_{i,k} (g_ik,ik - g_kk,ii).
double linearized_scalar(const MetricJet2& jet);

/// Everything above from a single inversion of g.
CurvatureBundle curvature(const MetricJet2& jet);

}  // namespace admflux
