#include "admflux/curvature.hpp"

#include "admflux/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace admflux {

Matrix inverse_metric(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || !std::isfinite(hi)) {
    std::ostringstream msg;
    msg << "metric is not positive definite (smallest eigenvalue " << lo << ")";
    throw Error(ErrorKind::singular_metric, msg.str());
  }
  if (hi / lo > kMaxMetricCondition) {
    std::ostringstream msg;
    msg << "metric condition number " << hi / lo << " exceeds "
        << kMaxMetricCondition;
    throw Error(ErrorKind::singular_metric, msg.str());
  }
  const Matrix inv = g.llt().solve(Matrix::Identity(g.rows(), g.cols()));
  return 0.5 * (inv + inv.transpose());
}

Christoffel christoffel(const MetricJet2& jet, const Matrix& ginv) {
  const int n = jet.dim();
  Christoffel out;
  out.dim = n;
  out.gamma.assign(static_cast<std::size_t>(n * n * n), 0.0);
  out.dgamma.assign(static_cast<std::size_t>(n * n * n * n), 0.0);

  // First kind: first[s][i][j] = (g_is,j + g_js,i - g_ij,s) / 2.
  std::vector<double> first(static_cast<std::size_t>(n * n * n));
  auto at3 = [n](int a, int b, int c) { return (a * n + b) * n + c; };
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        first[at3(s, i, j)] =
            0.5 * (jet.dg(j, i, s) + jet.dg(i, j, s) - jet.dg(s, i, j));

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int s = 0; s < n; ++s) v += ginv(k, s) * first[at3(s, i, j)];
        out.gamma[at3(k, i, j)] = v;
      }

  // d_l Gamma^k_ij = g^{ks} (d_l first_sij - g_sb,l Gamma^b_ij).
  std::vector<double> inner(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int s = 0; s < n; ++s) {
          double v = 0.5 * (jet.ddg(l, j, i, s) + jet.ddg(l, i, j, s) -
                            jet.ddg(l, s, i, j));
          for (int b = 0; b < n; ++b) v -= jet.dg(l, s, b) * out.gamma[at3(b, i, j)];
          inner[s] = v;
        }
        for (int k = 0; k < n; ++k) {
          double v = 0.0;
          for (int s = 0; s < n; ++s) v += ginv(k, s) * inner[s];
          out.dgamma[((l * n + k) * n + i) * n + j] = v;
        }
      }
  return out;
}

Christoffel christoffel(const MetricJet2& jet) {
  return christoffel(jet, inverse_metric(jet.g()));
}

namespace {

Matrix ricci_from(const Christoffel& c) {
  const int n = c.dim;
  Matrix ric = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) {
        v += c.deriv(k, k, j, i) - c.deriv(j, k, k, i);
        for (int l = 0; l < n; ++l) {
          v += c.at(k, k, l) * c.at(l, j, i) - c.at(k, j, l) * c.at(l, k, i);
        }
      }
      ric(i, j) = v;
    }
  // The formula is symmetric only up to rounding; use the upper triangle.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) ric(i, j) = ric(j, i);
  return ric;
}

}  // namespace

CurvatureBundle curvature(const MetricJet2& jet) {
  CurvatureBundle out;
  out.ginv = inverse_metric(jet.g());
  out.christoffel = christoffel(jet, out.ginv);
  out.ricci = ricci_from(out.christoffel);
  out.scalar = (out.ginv.cwiseProduct(out.ricci)).sum();
  out.einstein = out.ricci - 0.5 * out.scalar * jet.g();
  return out;
}

Matrix ricci(const MetricJet2& jet) { return ricci_from(christoffel(jet)); }

double scalar_curvature(const MetricJet2& jet) { return curvature(jet).scalar; }

Matrix einstein(const MetricJet2& jet) { return curvature(jet).einstein; }

double linearized_scalar(const MetricJet2& jet) {
  const int n = jet.dim();
  double v = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) v += jet.ddg(i, k, i, k) - jet.ddg(i, i, k, k);
  return v;
}

}  // namespace admflux
