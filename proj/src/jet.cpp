#include "admflux/jet.hpp"

#include <algorithm>
#include <cmath>

namespace admflux {

MetricJet2::MetricJet2(int dim)
    : dim_(dim),
      h_(Matrix::Zero(dim, dim)),
      dg_(static_cast<std::size_t>(dim * dim * dim), 0.0),
      ddg_(static_cast<std::size_t>(dim * dim * dim * dim), 0.0) {}

void MetricJet2::set_ddg(int k, int l, int i, int j, double v) {
  ddg_[index4(k, l, i, j)] = v;
  ddg_[index4(k, l, j, i)] = v;
  ddg_[index4(l, k, i, j)] = v;
  ddg_[index4(l, k, j, i)] = v;
}

void MetricJet2::add_h(int i, int j, double v) {
  h_(i, j) += v;
  if (i != j) h_(j, i) += v;
}

void MetricJet2::add_dg(int k, int i, int j, double v) {
  dg_[index3(k, i, j)] += v;
  if (i != j) dg_[index3(k, j, i)] += v;
}

void MetricJet2::add_ddg(int k, int l, int i, int j, double v) {
  // Touch each distinct permutation exactly once.
  ddg_[index4(k, l, i, j)] += v;
  if (i != j) ddg_[index4(k, l, j, i)] += v;
  if (k != l) {
    ddg_[index4(l, k, i, j)] += v;
    if (i != j) ddg_[index4(l, k, j, i)] += v;
  }
}

double MetricJet2::symmetry_defect() const {
  double defect = (h_ - h_.transpose()).cwiseAbs().maxCoeff();
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        defect = std::max(defect, std::abs(dg(k, i, j) - dg(k, j, i)));
        for (int l = 0; l < dim_; ++l) {
          defect = std::max(defect, std::abs(ddg(k, l, i, j) - ddg(k, l, j, i)));
          defect = std::max(defect, std::abs(ddg(k, l, i, j) - ddg(l, k, i, j)));
        }
      }
    }
  }
  return defect;
}

double MetricJet2::max_abs_difference(const MetricJet2& other) const {
  double diff = (h_ - other.h_).cwiseAbs().maxCoeff();
  for (std::size_t a = 0; a < dg_.size(); ++a) {
    diff = std::max(diff, std::abs(dg_[a] - other.dg_[a]));
  }
  for (std::size_t a = 0; a < ddg_.size(); ++a) {
    diff = std::max(diff, std::abs(ddg_[a] - other.ddg_[a]));
  }
  return diff;
}

MetricJet2& MetricJet2::operator+=(const MetricJet2& other) {
  h_ += other.h_;
  for (std::size_t a = 0; a < dg_.size(); ++a) dg_[a] += other.dg_[a];
  for (std::size_t a = 0; a < ddg_.size(); ++a) ddg_[a] += other.ddg_[a];
  return *this;
}

MetricJet2& MetricJet2::operator-=(const MetricJet2& other) {
  h_ -= other.h_;
  for (std::size_t a = 0; a < dg_.size(); ++a) dg_[a] -= other.dg_[a];
  for (std::size_t a = 0; a < ddg_.size(); ++a) ddg_[a] -= other.ddg_[a];
  return *this;
}

MetricJet2& MetricJet2::operator*=(double s) {
  h_ *= s;
  for (double& v : dg_) v *= s;
  for (double& v : ddg_) v *= s;
  return *this;
}

MetricJet2 operator+(MetricJet2 a, const MetricJet2& b) { return a += b; }
MetricJet2 operator-(MetricJet2 a, const MetricJet2& b) { return a -= b; }
MetricJet2 operator*(double s, MetricJet2 a) { return a *= s; }

}  // namespace admflux
