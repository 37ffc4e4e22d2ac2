#pragma once

#include <Eigen/Dense>

#include <vector>

namespace admflux {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Point = Eigen::VectorXd;

/// Second-order jet of a Riemannian metric in Cartesian coordinates x.
///
/// Stores h_ij = g_ij - delta_ij, dg(k,i,j) = d_k g_ij and
/// ddg(k,l,i,j) = d_k d_l g_ij. Keeping h rather than g preserves its
/// relative accuracy far out, where |h| is tiny.
/// The symmetric setters write every index permutation so the symmetry
/// invariants hold by construction. Arithmetic acts on (h, dg, ddg).
class MetricJet2 {
 public:
  MetricJet2() = default;
  explicit MetricJet2(int dim);

  /// Euclidean metric: h = 0, all derivatives zero.
  static MetricJet2 flat(int dim) { return MetricJet2(dim); }

  int dim() const { return dim_; }

  Matrix g() const { return Matrix::Identity(dim_, dim_) + h_; }
  const Matrix& h() const { return h_; }
  Matrix& h() { return h_; }

  double dg(int k, int i, int j) const { return dg_[index3(k, i, j)]; }
  double ddg(int k, int l, int i, int j) const {
    return ddg_[index4(k, l, i, j)];
  }

  void set_h(int i, int j, double v) {
    h_(i, j) = v;
    h_(j, i) = v;
  }
  void set_g(int i, int j, double v) { set_h(i, j, i == j ? v - 1.0 : v); }
  void set_dg(int k, int i, int j, double v) {
    dg_[index3(k, i, j)] = v;
    dg_[index3(k, j, i)] = v;
  }
  void set_ddg(int k, int l, int i, int j, double v);

  void add_h(int i, int j, double v);
  void add_dg(int k, int i, int j, double v);
  void add_ddg(int k, int l, int i, int j, double v);

  /// Raw storage, row-major in the index order of the accessors.
  const std::vector<double>& dg_data() const { return dg_; }
  const std::vector<double>& ddg_data() const { return ddg_; }
  std::vector<double>& dg_data() { return dg_; }
  std::vector<double>& ddg_data() { return ddg_; }

  /// Largest deviation from the symmetry invariants of the stored arrays.
  double symmetry_defect() const;

  /// Max over every component of |this - other|.
  double max_abs_difference(const MetricJet2& other) const;

  MetricJet2& operator+=(const MetricJet2& other);
  MetricJet2& operator-=(const MetricJet2& other);
  MetricJet2& operator*=(double s);

 private:
  int index3(int k, int i, int j) const { return (k * dim_ + i) * dim_ + j; }
  int index4(int k, int l, int i, int j) const {
    return ((k * dim_ + l) * dim_ + i) * dim_ + j;
  }

  int dim_ = 0;
  Matrix h_;
  std::vector<double> dg_;
  std::vector<double> ddg_;
};

MetricJet2 operator+(MetricJet2 a, const MetricJet2& b);
MetricJet2 operator-(MetricJet2 a, const MetricJet2& b);
MetricJet2 operator*(double s, MetricJet2 a);

}  // namespace admflux
