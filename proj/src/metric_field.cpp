#include "admflux/metric_field.hpp"

#include "admflux/errors.hpp"
#include "admflux/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace admflux {

MetricField::MetricField(int dim, double inner_radius, JetFunction jet,
                         FieldInfo info)
    : dim_(dim),
      inner_radius_(inner_radius),
      jet_(std::make_shared<const JetFunction>(std::move(jet))),
      info_(std::make_shared<const FieldInfo>(std::move(info))) {
  if (dim < 3) {
    throw Error(ErrorKind::invalid_argument, "metric fields need dimension >= 3");
  }
  if (!(inner_radius >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "inner radius must be nonnegative");
  }
}

bool MetricField::contains(const Point& x) const {
  return x.size() == dim_ && x.norm() >= inner_radius_;
}

MetricJet2 MetricField::jet(const Point& x) const {
  if (x.size() != dim_) {
    throw Error(ErrorKind::invalid_argument, "point dimension does not match field");
  }
  if (!(x.norm() >= inner_radius_)) {
    std::ostringstream msg;
    msg << "point with |x| = " << x.norm() << " lies inside inner radius "
        << inner_radius_ << " of field '" << info_->name << "'";
    throw Error(ErrorKind::domain, msg.str());
  }
  return (*jet_)(x);
}

MetricJet2 jet2(const MetricField& field, const Point& x) { return field.jet(x); }

MetricField translated(const MetricField& field, const Vector& shift) {
  FieldInfo info = field.info();
  info.name += " (translated)";
  if (info.expected_center) *info.expected_center += shift;
  // A translated field stays smooth wherever the original was.
  const MetricField base = field;
  const Vector v = shift;
  return MetricField(
      field.dim(), field.inner_radius() + shift.norm(),
      [base, v](const Point& x) { return base.jet(x - v); }, std::move(info));
}

double default_fd_step(const Point& x) { return std::max(1e-4, 1e-4 * x.norm()); }

MetricJet2 fd_jet2(const MatrixFunction& values, const Point& x, double h) {
  if (!(h > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "finite-difference step must be positive");
  }
  const int n = static_cast<int>(x.size());
  auto eval = [&](const Point& p) {
    const Matrix m = values(p);
    return Matrix(0.5 * (m + m.transpose()));
  };
  auto shifted = [&](int k, double sk, int l, double sl) {
    Point p = x;
    p(k) += sk * h;
    if (l >= 0) p(l) += sl * h;
    return eval(p);
  };

  MetricJet2 jet(n);
  const Matrix center = eval(x);
  jet.h() = center - Matrix::Identity(n, n);
  std::vector<Matrix> plus, minus;
  for (int k = 0; k < n; ++k) {
    plus.push_back(shifted(k, 1.0, -1, 0.0));
    minus.push_back(shifted(k, -1.0, -1, 0.0));
  }
  for (int k = 0; k < n; ++k) {
    const Matrix first = (plus[k] - minus[k]) / (2.0 * h);
    const Matrix second = (plus[k] - 2.0 * center + minus[k]) / (h * h);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        jet.set_dg(k, i, j, first(i, j));
        jet.set_ddg(k, k, i, j, second(i, j));
      }
    for (int l = k + 1; l < n; ++l) {
      const Matrix mixed = (shifted(k, 1, l, 1) - shifted(k, 1, l, -1) -
                            shifted(k, -1, l, 1) + shifted(k, -1, l, -1)) /
                           (4.0 * h * h);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) jet.set_ddg(k, l, i, j, mixed(i, j));
    }
  }
  return jet;
}

MetricJet2 fd_jet2(const MatrixFunction& values, const Point& x) {
  return fd_jet2(values, x, default_fd_step(x));
}

ParitySplit parity_split(const MetricField& field, const Point& x) {
  const MetricJet2 here = field.jet(x);
  const MetricJet2 there = field.jet(-x);
  ParitySplit out{0.5 * (here + there), 0.5 * (here - there)};
  return out;
}

bool decreasing_tail(std::span<const double> values, double zero_floor) {
  if (values.empty()) return false;
  const std::size_t start = values.size() / 2;
  for (std::size_t i = start; i + 1 < values.size(); ++i) {
    const double a = values[i];
    const double b = values[i + 1];
    if (a <= zero_floor && b <= zero_floor) continue;
    // Relative margin so rounding noise on a constant sequence fails.
    if (!(b < a * (1.0 - 1e-9))) return false;
  }
  return true;
}

namespace {

// Jet of the odd part f(x) = (g(x) - g(-x)) / 2 as a function: first
// derivatives pick up the even combination by the chain rule.
MetricJet2 odd_part_jet(const MetricJet2& here, const MetricJet2& there) {
  MetricJet2 out = 0.5 * (here - there);
  auto& dg = out.dg_data();
  for (std::size_t a = 0; a < dg.size(); ++a) {
    dg[a] = 0.5 * (here.dg_data()[a] + there.dg_data()[a]);
  }
  return out;
}

std::array<double, 3> scaled_sups(const MetricJet2& h, double r, double tau) {
  double s0 = h.h().cwiseAbs().maxCoeff();
  double s1 = 0.0, s2 = 0.0;
  for (double v : h.dg_data()) s1 = std::max(s1, std::abs(v));
  for (double v : h.ddg_data()) s2 = std::max(s2, std::abs(v));
  return {std::pow(r, tau) * s0, std::pow(r, 1.0 + tau) * s1,
          std::pow(r, 2.0 + tau) * s2};
}

}  // namespace

DecayReport decay_report(const MetricField& field, std::span<const double> radii,
                         double tau, DecayPart part, int sample_order) {
  if (radii.empty()) {
    throw Error(ErrorKind::invalid_argument, "decay report needs at least one radius");
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw Error(ErrorKind::invalid_argument, "decay radii must be strictly increasing");
    }
  }
  DecayReport report;
  report.tau = tau;
  report.part = part;
  report.radii.assign(radii.begin(), radii.end());
  const int n = field.dim();
  for (double r : radii) {
    const QuadSurface samples = sphere_quadrature(n, r, sample_order);
    std::array<double, 3> sup{0.0, 0.0, 0.0};
    for (const auto& node : samples.nodes) {
      MetricJet2 h;
      if (part == DecayPart::all) {
        h = field.jet(node.x);
      } else {
        h = odd_part_jet(field.jet(node.x), field.jet(-node.x));
      }
      const auto s = scaled_sups(h, node.x.norm(), tau);
      for (int o = 0; o < 3; ++o) sup[o] = std::max(sup[o], s[o]);
    }
    report.sups.push_back(sup);
  }
  for (int o = 0; o < 3; ++o) {
    std::vector<double> seq;
    for (const auto& s : report.sups) seq.push_back(s[o]);
    report.decreasing[o] = decreasing_tail(seq);
  }
  return report;
}

}  // namespace admflux
