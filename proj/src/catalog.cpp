#include "admflux/catalog.hpp"

#include "admflux/errors.hpp"

#include <cmath>
#include <sstream>

namespace admflux::catalog {

CatalogSpec flat_spec(int n) { return CatalogSpec{n, Flat{}, std::nullopt}; }

CatalogSpec schwarzschild_spec(int n, double mass, Vector center) {
  return CatalogSpec{n, Schwarzschild{mass, std::move(center)}, std::nullopt};
}

CatalogSpec conformal_spec(int n, std::vector<double> coefficients, Vector center) {
  return CatalogSpec{n, Conformal{std::move(coefficients), std::move(center)},
                     std::nullopt};
}

CatalogSpec perturbed_spec(CatalogSpec base, Bump bump) {
  const int n = base.dim;
  return CatalogSpec{
      n, Perturbed{std::make_shared<const CatalogSpec>(std::move(base)), std::move(bump)},
      std::nullopt};
}

namespace {

Vector center_or_origin(const Vector& c, int n) {
  if (c.size() == 0) return Vector::Zero(n);
  if (c.size() != n) {
    throw Error(ErrorKind::invalid_argument, "center dimension does not match metric");
  }
  return c;
}

// g = u^p delta with u radial about c; p = 4/(n-2).
MetricJet2 conformal_jet(const std::vector<double>& a, const Vector& c, int n,
                         const Point& x) {
  const Vector y = x - c;
  const double s = y.norm();
  double v = 0.0, u1 = 0.0, u2 = 0.0;  // v = u - 1; d_i u = u1 y_i; d_ij u = u1 d_ij + u2 y_i y_j
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    const double k = double(idx + 1);
    const double sk = std::pow(s, -k);
    v += a[idx] * sk;
    u1 += -k * a[idx] * sk / (s * s);
    u2 += k * (k + 2.0) * a[idx] * sk / (s * s * s * s);
  }
  const double u = 1.0 + v;
  const double p = 4.0 / (n - 2);
  const double phi_minus_1 = std::expm1(p * std::log1p(v));
  const double phi = 1.0 + phi_minus_1;
  const double phi1 = p * phi / u;                   // d phi / du
  const double phi2 = p * (p - 1.0) * phi / (u * u);  // d^2 phi / du^2

  MetricJet2 jet(n);
  for (int i = 0; i < n; ++i) jet.set_h(i, i, phi_minus_1);
  for (int k = 0; k < n; ++k) {
    const double dk = phi1 * u1 * y(k);
    for (int i = 0; i < n; ++i) jet.set_dg(k, i, i, dk);
    for (int l = k; l < n; ++l) {
      const double uk = u1 * y(k), ul = u1 * y(l);
      const double ukl = (k == l ? u1 : 0.0) + u2 * y(k) * y(l);
      const double dkl = phi2 * uk * ul + phi1 * ukl;
      for (int i = 0; i < n; ++i) jet.set_ddg(k, l, i, i, dkl);
    }
  }
  return jet;
}

Matrix default_pattern(int n) {
  Matrix s = Matrix::Identity(n, n);
  s(0, 1) = s(1, 0) = 0.5;
  return s;
}

void check_conformal_positive(const std::vector<double>& a, double s_min) {
  // u is a polynomial in t = 1/s; sample it on [0, 1/s_min].
  constexpr int kSamples = 4000;
  const double t_max = 1.0 / s_min;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = t_max * i / kSamples;
    double u = 1.0, tk = 1.0;
    for (double ak : a) {
      tk *= t;
      u += ak * tk;
    }
    if (!(u > 0.0)) {
      std::ostringstream msg;
      msg << "conformal factor is not positive at distance " << 1.0 / t
          << " from the center; raise inner_radius";
      throw Error(ErrorKind::invalid_argument, msg.str());
    }
  }
}

struct Built {
  MetricField::JetFunction jet;
  double inner_radius;
  FieldInfo info;
};

Built build_impl(const CatalogSpec& spec);

Built build_conformal(int n, std::vector<double> a, const Vector& center,
                      std::optional<double> inner, std::string name,
                      double default_inner, std::optional<double> min_inner) {
  const double r0 = inner.value_or(default_inner);
  if (min_inner && !(r0 > *min_inner)) {
    std::ostringstream msg;
    msg << "inner_radius " << r0 << " must exceed " << *min_inner;
    throw Error(ErrorKind::invalid_argument, msg.str());
  }
  const double s_min = r0 - center.norm();
  if (!(s_min > 0.0)) {
    throw Error(ErrorKind::invalid_argument,
                "inner_radius must exceed the distance of the center from the origin");
  }
  check_conformal_positive(a, s_min);

  FieldInfo info;
  info.name = std::move(name);
  bool trivial = true;
  bool known_mass = true;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    if (a[k - 1] == 0.0) continue;
    trivial = false;
    if (static_cast<int>(k) < n - 2) known_mass = false;
  }
  if (trivial) {
    info.globally_smooth = true;
    info.expected_mass = 0.0;
  } else if (known_mass) {
    const double m = static_cast<std::size_t>(n - 2) <= a.size() ? 2.0 * a[n - 3] : 0.0;
    info.expected_mass = m;
    if (m != 0.0) info.expected_center = center;
  }
  auto jet = [a = std::move(a), center, n](const Point& x) {
    return conformal_jet(a, center, n, x);
  };
  return {std::move(jet), r0, std::move(info)};
}

Built build_impl(const CatalogSpec& spec) {
  const int n = spec.dim;
  if (n < 3) throw Error(ErrorKind::invalid_argument, "catalog metrics need n >= 3");

  if (std::holds_alternative<Flat>(spec.kind)) {
    const double r0 = spec.inner_radius.value_or(1.0);
    if (!(r0 >= 0.0)) throw Error(ErrorKind::invalid_argument, "negative inner_radius");
    FieldInfo info;
    info.name = "flat";
    info.expected_mass = 0.0;
    info.globally_smooth = true;
    return {[n](const Point&) { return MetricJet2::flat(n); }, r0, std::move(info)};
  }

  if (const auto* s = std::get_if<Schwarzschild>(&spec.kind)) {
    if (!std::isfinite(s->mass)) {
      throw Error(ErrorKind::invalid_argument, "schwarzschild mass must be finite");
    }
    const Vector c = center_or_origin(s->center, n);
    std::vector<double> a(static_cast<std::size_t>(n - 2), 0.0);
    a[n - 3] = 0.5 * s->mass;
    // u vanishes where |x-c|^{n-2} = -m/2; stay outside that sphere for any sign.
    const double horizon = std::pow(0.5 * std::abs(s->mass), 1.0 / (n - 2));
    std::ostringstream name;
    name << "schwarzschild(m=" << s->mass << ")";
    Built b = build_conformal(n, std::move(a), c, spec.inner_radius, name.str(),
                              c.norm() + std::max(1.0, 1.5 * horizon), c.norm() + horizon);
    if (s->mass != 0.0) b.info.expected_center = c;
    return b;
  }

  if (const auto* cf = std::get_if<Conformal>(&spec.kind)) {
    const Vector c = center_or_origin(cf->center, n);
    return build_conformal(n, cf->coefficients, c, spec.inner_radius, "conformal",
                           c.norm() + 1.0, std::nullopt);
  }

  const auto& pert = std::get<Perturbed>(spec.kind);
  if (!pert.base) throw Error(ErrorKind::invalid_argument, "perturbed metric needs a base");
  if (pert.base->dim != n) {
    throw Error(ErrorKind::invalid_argument, "perturbation base dimension mismatch");
  }
  Built base = build_impl(*pert.base);
  Bump bump = pert.bump;
  bump.location = center_or_origin(bump.location, n);
  if (bump.pattern.size() == 0) bump.pattern = default_pattern(n);
  if (bump.pattern.rows() != n || bump.pattern.cols() != n) {
    throw Error(ErrorKind::invalid_argument, "bump pattern must be n x n");
  }
  bump.pattern = 0.5 * (bump.pattern + bump.pattern.transpose());
  if (!(bump.width > 0.0)) throw Error(ErrorKind::invalid_argument, "bump width must be positive");
  // |pattern + y y^T / w^2| e^{-|y|^2/w^2} <= |pattern| + 1/e.
  const double copies = bump.parity == BumpParity::none ? 1.0 : 2.0;
  const double bound = copies * std::abs(bump.amplitude) *
                       (bump.pattern.operatorNorm() + std::exp(-1.0));
  if (std::get_if<Flat>(&pert.base->kind) && !(bound < 0.5)) {
    throw Error(ErrorKind::invalid_argument,
                "bump amplitude too large to keep the metric positive definite");
  }
  if (spec.inner_radius) {
    if (!(*spec.inner_radius >= base.inner_radius)) {
      throw Error(ErrorKind::invalid_argument,
                  "inner_radius of a perturbed metric cannot undercut its base");
    }
    base.inner_radius = *spec.inner_radius;
  }
  base.info.name = "perturbed " + base.info.name;
  auto jet = [base_jet = base.jet, bump, n](const Point& x) {
    MetricJet2 out = base_jet(x);
    out += bump_jet(bump, n, x);
    if (bump.parity != BumpParity::none) {
      Bump mirror = bump;
      mirror.location = -bump.location;
      MetricJet2 m = bump_jet(mirror, n, x);
      if (bump.parity == BumpParity::odd) m *= -1.0;
      out += m;
    }
    return out;
  };
  return {std::move(jet), base.inner_radius, std::move(base.info)};
}

}  // namespace

MetricJet2 bump_jet(const Bump& bump, int n, const Point& x) {
  const Matrix& pattern = bump.pattern.size() == 0 ? default_pattern(n) : bump.pattern;
  const Vector loc = bump.location.size() == 0 ? Vector::Zero(n) : bump.location;
  const Vector y = x - loc;
  const double w2 = bump.width * bump.width;
  const double e = bump.amplitude * std::exp(-y.squaredNorm() / w2);

  MetricJet2 jet(n);
  auto p = [&](int i, int j) { return pattern(i, j) + y(i) * y(j) / w2; };
  auto dp = [&](int k, int i, int j) {
    return ((i == k ? y(j) : 0.0) + (j == k ? y(i) : 0.0)) / w2;
  };
  auto ddp = [&](int k, int l, int i, int j) {
    return ((i == k && j == l ? 1.0 : 0.0) + (j == k && i == l ? 1.0 : 0.0)) / w2;
  };
  // E' = -2 y_k / w^2 * E,  E'' = (4 y_k y_l / w^4 - 2 d_kl / w^2) * E, factored by e.
  auto de = [&](int k) { return -2.0 * y(k) / w2; };
  auto dde = [&](int k, int l) {
    return 4.0 * y(k) * y(l) / (w2 * w2) - (k == l ? 2.0 / w2 : 0.0);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      jet.set_h(i, j, e * p(i, j));
      for (int k = 0; k < n; ++k) {
        jet.set_dg(k, i, j, e * (dp(k, i, j) + p(i, j) * de(k)));
        for (int l = k; l < n; ++l) {
          jet.set_ddg(k, l, i, j,
                      e * (ddp(k, l, i, j) + dp(k, i, j) * de(l) +
                           dp(l, i, j) * de(k) + p(i, j) * dde(k, l)));
        }
      }
    }
  return jet;
}

MetricField build(const CatalogSpec& spec) {
  Built b = build_impl(spec);
  return MetricField(spec.dim, b.inner_radius, std::move(b.jet), std::move(b.info));
}

MetricField rt_violator(int n, double amplitude) {
  if (n < 3) throw Error(ErrorKind::invalid_argument, "rt_violator needs n >= 3");
  if (!(std::abs(amplitude) < 1.0)) {
    throw Error(ErrorKind::invalid_argument, "rt_violator amplitude must satisfy |a| < 1");
  }
  const double q = 0.5 * n + 1.0;
  FieldInfo info;
  info.name = "rt_violator";
  info.expected_mass = 0.0;
  auto jet = [n, q, a = amplitude](const Point& x) {
    const double s = x.norm();
    const double sq = std::pow(s, -q);
    const double sq2 = sq / (s * s);
    const double sq4 = sq2 / (s * s);
    const double x0 = x(0);
    MetricJet2 out = MetricJet2::flat(n);
    out.add_h(0, 0, a * x0 * sq);
    for (int k = 0; k < n; ++k) {
      out.set_dg(k, 0, 0, a * ((k == 0 ? sq : 0.0) - q * x0 * x(k) * sq2));
      for (int l = k; l < n; ++l) {
        const double v = -q * (k == 0 ? x(l) : 0.0) * sq2 - q * (l == 0 ? x(k) : 0.0) * sq2 -
                         q * x0 * (k == l ? 1.0 : 0.0) * sq2 +
                         q * (q + 2.0) * x0 * x(k) * x(l) * sq4;
        out.set_ddg(k, l, 0, 0, a * v);
      }
    }
    return out;
  };
  return MetricField(n, 1.0, std::move(jet), std::move(info));
}

}  // namespace admflux::catalog
