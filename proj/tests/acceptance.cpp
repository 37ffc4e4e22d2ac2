// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "admflux/analysis.hpp"
#include "admflux/catalog.hpp"
#include "admflux/curvature.hpp"
#include "admflux/invariants.hpp"
#include "admflux/metric_field.hpp"
#include "admflux/surfaces.hpp"

#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace admflux;
using namespace admflux::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double time_limit,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0.0 && secs > time_limit) {
    out.pass = false;
    out.detail << " [over time limit " << time_limit << " s]";
  }
  if (!out.pass) ++failures;
  std::printf("%s  %2d  %s:%s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, title,
              out.detail.str().c_str(), secs);
  std::fflush(stdout);
}

const std::vector<double> kDefaultRadii{10, 20, 40, 80, 160, 320, 640};

bool strictly_decreasing(const std::vector<double>& v, double zero_floor = 1e-14) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double a = std::abs(v[k - 1]) <= zero_floor ? 0.0 : std::abs(v[k - 1]);
    const double b = std::abs(v[k]) <= zero_floor ? 0.0 : std::abs(v[k]);
    if (!(b < a || (a == 0.0 && b == 0.0))) return false;
  }
  return true;
}

std::vector<double> component(const ConvergenceReport& rep, int c) {
  std::vector<double> out;
  for (const auto& v : rep.values) out.push_back(v(c));
  return out;
}

// |L| <= limit_tol, p >= 0.8, and |difference| decreasing over the schedule.
void certify_difference(Outcome& out, const MetricField& field, Functional a, Functional b,
                        const Schedule& schedule, double limit_tol) {
  const ConvergenceReport ra = sweep(field, a, schedule);
  const ConvergenceReport rb = sweep(field, b, schedule);
  const ConvergenceReport d = compare(ra, rb);
  for (int c = 0; c < d.components(); ++c) {
    const std::vector<double> v = component(d, c);
    const PowerLawFit& fit = d.fits[c];
    out.detail << " |d(r_0)|=" << std::abs(v.front()) << " |d(r_max)|=" << std::abs(v.back())
               << " L=" << fit.limit << " p=" << (fit.constant ? NAN : fit.rate);
    out.require(strictly_decreasing(v), "difference not decreasing");
    out.require(std::abs(fit.limit) <= limit_tol, "difference limit");
    out.require(fit.constant || fit.rate >= 0.8, "rate below 0.8");
  }
}

std::vector<std::pair<std::string, MetricField>> n3_catalog() {
  catalog::Bump far;
  far.amplitude = 0.05;
  far.width = 3.0;
  far.location = vec({0, 15, 0});
  far.parity = catalog::BumpParity::even;
  std::vector<std::pair<std::string, MetricField>> out;
  out.emplace_back("flat", catalog::build(catalog::flat_spec(3)));
  out.emplace_back("schwarzschild", catalog::build(catalog::schwarzschild_spec(3, 1.0)));
  out.emplace_back("schwarzschild_c123",
                   catalog::build(catalog::schwarzschild_spec(3, 1.0, vec({1, 2, 3}))));
  out.emplace_back("conformal",
                   catalog::build(catalog::conformal_spec(3, {1.0, 1.0}, vec({0.5, -0.5, 0}))));
  out.emplace_back("bump_on_flat", catalog::build(bump_on_flat()));
  out.emplace_back("bump_on_schwarzschild",
                   catalog::build(catalog::perturbed_spec(catalog::schwarzschild_spec(3, 2.0), far)));
  out.emplace_back("rt_violator", catalog::rt_violator(3, 0.5));
  return out;
}

}  // namespace

int main() {
  const Schedule standard = Schedule::spheres(kDefaultRadii);

  criterion(1, "Schwarzschild mass recovery", 10.0, [](Outcome& out) {
    const MetricField s = catalog::build(catalog::schwarzschild_spec(3, 1.0));
    for (double r : {100.0, 1000.0}) {
      const double got = adm_mass_at(s, sphere_quadrature(3, r, 24));
      const double rel = std::abs(got - schwarzschild_adm_n3(1.0, r)) / schwarzschild_adm_n3(1.0, r);
      out.detail << " rel(r=" << r << ")=" << rel;
      out.require(rel <= 1e-9, "closed form at r = " + std::to_string(r));
    }
    // r_k = 10 * 2^k, k = 0..11.
    const ConvergenceReport rep = sweep(s, Functional::adm_mass, Schedule::geometric(10, 2, 12));
    out.detail << " L=" << rep.fitted_limit(0) << " |L-1|=" << std::abs(rep.fitted_limit(0) - 1.0);
    out.require(std::abs(rep.fitted_limit(0) - 1.0) <= 1e-6, "fitted limit");
  });

  criterion(2, "mass difference on spheres", 60.0, [&](Outcome& out) {
    const MetricField s = catalog::build(catalog::schwarzschild_spec(3, 1.0));
    certify_difference(out, s, Functional::adm_mass, Functional::intrinsic_mass, standard, 1e-4);
  });

  criterion(3, "mass difference on ellipsoids (2r,r,r)", 60.0, [&](Outcome& out) {
    const MetricField s = catalog::build(catalog::schwarzschild_spec(3, 1.0));
    certify_difference(out, s, Functional::adm_mass, Functional::intrinsic_mass,
                       Schedule::ellipsoids(kDefaultRadii, vec({2, 1, 1})), 1e-3);
  });

  criterion(4, "center of mass of translated Schwarzschild", 60.0, [&](Outcome& out) {
    const Vector c = vec({1, 2, 3});
    const MetricField s = catalog::build(catalog::schwarzschild_spec(3, 1.0, c));
    const ConvergenceReport cs = sweep(s, Functional::cs_center, standard);
    const ConvergenceReport ci = sweep(s, Functional::intrinsic_center, standard);
    const ConvergenceReport d = compare(cs, ci);
    const double e_cs = (cs.fitted_limit - c).cwiseAbs().maxCoeff();
    const double e_ci = (ci.fitted_limit - c).cwiseAbs().maxCoeff();
    const double e_d = d.fitted_limit.cwiseAbs().maxCoeff();
    out.detail << " max|c_CS-c|=" << e_cs << " max|c_I-c|=" << e_ci << " max|L_diff|=" << e_d;
    out.require(e_cs <= 1e-3, "c_CS limit");
    out.require(e_ci <= 1e-3, "c_I limit");
    out.require(e_d <= 1e-3, "difference limit");
  });

  criterion(5, "integration-by-parts identities", 0.0, [](Outcome& out) {
    const MetricField f = catalog::build(bump_on_flat());
    double worst = 0.0;
    auto check = [&](const QuadSurface& surf, const std::string& label) {
      double m = std::abs(ibp_residual_X(f, surf));
      for (int a = 0; a < 3; ++a) m = std::max(m, std::abs(ibp_residual_Y(f, surf, a)));
      out.detail << " " << label << "=" << m;
      out.require(m <= 1e-8, label);
      worst = std::max(worst, m);
    };
    check(sphere_quadrature(3, 100.0, 24), "S_100");
    // Surfaces that cut through the bump, where both sides of the identity are nonzero.
    check(sphere_quadrature(3, 12.0, 96), "S_12");
    check(sphere_quadrature(3, 6.0, 96), "S_6");
    check(ellipsoid_quadrature(vec({14, 8, 6}), 96), "E(14,8,6)");
  });

  criterion(6, "scalar flatness of Schwarzschild", 0.0, [](Outcome& out) {
    const MetricField s = catalog::build(catalog::schwarzschild_spec(3, 1.0));
    std::mt19937_64 rng(20261016);
    double worst = 0.0;
    for (int p = 0; p < 100; ++p) {
      const Point x = random_point(rng, 3, 1.05 * s.inner_radius(), 1000.0);
      worst = std::max(worst, std::abs(scalar_curvature(s.jet(x))));
    }
    out.detail << " max|R_g|=" << worst;
    out.require(worst <= 1e-9, "R_g");
  });

  criterion(7, "curvature decay for n=3 catalog fields", 0.0, [](Outcome& out) {
    const std::vector<double> radii{10.0, std::pow(10.0, 1.5), 100.0, std::pow(10.0, 2.5), 1000.0};
    for (const auto& [name, field] : n3_catalog()) {
      std::vector<double> ric, rem;
      for (double r : radii) {
        double a = 0.0, b = 0.0;
        for (const auto& node : sphere_quadrature(3, r, 12).nodes) {
          const MetricJet2 j = field.jet(node.x);
          a = std::max(a, ricci(j).cwiseAbs().maxCoeff());
          b = std::max(b, std::abs(scalar_curvature(j) - linearized_scalar(j)));
        }
        ric.push_back(std::pow(r, 2.5) * a);
        rem.push_back(std::pow(r, 2.5) * b);
      }
      out.detail << " " << name << ":" << ric.front() << "->" << ric.back();
      out.require(strictly_decreasing(ric), name + " Ricci");
      out.require(strictly_decreasing(rem), name + " scalar remainder");
    }
  });

  criterion(8, "finite-difference jets are second order", 0.0, [](Outcome& out) {
    for (const auto& [name, field] : n3_catalog()) {
      const auto values = [&f = field](const Point& x) { return f.jet(x).g(); };
      std::mt19937_64 rng(8);
      double e1 = 0.0, e2 = 0.0;
      for (int p = 0; p < 100; ++p) {
        const Point x = random_point(rng, 3, 8.0, 40.0);
        const double h = 0.02 * x.norm();
        const MetricJet2 exact = field.jet(x);
        e1 = std::max(e1, exact.max_abs_difference(fd_jet2(values, x, h)));
        e2 = std::max(e2, exact.max_abs_difference(fd_jet2(values, x, 0.5 * h)));
      }
      if (e1 == 0.0 && e2 == 0.0) {
        out.detail << " " << name << ":exact";
        continue;
      }
      out.detail << " " << name << ":" << e1 / e2;
      out.require(e1 / e2 >= 3.5, name);
    }
  });

  criterion(9, "quadrature exactness", 0.0, [](Outcome& out) {
    const double a2 = sphere_quadrature(3, 1.0, 24).area();
    const double a3 = sphere_quadrature(4, 1.0, 24).area();
    out.detail << " |A2-4pi|=" << std::abs(a2 - 4.0 * M_PI) << " |A3-2pi^2|="
               << std::abs(a3 - 2.0 * M_PI * M_PI);
    out.require(std::abs(a2 - 4.0 * M_PI) <= 1e-10, "omega_2");
    out.require(std::abs(a3 - 2.0 * M_PI * M_PI) <= 1e-10, "omega_3");
    double worst = 0.0;
    for (int order : {8, 24}) {
      const QuadSurface s = sphere_quadrature(3, 1.0, order);
      for (int a = 0; a <= order; ++a)
        for (int b = 0; a + b <= order; ++b)
          for (int c = 0; a + b + c <= order; ++c) {
            double got = 0.0;
            for (const auto& node : s.nodes) {
              got += node.weight * std::pow(node.x(0), a) * std::pow(node.x(1), b) *
                     std::pow(node.x(2), c);
            }
            const double expected = monomial_moment_s2(a, b, c);
            worst = std::max(worst, std::abs(got - expected) / std::max(1.0, std::abs(expected)));
          }
    }
    out.detail << " max moment error=" << worst;
    out.require(worst <= 1e-11, "moments");
  });

  criterion(10, "negative control rt_violator", 60.0, [&](Outcome& out) {
    const MetricField f = catalog::rt_violator(3, 0.5);
    const DecayReport odd = decay_report(f, kDefaultRadii, 1.5, DecayPart::odd);
    const DecayReport all = decay_report(f, kDefaultRadii, 0.5, DecayPart::all);
    out.detail << " odd tau=3/2 " << (odd.passed() ? "passes" : "fails") << ", all tau=1/2 "
               << (all.passed() ? "passes" : "fails") << ";";
    out.require(!odd.passed(), "odd decay should fail");
    out.require(all.passed(), "all decay should pass");
    certify_difference(out, f, Functional::adm_mass, Functional::intrinsic_mass, standard, 1e-4);
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
