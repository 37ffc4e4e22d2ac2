#include "admflux/analysis.hpp"

#include "admflux/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace admflux {

Functional parse_functional(std::string_view name) {
  if (name == "adm_mass") return Functional::adm_mass;
  if (name == "intrinsic_mass") return Functional::intrinsic_mass;
  if (name == "cs_center") return Functional::cs_center;
  if (name == "intrinsic_center") return Functional::intrinsic_center;
  throw Error(ErrorKind::invalid_argument, "unknown functional '" + std::string(name) + "'");
}

std::string_view functional_name(Functional f) {
  switch (f) {
    case Functional::adm_mass:
      return "adm_mass";
    case Functional::intrinsic_mass:
      return "intrinsic_mass";
    case Functional::cs_center:
      return "cs_center";
    case Functional::intrinsic_center:
      return "intrinsic_center";
  }
  return "unknown";
}

bool is_center(Functional f) {
  return f == Functional::cs_center || f == Functional::intrinsic_center;
}

Schedule Schedule::spheres(std::vector<double> radii) {
  Schedule s;
  s.radii = std::move(radii);
  return s;
}

Schedule Schedule::ellipsoids(std::vector<double> radii, Vector axis_ratios) {
  Schedule s;
  s.radii = std::move(radii);
  s.axis_ratios = std::move(axis_ratios);
  return s;
}

Schedule Schedule::geometric(double start, double ratio, int count) {
  Schedule s;
  for (int k = 0; k < count; ++k) s.radii.push_back(start * std::pow(ratio, k));
  return s;
}

QuadSurface Schedule::surface(std::size_t index, int dim, int order) const {
  const double r = radii.at(index);
  if (!is_ellipsoid()) return sphere_quadrature(dim, r, order);
  if (axis_ratios.size() != dim) {
    throw Error(ErrorKind::invalid_argument, "ellipsoid axis ratios must have n entries");
  }
  return ellipsoid_quadrature(r * axis_ratios, order);
}

std::size_t fit_window(std::size_t count) {
  return std::min(count, std::max<std::size_t>(3, (count + 1) / 2));
}

namespace {

struct Projection {
  double limit;
  double amplitude;
  double rss;
  double gradient;  // d rss / d rate with (limit, amplitude) re-optimized
};

Projection project(std::span<const double> r, std::span<const double> v, double p) {
  const std::size_t m = r.size();
  std::vector<double> phi(m);
  double phi_mean = 0.0, v_mean = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    phi[k] = std::pow(r[k], -p);
    phi_mean += phi[k];
    v_mean += v[k];
  }
  phi_mean /= double(m);
  v_mean /= double(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxy += (phi[k] - phi_mean) * (v[k] - v_mean);
    sxx += (phi[k] - phi_mean) * (phi[k] - phi_mean);
  }
  Projection out{};
  out.amplitude = sxx > 0.0 ? sxy / sxx : 0.0;
  out.limit = v_mean - out.amplitude * phi_mean;
  for (std::size_t k = 0; k < m; ++k) {
    const double res = v[k] - out.limit - out.amplitude * phi[k];
    out.rss += res * res;
    out.gradient += 2.0 * out.amplitude * res * std::log(r[k]) * phi[k];
  }
  return out;
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> radii, std::span<const double> values,
                          double flat_threshold) {
  if (radii.size() != values.size() || radii.size() < 3) {
    throw Error(ErrorKind::invalid_argument, "power-law fit needs >= 3 matched samples");
  }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1]))) {
      throw Error(ErrorKind::invalid_argument, "fit radii must be positive and increasing");
    }
    if (!std::isfinite(values[k])) {
      throw Error(ErrorKind::invalid_argument, "fit values must be finite");
    }
  }
  PowerLawFit fit;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi - *lo <= flat_threshold) {
    fit.constant = true;
    fit.limit = values.back();
    fit.residual = *hi - *lo;
    return fit;
  }

  constexpr int kGrid = 600;
  constexpr double kMinRate = 1e-3, kMaxRate = 12.0;
  std::vector<double> grid(kGrid);
  int best = 0;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    grid[i] = kMinRate * std::pow(kMaxRate / kMinRate, double(i) / (kGrid - 1));
    const double rss = project(radii, values, grid[i]).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best = i;
    }
  }
  double a = grid[std::max(best - 1, 0)];
  double b = grid[std::min(best + 1, kGrid - 1)];
  double ga = project(radii, values, a).gradient;
  double gb = project(radii, values, b).gradient;
  double rate = grid[best];
  if (ga < 0.0 && gb > 0.0) {
    // Bisection on the profiled gradient resolves the rate to rounding.
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
      const double mid = 0.5 * (a + b);
      if (project(radii, values, mid).gradient < 0.0) {
        a = mid;
      } else {
        b = mid;
      }
    }
    rate = 0.5 * (a + b);
  }
  const Projection pr = project(radii, values, rate);
  fit.limit = pr.limit;
  fit.amplitude = pr.amplitude;
  fit.rate = rate;
  fit.residual = std::sqrt(pr.rss / double(radii.size()));
  return fit;
}

namespace {

// Runs fn(i) for i in [0, count) on a few threads; rethrows the failure
// with the lowest index so errors are reproducible.
template <typename Fn>
void parallel_indices(std::size_t count, int threads, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(count, threads > 0 ? std::size_t(threads) : std::size_t(hw));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Vector evaluate(const MetricField& field, Functional f, const QuadSurface& surface,
                double mass) {
  switch (f) {
    case Functional::adm_mass:
      return Vector::Constant(1, adm_mass_at(field, surface));
    case Functional::intrinsic_mass:
      return Vector::Constant(1, intrinsic_mass_at(field, surface));
    case Functional::cs_center:
      return cs_center_at(field, surface, mass);
    case Functional::intrinsic_center:
      return intrinsic_center_at(field, surface, mass);
  }
  return {};
}

void finish_report(ConvergenceReport& report, double tolerance, bool scale_tolerance) {
  const std::size_t count = report.radii.size();
  const std::size_t window = fit_window(count);
  const std::size_t start = count - window;
  const int comps = static_cast<int>(report.values.front().size());
  report.tolerance = tolerance;
  report.fitted_limit = Vector::Zero(comps);
  report.fits.clear();
  report.verdict = true;
  report.residual = 0.0;
  double rate = std::numeric_limits<double>::infinity();
  const std::span<const double> r(report.radii.data() + start, window);
  for (int c = 0; c < comps; ++c) {
    std::vector<double> v;
    for (std::size_t k = start; k < count; ++k) v.push_back(report.values[k](c));
    const PowerLawFit fit = fit_power_law(r, v, 1e-3 * tolerance);
    report.fits.push_back(fit);
    report.fitted_limit(c) = fit.limit;
    report.residual = std::max(report.residual, fit.residual);
    if (!fit.constant) rate = std::min(rate, fit.rate);
    const double tol = scale_tolerance ? tolerance * std::max(1.0, std::abs(fit.limit))
                                       : tolerance;
    const double last = report.values.back()(c);
    const bool ok = scale_tolerance
                        ? fit.constant || (std::abs(last - fit.limit) <= tol && fit.rate > 0.0)
                        : std::abs(fit.limit) <= tol;
    report.verdict = report.verdict && ok;
  }
  report.fitted_rate = std::isfinite(rate) ? rate : 0.0;
}

}  // namespace

ConvergenceReport sweep(const MetricField& field, Functional functional,
                        const Schedule& schedule, const SweepOptions& options) {
  const std::size_t count = schedule.radii.size();
  if (count < 4) {
    throw Error(ErrorKind::invalid_argument, "sweep schedule needs at least 4 radii");
  }
  for (std::size_t k = 1; k < count; ++k) {
    if (!(schedule.radii[k] > schedule.radii[k - 1])) {
      throw Error(ErrorKind::invalid_argument, "sweep radii must be strictly increasing");
    }
  }
  if (options.order < 2 || options.max_order < options.order) {
    throw Error(ErrorKind::invalid_argument, "invalid quadrature order settings");
  }

  ConvergenceReport report;
  report.quantity = std::string(functional_name(functional));
  report.radii = schedule.radii;

  double mass = 0.0;
  if (is_center(functional)) {
    if (options.mass) {
      mass = *options.mass;
    } else {
      SweepOptions mass_options = options;
      mass_options.mass.reset();
      mass = sweep(field, Functional::adm_mass, schedule, mass_options).fitted_limit(0);
    }
    report.mass_used = mass;
  }

  report.values.assign(count, Vector());
  report.orders.assign(count, 0);
  const int n = field.dim();
  parallel_indices(count, options.threads, [&](std::size_t i) {
    try {
      int order = options.order;
      Vector value = evaluate(field, functional, schedule.surface(i, n, order), mass);
      if (options.adaptive) {
        while (true) {
          const int next = 2 * order;
          if (next > options.max_order) {
            std::ostringstream msg;
            msg << "orders up to " << order << " disagree by more than "
                << options.agreement;
            throw Error(ErrorKind::quadrature, msg.str());
          }
          Vector refined = evaluate(field, functional, schedule.surface(i, n, next), mass);
          const double scale = std::max(1.0, refined.cwiseAbs().maxCoeff());
          const double change = (refined - value).cwiseAbs().maxCoeff();
          value = std::move(refined);
          order = next;
          if (change <= options.agreement * scale) break;
        }
      }
      report.values[i] = std::move(value);
      report.orders[i] = order;
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << functional_name(functional) << " at r = " << schedule.radii[i] << ": "
          << e.what();
      throw Error(e.kind(), msg.str());
    }
  });
  finish_report(report, options.tolerance, true);
  return report;
}

ConvergenceReport sweep(const MetricField& field, std::string_view functional,
                        const Schedule& schedule, const SweepOptions& options) {
  return sweep(field, parse_functional(functional), schedule, options);
}

ConvergenceReport compare(const ConvergenceReport& a, const ConvergenceReport& b,
                          double tolerance) {
  if (a.radii != b.radii) {
    throw Error(ErrorKind::invalid_argument, "compared reports use different schedules");
  }
  if (a.values.empty() || a.values.front().size() != b.values.front().size()) {
    throw Error(ErrorKind::invalid_argument, "compared reports have different shapes");
  }
  ConvergenceReport out;
  out.quantity = a.quantity + " - " + b.quantity;
  out.radii = a.radii;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    out.values.push_back(a.values[k] - b.values[k]);
    out.orders.push_back(std::max(a.orders[k], b.orders[k]));
  }
  out.mass_used = a.mass_used;
  finish_report(out, tolerance, false);
  return out;
}

}  // namespace admflux
