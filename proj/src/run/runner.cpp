#include "admflux/errors.hpp"
#include "admflux/run.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace admflux::run {

namespace {

std::vector<Check> command_checks(Command command) {
  switch (command) {
    case Command::mass:
      return {Check::adm_mass, Check::intrinsic_mass};
    case Command::center:
      return {Check::cs_center, Check::intrinsic_center};
    case Command::compare:
      return {Check::adm_mass, Check::intrinsic_mass, Check::cs_center,
              Check::intrinsic_center};
    case Command::identities:
      return {Check::identity_residuals};
    case Command::decay:
      return {Check::decay_checks};
    case Command::sweep:
      return {Check::adm_mass,           Check::intrinsic_mass, Check::cs_center,
              Check::intrinsic_center,   Check::identity_residuals,
              Check::scalar_moments,     Check::decay_checks};
  }
  return {};
}

std::vector<std::string> value_header(int components) {
  std::vector<std::string> h{"r"};
  if (components == 1) {
    h.push_back("value");
  } else {
    for (int c = 1; c <= components; ++c) h.push_back("value_" + std::to_string(c));
  }
  return h;
}

Table report_table(const std::string& name, const ConvergenceReport& report) {
  Table t;
  t.name = name;
  t.header = value_header(report.components());
  for (std::size_t k = 0; k < report.radii.size(); ++k) {
    std::vector<double> row{report.radii[k]};
    for (int c = 0; c < report.values[k].size(); ++c) row.push_back(report.values[k](c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CheckResult report_check(const std::string& name, const ConvergenceReport& report) {
  CheckResult r;
  r.functional = name;
  r.verdict = report.verdict;
  r.tolerance = report.tolerance;
  r.fitted_limit = report.fitted_limit;
  r.fitted_rate = report.fitted_rate;
  r.fits = report.fits;
  return r;
}

class Runner {
 public:
  Runner(const RunConfig& cfg, Command command) : cfg_(cfg), command_(command) {}

  RunResult run() {
    const std::vector<Check> covered = command_checks(command_);
    for (Check c : covered) {
      if (cfg_.functionals.empty() ||
          std::find(cfg_.functionals.begin(), cfg_.functionals.end(), c) !=
              cfg_.functionals.end()) {
        wanted_.insert(c);
      }
    }
    if (wanted_.empty()) {
      result_.exit_code = kUsageError;
      result_.error = "the config's functionals select nothing for this command";
      return result_;
    }
    try {
      validate(cfg_);
      field_.emplace(cfg_.metric.build());
    } catch (const Error& e) {
      result_.exit_code = kUsageError;
      result_.error = e.what();
      return result_;
    }
    try {
      run_masses();
      run_centers();
      if (wanted_.count(Check::identity_residuals)) run_identities();
      if (wanted_.count(Check::scalar_moments)) run_moments();
      if (wanted_.count(Check::decay_checks)) run_decay();
    } catch (const Error& e) {
      const bool usage = e.kind() == ErrorKind::config || e.kind() == ErrorKind::invalid_argument;
      result_.exit_code = usage ? kUsageError : kNumericalError;
      result_.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    if (result_.exit_code == kPass) {
      for (const auto& c : result_.checks) {
        if (c.required && !c.verdict) result_.exit_code = kCertificationFailed;
      }
    }
    return result_;
  }

 private:
  SweepOptions sweep_options() const {
    SweepOptions o;
    o.order = cfg_.order;
    o.adaptive = cfg_.adaptive;
    o.agreement = cfg_.tolerances.agreement;
    o.max_order = cfg_.max_order;
    o.tolerance = cfg_.tolerances.limit;
    o.threads = cfg_.threads;
    return o;
  }

  void add_report(const std::string& name, const ConvergenceReport& report) {
    result_.tables.push_back(report_table(name, report));
    result_.checks.push_back(report_check(name, report));
  }

  void run_masses() {
    const bool adm = wanted_.count(Check::adm_mass) > 0;
    const bool intr = wanted_.count(Check::intrinsic_mass) > 0;
    if (adm) {
      adm_.emplace(sweep(*field_, Functional::adm_mass, cfg_.schedule, sweep_options()));
      add_report("adm_mass", *adm_);
    }
    if (intr) {
      const auto r = sweep(*field_, Functional::intrinsic_mass, cfg_.schedule, sweep_options());
      add_report("intrinsic_mass", r);
      if (adm && differences()) {
        add_report("mass_difference", compare(*adm_, r, cfg_.tolerances.difference));
      }
    }
  }

  void run_centers() {
    const bool cs = wanted_.count(Check::cs_center) > 0;
    const bool intr = wanted_.count(Check::intrinsic_center) > 0;
    if (!cs && !intr) return;
    SweepOptions o = sweep_options();
    if (cfg_.center_mass) {
      o.mass = cfg_.center_mass;
    } else {
      if (!adm_) adm_.emplace(sweep(*field_, Functional::adm_mass, cfg_.schedule, o));
      o.mass = adm_->fitted_limit(0);
    }
    // Without the odd-part decay the center limits are not guaranteed; report only.
    const int n = field_->dim();
    const bool hypothesis = decay_report(*field_, cfg_.schedule.radii, 0.5 * n, DecayPart::odd,
                                         cfg_.decay_sample_order)
                                .passed();
    const std::size_t first = result_.checks.size();
    std::optional<ConvergenceReport> cs_report;
    if (cs) {
      cs_report.emplace(sweep(*field_, Functional::cs_center, cfg_.schedule, o));
      add_report("cs_center", *cs_report);
    }
    if (intr) {
      const auto r = sweep(*field_, Functional::intrinsic_center, cfg_.schedule, o);
      add_report("intrinsic_center", r);
      if (cs && differences()) {
        add_report("center_difference",
                   compare(*cs_report, r, cfg_.tolerances.difference));
      }
    }
    if (!hypothesis) {
      for (std::size_t k = first; k < result_.checks.size(); ++k) {
        result_.checks[k].required = false;
        result_.checks[k].note = "odd part not o(|x|^{-n/2}) on this schedule; reported only";
      }
    }
  }

  bool differences() const {
    return command_ == Command::compare || command_ == Command::sweep;
  }

  // Residual row (X, then Y for each axis) at a fixed order.
  std::vector<double> residual_row(std::size_t index, int order) const {
    const int n = field_->dim();
    const QuadSurface surf = cfg_.schedule.surface(index, n, order);
    std::vector<double> row;
    if (field_->info().globally_smooth) {
      row.push_back(ibp_residual_X(*field_, surf));
      for (int a = 0; a < n; ++a) row.push_back(ibp_residual_Y(*field_, surf, a));
    } else {
      const QuadSurface reference = cfg_.schedule.surface(0, n, order);
      row.push_back(ibp_residual_X_annulus(*field_, surf, reference));
      for (int a = 0; a < n; ++a) {
        row.push_back(ibp_residual_Y_annulus(*field_, surf, reference, a));
      }
    }
    return row;
  }

  std::vector<double> adaptive_residual_row(std::size_t index) const {
    const double target = 0.1 * cfg_.tolerances.identity;
    int order = cfg_.order;
    std::vector<double> row = residual_row(index, order);
    if (!cfg_.adaptive) return row;
    while (2 * order <= cfg_.max_order) {
      order *= 2;
      std::vector<double> next = residual_row(index, order);
      double change = 0.0;
      for (std::size_t c = 0; c < row.size(); ++c) {
        change = std::max(change, std::abs(next[c] - row[c]));
      }
      row = std::move(next);
      if (change <= target) break;
    }
    return row;
  }

  void run_identities() {
    const int n = field_->dim();
    const bool smooth = field_->info().globally_smooth;
    Table t;
    t.name = "identity_residuals";
    t.header = {"r", "residual_X"};
    for (int a = 1; a <= n; ++a) t.header.push_back("residual_Y_" + std::to_string(a));
    double worst = 0.0;
    for (std::size_t i = smooth ? 0 : 1; i < cfg_.schedule.radii.size(); ++i) {
      std::vector<double> row{cfg_.schedule.radii[i]};
      try {
        const std::vector<double> values = adaptive_residual_row(i);
        row.insert(row.end(), values.begin(), values.end());
      } catch (const Error& e) {
        throw Error(e.kind(), "identity_residuals at r = " +
                                  format_number(cfg_.schedule.radii[i]) + ": " + e.what());
      }
      for (std::size_t c = 1; c < row.size(); ++c) worst = std::max(worst, std::abs(row[c]));
      t.rows.push_back(std::move(row));
    }
    result_.tables.push_back(std::move(t));
    CheckResult r;
    r.functional = "identity_residuals";
    r.tolerance = cfg_.tolerances.identity;
    r.max_abs = worst;
    r.verdict = worst <= cfg_.tolerances.identity;
    r.note = smooth ? "closed surfaces" : "annulus form relative to the first surface";
    result_.checks.push_back(std::move(r));
  }

  void run_moments() {
    const int n = field_->dim();
    const double r0 = cfg_.moment_r0.value_or(
        std::max(field_->inner_radius(), cfg_.schedule.radii.front()));
    const double r1 = cfg_.moment_r1.value_or(cfg_.schedule.radii.back());
    MomentOptions opts;
    opts.shells = cfg_.moment_shells;
    opts.radial_nodes = cfg_.moment_radial_nodes;
    opts.order = cfg_.order;
    std::vector<MomentReport> reports;
    try {
      reports.push_back(scalar_curvature_moment(*field_, r0, r1, std::nullopt, opts));
      for (int a = 0; a < n; ++a) {
        reports.push_back(scalar_curvature_moment(*field_, r0, r1, a, opts));
      }
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("scalar_moments: ") + e.what());
    }
    Table t;
    t.name = "scalar_moments";
    t.header = {"r_inner", "r_outer", "shell_0"};
    for (int a = 1; a <= n; ++a) t.header.push_back("shell_" + std::to_string(a));
    t.header.push_back("cumulative_0");
    for (int a = 1; a <= n; ++a) t.header.push_back("cumulative_" + std::to_string(a));
    const std::size_t shells = reports.front().shells.size();
    std::vector<double> cumulative(reports.size(), 0.0);
    bool decreasing = true;
    for (std::size_t s = 0; s < shells; ++s) {
      std::vector<double> row{reports.front().shells[s].r_inner,
                              reports.front().shells[s].r_outer};
      for (const auto& rep : reports) row.push_back(rep.shells[s].value);
      for (std::size_t m = 0; m < reports.size(); ++m) {
        cumulative[m] += reports[m].shells[s].value;
      }
      row.insert(row.end(), cumulative.begin(), cumulative.end());
      t.rows.push_back(std::move(row));
    }
    // Shells at roundoff level count as zero: 1e-10 for moment 0, 1e-10 r_outer otherwise.
    for (std::size_t m = 0; m < reports.size(); ++m) {
      std::vector<double> mags;
      for (const auto& sh : reports[m].shells) {
        const double noise = 1e-10 * (m == 0 ? 1.0 : std::max(1.0, sh.r_outer));
        mags.push_back(std::abs(sh.value) <= noise ? 0.0 : std::abs(sh.value));
      }
      decreasing = decreasing && (mags.size() < 2 || decreasing_tail(mags));
    }
    result_.tables.push_back(std::move(t));
    CheckResult r;
    r.functional = "scalar_moments";
    r.verdict = decreasing;
    r.fitted_limit = Eigen::Map<const Vector>(cumulative.data(),
                                              static_cast<Eigen::Index>(cumulative.size()));
    r.note = "shell contributions must shrink over the outer half of the annulus";
    result_.checks.push_back(std::move(r));
  }

  void run_decay() {
    const int n = field_->dim();
    struct Item {
      std::string name;
      double tau;
      DecayPart part;
      bool required;
    };
    const Item items[] = {
        {"decay_hypothesis", 0.5 * (n - 2), DecayPart::all, true},
        {"decay_regge_teitelboim", 0.5 * n, DecayPart::odd, cfg_.require_regge_teitelboim},
    };
    for (const auto& item : items) {
      DecayReport rep;
      try {
        rep = decay_report(*field_, cfg_.schedule.radii, item.tau, item.part,
                           cfg_.decay_sample_order);
      } catch (const Error& e) {
        throw Error(e.kind(), item.name + ": " + e.what());
      }
      Table t;
      t.name = item.name;
      t.header = {"r", "tau", "sup_order_0", "sup_order_1", "sup_order_2"};
      double worst = 0.0;
      for (std::size_t k = 0; k < rep.radii.size(); ++k) {
        t.rows.push_back({rep.radii[k], rep.tau, rep.sups[k][0], rep.sups[k][1], rep.sups[k][2]});
      }
      for (double v : rep.sups.back()) worst = std::max(worst, v);
      result_.tables.push_back(std::move(t));
      CheckResult r;
      r.functional = item.name;
      r.verdict = rep.passed();
      r.required = item.required;
      r.tolerance = 0.0;
      r.max_abs = worst;
      r.note = std::string("decreasing per order: ") + (rep.decreasing[0] ? "yes" : "no") +
               "/" + (rep.decreasing[1] ? "yes" : "no") + "/" +
               (rep.decreasing[2] ? "yes" : "no") + (item.required ? "" : " (informational)");
      result_.checks.push_back(std::move(r));
    }
  }

  const RunConfig& cfg_;
  Command command_;
  std::set<Check> wanted_;
  std::optional<MetricField> field_;
  std::optional<ConvergenceReport> adm_;
  RunResult result_;
};

}  // namespace

RunResult execute(const RunConfig& config, Command command) {
  return Runner(config, command).run();
}

}  // namespace admflux::run
