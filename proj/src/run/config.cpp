#include "admflux/errors.hpp"
#include "admflux/run.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace admflux::run {

using nlohmann::json;

Command parse_command(std::string_view name) {
  if (name == "mass") return Command::mass;
  if (name == "center") return Command::center;
  if (name == "compare") return Command::compare;
  if (name == "identities") return Command::identities;
  if (name == "decay") return Command::decay;
  if (name == "sweep") return Command::sweep;
  throw Error(ErrorKind::config, "unknown command '" + std::string(name) + "'");
}

Check parse_check(std::string_view name) {
  for (Check c : {Check::adm_mass, Check::intrinsic_mass, Check::cs_center,
                  Check::intrinsic_center, Check::identity_residuals,
                  Check::scalar_moments, Check::decay_checks}) {
    if (check_name(c) == name) return c;
  }
  throw Error(ErrorKind::config, "unknown functional '" + std::string(name) + "'");
}

std::string_view check_name(Check check) {
  switch (check) {
    case Check::adm_mass:
      return "adm_mass";
    case Check::intrinsic_mass:
      return "intrinsic_mass";
    case Check::cs_center:
      return "cs_center";
    case Check::intrinsic_center:
      return "intrinsic_center";
    case Check::identity_residuals:
      return "identity_residuals";
    case Check::scalar_moments:
      return "scalar_moments";
    case Check::decay_checks:
      return "decay_checks";
  }
  return "unknown";
}

MetricField MetricSpec::build() const {
  if (rt_violator_amplitude) return catalog::rt_violator(catalog.dim, *rt_violator_amplitude);
  return catalog::build(catalog);
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::config, path + ": " + what);
}

// Walks a JSON object, remembering the key path and rejecting unknown keys.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return value_; }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!value_.is_object()) fail(path_, "expected an object");
    for (auto it = value_.begin(); it != value_.end(); ++it) {
      bool known = false;
      for (auto a : allowed) known = known || it.key() == a;
      if (!known) fail(child_path(it.key()), "unknown key");
    }
  }

  bool has(std::string_view key) const { return value_.contains(std::string(key)); }

  Node at(std::string_view key) const {
    if (!has(key)) fail(child_path(key), "missing required key");
    return Node(value_.at(std::string(key)), child_path(key));
  }

  double number() const {
    if (!value_.is_number()) fail(path_, "expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail(path_, "expected a finite number");
    return v;
  }

  int integer() const {
    if (!value_.is_number_integer()) fail(path_, "expected an integer");
    return value_.get<int>();
  }

  bool boolean() const {
    if (!value_.is_boolean()) fail(path_, "expected true or false");
    return value_.get<bool>();
  }

  std::string string() const {
    if (!value_.is_string()) fail(path_, "expected a string");
    return value_.get<std::string>();
  }

  std::vector<double> numbers() const {
    if (!value_.is_array()) fail(path_, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < value_.size(); ++i) {
      out.push_back(Node(value_[i], path_ + "[" + std::to_string(i) + "]").number());
    }
    return out;
  }

  Vector vector() const {
    const auto v = numbers();
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  double number_or(std::string_view key, double fallback) const {
    return has(key) ? at(key).number() : fallback;
  }
  int integer_or(std::string_view key, int fallback) const {
    return has(key) ? at(key).integer() : fallback;
  }

 private:
  std::string child_path(std::string_view key) const {
    return path_ + "." + std::string(key);
  }

  const json& value_;
  std::string path_;
};

Vector dim_vector(const Node& node, int dim) {
  const Vector v = node.vector();
  if (v.size() != dim) {
    fail(node.path(), "expected " + std::to_string(dim) + " components");
  }
  return v;
}

catalog::Bump parse_bump(const Node& node, int dim) {
  node.expect_object({"amplitude", "width", "location", "parity", "pattern"});
  catalog::Bump bump;
  bump.amplitude = node.number_or("amplitude", bump.amplitude);
  bump.width = node.number_or("width", bump.width);
  if (!(bump.width > 0.0)) fail(node.path() + ".width", "must be positive");
  if (node.has("location")) bump.location = dim_vector(node.at("location"), dim);
  if (node.has("parity")) {
    const std::string p = node.at("parity").string();
    if (p == "none") {
      bump.parity = catalog::BumpParity::none;
    } else if (p == "even") {
      bump.parity = catalog::BumpParity::even;
    } else if (p == "odd") {
      bump.parity = catalog::BumpParity::odd;
    } else {
      fail(node.path() + ".parity", "expected none, even or odd");
    }
  }
  if (node.has("pattern")) {
    const Node rows = node.at("pattern");
    if (!rows.raw().is_array() || rows.raw().size() != std::size_t(dim)) {
      fail(rows.path(), "expected an n x n array");
    }
    bump.pattern = Matrix(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const Vector row = dim_vector(Node(rows.raw()[i], rows.path() + "[" + std::to_string(i) + "]"), dim);
      bump.pattern.row(i) = row.transpose();
    }
  }
  return bump;
}

MetricSpec parse_metric(const Node& node, std::optional<int> forced_dim = std::nullopt) {
  if (!node.raw().is_object()) fail(node.path(), "expected an object");
  const std::string kind = node.at("kind").string();
  MetricSpec spec;
  int dim = forced_dim.value_or(3);
  if (node.has("dim")) {
    dim = node.at("dim").integer();
    if (dim < 3) fail(node.path() + ".dim", "must be >= 3");
    if (forced_dim && dim != *forced_dim) fail(node.path() + ".dim", "must match the outer metric");
  }
  spec.catalog.dim = dim;

  if (kind == "flat") {
    node.expect_object({"kind", "dim", "inner_radius"});
    spec.catalog.kind = catalog::Flat{};
  } else if (kind == "schwarzschild") {
    node.expect_object({"kind", "dim", "mass", "center", "inner_radius"});
    catalog::Schwarzschild s;
    s.mass = node.number_or("mass", 1.0);
    if (node.has("center")) s.center = dim_vector(node.at("center"), dim);
    spec.catalog.kind = s;
  } else if (kind == "conformal") {
    node.expect_object({"kind", "dim", "coefficients", "center", "inner_radius"});
    catalog::Conformal c;
    c.coefficients = node.at("coefficients").numbers();
    if (node.has("center")) c.center = dim_vector(node.at("center"), dim);
    spec.catalog.kind = c;
  } else if (kind == "perturbed") {
    node.expect_object({"kind", "dim", "base", "bump", "inner_radius"});
    const MetricSpec base = parse_metric(node.at("base"), dim);
    if (base.rt_violator_amplitude) fail(node.path() + ".base", "rt_violator cannot be a base");
    spec.catalog = catalog::perturbed_spec(base.catalog, parse_bump(node.at("bump"), dim));
  } else if (kind == "rt_violator") {
    node.expect_object({"kind", "dim", "amplitude"});
    spec.rt_violator_amplitude = node.number_or("amplitude", 0.5);
    spec.catalog.kind = catalog::Flat{};
  } else {
    fail(node.path() + ".kind",
         "unknown metric kind '" + kind +
             "' (flat, schwarzschild, conformal, perturbed, rt_violator)");
  }
  if (node.has("inner_radius")) {
    const double r0 = node.at("inner_radius").number();
    if (!(r0 >= 0.0)) fail(node.path() + ".inner_radius", "must be nonnegative");
    spec.catalog.inner_radius = r0;
  }
  return spec;
}

Schedule parse_schedule(const Node& node, int dim) {
  node.expect_object({"radii", "geometric", "ellipsoid_axes"});
  Schedule s;
  if (node.has("radii") == node.has("geometric")) {
    fail(node.path(), "give exactly one of 'radii' or 'geometric'");
  }
  if (node.has("radii")) {
    s.radii = node.at("radii").numbers();
  } else {
    const Node g = node.at("geometric");
    g.expect_object({"start", "ratio", "count"});
    const double start = g.at("start").number();
    const double ratio = g.number_or("ratio", 2.0);
    const int count = g.at("count").integer();
    if (!(start > 0.0)) fail(g.path() + ".start", "must be positive");
    if (!(ratio > 1.0)) fail(g.path() + ".ratio", "must exceed 1");
    if (count < 1 || count > 64) fail(g.path() + ".count", "must be in [1, 64]");
    s = Schedule::geometric(start, ratio, count);
  }
  if (node.has("ellipsoid_axes")) {
    s.axis_ratios = dim_vector(node.at("ellipsoid_axes"), dim);
    if (!(s.axis_ratios.minCoeff() > 0.0)) {
      fail(node.path() + ".ellipsoid_axes", "ratios must be positive");
    }
  }
  return s;
}

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    throw Error(ErrorKind::config,
                "config parse error at " + position_of(text, e.byte) + ": " + what);
  }
  const Node root(doc, "config");
  root.expect_object({"metric", "functionals", "schedule", "quadrature", "tolerances",
                      "center_mass", "decay", "moments", "output", "threads"});

  RunConfig cfg;
  cfg.metric = parse_metric(root.at("metric"));
  const int dim = cfg.metric.dim();

  if (root.has("functionals")) {
    const Node list = root.at("functionals");
    if (!list.raw().is_array() || list.raw().empty()) {
      fail(list.path(), "expected a nonempty array of functional names");
    }
    std::set<Check> seen;
    for (std::size_t i = 0; i < list.raw().size(); ++i) {
      const Node item(list.raw()[i], list.path() + "[" + std::to_string(i) + "]");
      try {
        const Check c = parse_check(item.string());
        if (seen.insert(c).second) cfg.functionals.push_back(c);
      } catch (const Error& e) {
        fail(item.path(), e.what());
      }
    }
  }

  cfg.schedule = root.has("schedule") ? parse_schedule(root.at("schedule"), dim)
                                      : Schedule::geometric(10.0, 2.0, 7);

  if (root.has("quadrature")) {
    const Node q = root.at("quadrature");
    q.expect_object({"order", "adaptive", "max_order"});
    cfg.order = q.integer_or("order", cfg.order);
    if (q.has("adaptive")) cfg.adaptive = q.at("adaptive").boolean();
    cfg.max_order = q.integer_or("max_order", cfg.max_order);
  }
  if (root.has("tolerances")) {
    const Node t = root.at("tolerances");
    t.expect_object({"limit", "difference", "identity", "agreement"});
    cfg.tolerances.limit = t.number_or("limit", cfg.tolerances.limit);
    cfg.tolerances.difference = t.number_or("difference", cfg.tolerances.difference);
    cfg.tolerances.identity = t.number_or("identity", cfg.tolerances.identity);
    cfg.tolerances.agreement = t.number_or("agreement", cfg.tolerances.agreement);
  }
  if (root.has("center_mass")) cfg.center_mass = root.at("center_mass").number();
  if (root.has("decay")) {
    const Node d = root.at("decay");
    d.expect_object({"sample_order", "require_regge_teitelboim"});
    cfg.decay_sample_order = d.integer_or("sample_order", cfg.decay_sample_order);
    if (d.has("require_regge_teitelboim")) {
      cfg.require_regge_teitelboim = d.at("require_regge_teitelboim").boolean();
    }
  }
  if (root.has("moments")) {
    const Node m = root.at("moments");
    m.expect_object({"r0", "r1", "shells", "radial_nodes"});
    if (m.has("r0")) cfg.moment_r0 = m.at("r0").number();
    if (m.has("r1")) cfg.moment_r1 = m.at("r1").number();
    cfg.moment_shells = m.integer_or("shells", cfg.moment_shells);
    cfg.moment_radial_nodes = m.integer_or("radial_nodes", cfg.moment_radial_nodes);
  }
  if (root.has("output")) {
    const Node o = root.at("output");
    o.expect_object({"format", "dir"});
    if (o.has("format")) {
      const std::string f = o.at("format").string();
      if (f == "csv") {
        cfg.format = OutputFormat::csv;
      } else if (f == "json") {
        cfg.format = OutputFormat::json;
      } else {
        fail(o.path() + ".format", "expected csv or json");
      }
    }
    if (o.has("dir")) cfg.output_dir = o.at("dir").string();
  }
  if (root.has("threads")) cfg.threads = root.at("threads").integer();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::config, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> parse_radii(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(pos, end - pos));
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw Error(ErrorKind::config, "empty entry in radii list '" + std::string(text) + "'");
    }
    item = item.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorKind::config, "bad radius '" + item + "' in radii list");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.order < 2) fail("config.quadrature.order", "must be >= 2");
  if (cfg.max_order < cfg.order) fail("config.quadrature.max_order", "must be >= order");
  if (cfg.decay_sample_order < 2) fail("config.decay.sample_order", "must be >= 2");
  if (cfg.moment_shells < 0) fail("config.moments.shells", "must be >= 0");
  if (cfg.moment_radial_nodes < 1) fail("config.moments.radial_nodes", "must be >= 1");
  for (double t : {cfg.tolerances.limit, cfg.tolerances.difference, cfg.tolerances.identity,
                   cfg.tolerances.agreement}) {
    if (!(t > 0.0)) fail("config.tolerances", "tolerances must be positive");
  }
  const auto& radii = cfg.schedule.radii;
  if (radii.size() < 4) fail("config.schedule", "needs at least 4 radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0)) fail("config.schedule", "radii must be positive");
    if (k > 0 && !(radii[k] > radii[k - 1])) fail("config.schedule", "radii must increase");
  }
  MetricField field = [&] {
    try {
      return cfg.metric.build();
    } catch (const Error& e) {
      fail("config.metric", e.what());
    }
  }();
  const double scale = cfg.schedule.is_ellipsoid() ? cfg.schedule.axis_ratios.minCoeff() : 1.0;
  if (!(radii.front() * scale >= field.inner_radius())) {
    std::ostringstream msg;
    msg << "first surface (nominal radius " << radii.front() * scale
        << ") lies inside the metric's inner radius " << field.inner_radius();
    fail("config.schedule", msg.str());
  }
  if (cfg.moment_r0 && !(*cfg.moment_r0 >= field.inner_radius())) {
    fail("config.moments.r0", "below the metric's inner radius");
  }
  if (cfg.moment_r0 && cfg.moment_r1 && !(*cfg.moment_r1 > *cfg.moment_r0)) {
    fail("config.moments.r1", "must exceed r0");
  }
}

}  // namespace admflux::run
