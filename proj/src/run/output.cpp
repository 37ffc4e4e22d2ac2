#include "admflux/errors.hpp"
#include "admflux/run.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace admflux::run {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view command_name(Command c) {
  switch (c) {
    case Command::mass: return "mass";
    case Command::center: return "center";
    case Command::compare: return "compare";
    case Command::identities: return "identities";
    case Command::decay: return "decay";
    case Command::sweep: return "sweep";
  }
  return "?";
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

json check_json(const CheckResult& c) {
  json j;
  j["functional"] = c.functional;
  j["verdict"] = c.verdict ? "pass" : "fail";
  j["required"] = c.required;
  j["tolerance"] = number(c.tolerance);
  j["fitted_limit"] = c.fitted_limit ? vector_json(*c.fitted_limit) : json(nullptr);
  j["fitted_rate"] = c.fitted_rate ? number(*c.fitted_rate) : json(nullptr);
  j["max_abs"] = c.max_abs ? number(*c.max_abs) : json(nullptr);
  j["note"] = c.note;
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::config, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::config, "write failed for " + path.string());
}

std::string csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) s += ',';
    s += t.header[i];
  }
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_number(row[i]);
    }
    s += '\n';
  }
  return s;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_outputs(const RunConfig& config, Command command, const RunResult& result) {
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::config, "cannot create " + dir.string() + ": " + ec.message());

  // Fit parameters, one line per functional component.
  std::string fits = "functional,component,fitted_limit,fitted_rate,residual,tolerance,verdict\n";
  for (const auto& c : result.checks) {
    for (std::size_t k = 0; k < c.fits.size(); ++k) {
      const PowerLawFit& f = c.fits[k];
      fits += c.functional + ',' + std::to_string(k + 1) + ',' + format_number(f.limit) + ',' +
              format_number(f.constant ? 0.0 : f.rate) + ',' + format_number(f.residual) + ',' +
              format_number(c.tolerance) + ',' + (c.verdict ? "pass" : "fail") + '\n';
    }
  }

  if (config.format == OutputFormat::csv) {
    for (const auto& t : result.tables) write_file(dir / (t.name + ".csv"), csv(t));
    write_file(dir / "fits.csv", fits);
  } else {
    json tables = json::object();
    for (const auto& t : result.tables) {
      json rows = json::array();
      for (const auto& row : t.rows) {
        json r = json::array();
        for (double v : row) r.push_back(number(v));
        rows.push_back(std::move(r));
      }
      tables[t.name] = {{"header", t.header}, {"rows", std::move(rows)}};
    }
    write_file(dir / "tables.json", tables.dump(2) + "\n");
  }

  json summary;
  summary["command"] = command_name(command);
  summary["exit_code"] = result.exit_code;
  summary["error"] = result.error.empty() ? json(nullptr) : json(result.error);
  json checks = json::array();
  for (const auto& c : result.checks) checks.push_back(check_json(c));
  summary["checks"] = std::move(checks);
  write_file(dir / "summary.json", summary.dump(2) + "\n");
}

void print_summary(std::ostream& out, Command command, const RunResult& result) {
  out << "admflux " << command_name(command) << '\n';
  for (const auto& c : result.checks) {
    out << "  " << (c.verdict ? "PASS" : "FAIL") << ' ' << c.functional;
    if (c.fitted_limit) {
      out << "  limit=(";
      for (int i = 0; i < c.fitted_limit->size(); ++i) {
        if (i) out << ", ";
        out << format_number((*c.fitted_limit)(i));
      }
      out << ')';
    }
    if (c.fitted_rate) out << "  rate=" << format_number(*c.fitted_rate);
    if (c.max_abs) out << "  max=" << format_number(*c.max_abs);
    if (c.tolerance > 0) out << "  tol=" << format_number(c.tolerance);
    if (!c.required) out << "  [informational]";
    out << '\n';
    if (!c.note.empty()) out << "      " << c.note << '\n';
  }
  if (!result.error.empty()) out << "error: " << result.error << '\n';
  out << "exit code " << result.exit_code << '\n';
}

}  // namespace admflux::run
