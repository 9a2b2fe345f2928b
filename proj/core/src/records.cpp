#include "fdecay/records.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fdecay/errors.hpp"
#include "json.hpp"

namespace fdecay {

using nlohmann::json;

ExperimentRecord::ExperimentRecord(std::string experiment, std::string measure, std::uint64_t seed)
    : experiment_(std::move(experiment)), measure_(std::move(measure)), seed_(seed) {}

void ExperimentRecord::param(const std::string& name, double v) { params_.emplace_back(name, v); }

void ExperimentRecord::scalar(const std::string& name, double v) {
  if (!std::isfinite(v)) fail(Errc::InvalidArgument, "scalar '" + name + "' is not finite");
  scalars_.emplace_back(name, v);
}

void ExperimentRecord::stability(const std::string& name, double v) {
  if (!std::isfinite(v)) fail(Errc::InvalidArgument, "stability '" + name + "' is not finite");
  stability_.emplace_back(name, v);
}

Series& ExperimentRecord::series(const std::string& name, const std::string& x_name) {
  series_.push_back({name, x_name, {}, {}});
  return series_.back();
}

const Check& ExperimentRecord::check(const std::string& name, bool passed, double value, double target,
                                     double tolerance, const std::string& detail) {
  checks_.push_back({name, passed, value, target, tolerance, detail});
  return checks_.back();
}

double ExperimentRecord::get(const std::string& name) const {
  for (const auto& [k, v] : scalars_)
    if (k == name) return v;
  fail(Errc::InvalidArgument, "no scalar named " + name);
}

bool ExperimentRecord::passed() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// names are internal identifiers, but quote anything CSV-hostile anyway
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json record_json(const ExperimentRecord& r) {
  json j;
  j["experiment"] = r.experiment();
  j["measure"] = r.measure();
  j["seed"] = r.seed();
  j["wall_seconds"] = r.wall_seconds();
  j["passed"] = r.passed();
  j["params"] = json::object();
  for (const auto& [k, v] : r.params()) j["params"][k] = finite_or_null(v);
  j["scalars"] = json::object();
  for (const auto& [k, v] : r.scalars()) j["scalars"][k] = v;
  j["stability"] = json::object();
  for (const auto& [k, v] : r.stabilities()) j["stability"][k] = v;
  j["series"] = json::array();
  for (const auto& s : r.all_series()) {
    json y = json::array();
    for (double v : s.y) y.push_back(finite_or_null(v));
    j["series"].push_back({{"name", s.name}, {"x_name", s.x_name}, {"x", s.x}, {"y", y}});
  }
  j["checks"] = json::array();
  for (const auto& c : r.checks())
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"value", finite_or_null(c.value)},
                           {"target", finite_or_null(c.target)},
                           {"tolerance", finite_or_null(c.tolerance)},
                           {"detail", c.detail}});
  return j;
}

}  // namespace

void write_csv_rows(std::ostream& os, const ExperimentRecord& r) {
  const std::string head = field(r.experiment()) + "," + field(r.measure()) + "," + std::to_string(r.seed()) + ",";
  for (const auto& [k, v] : r.params()) os << head << "param," << field(k) << ",," << num(v) << '\n';
  for (const auto& [k, v] : r.scalars()) os << head << "scalar," << field(k) << ",," << num(v) << '\n';
  for (const auto& [k, v] : r.stabilities()) os << head << "stability," << field(k) << ",," << num(v) << '\n';
  for (const auto& s : r.all_series())
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << head << "series," << field(s.name) << ',' << num(s.x[i]) << ',' << num(s.y[i]) << '\n';
  for (const auto& c : r.checks()) {
    os << head << "check_value," << field(c.name) << ",," << num(c.value) << '\n';
    os << head << "check_pass," << field(c.name) << ",," << (c.passed ? 1 : 0) << '\n';
  }
  os << head << "scalar,wall_seconds,," << num(r.wall_seconds()) << '\n';
}

std::string to_json(const ExperimentRecord& r, int indent) { return record_json(r).dump(indent); }

std::string failure_report(const std::vector<ExperimentRecord>& records) {
  json j;
  j["passed"] = true;
  j["failures"] = json::array();
  for (const auto& r : records)
    for (const auto& c : r.checks())
      if (!c.passed) {
        j["passed"] = false;
        j["failures"].push_back({{"experiment", r.experiment()},
                                 {"measure", r.measure()},
                                 {"check", c.name},
                                 {"value", finite_or_null(c.value)},
                                 {"target", finite_or_null(c.target)},
                                 {"tolerance", finite_or_null(c.tolerance)},
                                 {"detail", c.detail}});
      }
  return j.dump(2);
}

std::vector<std::string> write_record(const ExperimentRecord& r, const std::string& dir, OutputFormat f) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::string stem = r.experiment() + "_" + r.measure();
  for (char& c : stem)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '-';
  std::vector<std::string> out;
  if (f != OutputFormat::Json) {
    const auto p = (fs::path(dir) / (stem + ".csv")).string();
    std::ofstream os(p);
    if (!os) fail(Errc::ConfigError, "cannot write " + p);
    os << kCsvHeader << '\n';
    write_csv_rows(os, r);
    out.push_back(p);
  }
  if (f != OutputFormat::Csv) {
    const auto p = (fs::path(dir) / (stem + ".json")).string();
    std::ofstream os(p);
    if (!os) fail(Errc::ConfigError, "cannot write " + p);
    os << to_json(r) << '\n';
    out.push_back(p);
  }
  return out;
}

}  // namespace fdecay
