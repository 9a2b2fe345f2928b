#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fdecay {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0;
  double target = 0;
  double tolerance = 0;
  std::string detail;
};

struct Series {
  std::string name;
  std::string x_name;
  std::vector<double> x, y;
};

// One experiment run. Scalars must be finite; entries are only ever appended.
class ExperimentRecord {
 public:
  ExperimentRecord(std::string experiment, std::string measure, std::uint64_t seed = 0);

  const std::string& experiment() const { return experiment_; }
  const std::string& measure() const { return measure_; }
  std::uint64_t seed() const { return seed_; }
  double wall_seconds() const { return wall_; }
  void set_wall_seconds(double s) { wall_ = s; }

  void param(const std::string& name, double v);
  void scalar(const std::string& name, double v);
  void stability(const std::string& name, double v);
  Series& series(const std::string& name, const std::string& x_name);
  const Check& check(const std::string& name, bool passed, double value, double target, double tolerance,
                     const std::string& detail = {});

  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  const std::vector<std::pair<std::string, double>>& scalars() const { return scalars_; }
  const std::vector<std::pair<std::string, double>>& stabilities() const { return stability_; }
  const std::deque<Series>& all_series() const { return series_; }
  const std::vector<Check>& checks() const { return checks_; }

  // looks up a scalar; throws InvalidArgument when absent
  double get(const std::string& name) const;
  bool passed() const;

 private:
  std::string experiment_, measure_;
  std::uint64_t seed_;
  double wall_ = 0;
  std::vector<std::pair<std::string, double>> params_, scalars_, stability_;
  std::deque<Series> series_;  // references from series() stay valid
  std::vector<Check> checks_;
};

inline constexpr const char* kCsvHeader = "experiment,measure,seed,kind,name,x,value";

// long format, one value per row; header not included
void write_csv_rows(std::ostream& os, const ExperimentRecord& r);
std::string to_json(const ExperimentRecord& r, int indent = 2);
std::string failure_report(const std::vector<ExperimentRecord>& records);

enum class OutputFormat { Csv, Json, Both };
// <dir>/<experiment>_<measure>.{csv,json}; returns the paths written
std::vector<std::string> write_record(const ExperimentRecord& r, const std::string& dir, OutputFormat f);

}  // namespace fdecay
