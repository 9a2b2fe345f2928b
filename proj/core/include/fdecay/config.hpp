#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fdecay {

// Flat `key = value` file. `#` starts a comment; later keys override earlier ones.
// Lists are comma separated.
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  // entries of `other` win
  void merge(const Config& other);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& fallback) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Acceptance tolerances. The compiled defaults mirror config/thresholds.conf.
struct Thresholds {
  int version = 1;
  double bounded_slope = 0.05;       // |log-log slope| for "bounded" trends
  double exponent_rel_tol = 0.10;    // dyadic tail and growth exponents
  double sharp_rel_tol = 0.15;       // Khintchine growth exponent
  double balance_levels = 2.0;       // I1/I2 balance vs N0
  double scaling_slope_tol = 0.05;   // dilation and perimeter exponents
  double gagliardo_rel_tol = 0.02;
  double linear_residual = 0.15;     // Lorentz divergence fit
  double embedding_stability = 0.10;
  double sup_capture = 0.01;

  static Thresholds from(const Config& c);
};

}  // namespace fdecay
