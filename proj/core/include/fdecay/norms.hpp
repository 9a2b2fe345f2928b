#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fdecay/indicator.hpp"
#include "fdecay/measure.hpp"
#include "fdecay/parallel.hpp"
#include "fdecay/transforms.hpp"

namespace fdecay {

struct TimeGrid {
  double t_min = 1e-6;
  double t_max = 1e4;
  double ratio = 1.189207115002721;  // 2^{1/4}

  void validate() const;
  std::vector<double> times() const;
  // same t_min, ratio -> sqrt(ratio); contains every time of *this
  TimeGrid refined() const;
};

struct BesovResult {
  double value = 0;        // max over the grid
  double t_at_max = 0;
  double refined_value = 0;  // max over the refined grid
  double stability = 0;      // (refined - value) / refined
  std::vector<std::pair<double, double>> profile;  // (t, t^{(d-beta)/2} sup|p_t * mu|) on the refined grid
};

double besov_norm(const AtomicMeasure& mu, double beta, const TimeGrid& G = {}, const Executor& ex = Executor{});
double besov_norm(const VectorMeasure& mu, double beta, const TimeGrid& G = {}, const Executor& ex = Executor{});

// Evaluates on G.refined() and reports the G value, the refined value and their gap.
BesovResult besov_profile(const AtomicMeasure& mu, double beta, const TimeGrid& G = {},
                          const Executor& ex = Executor{}, const ProbeOptions& probe = {});
BesovResult besov_profile(const VectorMeasure& mu, double beta, const TimeGrid& G = {},
                          const Executor& ex = Executor{}, const ProbeOptions& probe = {});

// Grid whose smallest time stays above the atomization scale of mu.
TimeGrid resolved_time_grid(const AtomicMeasure& mu, TimeGrid G = {});
TimeGrid resolved_time_grid(const VectorMeasure& mu, TimeGrid G = {});

// max over (x, r) of |mu|(B(x,r)) / r^beta, open balls.
double morrey_norm(const AtomicMeasure& mu, double beta, std::span<const double> centers,
                   std::span<const double> radii, const Executor& ex = Executor{});

struct MorreyOptions {
  double ratio = 1.0905077326652577;  // 2^{1/8}
  double min_radius_spacings = 64;    // smallest radius in median atom spacings
};

struct MorreyResult {
  double value = 0;
  double refined_value = 0;  // radii ratio -> sqrt(ratio)
  double stability = 0;
  double radius_at_max = 0;
};

std::vector<double> default_morrey_radii(const AtomicMeasure& mu, const MorreyOptions& opt = {});
MorreyResult morrey_profile(const AtomicMeasure& mu, double beta, const MorreyOptions& opt = {},
                            const Executor& ex = Executor{});

// Bound |field| <= (2 pi |xi|)^{-alpha} * mass on the omitted ball |xi| < xi_min.
struct LowFrequencyCorrection {
  double mass = 1;
  double alpha = 1;
  double xi_min = 0;
  int d = 1;

  double volume_above(double t) const;  // |{|xi| < xi_min : (2 pi |xi|)^{-alpha} mass > t}|
};

double weak_lp_norm(const SampledField& F, double p, std::optional<LowFrequencyCorrection> lf = std::nullopt);
// ||F||_{p,q}^q via the exact layer cake of the sampled step function
double lorentz_norm_pow(const SampledField& F, double p, double q);
double lorentz_norm(const SampledField& F, double p, double q);
double lp_norm(const SampledField& F, double p);
// |{|F| > t}| for the sampled field
double superlevel_volume(const SampledField& F, double t);

struct PairSum {};
struct LatticeSampler {
  double spacing = 0;  // 0: chosen from the support diameter
};
struct MonteCarloSampler {
  std::size_t n = 200000;
  std::uint64_t seed = 1;
};
using L2Sampler = std::variant<PairSum, LatticeSampler, MonteCarloSampler>;

// Integral of |mu^|^2 over B(0,R), divided by R^{d-beta}.
double annular_l2_average(const AtomicMeasure& mu, double beta, double R, const L2Sampler& sampler = PairSum{},
                          const Executor& ex = Executor{});

struct InterpolationBound {
  double lhs = 0;
  double rhs = 0;
};

InterpolationBound lq_interpolated_bound(const AtomicMeasure& mu, double beta, double q, double t,
                                         const TimeGrid& G = {}, const Executor& ex = Executor{});

// ||p_t * mu||_q by midpoint quadrature on a grid of pitch ~sqrt(t)/6, checked against sqrt(t)/3.
double heat_lq_norm(const AtomicMeasure& mu, double t, double q, const Executor& ex = Executor{});

// Double integral of |chi_E(x) - chi_E(y)|^p / |x-y|^{d + eta p} (the p-th power of the
// seminorm). `resolution` is the Gauss order per panel.
double gagliardo_seminorm(const IndicatorSet& E, double eta, double p, int resolution = 24);

}  // namespace fdecay
