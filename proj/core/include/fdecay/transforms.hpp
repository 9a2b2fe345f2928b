#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fdecay/measure.hpp"
#include "fdecay/parallel.hpp"

namespace fdecay {

// sum_j w_j exp(-2 pi i x_j . xi)
cplx fourier_transform_atomic(const AtomicMeasure& mu, std::span<const double> xi);

// Transform at many points (flat, size n*d).
std::vector<cplx> fourier_transform_batch(const AtomicMeasure& mu, std::span<const double> points,
                                          const Executor& ex = Executor{});

// Closed-form transforms, as a function of xi or of |xi|.
using Transform = std::function<cplx(std::span<const double>)>;
using RadialProfile = std::function<double(double)>;

struct LatticeOptions {
  // sample the positive orthant only, each cell standing for its 2^d mirror images;
  // valid when |field| is even in every coordinate
  bool orthant = false;
  bool keep_points = true;
  int max_lattice_dim = 3;
};

// Cell-centred lattice spacing*(n + 1/2) restricted to xi_min <= |xi| <= xi_max.
SampledField riesz_field(const AtomicMeasure& mu, double alpha, const FrequencyWindow& W,
                         const Executor& ex = Executor{}, const LatticeOptions& opt = {});
SampledField riesz_field(const Transform& ft, double alpha, const FrequencyWindow& W,
                         const Executor& ex = Executor{}, const LatticeOptions& opt = {});

// Radial field on shells [r, r+dr] between r_min and r_max; each sample carries the
// exact shell volume.
SampledField radial_riesz_field(const RadialProfile& profile, double alpha, int d, double r_min,
                                double r_max, double dr);

struct Annulus {
  double r_in = 0.5;
  double r_out = 1.0;
};

// n uniform points in the annulus, flat n*d; deterministic in seed.
std::vector<double> annulus_samples(int d, Annulus A, std::size_t n, std::uint64_t seed);

SampledField riesz_field_montecarlo(const AtomicMeasure& mu, double alpha, Annulus A, std::size_t n,
                                    std::uint64_t seed, const Executor& ex = Executor{},
                                    bool keep_points = true);
SampledField riesz_field_montecarlo(const Transform& ft, int d, double alpha, Annulus A, std::size_t n,
                                    std::uint64_t seed, const Executor& ex = Executor{},
                                    bool keep_points = true);

// ---- heat semigroup

// Atoms with ncomp weights each (1 for scalar measures, d for vector measures),
// bucketed by cells of side >= the Gaussian cutoff 12 sqrt(t).
class HeatConvolver {
 public:
  HeatConvolver(const AtomicMeasure& mu, double t);
  HeatConvolver(const VectorMeasure& mu, double t);

  int dim() const { return d_; }
  double time() const { return t_; }
  // |p_t * mu|(x); Euclidean magnitude for vector measures
  double magnitude(std::span<const double> x) const;
  // scalar measures only
  cplx value(std::span<const double> x) const;

 private:
  void build(const std::vector<double>& coords, const std::vector<cplx>& w);
  void accumulate(std::span<const double> x, cplx* out) const;

  int d_;
  int ncomp_;
  double t_;
  double cutoff2_;
  double cell_;
  Point origin_;
  std::array<long, kMaxDim> ncell_{};
  std::vector<std::uint64_t> keys_;
  std::vector<double> coords_;
  std::vector<cplx> weights_;
};

cplx heat_convolve(const AtomicMeasure& mu, double t, std::span<const double> x);
double heat_convolve(const VectorMeasure& mu, double t, std::span<const double> x);

struct ProbeOptions {
  double pitch_factor = 0.25;      // grid pitch = pitch_factor * sqrt(t)
  double reach = 2.0;              // probe region: within reach*sqrt(t) of the support
  std::size_t max_grid = 400000;   // grid is coarsened beyond this
  int refine_top = 8;              // local search from the best probes
  bool refine = true;
};

class ProbeSet {
 public:
  ProbeSet(int d, std::vector<double> flat, bool refine = false);
  static ProbeSet automatic(const std::vector<double>& support, int d, double t, double atom_spacing,
                            const ProbeOptions& opt = {});

  int dim() const { return d_; }
  std::size_t size() const { return pts_.size() / d_; }
  bool empty() const { return pts_.empty(); }
  bool refine() const { return refine_; }
  double pitch() const { return pitch_; }
  std::span<const double> point(std::size_t i) const {
    return {pts_.data() + i * d_, static_cast<std::size_t>(d_)};
  }

 private:
  int d_;
  std::vector<double> pts_;
  bool refine_;
  double pitch_ = 0;
};

// Median nearest-neighbour distance of a point cloud (inf for one point).
double median_spacing(const std::vector<double>& coords, int d);

double sup_heat_convolve(const AtomicMeasure& mu, double t, const ProbeSet& probe,
                         const Executor& ex = Executor{});
double sup_heat_convolve(const VectorMeasure& mu, double t, const ProbeSet& probe,
                         const Executor& ex = Executor{});
// automatic probe set
double sup_heat_convolve(const AtomicMeasure& mu, double t, const Executor& ex = Executor{},
                         const ProbeOptions& opt = {});
double sup_heat_convolve(const VectorMeasure& mu, double t, const Executor& ex = Executor{},
                         const ProbeOptions& opt = {});

// Evaluates sups at many times for one measure, reusing the spacing estimate.
class HeatSupEvaluator {
 public:
  HeatSupEvaluator(const AtomicMeasure& mu, const Executor& ex = Executor{}, ProbeOptions opt = {});
  HeatSupEvaluator(const VectorMeasure& mu, const Executor& ex = Executor{}, ProbeOptions opt = {});
  double operator()(double t) const;
  double atom_spacing() const { return spacing_; }

 private:
  const AtomicMeasure* scalar_ = nullptr;
  const VectorMeasure* vector_ = nullptr;
  Executor ex_;
  ProbeOptions opt_;
  double spacing_;
};

}  // namespace fdecay
