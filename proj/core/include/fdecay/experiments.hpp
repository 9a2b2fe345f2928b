#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdecay/config.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/measure.hpp"
#include "fdecay/norms.hpp"
#include "fdecay/parallel.hpp"
#include "fdecay/parameters.hpp"
#include "fdecay/records.hpp"
#include "fdecay/transforms.hpp"

namespace fdecay {

enum class Family { Dirac, Sphere, Cantor, Segment, Zero };

// Named test measure. Text form: "dirac[:d]", "circle[:atoms]", "sphere:k:d[:atoms]",
// "cantor[:level[:ratio]]", "segment[:atoms]", "zero[:d]".
struct MeasureSpec {
  Family family = Family::Dirac;
  int d = 1;
  int k = 1;
  int level = 10;
  double ratio = 1.0 / 3.0;
  std::size_t atoms = 2048;

  static MeasureSpec parse(const std::string& text);
  std::string name() const;
  // the beta at which the measure is Frostman: 0, k, log 2 / log(1/r), 1
  double natural_beta() const;
  double total_mass() const;
  AtomicMeasure build() const;
  // transform of the measure the atoms discretize (exact for dirac, cantor, segment)
  Transform transform() const;
  // |mu^| at |xi| = r; radial measures, and d = 1 where |mu^| is even
  double modulus(double r) const;
  // |mu^| even in each coordinate
  bool coordinate_even() const;
};

struct RunContext {
  Executor ex{1};
  std::uint64_t seed = 1;
  Thresholds th{};
};

struct MainInequalityOptions {
  std::vector<double> windows{8, 16, 32, 64, 128, 256};
  double spacing = 0;  // 0: 1/64 in d = 1, 1/8 in d = 2
  double xi_min = 0;   // inner edge of the lattice, below it the mass bound; 0: one spacing
};

ExperimentRecord run_main_inequality(const Parameters& P, const MeasureSpec& mu,
                                     const MainInequalityOptions& opt, const RunContext& ctx);

struct DyadicOptions {
  int fit_levels = 7;   // levels fitted on each side of N0
  int sum_margin = 12;  // levels summed on each side of N0
};

// lambda putting the split level N0 at n0 for this measure
double lambda_for_level(const Parameters& P, double mass, double besov, double n0);

ExperimentRecord verify_dyadic_decomposition(const Parameters& P, const MeasureSpec& mu, double lambda,
                                             const DyadicOptions& opt, const RunContext& ctx);

ExperimentRecord run_l2_average_scan(const MeasureSpec& mu, double beta, const std::vector<double>& radii,
                                     const RunContext& ctx);

struct PerimeterOptions {
  std::vector<double> sizes{1, 2, 4, 8};
  double window = 8;
  double spacing = 1.0 / 256;  // square lattice step
  double shell = 1.0 / 512;   // ball shell width
};

// shape: "square" or "ball" (d = 2)
ExperimentRecord run_perimeter_scaling(const std::string& shape, const PerimeterOptions& opt,
                                       const RunContext& ctx);

struct SobolevOptions {
  std::vector<double> sizes{1, 2, 4, 8};
  double window = 256;
  double shell = 1.0 / 1024;
};

ExperimentRecord run_sobolev_scaling(double eta, double p, const SobolevOptions& opt, const RunContext& ctx);

struct SharpnessOptions {
  std::vector<double> scales{4, 8, 16, 32, 64};
  int seeds = 32;
  std::size_t samples = 4096;  // frequencies per (scale, seed) in U_N
  double spacing = 16;         // translate gap in bump diameters
};

ExperimentRecord run_sharpness_scan(const Parameters& P, double r_factor, const SharpnessOptions& opt,
                                    const RunContext& ctx);

struct SphereOptions {
  int m_min = 3;
  int m_max = 9;
  double shell = 1.0 / 64;
};

// P.d = k + 1; P.q finite
ExperimentRecord run_sphere_divergence(const Parameters& P, int k, const SphereOptions& opt,
                                       const RunContext& ctx);

// besov_norm <= C_d morrey_norm over the family, C_d stable under grid refinement
ExperimentRecord run_embedding_check(const std::vector<MeasureSpec>& family, const RunContext& ctx);

// Remainder constant max |R_nu(x)| x^{3/2} over x in [x_min, x_max] on a log grid.
double bessel_remainder_constant(BesselOrder nu, double x_min, double x_max, int points = 4000);

}  // namespace fdecay
