#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "fdecay/indicator.hpp"
#include "fdecay/measure.hpp"

namespace fdecay {

// Quadrature of H^k on the unit k-sphere sitting in the first k+1 coordinates of R^d.
// k = 1: equally spaced; k = 2: Fibonacci lattice closed under x -> -x; k = 3: product rule.
AtomicMeasure sphere_measure(int k, int d, std::size_t n_atoms);

// 2 pi |xi'|^{-(k-1)/2} J_{(k-1)/2}(2 pi |xi'|), xi' the first k+1 coordinates
double sphere_ft(int k, std::span<const double> xi);
double sphere_ft_radial(int k, double r);

// Midpoints of the level-L cells of the symmetric Cantor construction with ratio r.
AtomicMeasure cantor_measure(int level, double ratio = 1.0 / 3.0);
// exact transform of cantor_measure(level, ratio): e^{-i pi xi} prod_{l<L} cos(pi xi (1-r) r^l)
cplx cantor_ft(int level, double ratio, double xi);

// Lebesgue measure on [0,1] as n equal atoms at cell midpoints.
AtomicMeasure uniform_segment(std::size_t n);

// D chi_E = -nu H^{d-1} on the boundary, as vector atoms.
VectorMeasure indicator_boundary_measure(const IndicatorSet& E, std::size_t n_atoms);

// Exact transform of chi_E.
cplx indicator_ft(const IndicatorSet& E, std::span<const double> xi);
double indicator_ft_modulus(const IndicatorSet& E, std::span<const double> xi);

// chi_E on a midpoint grid of the given pitch.
AtomicMeasure indicator_atoms(const IndicatorSet& E, double pitch);

// Radial plateau: 1 on [0,2], 0 beyond 4, smooth monotone transition built from exp(-1/x).
class BumpProfile {
 public:
  static double hat(double r);
  static constexpr double pitch = 1.0 / 16;
  static constexpr double table_step = 1.0 / 512;
  static constexpr double table_end = 32.0;
  static constexpr double tail_tolerance = 1e-8;

  BumpProfile() = default;
  BumpProfile(const BumpProfile&) = delete;
  BumpProfile& operator=(const BumpProfile&) = delete;

  // phi(|x|) where phi^ = hat(|xi|), tabulated on first use per dimension (d <= 3)
  double phi(double r, int d) const;
  double phi_direct(double r, int d) const;
  // smallest radius beyond which |phi| < tail_tolerance * phi(0)
  double truncation_radius(int d) const;

 private:
  struct Table {
    std::vector<double> v;
    double cutoff = 0;
  };
  const Table& table(int d) const;

  mutable std::mutex mu_;
  mutable std::array<std::unique_ptr<Table>, 4> tables_;
};

// Atomization of phi on the grid (pitch) Z^d, truncated at truncation_radius; d <= 2.
AtomicMeasure bump_phi(const BumpProfile& B, int d);

// N^{d-beta} phi(N(x - j)) as atoms: bump_phi scaled by 1/N about j, weights times N^{-beta}.
AtomicMeasure bump_family(const BumpProfile& B, int d, double N, const Point& j, double beta);

// floor(N^beta) signed translates of one scaled bump.
struct RademacherLayout {
  int d = 1;
  double N = 1;
  double beta = 1;
  long gap = 1;   // translate lattice step
  long side = 1;  // translate i sits at gap * (i % side, i / side) in d = 2, gap * i in d = 1
  std::vector<Point> translates;
  std::vector<int> signs;

  std::size_t terms() const { return signs.size(); }
  // atoms at the translates carrying the signs
  AtomicMeasure sign_measure() const;
  // N^{-beta} hat(|xi|/N) sum_i r_i exp(-2 pi i xi.j_i)
  cplx analytic_ft(std::span<const double> xi) const;
  AtomicMeasure to_measure(const BumpProfile& B) const;
};

long bump_count(double N, double beta);

// spacing: translate gap in bump diameters (diameter = 2 * truncation_radius / N)
RademacherLayout rademacher_layout(const BumpProfile& B, int d, double N, double beta, double spacing,
                                   std::uint64_t seed);
AtomicMeasure rademacher_sum(const BumpProfile& B, int d, double N, double beta, double spacing,
                             std::uint64_t seed);

}  // namespace fdecay
