#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fdecay {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 4;

// Small fixed-capacity point; converts to a span of its coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(int dim);
  Point(std::initializer_list<double> c);
  static Point from(std::span<const double> c);

  int dim() const { return dim_; }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  double norm() const;
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }
  operator std::span<const double>() const { return coords(); }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

double norm(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

class AtomicMeasure {
 public:
  explicit AtomicMeasure(int dim = 1);
  static AtomicMeasure dirac(const Point& x, cplx w = 1.0);

  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }

  void reserve(std::size_t n);
  void add(std::span<const double> x, cplx w);

  std::span<const double> location(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  cplx weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<cplx>& weights() const { return weights_; }

  AtomicMeasure scaled(cplx c) const;
  AtomicMeasure translated(std::span<const double> v) const;
  // x -> s*x, weights unchanged
  AtomicMeasure dilated(double s) const;
  AtomicMeasure& append(const AtomicMeasure& other);

  // lower and upper corners of the support box
  std::pair<Point, Point> bounding_box() const;

 private:
  int dim_;
  std::vector<double> coords_;
  std::vector<cplx> weights_;
};

AtomicMeasure concatenate(const AtomicMeasure& a, const AtomicMeasure& b);

// d components sharing one atom set.
class VectorMeasure {
 public:
  explicit VectorMeasure(int dim = 1);

  int dim() const { return dim_; }
  int components() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  void reserve(std::size_t n);
  void add(std::span<const double> x, std::span<const cplx> w);

  std::span<const double> location(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const cplx> weight(std::size_t i) const {
    return {weights_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& coords() const { return coords_; }
  // n*d weights, atom-major
  const std::vector<cplx>& flat_weights() const { return weights_; }
  AtomicMeasure component(int k) const;
  // sum of all vector weights, component-wise
  std::vector<cplx> total_weight() const;
  std::pair<Point, Point> bounding_box() const;

 private:
  int dim_;
  std::vector<double> coords_;
  std::vector<cplx> weights_;
};

double total_variation(const AtomicMeasure& mu);
double total_variation(const VectorMeasure& mu);

struct FrequencyWindow {
  double xi_min = 0.0;
  double xi_max = 1.0;
  double spacing = 1.0 / 16;
  int d = 1;

  void validate() const;
  double cell_volume() const;
  // lattice points are spacing*(n + 1/2), n integer
  std::size_t sample_count() const;
};

// Complex values on frequency samples, each carrying a volume.
// Uniform lattices share one cell volume; radial shells and Monte Carlo
// samples carry their own.
class SampledField {
 public:
  SampledField(int dim, double cell_volume, bool keep_points = true);

  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool has_points() const { return keep_points_; }
  bool uniform() const { return volumes_.empty(); }
  double cell_volume() const { return cell_volume_; }

  void reserve(std::size_t n);
  void push(std::span<const double> xi, cplx v);
  void push(std::span<const double> xi, cplx v, double volume);
  void append(const SampledField& other);

  cplx value(std::size_t i) const { return values_[i]; }
  double volume(std::size_t i) const { return volumes_.empty() ? cell_volume_ : volumes_[i]; }
  std::span<const double> point(std::size_t i) const;
  const std::vector<cplx>& values() const { return values_; }
  double total_volume() const;

  SampledField scaled(cplx c) const;

 private:
  int dim_;
  double cell_volume_;
  bool keep_points_;
  std::vector<double> points_;
  std::vector<cplx> values_;
  std::vector<double> volumes_;
};

}  // namespace fdecay
