#include "fdecay/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdecay/errors.hpp"

namespace fdecay {

namespace {

void check_dim(int d) {
  if (d < 1 || d > kMaxDim) fail(Errc::DimensionMismatch, "dimension must be in [1, 4]");
}

std::pair<Point, Point> box_of(const std::vector<double>& coords, int d) {
  Point lo(d), hi(d);
  for (int k = 0; k < d; ++k) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < coords.size(); i += d) {
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], coords[i + k]);
      hi[k] = std::max(hi[k], coords[i + k]);
    }
  }
  return {lo, hi};
}

}  // namespace

Point::Point(int dim) : dim_(dim) { check_dim(dim); }

Point::Point(std::initializer_list<double> c) : dim_(static_cast<int>(c.size())) {
  check_dim(dim_);
  std::copy(c.begin(), c.end(), c_.begin());
}

Point Point::from(std::span<const double> c) {
  Point p(static_cast<int>(c.size()));
  std::copy(c.begin(), c.end(), p.c_.begin());
  return p;
}

double Point::norm() const { return fdecay::norm(coords()); }

double norm(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---- AtomicMeasure

AtomicMeasure::AtomicMeasure(int dim) : dim_(dim) { check_dim(dim); }

AtomicMeasure AtomicMeasure::dirac(const Point& x, cplx w) {
  AtomicMeasure m(x.dim());
  m.add(x, w);
  return m;
}

void AtomicMeasure::reserve(std::size_t n) {
  coords_.reserve(n * dim_);
  weights_.reserve(n);
}

void AtomicMeasure::add(std::span<const double> x, cplx w) {
  if (static_cast<int>(x.size()) != dim_)
    fail(Errc::DimensionMismatch, "atom has wrong number of coordinates");
  coords_.insert(coords_.end(), x.begin(), x.end());
  weights_.push_back(w);
}

AtomicMeasure AtomicMeasure::scaled(cplx c) const {
  AtomicMeasure m = *this;
  for (auto& w : m.weights_) w *= c;
  return m;
}

AtomicMeasure AtomicMeasure::translated(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != dim_) fail(Errc::DimensionMismatch, "translation vector");
  AtomicMeasure m = *this;
  for (std::size_t i = 0; i < m.coords_.size(); ++i) m.coords_[i] += v[i % dim_];
  return m;
}

AtomicMeasure AtomicMeasure::dilated(double s) const {
  AtomicMeasure m = *this;
  for (auto& c : m.coords_) c *= s;
  return m;
}

AtomicMeasure& AtomicMeasure::append(const AtomicMeasure& other) {
  if (other.dim_ != dim_) fail(Errc::DimensionMismatch, "append of measures in different dimensions");
  coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
  weights_.insert(weights_.end(), other.weights_.begin(), other.weights_.end());
  return *this;
}

std::pair<Point, Point> AtomicMeasure::bounding_box() const {
  if (empty()) return {Point(dim_), Point(dim_)};
  return box_of(coords_, dim_);
}

AtomicMeasure concatenate(const AtomicMeasure& a, const AtomicMeasure& b) {
  AtomicMeasure m = a;
  m.append(b);
  return m;
}

// ---- VectorMeasure

VectorMeasure::VectorMeasure(int dim) : dim_(dim) { check_dim(dim); }

void VectorMeasure::reserve(std::size_t n) {
  coords_.reserve(n * dim_);
  weights_.reserve(n * dim_);
}

void VectorMeasure::add(std::span<const double> x, std::span<const cplx> w) {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(w.size()) != dim_)
    fail(Errc::DimensionMismatch, "vector atom must have d coordinates and d components");
  coords_.insert(coords_.end(), x.begin(), x.end());
  weights_.insert(weights_.end(), w.begin(), w.end());
}

AtomicMeasure VectorMeasure::component(int k) const {
  AtomicMeasure m(dim_);
  m.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) m.add(location(i), weights_[i * dim_ + k]);
  return m;
}

std::vector<cplx> VectorMeasure::total_weight() const {
  std::vector<cplx> s(dim_, 0.0);
  for (std::size_t i = 0; i < weights_.size(); ++i) s[i % dim_] += weights_[i];
  return s;
}

std::pair<Point, Point> VectorMeasure::bounding_box() const {
  if (empty()) return {Point(dim_), Point(dim_)};
  return box_of(coords_, dim_);
}

double total_variation(const AtomicMeasure& mu) {
  double s = 0;
  for (const auto& w : mu.weights()) s += std::abs(w);
  return s;
}

double total_variation(const VectorMeasure& mu) {
  double s = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    double q = 0;
    for (const auto& w : mu.weight(i)) q += std::norm(w);
    s += std::sqrt(q);
  }
  return s;
}

// ---- FrequencyWindow

void FrequencyWindow::validate() const {
  if (d < 1 || d > kMaxDim) fail(Errc::DimensionMismatch, "window dimension");
  if (!(xi_min >= 0) || !(xi_max > xi_min))
    fail(Errc::InvalidArgument, "window needs 0 <= xi_min < xi_max");
  if (!(spacing > 0)) fail(Errc::InvalidArgument, "window spacing must be positive");
}

double FrequencyWindow::cell_volume() const { return std::pow(spacing, d); }

std::size_t FrequencyWindow::sample_count() const {
  validate();
  // count lattice points spacing*(n+1/2) in the shell, one axis at a time
  const long n = static_cast<long>(std::ceil(xi_max / spacing));
  std::size_t count = 0;
  std::array<long, kMaxDim> idx{};
  for (int k = 0; k < d; ++k) idx[k] = -n;
  while (true) {
    double r2 = 0;
    for (int k = 0; k < d; ++k) {
      double x = spacing * (idx[k] + 0.5);
      r2 += x * x;
    }
    if (r2 <= xi_max * xi_max && r2 >= xi_min * xi_min) ++count;
    int k = 0;
    while (k < d && ++idx[k] >= n) idx[k++] = -n;
    if (k == d) break;
  }
  return count;
}

// ---- SampledField

SampledField::SampledField(int dim, double cell_volume, bool keep_points)
    : dim_(dim), cell_volume_(cell_volume), keep_points_(keep_points) {
  check_dim(dim);
  if (!(cell_volume > 0)) fail(Errc::InvalidArgument, "cell volume must be positive");
}

void SampledField::reserve(std::size_t n) {
  values_.reserve(n);
  if (keep_points_) points_.reserve(n * dim_);
}

void SampledField::push(std::span<const double> xi, cplx v) {
  if (keep_points_) points_.insert(points_.end(), xi.begin(), xi.end());
  values_.push_back(v);
  if (!volumes_.empty()) volumes_.push_back(cell_volume_);
}

void SampledField::push(std::span<const double> xi, cplx v, double volume) {
  if (volumes_.empty()) volumes_.assign(values_.size(), cell_volume_);
  if (keep_points_) points_.insert(points_.end(), xi.begin(), xi.end());
  values_.push_back(v);
  volumes_.push_back(volume);
}

void SampledField::append(const SampledField& other) {
  if (other.dim_ != dim_) fail(Errc::DimensionMismatch, "field append");
  const bool same = uniform() && other.uniform() && other.cell_volume_ == cell_volume_;
  if (!same && volumes_.empty()) volumes_.assign(values_.size(), cell_volume_);
  for (std::size_t i = 0; i < other.size(); ++i) {
    values_.push_back(other.value(i));
    if (!same) volumes_.push_back(other.volume(i));
  }
  if (keep_points_) {
    if (other.keep_points_)
      points_.insert(points_.end(), other.points_.begin(), other.points_.end());
    else
      keep_points_ = false, points_.clear();
  }
}

std::span<const double> SampledField::point(std::size_t i) const {
  if (!keep_points_) fail(Errc::InvalidArgument, "field was built without sample points");
  return {points_.data() + i * dim_, static_cast<std::size_t>(dim_)};
}

double SampledField::total_volume() const {
  if (volumes_.empty()) return cell_volume_ * static_cast<double>(values_.size());
  double s = 0;
  for (double v : volumes_) s += v;
  return s;
}

SampledField SampledField::scaled(cplx c) const {
  SampledField f = *this;
  for (auto& v : f.values_) v *= c;
  return f;
}

}  // namespace fdecay
