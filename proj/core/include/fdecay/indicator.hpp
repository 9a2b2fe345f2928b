#pragma once

#include "fdecay/measure.hpp"

namespace fdecay {

// Axis-aligned box (an interval when d = 1) or Euclidean ball.
class IndicatorSet {
 public:
  enum class Shape { Box, Ball };

  static IndicatorSet box(const Point& lo, const Point& hi);
  static IndicatorSet interval(double a, double b);
  static IndicatorSet cube(int d, double side);  // [0, side]^d
  static IndicatorSet ball(const Point& center, double radius);

  Shape shape() const { return shape_; }
  int dim() const { return lo_.dim(); }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

  double volume() const;
  double perimeter() const;
  double diameter() const;
  bool contains(std::span<const double> x) const;
  // distance from x (inside) to the boundary along the unit direction theta
  double exit_distance(std::span<const double> x, std::span<const double> theta) const;
  // E -> L E (about the origin)
  IndicatorSet dilated(double L) const;

 private:
  Shape shape_ = Shape::Box;
  Point lo_, hi_, center_;
  double radius_ = 0;
};

}  // namespace fdecay
