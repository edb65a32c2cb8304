#pragma once

#include <functional>
#include <string>
#include <vector>

#include "boxembed/spectral_core.hpp"

namespace boxembed {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Smooth closed curve inside the box, parametrized counterclockwise over
/// [0, 2pi). Built-in circles carry analytic derivatives; parametric curves
/// without a supplied derivative (and curves loaded from point files) are
/// differentiated spectrally from their samples.
class BoundaryCurve {
 public:
  static BoundaryCurve circle(Point center, double radius);
  static BoundaryCurve parametric(std::function<Point(double)> gamma,
                                  std::function<Point(double)> gamma_dot = {});
  /// Plain-text file, one row "t, y1, y2" per sample, equispaced in t.
  static BoundaryCurve from_file(const std::string& path);

  Point at(double t) const;
  Point velocity(double t) const;
  /// Strict interior predicate.
  bool contains(const Point& p) const;

  bool is_circle() const noexcept { return is_circle_; }
  Point center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

 private:
  BoundaryCurve() = default;
  void build_series(int n_samples);

  bool is_circle_ = false;
  Point center_{};
  double radius_ = 0.0;
  std::function<Point(double)> gamma_;
  std::function<Point(double)> gamma_dot_;
  // Fourier series of gamma as a complex signal, for sample-defined curves.
  std::vector<cplx> series_;
  std::vector<Point> polyline_;  // dense samples for the interior test
};

/// Equidistant-in-parameter boundary discretization: points, unit outward
/// normals, unit tangents, and the offset points y + delta*normal.
struct BoundarySample {
  int n = 0;
  double offset_distance = 0.0;
  std::vector<double> params;
  std::vector<Point> points;
  std::vector<Point> normals;
  std::vector<Point> tangents;
  std::vector<Point> offsets;
  /// Set by nearest_grid_snap: largest distance any offset point moved.
  double max_snap_displacement = 0.0;
  bool snapped = false;
};

/// Samples the curve at n equidistant parameters (n >= 8). Throws if an
/// offset point leaves the box or re-enters the closed domain.
BoundarySample sample_boundary(const BoundaryCurve& curve, int n, double delta);

/// Replaces each offset point by the nearest grid node (boundary points stay
/// untouched) and records the largest displacement.
BoundarySample nearest_grid_snap(const BoundarySample& sample, const Grid2& grid);

}  // namespace boxembed
