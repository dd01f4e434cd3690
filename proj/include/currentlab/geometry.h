#ifndef CURRENTLAB_GEOMETRY_H_
#define CURRENTLAB_GEOMETRY_H_

#include <memory>
#include <vector>

#include "currentlab/metric_space.h"

namespace currentlab {

enum class MetricKind { kEuclidean, kSphere, kFlatTorus, kMatrix };

// Distance model for vertex coordinates. The first base_dims() coordinates are
// measured with the base metric; appended interval coordinates (from products
// with I_eps) combine with it by the Pythagorean rule.
//
// kSphere stores points of R^3; Distance is the great-circle distance after
// radial projection and EdgeLength is the chord, so simplices are flat chords.
// kFlatTorus uses minimal-image differences; a period of 0 means that axis does
// not wrap. kMatrix stores a single coordinate per vertex: the index of a point
// of a FiniteMetricSpace.
class Metric {
 public:
  Metric() = default;
  static Metric Euclidean(int dims);
  static Metric Sphere(double radius);
  static Metric FlatTorus(std::vector<double> periods);
  static Metric Matrix(std::shared_ptr<const FiniteMetricSpace> space);

  // The same metric with one more appended interval coordinate.
  Metric WithInterval() const;

  MetricKind kind() const { return kind_; }
  int dims() const { return base_dims_ + extra_dims_; }
  int base_dims() const { return base_dims_; }
  int extra_dims() const { return extra_dims_; }
  double sphere_radius() const { return radius_; }
  const std::vector<double>& periods() const { return periods_; }
  const FiniteMetricSpace* matrix() const { return space_.get(); }
  bool has_coordinates() const { return kind_ != MetricKind::kMatrix; }

  double Distance(const double* a, const double* b) const;
  double EdgeLength(const double* a, const double* b) const;

  // b - a in local linear coordinates (minimal image on tori). Not available
  // for kMatrix.
  void Displacement(const double* a, const double* b, double* out) const;

  // Point at parameter lambda on the segment from a to b. The result depends
  // only on the unordered pair {a, b}, so shared edges split identically.
  // Throws ArgumentError for kMatrix unless both ends share a base point.
  void Interpolate(const double* a, const double* b, double lambda, double* out) const;

 private:
  MetricKind kind_ = MetricKind::kEuclidean;
  int base_dims_ = 0;
  int extra_dims_ = 0;
  double radius_ = 1.0;
  std::vector<double> periods_;
  std::shared_ptr<const FiniteMetricSpace> space_;
};

}  // namespace currentlab

#endif  // CURRENTLAB_GEOMETRY_H_
