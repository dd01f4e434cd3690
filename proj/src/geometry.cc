#include "currentlab/geometry.h"

#include <algorithm>
#include <cmath>

namespace currentlab {

Metric Metric::Euclidean(int dims) {
  if (dims < 1) throw ArgumentError("Euclidean metric needs at least one coordinate");
  Metric m;
  m.kind_ = MetricKind::kEuclidean;
  m.base_dims_ = dims;
  return m;
}

Metric Metric::Sphere(double radius) {
  if (!(radius > 0)) throw ArgumentError("sphere radius must be positive");
  Metric m;
  m.kind_ = MetricKind::kSphere;
  m.base_dims_ = 3;
  m.radius_ = radius;
  return m;
}

Metric Metric::FlatTorus(std::vector<double> periods) {
  if (periods.empty()) throw ArgumentError("torus needs at least one axis");
  for (double p : periods)
    if (p < 0) throw ArgumentError("torus periods must be nonnegative");
  Metric m;
  m.kind_ = MetricKind::kFlatTorus;
  m.base_dims_ = static_cast<int>(periods.size());
  m.periods_ = std::move(periods);
  return m;
}

Metric Metric::Matrix(std::shared_ptr<const FiniteMetricSpace> space) {
  if (!space) throw ArgumentError("null metric space");
  Metric m;
  m.kind_ = MetricKind::kMatrix;
  m.base_dims_ = 1;
  m.space_ = std::move(space);
  return m;
}

Metric Metric::WithInterval() const {
  Metric m = *this;
  ++m.extra_dims_;
  return m;
}

namespace {

double WrapDelta(double d, double period) {
  if (period <= 0) return d;
  d = std::fmod(d, period);
  if (d > period / 2) d -= period;
  if (d < -period / 2) d += period;
  return d;
}

double ExtraSquared(const double* a, const double* b, int from, int to) {
  double s = 0;
  for (int i = from; i < to; ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
  return s;
}

}  // namespace

double Metric::Distance(const double* a, const double* b) const {
  double base2 = 0;
  switch (kind_) {
    case MetricKind::kEuclidean:
    case MetricKind::kFlatTorus:
      return EdgeLength(a, b);
    case MetricKind::kSphere: {
      double cx = a[1] * b[2] - a[2] * b[1];
      double cy = a[2] * b[0] - a[0] * b[2];
      double cz = a[0] * b[1] - a[1] * b[0];
      double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      double angle = std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
      base2 = radius_ * radius_ * angle * angle;
      break;
    }
    case MetricKind::kMatrix: {
      double d = (*space_)(static_cast<int>(a[0]), static_cast<int>(b[0]));
      base2 = d * d;
      break;
    }
  }
  return std::sqrt(base2 + ExtraSquared(a, b, base_dims_, dims()));
}

double Metric::EdgeLength(const double* a, const double* b) const {
  if (kind_ == MetricKind::kMatrix) {
    double d = (*space_)(static_cast<int>(a[0]), static_cast<int>(b[0]));
    return std::sqrt(d * d + ExtraSquared(a, b, 1, dims()));
  }
  double s = 0;
  for (int i = 0; i < dims(); ++i) {
    double d = b[i] - a[i];
    if (kind_ == MetricKind::kFlatTorus && i < base_dims_) d = WrapDelta(d, periods_[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

void Metric::Displacement(const double* a, const double* b, double* out) const {
  if (kind_ == MetricKind::kMatrix) {
    throw ArgumentError("matrix metrics have no linear coordinates");
  }
  for (int i = 0; i < dims(); ++i) {
    double d = b[i] - a[i];
    if (kind_ == MetricKind::kFlatTorus && i < base_dims_) d = WrapDelta(d, periods_[i]);
    out[i] = d;
  }
}

void Metric::Interpolate(const double* a, const double* b, double lambda, double* out) const {
  const int n = dims();
  if (std::lexicographical_compare(b, b + n, a, a + n)) {
    std::swap(a, b);
    lambda = 1 - lambda;
  }
  if (kind_ == MetricKind::kMatrix) {
    if (a[0] != b[0]) {
      throw ArgumentError("cannot subdivide an edge between distinct matrix-metric points");
    }
    out[0] = a[0];
    for (int i = 1; i < n; ++i) out[i] = a[i] + lambda * (b[i] - a[i]);
    return;
  }
  for (int i = 0; i < n; ++i) {
    double d = b[i] - a[i];
    if (kind_ == MetricKind::kFlatTorus && i < base_dims_ && periods_[i] > 0) {
      d = WrapDelta(d, periods_[i]);
      double v = a[i] + lambda * d;
      v = std::fmod(v, periods_[i]);
      if (v < 0) v += periods_[i];
      out[i] = v;
    } else {
      out[i] = a[i] + lambda * d;
    }
  }
}

}  // namespace currentlab
