#ifndef CURRENTLAB_METRIC_SPACE_H_
#define CURRENTLAB_METRIC_SPACE_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "currentlab/errors.h"

namespace currentlab {

// Absolute tolerance used when validating symmetry and the triangle inequality.
inline constexpr double kMetricTolerance = 1e-9;

// A finite metric space given by its full distance matrix. Construction
// validates the metric axioms; the matrix is immutable afterwards.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Throws ArgumentError naming the offending entry or triple.
  explicit FiniteMetricSpace(std::vector<std::vector<double>> dist,
                             std::vector<std::string> labels = {});

  // Euclidean distances between the given points (all of equal length).
  static FiniteMetricSpace FromPoints(const std::vector<std::vector<double>>& points);

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }
  double operator()(int i, int j) const { return dist_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<std::vector<double>> matrix() const;

  // Subspace on the listed points, in the given order.
  FiniteMetricSpace Subspace(const std::vector<int>& points) const;

 private:
  int n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
};

struct PackingReport {
  double radius = 0.0;
  int count = 0;
  std::vector<int> centers;
};

// Largest distance between two points; 0 for the empty and one-point spaces.
double Diameter(const FiniteMetricSpace& x);

// Greedy maximal packing in index order: a point becomes a center when it is
// at distance >= 2r from every earlier center.
PackingReport PackingNumber(const FiniteMetricSpace& x, double r);

// Maximum packing by exhaustive search; only for spaces with at most 12 points.
PackingReport ExactPackingNumber(const FiniteMetricSpace& x, double r);

double HausdorffDistance(const FiniteMetricSpace& x, const std::vector<int>& a,
                         const std::vector<int>& b);

struct GHBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
  // Pairs (x, y) of the best correspondence found.
  std::vector<std::pair<int, int>> correspondence;
};

inline constexpr int kDefaultExactLimit = 7;

// Distortion of a correspondence given as (x, y) pairs.
double Distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  const std::vector<std::pair<int, int>>& correspondence);

// Bounds on the Gromov-Hausdorff distance. When both spaces have at most
// exact_limit points the minimal-distortion correspondence is found and
// lower == upper; otherwise upper comes from a greedy correspondence and lower
// from the diameter difference.
GHBounds GromovHausdorffBounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               int exact_limit = kDefaultExactLimit);

// CSV readers. A distance matrix may start with a header row of labels.
FiniteMetricSpace ReadDistanceMatrixCsv(std::istream& in);
FiniteMetricSpace ReadPointCloudCsv(std::istream& in);

}  // namespace currentlab

#endif  // CURRENTLAB_METRIC_SPACE_H_
