#ifndef CURRENTLAB_SLICED_FILL_H_
#define CURRENTLAB_SLICED_FILL_H_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "currentlab/fillvol.h"
#include "currentlab/slicing.h"

namespace currentlab {

// Default number of quadrature nodes per axis.
inline constexpr int kDefaultGrid = 32;

// inf over [1/2, 3/2]^2 of h(p, 1, s1, s2) in Euclidean 3-space, maximized
// over the two witnesses. It is zero: no pair of witnesses keeps both the
// (1/2, 1/2) and (1/2, 3/2) corners nonempty. tools/derive_tetra_constant
// recomputes it.
inline constexpr double kEuclidean3TetraConstant = 0.0;

// The ball S(p, r) cut out exactly, with the cutting refinement kept so other
// functions can be carried along.
struct BallSetup {
  SimplicialCurrent t;
  int p = -1;
  double r = 0.0;
  double level = 0.0;
  Refinement refinement;
  SimplicialCurrent ball;
  // Vertices of the refined complex on the discrete sphere rho_p = level that
  // lie in the ball's support, in vertex order.
  std::vector<int> sphere_vertices;
  std::vector<std::string> warnings;
};

BallSetup PrepareBall(const SimplicialCurrent& t, int p, double r);
BallSetup PrepareBall(const SimplicialCurrent& t, const PLFunction& rho, double r);

// Nearest discrete-sphere vertex to a point (by the complex's metric).
int SnapWitness(const BallSetup& ball, std::span<const double> point);

struct SlicedFillReport {
  int p = -1;
  double r = 0.0;
  double epsilon = 0.0;
  // Witness vertices (on the ball's refined complex) and their coordinates
  // when the functions are distance functions.
  std::vector<int> witnesses;
  std::vector<std::vector<double>> witness_points;
  std::vector<double> lipschitz;
  // A_r as [min F_j, max F_j] over the closed ball.
  std::vector<std::pair<double, double>> box;
  std::vector<std::vector<double>> nodes;
  // Node values, last axis fastest.
  std::vector<double> values;
  double integral = 0.0;
  // |I_h - I_2h| / 3 from the half grid.
  double richardson_error = 0.0;
  double mass_lower_bound = 0.0;
  double ball_mass = 0.0;
  double tolerance = 0.0;
  bool bound_holds = true;
  int failed_nodes = 0;
  int snapped_levels = 0;
  std::vector<std::string> warnings;
};

// Integrates node_value(slice, ambient) of Slice(ball, fs, t) over the box of
// the functions' ranges on the ball. fs live on the ball's refined complex.
// Fills in box, nodes, values, integral, richardson_error and failed_nodes.
SlicedFillReport IntegrateSlices(
    const BallSetup& ball, const std::vector<PLFunction>& fs, int grid, int threads,
    const std::function<double(const SimplicialCurrent& slice)>& node_value);

// SF(p, r, F_1..F_k) for functions on T's complex, k <= m - 1.
SlicedFillReport SlicedFill(const SimplicialCurrent& t, int p, double r,
                            const std::vector<PLFunction>& fs, int grid = kDefaultGrid,
                            int threads = 1);
// SF with distance functions from witness vertices of the ball's discrete
// sphere.
SlicedFillReport SlicedFillWitnesses(const BallSetup& ball, const std::vector<int>& witnesses,
                                     int grid = kDefaultGrid, int threads = 1);

// Fills a slice's boundary: transport for 0-cycles, LP (or potentials) inside
// the slice's ambient complex otherwise.
double SliceBoundaryFill(const SimplicialCurrent& slice);

// h(p, r, t) for m - 1 functions on the ball's refined complex.
double HFunction(const BallSetup& ball, const std::vector<PLFunction>& fs,
                 const std::vector<double>& levels, std::vector<std::string>* warnings = nullptr);
// With distance functions from witness vertices.
double HFunction(const BallSetup& ball, const std::vector<int>& witnesses,
                 const std::vector<double>& levels, std::vector<std::string>* warnings = nullptr);

struct SfkReport {
  double value = 0.0;
  int k = 0;
  int evaluations = 0;
  SlicedFillReport best;
  std::vector<std::string> warnings;
};

// Best SF over k-tuples of discrete-sphere witnesses found by farthest-point
// seeding and single-swap local search, within `candidates` evaluations.
SfkReport SfK(const SimplicialCurrent& t, int p, double r, int k, int candidates,
              int grid = kDefaultGrid, int threads = 1);

struct TetraReport {
  int p = -1;
  double r = 0.0;
  double c = 0.0;
  double beta = 0.0;
  std::vector<int> witnesses;
  std::vector<std::vector<double>> witness_points;
  std::vector<double> samples;
  std::vector<double> h_values;
  double min_h = 0.0;
  double h_integral = 0.0;
  double integral_target = 0.0;
  double ball_mass = 0.0;
  bool passed = false;
  bool integral_passed = false;
  bool mass_bound_holds = true;
  int evaluations = 0;
  std::vector<std::string> warnings;
};

// Pointwise and integral C, beta tetrahedral property at p for radius r.
// Requires C > 0 and 0 < beta < 1.
TetraReport TetraCheck(const SimplicialCurrent& t, int p, double r, double c, double beta,
                       int samples, int candidates);

nlohmann::json ToJson(const SlicedFillReport& report);
nlohmann::json ToJson(const SfkReport& report);
nlohmann::json ToJson(const TetraReport& report);

// Trapezoid weights on n equally spaced nodes with spacing h, and the weights
// of the rule using every other node (the last odd interval keeps its own
// trapezoid).
std::vector<double> TrapezoidWeights(int n, double h);
std::vector<double> HalfGridWeights(int n, double h);

}  // namespace currentlab

#endif  // CURRENTLAB_SLICED_FILL_H_
