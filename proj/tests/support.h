// Random instances and brute-force oracles shared by the unit tests and the
// acceptance runner. The oracles avoid the library's own algorithms: they
// enumerate maps, integer chains or matchings directly.
#ifndef CURRENTLAB_TESTS_SUPPORT_H_
#define CURRENTLAB_TESTS_SUPPORT_H_

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "currentlab/current.h"
#include "currentlab/meshes.h"
#include "currentlab/metric_space.h"
#include "currentlab/pl_function.h"

namespace testsupport {

using Rng = std::mt19937_64;

double Uniform(Rng& rng, double lo, double hi);
int UniformInt(Rng& rng, int lo, int hi);

// Complex from explicit coordinates and top simplices (Euclidean metric).
currentlab::ComplexPtr MakeComplex(int dims, std::vector<double> coords,
                                   const std::vector<currentlab::Simplex>& top);

// [0, 1]^2 cut into n * n cells with interior vertices moved by up to
// jitter * cell size; triangles counterclockwise.
currentlab::Mesh JitteredSquare(int n, double jitter, Rng& rng);
// [0, 1]^3 cut into Kuhn tetrahedra with the same kind of jitter.
currentlab::Mesh JitteredCube(int n, double jitter, Rng& rng);

// Random integer chain: each dim-simplex kept with probability density and
// a coefficient in [-max_coeff, max_coeff] \ {0}.
currentlab::SimplicialCurrent RandomChain(currentlab::ComplexPtr k, int dim, double density,
                                          int max_coeff, Rng& rng);

// Random affine function plus a small random perturbation at each vertex.
currentlab::PLFunction RandomPL(currentlab::ComplexPtr k, Rng& rng, double noise = 0.1);

// Random finite metric space: n points in the plane, optionally rounded to a
// grid so that ties occur.
currentlab::FiniteMetricSpace RandomSpace(int n, Rng& rng, bool rounded = false);

// Gromov-Hausdorff distance by depth-first search over pairs of maps
// f: X -> Y, g: Y -> X; every correspondence contains graph(f) u graph(g)^T
// for some such pair, so the minimum over pairs is the optimum.
double BruteForceGH(const currentlab::FiniteMetricSpace& x, const currentlab::FiniteMetricSpace& y);

// Maximum number of points pairwise at distance >= 2r, over all subsets.
int BruteForcePacking(const currentlab::FiniteMetricSpace& x, double r);

// min over integer (m+1)-chains V with coefficients in [-range, range] of
// M(S - T - dV) + M(V), all on the complex k.
double ExhaustiveFlatNorm(const currentlab::SimplicialCurrent& s,
                          const currentlab::SimplicialCurrent& t, currentlab::ComplexPtr k,
                          int range);

// Chains S, T of one dimension on a complex with at most 12 simplices of all
// dimensions: 1-chains on one or two triangles, or 0-chains on a path or
// cycle graph, coefficients in [-2, 2].
struct FlatInstance {
  currentlab::ComplexPtr k;
  currentlab::SimplicialCurrent s;
  currentlab::SimplicialCurrent t;
};
FlatInstance RandomFlatInstance(Rng& rng, int trial);

// Cheapest perfect matching of the positive units onto the negative units,
// by enumerating permutations (at most 8 units per side).
double BruteForceTransport(const currentlab::FiniteMetricSpace& space,
                           const std::vector<int>& theta, const std::vector<int>& sigma);

// Oriented simplices by vertex coordinates with their coefficients; equal
// forms mean equal currents regardless of vertex numbering.
using Form = std::map<std::vector<std::vector<double>>, int64_t>;
Form SumForms(Form a, const Form& b, int64_t sign = 1);

// g(x) = a . x + b, exact as a PL function on any complex.
struct Affine {
  std::vector<double> a;
  double b = 0.0;
  double operator()(const double* x) const;
  currentlab::PLFunction On(currentlab::ComplexPtr k) const;
};
Affine RandomAffine(Rng& rng, int dims);

// Uniform level in the range of f.
double RandomLevel(Rng& rng, const currentlab::PLFunction& f);

// A 1- or 2-chain in a jittered square, or a 2- or 3-chain in a jittered
// cube, depending on trial.
currentlab::SimplicialCurrent RandomInstance(Rng& rng, int trial);

// The square mesh with vertex ids shuffled and coordinates carried along.
struct Relabeling {
  currentlab::Mesh source;
  currentlab::ComplexPtr target;
  std::vector<int> map;
};
Relabeling RandomRelabeling(Rng& rng);

// One randomized instance of each identity; true when it holds exactly.
bool BoundaryBoundaryVanishes(Rng& rng, int trial);
bool SliceIsAdditive(Rng& rng, int trial);
bool BoundarySliceAnticommutes(Rng& rng, int trial);
bool SliceCommutesWithRestriction(Rng& rng, int trial);
bool PushForwardIsNatural(Rng& rng, int trial);

// Volumes from coordinates by cross products (Euclidean only).
double TriangleArea(const double* a, const double* b, const double* c, int dims);
double TetraVolume(const double* a, const double* b, const double* c, const double* d);

}  // namespace testsupport

#endif  // CURRENTLAB_TESTS_SUPPORT_H_
