#ifndef CURRENTLAB_CURRENT_H_
#define CURRENTLAB_CURRENT_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "currentlab/complex.h"
#include "currentlab/pl_function.h"

namespace currentlab {

// Integer k-chain on a complex: simplex index -> nonzero coefficient, with the
// sign measured against the ascending vertex order.
class SimplicialCurrent {
 public:
  SimplicialCurrent() = default;
  SimplicialCurrent(ComplexPtr complex, int dim);
  SimplicialCurrent(ComplexPtr complex, int dim, std::map<int, int64_t> coeffs);

  // Sum of all dim-simplices of the complex, oriented by the given sign
  // function (default +1 for every simplex).
  static SimplicialCurrent AllSimplices(ComplexPtr complex, int dim,
                                        const std::function<int(int)>& sign = {});

  const ComplexPtr& complex() const { return complex_; }
  int dim() const { return dim_; }
  const std::map<int, int64_t>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int64_t coeff(int simplex) const;

  // Adds c times the oriented vertex tuple; no-op for repeated vertices.
  void AddSimplex(const Simplex& oriented, int64_t c);
  void Add(int simplex, int64_t c);

  SimplicialCurrent operator+(const SimplicialCurrent& o) const;
  SimplicialCurrent operator-(const SimplicialCurrent& o) const;
  SimplicialCurrent operator-() const;
  SimplicialCurrent operator*(int64_t c) const;
  // Same complex object, dimension and coefficients.
  bool operator==(const SimplicialCurrent& o) const;

  // Vertices of the closure of the support.
  std::vector<int> SupportVertices() const;
  // (dim, index) list of the support, for building subcomplexes.
  std::vector<std::pair<int, int>> Support() const;

 private:
  void CheckCompatible(const SimplicialCurrent& o) const;

  ComplexPtr complex_;
  int dim_ = 0;
  std::map<int, int64_t> coeffs_;
};

SimplicialCurrent Boundary(const SimplicialCurrent& t);
double Mass(const SimplicialCurrent& t);
// Mass(t) + Mass(Boundary(t)).
double TotalMass(const SimplicialCurrent& t);

// Pushes t along a vertex map into the target complex. Simplices whose image
// repeats a vertex contribute nothing; images missing from the target throw.
SimplicialCurrent PushForward(const SimplicialCurrent& t, const std::vector<int>& vertex_map,
                              ComplexPtr target);

// Keeps the simplices whose barycenter satisfies the predicate.
SimplicialCurrent RestrictBarycenter(const SimplicialCurrent& t,
                                     const std::function<bool(std::span<const double>)>& keep);

// Keeps simplices with every vertex value <= level (the closed sublevel set of
// a function on the same complex). Exact when no edge crosses the level.
SimplicialCurrent RestrictSublevel(const SimplicialCurrent& t, const PLFunction& f, double level);

// T(f, pi_1..pi_k) with barycentric quadrature for f. Exact when f is affine
// on each simplex.
double Evaluate(const SimplicialCurrent& t, const PLFunction& f,
                const std::vector<PLFunction>& pis);

// Coefficients keyed by vertex coordinates, with orientation normalized to
// lexicographic coordinate order. Two currents on different complexes with
// identical geometry compare equal under this view.
std::map<std::vector<std::vector<double>>, int64_t> GeometricForm(const SimplicialCurrent& t);

}  // namespace currentlab

#endif  // CURRENTLAB_CURRENT_H_
