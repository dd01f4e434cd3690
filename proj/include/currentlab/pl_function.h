#ifndef CURRENTLAB_PL_FUNCTION_H_
#define CURRENTLAB_PL_FUNCTION_H_

#include <span>
#include <vector>

#include "currentlab/complex.h"

namespace currentlab {

// Function given by its vertex values and extended linearly over simplices.
// lip is the largest gradient norm over the simplices of the complex, which
// bounds every edge difference quotient and is the Lipschitz constant of the
// interpolant with respect to the flat simplex metrics.
class PLFunction {
 public:
  PLFunction() = default;
  PLFunction(ComplexPtr complex, std::vector<double> values);
  // Uses a caller-supplied Lipschitz constant; it must not be below the
  // computed one.
  PLFunction(ComplexPtr complex, std::vector<double> values, double lip);

  static PLFunction Constant(ComplexPtr complex, double c);
  static PLFunction Coordinate(ComplexPtr complex, int axis);
  // rho_p for a vertex p, using the complex's metric.
  static PLFunction DistanceFromVertex(ComplexPtr complex, int p);
  // Distance from an arbitrary point given in the complex's coordinates.
  static PLFunction DistanceFromPoint(ComplexPtr complex, std::span<const double> point);
  // Shortest-path distance along edges, for complexes without a usable metric.
  static PLFunction GraphDistance(ComplexPtr complex, int p);

  const ComplexPtr& complex() const { return complex_; }
  double value(int v) const { return values_[v]; }
  const std::vector<double>& values() const { return values_; }
  double lip() const { return lip_; }

  // Range over vertices that belong to the complex's simplices.
  double MinValue() const;
  double MaxValue() const;

  // Same vertex values viewed on another complex sharing the vertex ids
  // (a subcomplex); the Lipschitz constant is recomputed there.
  PLFunction OnComplex(ComplexPtr other) const;

 private:
  ComplexPtr complex_;
  std::vector<double> values_;
  double lip_ = 0.0;
};

// Largest gradient norm of the PL interpolant of the values over the complex.
double PLLipschitzConstant(const GeometricComplex& complex, const std::vector<double>& values);

}  // namespace currentlab

#endif  // CURRENTLAB_PL_FUNCTION_H_
