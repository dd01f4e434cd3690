#ifndef CURRENTLAB_PRODUCT_H_
#define CURRENTLAB_PRODUCT_H_

#include <vector>

#include "currentlab/current.h"
#include "currentlab/fillvol.h"
#include "currentlab/sliced_fill.h"

namespace currentlab {

// Stacked copies of a base complex joined by staircase prisms. Layer l has
// vertex ids l * n + v for base vertex v, so the staircase simplices
// [v0^l .. vi^l, vi^{l+1} .. vk^{l+1}] are already in ascending order and
// neighbouring prisms subdivide their shared faces the same way.
struct PrismComplex {
  ComplexPtr base;
  ComplexPtr prism;
  int layers = 0;

  int Lift(int vertex, int layer) const { return layer * base->num_vertices() + vertex; }
  std::vector<int> LiftMap(int layer) const;
};

// layer_coords[l] holds the coordinates of every base vertex in layer l, with
// the given metric's stride. Requires at least two layers.
PrismComplex BuildPrism(ComplexPtr base, const std::vector<std::vector<double>>& layer_coords,
                        const Metric& metric);

// base x I_eps with the interval split into `layers` equal steps and the
// Pythagorean product metric.
PrismComplex ProductComplex(ComplexPtr base, double epsilon, int layers = 1);

// I x T: sum over layers and staircase positions with signs (-1)^i, so that
// d(I x T) = psi_eps T - psi_0 T - I x dT.
SimplicialCurrent ProductCurrent(const SimplicialCurrent& t, const PrismComplex& pc);

// psi_l: the copy of t in a layer.
SimplicialCurrent LiftCurrent(const SimplicialCurrent& t, const PrismComplex& pc, int layer);

struct IntervalFillReport {
  FillingReport fill;
  double epsilon = 0.0;
  double mass = 0.0;
  // eps^-1 * FillVol(d(T x I_eps)), which never exceeds M(T).
  double scaled_value = 0.0;
  bool bound_holds = true;
};

// FillVol(d(T x I_eps)) inside the product of T's support with I_eps.
IntervalFillReport IntervalFillingVolume(const SimplicialCurrent& t, double epsilon, int layers = 1,
                                         const FillOptions& options = {});

// eps^-1 * integral over A_r of FillVol(d(Slice(S(p,r), F, t) x I_eps)), with
// k <= m functions. The report's integral is that quantity and its mass bound
// is prod lambda_j^-1 times it.
SlicedFillReport SlicedIntervalFill(const SimplicialCurrent& t, int p, double r,
                                    const std::vector<PLFunction>& fs, double epsilon, int grid,
                                    int layers = 1, int threads = 1);

}  // namespace currentlab

#endif  // CURRENTLAB_PRODUCT_H_
