#ifndef CURRENTLAB_FILLVOL_H_
#define CURRENTLAB_FILLVOL_H_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "currentlab/current.h"
#include "currentlab/linear_program.h"
#include "currentlab/metric_space.h"
#include "currentlab/transport.h"

namespace currentlab {

// LP coefficients within this distance of an integer count as integral.
inline constexpr double kIntegralityTolerance = 1e-6;
// Largest boundary residual accepted for a real certificate.
inline constexpr double kLPResidualTolerance = 1e-8;

// A real-coefficient chain: (simplex index, coefficient) on some complex.
struct RealChain {
  int dim = 0;
  std::vector<std::pair<int, double>> coeffs;
};

struct FillingReport {
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  // M(B) * Diam(spt B); only meaningful for filling volumes.
  double cone_bound = 0.0;
  bool integral = false;
  // "lp", "transport", "cone", "exhaustive", "potential" or "zero".
  std::string method;
  // Filling chain (or V for the flat distance), and U for the flat distance.
  RealChain certificate;
  RealChain certificate_u;
  // Integer versions, present when integral.
  SimplicialCurrent integral_certificate;
  SimplicialCurrent integral_certificate_u;
  double residual = 0.0;
  TransportPlan plan;
  std::vector<std::string> warnings;
};

struct FillOptions {
  LPMethod method = LPMethod::kAuto;
  // Try the potential method first when the filling lives in the top dimension
  // of a pseudomanifold ambient.
  bool allow_potential = true;
};

// Same chain on another complex whose vertices are matched by identical
// coordinates. Throws if a vertex or simplex has no counterpart.
SimplicialCurrent CarryByCoordinates(const SimplicialCurrent& t, ComplexPtr target);

// min M(U) + M(V) over real chains with S - T = U + dV in K.
FillingReport FlatDistance(const SimplicialCurrent& s, const SimplicialCurrent& t, ComplexPtr k,
                           const FillOptions& options = {});

// min M(S) over real (k+1)-chains of K with dS = B. B must be a cycle.
FillingReport FillingVolume(const SimplicialCurrent& b, ComplexPtr k,
                            const FillOptions& options = {});

// Transport filling of a balanced signed weighted point set.
FillingReport FillingVolume0d(const FiniteMetricSpace& space, const std::vector<int>& theta,
                              const std::vector<int>& sigma);
// The same for a 0-current, using the metric of its complex between support
// vertices. Coefficients must sum to zero.
FillingReport FillingVolume0d(const SimplicialCurrent& b);

// max_j theta_j * min_{i != j} d(p_i, p_j).
double PointFillingLowerBound(const FiniteMetricSpace& space, const std::vector<int>& theta);

struct ContinuityGap {
  double gap = 0.0;
  double bound = 0.0;
  double fill1 = 0.0;
  double fill2 = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

// |FillVol(dM1) - FillVol(dM2)| against d_F(M1, M2), all within K.
ContinuityGap FillvolContinuityGap(const SimplicialCurrent& m1, const SimplicialCurrent& m2,
                                   ComplexPtr k, const FillOptions& options = {});

nlohmann::json ReportToJson(const FillingReport& report);
nlohmann::json RealChainToJson(const RealChain& chain);

}  // namespace currentlab

#endif  // CURRENTLAB_FILLVOL_H_
