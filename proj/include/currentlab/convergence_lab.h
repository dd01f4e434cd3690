#ifndef CURRENTLAB_CONVERGENCE_LAB_H_
#define CURRENTLAB_CONVERGENCE_LAB_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "currentlab/meshes.h"
#include "currentlab/metric_space.h"
#include "currentlab/product.h"

namespace currentlab {

struct FamilyMember {
  double parameter = 0.0;
  Mesh mesh;
  // Vertex followed along the family (disk center, north pole, a base point).
  int tracked = 0;
  // Spike tips and far-away base points (sphere_splines only).
  std::vector<int> tips;
  std::vector<int> bases;
  double spike_area = 0.0;
  // Area the polyhedral member loses against the smooth surface it
  // approximates (inscribed disk segments, spherical excess); 0 when exact.
  double inscribed_deficit = 0.0;
  // Refinement level within a nested disk family.
  int level = 0;
};

struct FamilyLimit {
  // Present when the limit is itself a mesh.
  std::optional<Mesh> mesh;
  double mass = 0.0;
  double diameter = 0.0;
};

struct SequenceFamily {
  std::string name;
  std::vector<double> schedule;
  uint64_t seed = 0;
  std::vector<FamilyMember> members;
  std::optional<FamilyLimit> limit;
  // refined_disk: spacing of the coarsest level.
  double base_spacing = 0.0;
};

const std::vector<std::string>& FamilyNames();

// Members, by parameter:
//   sphere_splines  j spikes of height 1 and width 1/j^2 on an icosphere in R^3
//                   (j = 0 is the plain icosphere, which is also the limit);
//   thin_torus      the flat torus with circumferences 2pi, 2pi, 2eps;
//   refined_sphere  icosphere of the given frequency, great-circle metric;
//   refined_disk    unit disk with spacing h, every h equal to h_0 / 2^l for
//                   the first entry h_0 (nested by edge midpoints).
SequenceFamily BuildFamily(const std::string& name, const std::vector<double>& schedule,
                           uint64_t seed = 0);

struct CommonEmbedding {
  FiniteMetricSpace ambient;
  // injections[0] maps A's points, injections[1] B's points.
  std::vector<std::vector<int>> injections;
  // Distortion of the correspondence and the gap used for the gluing.
  double distortion = 0.0;
  double delta = 0.0;
};

// Disjoint union of A and B with d(a, b) = min over matched (x, y) of
// d_A(a, x) + delta + d_B(y, b). delta defaults to the smallest admissible
// value, half the distortion (or a small positive value when that is 0). The
// ambient is validated as a metric, so a delta that is too small throws with
// the violating triple.
CommonEmbedding CommonEmbed(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                            const std::vector<std::pair<int, int>>& correspondence,
                            std::optional<double> delta = std::nullopt);

// Each used vertex of A matched to its nearest used vertex of B and vice versa,
// by coordinates (both complexes must share a coordinate system).
std::vector<std::pair<int, int>> NearestVertexCorrespondence(const GeometricComplex& a,
                                                             const GeometricComplex& b);

// Finite metric space on the used vertices of a complex, with the index of
// each vertex in it (-1 for unused vertices).
FiniteMetricSpace VertexMetricSpace(const GeometricComplex& c, std::vector<int>* index = nullptr);

// Two nested disk levels placed in R^3: the coarse one (subdivided to the fine
// combinatorics without moving the boundary) at z = 0 and the fine one at
// z = offset, joined by prisms. Both sit isometrically in K. With
// common_level above fine_level both layers use that level's combinatorics.
struct TwinPrism {
  PrismComplex prism;
  SimplicialCurrent lower;
  SimplicialCurrent upper;
  int center = 0;
};
TwinPrism TwinDiskPrism(double radius, double h0, int coarse_level, int fine_level, double offset,
                        int common_level = -1);

struct MemberStats {
  double parameter = 0.0;
  double mass = 0.0;
  double boundary_mass = 0.0;
  double diameter = 0.0;
  double inscribed_deficit = 0.0;
  double spike_area = 0.0;
  bool mass_holds = true;
  bool diameter_holds = true;
};

struct SemicontinuityReport {
  std::string family;
  double limit_mass = 0.0;
  double limit_diameter = 0.0;
  std::vector<MemberStats> rows;
  bool last_holds = true;
  bool every_step_holds = true;
};

// Mass and diameter along the schedule against the limit. A member passes
// when mass + inscribed_deficit >= limit mass - 1e-9 * (1 + limit mass) and
// diameter >= limit diameter - 1e-9 * (1 + limit diameter).
SemicontinuityReport Semicontinuity(const SequenceFamily& family);

struct TrackedPointRow {
  double parameter = 0.0;
  std::vector<double> tip_ball_masses;
  std::vector<double> base_ball_masses;
  std::vector<double> base_sf;
};

struct DisappearingReport {
  double r = 0.0;
  double c_sf = 0.0;
  std::vector<TrackedPointRow> rows;
  // Largest tip ball mass per member never grows and ends below a tenth of
  // where it started.
  bool tips_collapse = false;
  // Every base with SF_1 >= c_sf r^2 has ball mass >= c_sf r^2.
  bool bases_hold = true;
};

// Ball masses at spike tips and at base points, and SF_1 at the base points
// (sphere_splines).
DisappearingReport DisappearingPoints(const SequenceFamily& family, double r, double c_sf,
                                      int grid, int candidates, int threads = 1);

struct SweepParams {
  double r = 0.5;
  double epsilon = 0.1;
  int grid = 16;
  int layers = 1;
  int candidates = 6;
  int threads = 1;
  // Height of the second disk in the twin prism.
  double offset = 1e-3;
};

struct SweepRow {
  double parameter = 0.0;
  double value = 0.0;
  double ball_mass = 0.0;
  double quadrature_error = 0.0;
  std::vector<std::string> warnings;
};

struct SweepPair {
  int first = 0;
  int second = 0;
  double difference = 0.0;
  // Flat distance of the members and of their balls inside the common space.
  double member_flat = 0.0;
  double ball_flat = 0.0;
  // Largest change of rho between matched vertices, and the mass of the
  // second member in the band of that half-width around r.
  double rho_shift = 0.0;
  double annulus_mass = 0.0;
  double lipschitz = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  bool checked = false;
  bool holds = true;
};

struct ContinuityReport {
  std::string family;
  std::string quantity;
  SweepParams params;
  std::vector<SweepRow> rows;
  std::vector<SweepPair> pairs;
  std::optional<double> limit_value;
  bool all_hold = true;
  std::vector<std::string> warnings;
};

// quantity: fillvol (FillVol of the ball's boundary), sf, ifv or sif. Bounds
// are checked for refined_disk, whose consecutive members embed in a twin
// prism:
//   fillvol  |dq| <= d_F(S1, S2)
//   sf       |dq| <= Lip(F) d_F(S1, S2)
//   ifv      |dq| <= (2 + eps) d_F(M1, M2)
//   sif      |dq| <= eps^-1 (2 + eps) Lip(F) d_F(S1, S2)
// each plus 2 * (quadrature error estimates) + 1e-6. Other families report
// values only.
ContinuityReport ContinuitySweep(const SequenceFamily& family, const std::string& quantity,
                                 const SweepParams& params);

struct SliceShiftReport {
  double level = 0.0;
  double delta = 0.0;
  double flat = 0.0;
  double annulus = 0.0;
  double boundary_annulus = 0.0;
  double tolerance = 0.0;
  bool holds = true;
};

// d_F(<T, rho, s>, <T, f, s>) on the complex cut by both functions, against
// the masses of T and dT in {s - delta < rho < s + delta}. Requires
// |f - rho| < delta at every vertex.
SliceShiftReport SliceShift(const SimplicialCurrent& t, const PLFunction& rho, const PLFunction& f,
                            double s, double delta);

struct AnnulusDecayReport {
  double r = 0.0;
  std::vector<double> deltas;
  std::vector<double> masses;
  std::vector<double> ratios;
  bool monotone = true;
  double last_ratio = 0.0;
};

// Annulus masses for delta0, delta0 / 2, ... (steps values).
AnnulusDecayReport AnnulusDecay(const SimplicialCurrent& t, const PLFunction& rho, double r,
                                double delta0, int steps);

nlohmann::json ToJson(const SemicontinuityReport& report);
nlohmann::json ToJson(const DisappearingReport& report);
nlohmann::json ToJson(const ContinuityReport& report);

}  // namespace currentlab

#endif  // CURRENTLAB_CONVERGENCE_LAB_H_
