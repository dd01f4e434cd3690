#include "currentlab/convergence_lab.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "currentlab/refinement.h"
#include "currentlab/sliced_fill.h"
#include "currentlab/slicing.h"

namespace currentlab {

namespace {

constexpr int kSplineFrequency = 10;
constexpr int kTorusCellsXY = 24;
constexpr int kTorusCellsZ = 3;
constexpr double kRelativeSlack = 1e-9;

int IntegerParameter(double x, const char* what) {
  double r = std::round(x);
  if (std::abs(x - r) > 1e-9 || r < 0) {
    throw ArgumentError(std::string(what) + " must be a nonnegative integer");
  }
  return static_cast<int>(r);
}

// Area of the spherical triangle over a flat triangle with vertices on the
// sphere of the given radius.
double SphericalArea(const double* a, const double* b, const double* c, double radius) {
  double u[3], v[3], w[3];
  for (int i = 0; i < 3; ++i) {
    u[i] = a[i] / radius;
    v[i] = b[i] / radius;
    w[i] = c[i] / radius;
  }
  double triple = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                  u[2] * (v[0] * w[1] - v[1] * w[0]);
  double uv = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  double vw = v[0] * w[0] + v[1] * w[1] + v[2] * w[2];
  double wu = w[0] * u[0] + w[1] * u[1] + w[2] * u[2];
  return 2 * std::atan2(std::abs(triple), 1 + uv + vw + wu) * radius * radius;
}

double SphereDeficit(const Mesh& mesh) {
  const GeometricComplex& cx = *mesh.complex;
  double r = cx.metric().sphere_radius();
  double smooth = 0.0;
  for (const auto& [i, c] : mesh.current.coeffs()) {
    const Simplex& s = cx.simplex(2, i);
    smooth += std::abs(c) * SphericalArea(cx.point(s[0]), cx.point(s[1]), cx.point(s[2]), r);
  }
  return smooth - Mass(mesh.current);
}

// Circular segments between the boundary chords and the circle.
double DiskDeficit(const Mesh& mesh, double radius) {
  SimplicialCurrent b = Boundary(mesh.current);
  const GeometricComplex& cx = *mesh.complex;
  double out = 0.0;
  for (const auto& [i, c] : b.coeffs()) {
    double chord = cx.volume(1, i);
    double theta = 2 * std::asin(std::min(1.0, chord / (2 * radius)));
    out += std::abs(c) * 0.5 * radius * radius * (theta - std::sin(theta));
  }
  return out;
}

std::vector<double> PlanarDistances(const GeometricComplex& cx, double x0, double y0) {
  std::vector<double> out(cx.num_vertices());
  for (int v = 0; v < cx.num_vertices(); ++v) {
    out[v] = std::hypot(cx.point(v)[0] - x0, cx.point(v)[1] - y0);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& FamilyNames() {
  static const std::vector<std::string> names = {"sphere_splines", "thin_torus", "refined_sphere",
                                                 "refined_disk"};
  return names;
}

SequenceFamily BuildFamily(const std::string& name, const std::vector<double>& schedule,
                           uint64_t seed) {
  const auto& names = FamilyNames();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ArgumentError("unknown family '" + name + "'");
  }
  if (schedule.empty()) throw ArgumentError("schedule is empty");
  SequenceFamily fam;
  fam.name = name;
  fam.schedule = schedule;
  fam.seed = seed;
  if (name == "sphere_splines") {
    for (double x : schedule) {
      int j = IntegerParameter(x, "spike count");
      double width = j == 0 ? 1.0 : 1.0 / (static_cast<double>(j) * j);
      SpikedSphere s = SphereWithSpikes(kSplineFrequency, j, 1.0, width, seed);
      FamilyMember m;
      m.parameter = x;
      m.mesh = s.mesh;
      m.tips = s.tips;
      m.bases = s.bases;
      m.spike_area = s.spike_area;
      m.tracked = s.bases.empty() ? 0 : s.bases[0];
      fam.members.push_back(std::move(m));
    }
    FamilyLimit lim;
    lim.mesh = MeshFromSoup(IcosphereSoup(kSplineFrequency, 1.0), Metric::Euclidean(3));
    lim.mass = Mass(lim.mesh->current);
    lim.diameter = lim.mesh->complex->Diameter();
    fam.limit = lim;
  } else if (name == "thin_torus") {
    for (double eps : schedule) {
      if (!(eps > 0)) throw ArgumentError("torus thickness must be positive");
      FamilyMember m;
      m.parameter = eps;
      m.mesh = ThinTorus(eps, kTorusCellsXY, kTorusCellsZ);
      fam.members.push_back(std::move(m));
    }
    // The tori collapse to the zero current.
    fam.limit = FamilyLimit{};
  } else if (name == "refined_sphere") {
    for (double x : schedule) {
      int f = IntegerParameter(x, "icosphere frequency");
      FamilyMember m;
      m.parameter = x;
      m.mesh = Icosphere(f, 1.0);
      m.inscribed_deficit = SphereDeficit(m.mesh);
      fam.members.push_back(std::move(m));
    }
    fam.limit = FamilyLimit{std::nullopt, 4 * std::numbers::pi, std::numbers::pi};
  } else {
    const double h0 = schedule[0];
    if (!(h0 > 0)) throw ArgumentError("disk spacing must be positive");
    fam.base_spacing = h0;
    for (double h : schedule) {
      if (!(h > 0)) throw ArgumentError("disk spacing must be positive");
      double l = std::log2(h0 / h);
      if (std::abs(l - std::round(l)) > 1e-9 || std::round(l) < 0) {
        throw ArgumentError("disk spacings must be the first one divided by powers of 2");
      }
      FamilyMember m;
      m.parameter = h;
      m.level = static_cast<int>(std::round(l));
      m.mesh = MeshFromSoup(RefinedDiskSoup(1.0, h0, m.level), Metric::Euclidean(2));
      m.inscribed_deficit = DiskDeficit(m.mesh, 1.0);
      fam.members.push_back(std::move(m));
    }
    fam.limit = FamilyLimit{std::nullopt, std::numbers::pi, 2.0};
  }
  return fam;
}

FiniteMetricSpace VertexMetricSpace(const GeometricComplex& c, std::vector<int>* index) {
  std::vector<int> verts;
  std::vector<int> idx(c.num_vertices(), -1);
  for (int v = 0; v < c.num_vertices(); ++v) {
    if (c.used_vertices()[v]) {
      idx[v] = static_cast<int>(verts.size());
      verts.push_back(v);
    }
  }
  const size_t n = verts.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = c.distance(verts[i], verts[j]);
  }
  if (index) *index = std::move(idx);
  return FiniteMetricSpace(std::move(d));
}

std::vector<std::pair<int, int>> NearestVertexCorrespondence(const GeometricComplex& a,
                                                             const GeometricComplex& b) {
  if (a.metric().dims() != b.metric().dims()) throw ArgumentError("complexes use different coordinates");
  std::vector<int> va, vb;
  for (int v = 0; v < a.num_vertices(); ++v)
    if (a.used_vertices()[v]) va.push_back(v);
  for (int v = 0; v < b.num_vertices(); ++v)
    if (b.used_vertices()[v]) vb.push_back(v);
  if (va.empty() || vb.empty()) throw ArgumentError("cannot match an empty complex");
  std::vector<std::pair<int, int>> out;
  // Indices into the used-vertex lists, matching VertexMetricSpace.
  for (size_t i = 0; i < va.size(); ++i) {
    size_t best = 0;
    double dbest = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < vb.size(); ++j) {
      double d = a.metric().Distance(a.point(va[i]), b.point(vb[j]));
      if (d < dbest) {
        dbest = d;
        best = j;
      }
    }
    out.emplace_back(static_cast<int>(i), static_cast<int>(best));
  }
  for (size_t j = 0; j < vb.size(); ++j) {
    size_t best = 0;
    double dbest = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < va.size(); ++i) {
      double d = a.metric().Distance(a.point(va[i]), b.point(vb[j]));
      if (d < dbest) {
        dbest = d;
        best = i;
      }
    }
    out.emplace_back(static_cast<int>(best), static_cast<int>(j));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CommonEmbedding CommonEmbed(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                            const std::vector<std::pair<int, int>>& correspondence,
                            std::optional<double> delta) {
  if (correspondence.empty()) throw ArgumentError("correspondence is empty");
  for (const auto& [x, y] : correspondence) {
    if (x < 0 || x >= a.size() || y < 0 || y >= b.size()) {
      throw ArgumentError("correspondence pair (" + std::to_string(x) + "," + std::to_string(y) +
                          ") out of range");
    }
  }
  CommonEmbedding out;
  out.distortion = Distortion(a, b, correspondence);
  if (delta) {
    out.delta = *delta;
  } else {
    out.delta = out.distortion / 2;
    if (!(out.delta > 0)) out.delta = 1e-9 * std::max(1.0, std::max(Diameter(a), Diameter(b)));
  }
  if (!(out.delta > 0)) throw ArgumentError("gluing gap must be positive");
  const int na = a.size(), nb = b.size(), n = na + nb;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) d[i][j] = a(i, j);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) d[na + i][na + j] = b(i, j);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [x, y] : correspondence) best = std::min(best, a(i, x) + b(y, j));
      d[i][na + j] = d[na + j][i] = best + out.delta;
    }
  }
  out.ambient = FiniteMetricSpace(std::move(d));
  out.injections.resize(2);
  for (int i = 0; i < na; ++i) out.injections[0].push_back(i);
  for (int j = 0; j < nb; ++j) out.injections[1].push_back(na + j);
  return out;
}

TwinPrism TwinDiskPrism(double radius, double h0, int coarse_level, int fine_level, double offset,
                        int common_level) {
  if (coarse_level < 0 || fine_level < coarse_level) throw ArgumentError("bad disk levels");
  if (!(offset > 0)) throw ArgumentError("prism offset must be positive");
  const int common = std::max(fine_level, common_level);
  TriangleSoup lower = RefinedDiskSoup(radius, h0, common, coarse_level);
  TriangleSoup upper = RefinedDiskSoup(radius, h0, common, fine_level);
  Mesh base = MeshFromSoup(upper, Metric::Euclidean(2));
  const int n = base.complex->num_vertices();
  std::vector<std::vector<double>> layers(2);
  for (int v = 0; v < n; ++v) {
    layers[0].insert(layers[0].end(), {lower.coords[2 * v], lower.coords[2 * v + 1], 0.0});
    layers[1].insert(layers[1].end(), {upper.coords[2 * v], upper.coords[2 * v + 1], offset});
  }
  TwinPrism out;
  out.prism = BuildPrism(base.complex, layers, Metric::Euclidean(3));
  out.lower = LiftCurrent(base.current, out.prism, 0);
  out.upper = LiftCurrent(base.current, out.prism, 1);
  out.center = 0;
  return out;
}

SemicontinuityReport Semicontinuity(const SequenceFamily& family) {
  if (!family.limit) throw ArgumentError("family has no expected limit");
  SemicontinuityReport out;
  out.family = family.name;
  out.limit_mass = family.limit->mass;
  out.limit_diameter = family.limit->diameter;
  for (const FamilyMember& m : family.members) {
    MemberStats row;
    row.parameter = m.parameter;
    row.mass = Mass(m.mesh.current);
    row.boundary_mass = Mass(Boundary(m.mesh.current));
    row.diameter = m.mesh.complex->Diameter();
    row.inscribed_deficit = m.inscribed_deficit;
    row.spike_area = m.spike_area;
    row.mass_holds = row.mass + row.inscribed_deficit >=
                     out.limit_mass - kRelativeSlack * (1 + out.limit_mass);
    row.diameter_holds = row.diameter >= out.limit_diameter - kRelativeSlack * (1 + out.limit_diameter);
    out.every_step_holds = out.every_step_holds && row.mass_holds && row.diameter_holds;
    out.rows.push_back(row);
  }
  out.last_holds = out.rows.back().mass_holds && out.rows.back().diameter_holds;
  return out;
}

DisappearingReport DisappearingPoints(const SequenceFamily& family, double r, double c_sf,
                                      int grid, int candidates, int threads) {
  if (!(r > 0)) throw ArgumentError("radius must be positive");
  DisappearingReport out;
  out.r = r;
  out.c_sf = c_sf;
  std::vector<double> tip_max;
  const double target = c_sf * r * r;
  for (const FamilyMember& m : family.members) {
    TrackedPointRow row;
    row.parameter = m.parameter;
    for (int tip : m.tips) row.tip_ball_masses.push_back(Mass(Ball(m.mesh.current, tip, r).ball));
    for (int b : m.bases) {
      double mass = Mass(Ball(m.mesh.current, b, r).ball);
      double sf = SfK(m.mesh.current, b, r, 1, candidates, grid, threads).value;
      row.base_ball_masses.push_back(mass);
      row.base_sf.push_back(sf);
      if (sf >= target && mass < target) out.bases_hold = false;
    }
    if (!row.tip_ball_masses.empty()) {
      tip_max.push_back(*std::max_element(row.tip_ball_masses.begin(), row.tip_ball_masses.end()));
    }
    out.rows.push_back(std::move(row));
  }
  if (tip_max.size() >= 2) {
    out.tips_collapse = tip_max.back() <= 0.1 * tip_max.front();
    for (size_t i = 1; i < tip_max.size(); ++i) {
      if (tip_max[i] > tip_max[i - 1] * (1 + kRelativeSlack)) out.tips_collapse = false;
    }
  }
  return out;
}

namespace {

struct MemberSetup {
  SimplicialCurrent t;
  int p = 0;
  // Slicing functions on t's complex; empty when witnesses are searched.
  std::vector<PLFunction> fs;
  int k = 1;
};

MemberSetup SetupMember(const SequenceFamily& family, const FamilyMember& m, const SweepParams& params,
                        std::vector<std::string>* warnings) {
  MemberSetup s;
  s.t = m.mesh.current;
  s.p = m.tracked;
  ComplexPtr cx = m.mesh.complex;
  if (family.name == "refined_disk") {
    std::vector<double> w = {params.r, 0.0};
    s.fs.push_back(PLFunction::DistanceFromPoint(cx, w));
  } else if (family.name == "refined_sphere") {
    double rad = cx->metric().sphere_radius();
    std::vector<double> w = {rad * std::sin(params.r / rad), 0.0, rad * std::cos(params.r / rad)};
    s.fs.push_back(PLFunction::DistanceFromPoint(cx, w));
  } else if (family.name == "thin_torus") {
    // The ball only sees a chart around the tracked point.
    TorusChart chart = ThinTorusChart(m.parameter, 1.25 * params.r, 6);
    s.t = chart.mesh.current;
    s.p = chart.center;
    s.k = 2;
    warnings->push_back("thin torus member evaluated on a chart of half width " +
                        std::to_string(1.25 * params.r));
  }
  return s;
}

double BallFill(const SimplicialCurrent& t, int p, double r, double* ball_mass) {
  BallSetup ball = PrepareBall(t, p, r);
  *ball_mass = Mass(ball.ball);
  SimplicialCurrent b = Boundary(ball.ball);
  if (b.is_zero()) return 0.0;
  if (b.dim() == 0) return FillingVolume0d(b).value;
  return FillingVolume(b, ball.refinement.refined()).value;
}

SweepRow EvaluateMember(const SequenceFamily& family, const FamilyMember& m, const std::string& q,
                        const SweepParams& params) {
  SweepRow row;
  row.parameter = m.parameter;
  MemberSetup s = SetupMember(family, m, params, &row.warnings);
  auto witness_fs = [&]() {
    if (!s.fs.empty()) return s.fs;
    SfkReport best = SfK(s.t, s.p, params.r, s.k, params.candidates, params.grid, params.threads);
    std::vector<PLFunction> fs;
    for (const auto& w : best.best.witness_points) fs.push_back(PLFunction::DistanceFromPoint(s.t.complex(), w));
    return fs;
  };
  if (q == "fillvol") {
    row.value = BallFill(s.t, s.p, params.r, &row.ball_mass);
  } else if (q == "sf") {
    SlicedFillReport rep;
    if (s.fs.empty()) {
      SfkReport best = SfK(s.t, s.p, params.r, s.k, params.candidates, params.grid, params.threads);
      rep = best.best;
    } else {
      rep = SlicedFill(s.t, s.p, params.r, s.fs, params.grid, params.threads);
    }
    row.value = rep.integral;
    row.ball_mass = rep.ball_mass;
    row.quadrature_error = rep.richardson_error;
    row.warnings.insert(row.warnings.end(), rep.warnings.begin(), rep.warnings.end());
  } else if (q == "ifv") {
    IntervalFillReport rep = IntervalFillingVolume(s.t, params.epsilon, params.layers);
    row.value = rep.fill.value;
    row.ball_mass = rep.mass;
  } else {
    SlicedFillReport rep = SlicedIntervalFill(s.t, s.p, params.r, witness_fs(), params.epsilon,
                                              params.grid, params.layers, params.threads);
    row.value = rep.integral;
    row.ball_mass = rep.ball_mass;
    row.quadrature_error = rep.richardson_error;
    row.warnings.insert(row.warnings.end(), rep.warnings.begin(), rep.warnings.end());
  }
  return row;
}

SweepPair DiskPair(const SequenceFamily& family, int i, int j, const std::string& q,
                   const SweepParams& params, const std::vector<SweepRow>& rows, int common_level) {
  SweepPair pair;
  pair.first = i;
  pair.second = j;
  pair.difference = std::abs(rows[i].value - rows[j].value);
  const FamilyMember& a = family.members[i];
  const FamilyMember& b = family.members[j];
  const bool a_coarse = a.level <= b.level;
  TwinPrism twin = TwinDiskPrism(1.0, family.base_spacing, std::min(a.level, b.level),
                                 std::max(a.level, b.level), params.offset, common_level);
  ComplexPtr k = twin.prism.prism;
  const SimplicialCurrent& m1 = a_coarse ? twin.lower : twin.upper;
  const SimplicialCurrent& m2 = a_coarse ? twin.upper : twin.lower;
  PLFunction rho(k, PlanarDistances(*k, 0.0, 0.0));
  PLFunction f(k, PlanarDistances(*k, params.r, 0.0));
  const int n = twin.prism.base->num_vertices();
  for (int v = 0; v < n; ++v) {
    pair.rho_shift = std::max(pair.rho_shift, std::abs(rho.value(twin.prism.Lift(v, 0)) -
                                                       rho.value(twin.prism.Lift(v, 1))));
  }
  FillOptions opts;
  pair.member_flat = FlatDistance(m1, m2, k, opts).value;
  if (pair.rho_shift > 0) pair.annulus_mass = AnnulusMass(m2, rho, params.r, pair.rho_shift);
  if (q != "ifv") {
    Refinement ref = SubdivideAtLevel(k, rho, params.r);
    SimplicialCurrent s1 = RestrictSublevel(ref.Transfer(m1), ref.function(), ref.level());
    SimplicialCurrent s2 = RestrictSublevel(ref.Transfer(m2), ref.function(), ref.level());
    pair.ball_flat = FlatDistance(s1, s2, ref.refined(), opts).value;
    pair.lipschitz = ref.Transfer(f).lip();
  }
  const double eps = params.epsilon;
  if (q == "fillvol") {
    pair.bound = pair.ball_flat;
  } else if (q == "sf") {
    pair.bound = pair.lipschitz * pair.ball_flat;
  } else if (q == "ifv") {
    pair.bound = (2 + eps) * pair.member_flat;
  } else {
    pair.bound = (2 + eps) / eps * pair.lipschitz * pair.ball_flat;
  }
  pair.tolerance = 2 * (rows[i].quadrature_error + rows[j].quadrature_error) + 1e-6;
  pair.checked = true;
  pair.holds = pair.difference <= pair.bound + pair.tolerance;
  return pair;
}

std::optional<double> LimitValue(const std::string& family, const std::string& q,
                                 const SweepParams& p) {
  const double pi = std::numbers::pi;
  if (family == "refined_disk" && p.r < 1) {
    if (q == "fillvol" || q == "sif") return pi * p.r * p.r;
    if (q == "sf") return 8 * p.r * p.r / 3;
    if (q == "ifv") return pi * p.epsilon;
  }
  if (family == "refined_sphere" && q == "sf" && std::abs(p.r - pi / 2) < 1e-12) return pi * pi / 2;
  return std::nullopt;
}

}  // namespace

ContinuityReport ContinuitySweep(const SequenceFamily& family, const std::string& quantity,
                                 const SweepParams& params) {
  if (quantity != "fillvol" && quantity != "sf" && quantity != "ifv" && quantity != "sif") {
    throw ArgumentError("unknown quantity '" + quantity + "'");
  }
  if (!(params.r > 0)) throw ArgumentError("radius must be positive");
  if ((quantity == "ifv" || quantity == "sif") && !(params.epsilon > 0)) {
    throw ArgumentError("interval length must be positive");
  }
  ContinuityReport out;
  out.family = family.name;
  out.quantity = quantity;
  out.params = params;
  out.limit_value = LimitValue(family.name, quantity, params);
  // Disk members are evaluated on the finest combinatorics so that every
  // member and every twin prism interpolates rho and F on the same grid; the
  // subdivided disk is the same current.
  int common_level = 0;
  for (const FamilyMember& m : family.members) common_level = std::max(common_level, m.level);
  for (const FamilyMember& m : family.members) {
    if (family.name == "refined_disk" && m.level < common_level) {
      FamilyMember fine = m;
      fine.mesh = MeshFromSoup(RefinedDiskSoup(1.0, family.base_spacing, common_level, m.level),
                               Metric::Euclidean(2));
      out.rows.push_back(EvaluateMember(family, fine, quantity, params));
    } else {
      out.rows.push_back(EvaluateMember(family, m, quantity, params));
    }
  }
  for (size_t i = 0; i + 1 < out.rows.size(); ++i) {
    if (family.name == "refined_disk") {
      out.pairs.push_back(DiskPair(family, static_cast<int>(i), static_cast<int>(i + 1), quantity,
                                   params, out.rows, common_level));
    } else {
      SweepPair pair;
      pair.first = static_cast<int>(i);
      pair.second = static_cast<int>(i + 1);
      pair.difference = std::abs(out.rows[i].value - out.rows[i + 1].value);
      out.pairs.push_back(pair);
    }
    out.all_hold = out.all_hold && out.pairs.back().holds;
  }
  if (family.name != "refined_disk" && out.rows.size() > 1) {
    out.warnings.push_back("no common embedding for this family; differences are not bounded");
  }
  return out;
}

SliceShiftReport SliceShift(const SimplicialCurrent& t, const PLFunction& rho, const PLFunction& f,
                            double s, double delta) {
  if (!(delta > 0)) throw ArgumentError("shift bound must be positive");
  for (int v : t.SupportVertices()) {
    if (!(std::abs(f.value(v) - rho.value(v)) < delta)) {
      throw ArgumentError("|f - rho| reaches delta at vertex " + std::to_string(v));
    }
  }
  SliceShiftReport out;
  out.level = s;
  out.delta = delta;
  // One complex cut along both level sets.
  ComplexPtr support = SupportComplex(t);
  Refinement r1 = SubdivideAtLevel(support, rho.OnComplex(support), s);
  SimplicialCurrent t1 = r1.Transfer(Reindex(t, r1.source()));
  PLFunction f1 = r1.Transfer(f.OnComplex(r1.source()));
  Refinement r2 = SubdivideAtLevel(r1.refined(), f1, s);
  ComplexPtr k = r2.refined();
  SimplicialCurrent t2 = r2.Transfer(t1);
  PLFunction rho2 = r2.Transfer(r1.function());
  PLFunction f2 = r2.function();
  SimplicialCurrent a = CarryByCoordinates(Slice(t2, rho2, r1.level()).current, k);
  SimplicialCurrent b = CarryByCoordinates(Slice(t2, f2, r2.level()).current, k);
  if (a.is_zero() && b.is_zero()) {
    out.flat = 0.0;
  } else {
    out.flat = FlatDistance(a, b, k).value;
  }
  out.annulus = AnnulusMass(t, rho, s, delta);
  SimplicialCurrent bt = Boundary(t);
  out.boundary_annulus = bt.is_zero() ? 0.0 : AnnulusMass(bt, rho, s, delta);
  out.tolerance = 1e-6 + 1e-8 * (out.annulus + out.boundary_annulus);
  out.holds = out.flat <= out.annulus + out.boundary_annulus + out.tolerance;
  return out;
}

AnnulusDecayReport AnnulusDecay(const SimplicialCurrent& t, const PLFunction& rho, double r,
                                double delta0, int steps) {
  if (!(delta0 > 0) || steps < 2) throw ArgumentError("need a positive start and at least 2 steps");
  AnnulusDecayReport out;
  out.r = r;
  double delta = delta0;
  for (int i = 0; i < steps; ++i, delta /= 2) {
    out.deltas.push_back(delta);
    out.masses.push_back(AnnulusMass(t, rho, r, delta));
    if (i > 0) {
      double prev = out.masses[i - 1];
      out.ratios.push_back(prev > 0 ? out.masses[i] / prev : 0.0);
      if (out.masses[i] > prev * (1 + kRelativeSlack)) out.monotone = false;
    }
  }
  out.last_ratio = out.ratios.back();
  return out;
}

nlohmann::json ToJson(const SemicontinuityReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : r.rows) {
    rows.push_back({{"parameter", s.parameter},
                    {"mass", s.mass},
                    {"boundary_mass", s.boundary_mass},
                    {"diameter", s.diameter},
                    {"inscribed_deficit", s.inscribed_deficit},
                    {"spike_area", s.spike_area},
                    {"mass_holds", s.mass_holds},
                    {"diameter_holds", s.diameter_holds}});
  }
  return {{"family", r.family},
          {"limit_mass", r.limit_mass},
          {"limit_diameter", r.limit_diameter},
          {"rows", rows},
          {"last_holds", r.last_holds},
          {"every_step_holds", r.every_step_holds}};
}

nlohmann::json ToJson(const DisappearingReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : r.rows) {
    rows.push_back({{"parameter", s.parameter},
                    {"tip_ball_masses", s.tip_ball_masses},
                    {"base_ball_masses", s.base_ball_masses},
                    {"base_sf", s.base_sf}});
  }
  return {{"r", r.r},
          {"c_sf", r.c_sf},
          {"rows", rows},
          {"tips_collapse", r.tips_collapse},
          {"bases_hold", r.bases_hold}};
}

nlohmann::json ToJson(const ContinuityReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : r.rows) {
    rows.push_back({{"parameter", s.parameter},
                    {"value", s.value},
                    {"ball_mass", s.ball_mass},
                    {"quadrature_error", s.quadrature_error},
                    {"warnings", s.warnings}});
  }
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"first", p.first},
                     {"second", p.second},
                     {"difference", p.difference},
                     {"member_flat", p.member_flat},
                     {"ball_flat", p.ball_flat},
                     {"rho_shift", p.rho_shift},
                     {"annulus_mass", p.annulus_mass},
                     {"lipschitz", p.lipschitz},
                     {"bound", p.bound},
                     {"tolerance", p.tolerance},
                     {"checked", p.checked},
                     {"holds", p.holds}});
  }
  nlohmann::json j = {{"family", r.family},
                      {"quantity", r.quantity},
                      {"params",
                       {{"r", r.params.r},
                        {"epsilon", r.params.epsilon},
                        {"grid", r.params.grid},
                        {"layers", r.params.layers},
                        {"candidates", r.params.candidates},
                        {"offset", r.params.offset}}},
                      {"rows", rows},
                      {"pairs", pairs},
                      {"all_hold", r.all_hold},
                      {"warnings", r.warnings}};
  if (r.limit_value) j["limit_value"] = *r.limit_value;
  return j;
}

}  // namespace currentlab
