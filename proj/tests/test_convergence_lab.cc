#include <cmath>
#include <numbers>

#include "doctest.h"

#include "currentlab/convergence_lab.h"
#include "currentlab/slicing.h"
#include "support.h"

using namespace currentlab;
using testsupport::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

FiniteMetricSpace Segment(double y) {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i <= 4; ++i) pts.push_back({i / 4.0, y});
  return FiniteMetricSpace::FromPoints(pts);
}

}  // namespace

TEST_CASE("family construction") {
  SequenceFamily torus = BuildFamily("thin_torus", {1.0, 0.5, 0.25});
  REQUIRE(torus.members.size() == 3);
  double previous = 1e300;
  for (const FamilyMember& m : torus.members) {
    double expect = 4 * kPi * kPi * 2 * m.parameter;
    CHECK(Mass(m.mesh.current) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(Mass(m.mesh.current) < previous);
    CHECK(Boundary(m.mesh.current).is_zero());
    previous = Mass(m.mesh.current);
  }

  // Once the width is below the mesh spacing each spike has area close to
  // proportional to its width, so the total behaves like 1 / j.
  SequenceFamily splines = BuildFamily("sphere_splines", {4, 8, 16, 32}, 7);
  for (size_t i = 0; i < splines.members.size(); ++i) {
    const FamilyMember& m = splines.members[i];
    CHECK(static_cast<int>(m.tips.size()) == static_cast<int>(m.parameter));
    CHECK(Boundary(m.mesh.current).is_zero());
    if (i > 0) CHECK(m.spike_area == doctest::Approx(splines.members[i - 1].spike_area / 2).epsilon(0.1));
  }
  // Seeded: the same seed gives the same meshes.
  SequenceFamily again = BuildFamily("sphere_splines", {4, 8, 16, 32}, 7);
  for (size_t i = 0; i < splines.members.size(); ++i) {
    CHECK(Mass(again.members[i].mesh.current) == Mass(splines.members[i].mesh.current));
    CHECK(again.members[i].tips == splines.members[i].tips);
  }

  SequenceFamily disks = BuildFamily("refined_disk", {0.2, 0.1, 0.05});
  previous = 1e300;
  for (const FamilyMember& m : disks.members) {
    double err = std::abs(Mass(m.mesh.current) - kPi);
    CHECK(err < previous);
    CHECK(Mass(m.mesh.current) + m.inscribed_deficit == doctest::Approx(kPi).epsilon(1e-9));
    previous = err;
  }
  CHECK(previous < 0.01 * kPi);
  CHECK(disks.members[2].level == 2);

  CHECK_THROWS_AS(BuildFamily("klein_bottle", {1}), ArgumentError);
  CHECK_THROWS_AS(BuildFamily("thin_torus", {}), ArgumentError);
  CHECK_THROWS_AS(BuildFamily("refined_disk", {0.2, 0.07}), ArgumentError);
}

TEST_CASE("common embeddings") {
  // Identity correspondence with the default gap.
  Rng rng(80);
  FiniteMetricSpace a = testsupport::RandomSpace(6, rng);
  std::vector<std::pair<int, int>> id;
  for (int i = 0; i < 6; ++i) id.push_back({i, i});
  CommonEmbedding same = CommonEmbed(a, a, id);
  CHECK(same.distortion == 0);
  CHECK(same.delta > 0);
  CHECK(same.delta < 1e-6);
  for (int i = 0; i < 6; ++i) {
    CHECK(same.ambient(same.injections[0][i], same.injections[1][i]) == doctest::Approx(same.delta));
    for (int j = 0; j < 6; ++j) {
      CHECK(same.ambient(same.injections[0][i], same.injections[0][j]) == a(i, j));
      CHECK(same.ambient(same.injections[1][i], same.injections[1][j]) == a(i, j));
    }
  }

  // Parallel segments at offset 0.1 glued along matching x.
  FiniteMetricSpace lo = Segment(0), hi = Segment(0.1);
  CommonEmbedding par = CommonEmbed(lo, hi, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}}, 0.1);
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4; ++j) {
      double d = par.ambient(par.injections[0][i], par.injections[1][j]);
      CHECK(d >= 0.1);
      CHECK(d == doctest::Approx(std::abs(i - j) / 4.0 + 0.1));
    }
  }

  // A gap below half the distortion breaks the triangle inequality.
  FiniteMetricSpace one({{0, 1}, {1, 0}}), three({{0, 3}, {3, 0}});
  CHECK_THROWS_AS(CommonEmbed(one, three, {{0, 0}, {1, 1}}, 0.1), ArgumentError);
  CHECK_NOTHROW(CommonEmbed(one, three, {{0, 0}, {1, 1}}));
  CHECK_THROWS_AS(CommonEmbed(one, three, {}), ArgumentError);
  CHECK_THROWS_AS(CommonEmbed(one, three, {{0, 2}}), ArgumentError);
}

TEST_CASE("nested disks embed with small distortion") {
  SequenceFamily disks = BuildFamily("refined_disk", {0.1, 0.05});
  const GeometricComplex& c1 = *disks.members[0].mesh.complex;
  const GeometricComplex& c2 = *disks.members[1].mesh.complex;
  FiniteMetricSpace s1 = VertexMetricSpace(c1), s2 = VertexMetricSpace(c2);
  auto corr = NearestVertexCorrespondence(c1, c2);
  CommonEmbedding e = CommonEmbed(s1, s2, corr);
  // |d(x, x') - d(y, y')| <= d(x, y) + d(x', y') for matched pairs.
  std::vector<int> u1, u2;
  for (int v = 0; v < c1.num_vertices(); ++v)
    if (c1.used_vertices()[v]) u1.push_back(v);
  for (int v = 0; v < c2.num_vertices(); ++v)
    if (c2.used_vertices()[v]) u2.push_back(v);
  double reach = 0;
  for (const auto& [x, y] : corr)
    reach = std::max(reach, std::hypot(c1.point(u1[x])[0] - c2.point(u2[y])[0], c1.point(u1[x])[1] - c2.point(u2[y])[1]));
  CHECK(e.distortion <= 2 * reach + 1e-12);
  CHECK(e.distortion < 0.15);
  CHECK(e.delta == doctest::Approx(e.distortion / 2));
  CHECK(e.ambient.size() == s1.size() + s2.size());
}

TEST_CASE("semicontinuity") {
  SemicontinuityReport splines = Semicontinuity(BuildFamily("sphere_splines", {1, 2, 4, 8}, 3));
  CHECK(splines.every_step_holds);
  CHECK(splines.last_holds);
  for (const MemberStats& row : splines.rows) {
    CHECK(row.mass >= splines.limit_mass);
    CHECK(row.diameter >= splines.limit_diameter - 1e-12);
  }
  SemicontinuityReport disks = Semicontinuity(BuildFamily("refined_disk", {0.2, 0.1, 0.05}));
  CHECK(disks.every_step_holds);
  CHECK(disks.limit_diameter == 2.0);
  CHECK(disks.rows.back().diameter == doctest::Approx(2.0));
  // A constant family sits on its limit.
  SemicontinuityReport sphere = Semicontinuity(BuildFamily("refined_sphere", {6, 6}));
  CHECK(sphere.rows[0].mass == sphere.rows[1].mass);
  CHECK(sphere.rows[0].mass + sphere.rows[0].inscribed_deficit == doctest::Approx(4 * kPi).epsilon(1e-9));
  CHECK(sphere.every_step_holds);
}

TEST_CASE("annulus decay") {
  Mesh disk = Disk(1.0, 0.02);
  Rng rng(81);
  for (int probe = 0; probe < 5; ++probe) {
    int p = testsupport::UniformInt(rng, 0, 30);
    double r = testsupport::Uniform(rng, 0.2, 0.6);
    AnnulusDecayReport rep = AnnulusDecay(disk.current, PLFunction::DistanceFromVertex(disk.complex, p), r, 0.1, 5);
    CHECK(rep.monotone);
    CHECK(rep.masses.back() < 0.1 * rep.masses.front());
    CHECK(rep.last_ratio == doctest::Approx(0.5).epsilon(0.2));
  }
  CHECK_THROWS_AS(AnnulusDecay(disk.current, PLFunction::DistanceFromVertex(disk.complex, 0), 0.5, 0.1, 1),
                  ArgumentError);
}

TEST_CASE("slice shift bound") {
  Rng rng(82);
  Mesh disk = Disk(1.0, 0.05);
  PLFunction rho = PLFunction::DistanceFromVertex(disk.complex, 0);
  for (int trial = 0; trial < 20; ++trial) {
    double delta = testsupport::Uniform(rng, 0.005, 0.05);
    std::vector<double> values = rho.values();
    for (double& v : values) v += testsupport::Uniform(rng, -0.9 * delta, 0.9 * delta);
    PLFunction f(disk.complex, values);
    double s = testsupport::Uniform(rng, 0.2, 0.8);
    SliceShiftReport rep = SliceShift(disk.current, rho, f, s, delta);
    CHECK(rep.holds);
    CHECK(rep.flat <= rep.annulus + rep.boundary_annulus + rep.tolerance);
  }
  std::vector<double> far = rho.values();
  far[0] += 1.0;
  CHECK_THROWS_AS(SliceShift(disk.current, rho, PLFunction(disk.complex, far), 0.5, 0.1), ArgumentError);
}

TEST_CASE("continuity sweeps on nested disks") {
  SequenceFamily disks = BuildFamily("refined_disk", {0.2, 0.1});
  SweepParams params;
  params.r = 0.5;
  params.grid = 8;
  params.candidates = 2;
  ContinuityReport fill = ContinuitySweep(disks, "fillvol", params);
  CHECK(fill.all_hold);
  for (const SweepPair& pair : fill.pairs) {
    CHECK(pair.checked);
    CHECK(pair.difference <= pair.bound + pair.tolerance);
  }
  CHECK(std::abs(fill.rows.back().value - kPi * 0.25) <= 0.05 * kPi * 0.25);
  for (const char* q : {"sf", "ifv", "sif"}) {
    ContinuityReport rep = ContinuitySweep(disks, q, params);
    CHECK_MESSAGE(rep.all_hold, q);
  }
  CHECK_THROWS_AS(ContinuitySweep(disks, "volume", params), ArgumentError);
}

TEST_CASE("disappearing points on spiked spheres") {
  SequenceFamily splines = BuildFamily("sphere_splines", {1, 4, 16}, 5);
  DisappearingReport rep = DisappearingPoints(splines, 0.5, 2.0, 8, 2);
  CHECK(rep.tips_collapse);
  CHECK(rep.bases_hold);
  for (const TrackedPointRow& row : rep.rows)
    for (double m : row.base_ball_masses) CHECK(m >= 2.0 * 0.25);
}
