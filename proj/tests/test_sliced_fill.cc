#include <cmath>
#include <numbers>

#include "doctest.h"

#include "currentlab/fillvol.h"
#include "currentlab/meshes.h"
#include "currentlab/sliced_fill.h"
#include "currentlab/slicing.h"
#include "support.h"

using namespace currentlab;
using testsupport::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

double Sum(const std::vector<double>& w) {
  double s = 0;
  for (double x : w) s += x;
  return s;
}

// Vertex nearest to a point of the plane.
int NearestVertex(const GeometricComplex& k, double x, double y) {
  int best = 0;
  double bd = 1e300;
  for (int v = 0; v < k.num_vertices(); ++v) {
    double d = std::hypot(k.point(v)[0] - x, k.point(v)[1] - y);
    if (d < bd) {
      bd = d;
      best = v;
    }
  }
  return best;
}

// Two points of the circle |x| = r at distance t from a point q of that circle
// are 2 r sin(theta) apart, with t = 2 r sin(theta / 2).
double ChordPair(double r, double t) {
  if (t <= 0 || t >= 2 * r) return 0;
  double theta = 2 * std::asin(t / (2 * r));
  return 2 * r * std::sin(theta);
}

}  // namespace

TEST_CASE("quadrature weights") {
  std::vector<double> w = TrapezoidWeights(5, 0.25);
  std::vector<double> expect = {0.125, 0.25, 0.25, 0.25, 0.125};
  for (int i = 0; i < 5; ++i) CHECK(w[i] == doctest::Approx(expect[i]));
  std::vector<double> half = HalfGridWeights(5, 0.25);
  std::vector<double> expect_half = {0.25, 0, 0.5, 0, 0.25};
  for (int i = 0; i < 5; ++i) CHECK(half[i] == doctest::Approx(expect_half[i]));
  std::vector<double> odd = HalfGridWeights(4, 1.0);
  std::vector<double> expect_odd = {1, 0, 1.5, 0.5};
  for (int i = 0; i < 4; ++i) CHECK(odd[i] == doctest::Approx(expect_odd[i]));
  // Both rules integrate affine functions exactly.
  for (int n = 2; n <= 12; ++n) {
    double h = 1.0 / (n - 1);
    for (const auto& rule : {TrapezoidWeights(n, h), HalfGridWeights(n, h)}) {
      CHECK(Sum(rule) == doctest::Approx(1.0));
      double first = 0;
      for (int i = 0; i < n; ++i) first += rule[i] * i * h;
      CHECK(first == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("sliced filling of a Euclidean disk") {
  Mesh disk = Disk(1.0, 0.02);
  for (double r : {0.5, 0.9}) {
    SlicedFillReport rep = SlicedFill(disk.current, 0, r, {PLFunction::Coordinate(disk.complex, 0)}, 64);
    CHECK(std::abs(rep.integral - kPi * r * r) <= 0.05 * kPi * r * r);
    CHECK(rep.lipschitz.size() == 1);
    CHECK(rep.lipschitz[0] == doctest::Approx(1.0));
    CHECK(rep.box[0].first == doctest::Approx(-r).epsilon(1e-6));
    CHECK(rep.box[0].second == doctest::Approx(r).epsilon(1e-6));
    CHECK(rep.mass_lower_bound <= rep.ball_mass + rep.tolerance);
    CHECK(rep.bound_holds);
    CHECK(rep.failed_nodes == 0);
    CHECK(rep.richardson_error < 0.05);
  }
}

TEST_CASE("sliced filling with constant functions is zero") {
  Mesh disk = Disk(1.0, 0.1);
  SlicedFillReport rep = SlicedFill(disk.current, 0, 0.5, {PLFunction::Constant(disk.complex, 0.3)}, 8);
  CHECK(rep.integral == 0);
  CHECK(rep.mass_lower_bound == 0);
  CHECK_THROWS_AS(SlicedFill(disk.current, 0, 0.5, {PLFunction::Coordinate(disk.complex, 0)}, 1),
                  ArgumentError);
  // k must stay below the dimension.
  CHECK_THROWS_AS(SlicedFill(disk.current, 0, 0.5,
                             {PLFunction::Coordinate(disk.complex, 0), PLFunction::Coordinate(disk.complex, 1)}),
                  ArgumentError);
}

TEST_CASE("h on a planar disk matches the chord formula") {
  Mesh disk = Disk(1.0, 0.02);
  const double r = 0.6;
  BallSetup ball = PrepareBall(disk.current, 0, r);
  const double q[2] = {r, 0};
  int w = SnapWitness(ball, q);
  const double* wp = ball.refinement.refined()->point(w);
  CHECK(std::hypot(wp[0], wp[1]) == doctest::Approx(r).epsilon(1e-9));
  for (double t : {0.1, 0.3, 0.6, 0.9, 1.1}) {
    double h = HFunction(ball, std::vector<int>{w}, {t});
    CHECK(h == doctest::Approx(ChordPair(r, t)).epsilon(0.02));
  }
  // Levels beyond the circle's reach give empty P.
  CHECK(HFunction(ball, std::vector<int>{w}, {1.3}) == 0);
  CHECK(HFunction(ball, std::vector<int>{w}, {-0.1}) == 0);
}

TEST_CASE("h in a Euclidean 3-ball at the tetrahedral configuration") {
  Mesh cube = KuhnBox({-0.75, -0.75, -0.75}, {0.75, 0.75, 0.75}, {12, 12, 12});
  int p = KuhnVertex({12, 12, 12}, {false, false, false}, 6, 6, 6);
  const double r = 0.5;
  BallSetup ball = PrepareBall(cube.current, p, r);
  const double q1[3] = {r, 0, 0}, q2[3] = {0, r, 0};
  std::vector<int> ws = {SnapWitness(ball, q1), SnapWitness(ball, q2)};
  // Points at distance r from p, q1 and q2 are (r/2, r/2, +-r/sqrt 2).
  double h = HFunction(ball, ws, {r, r});
  CHECK(h == doctest::Approx(std::sqrt(2.0) * r).epsilon(0.05));
  CHECK(HFunction(ball, ws, {2.2 * r, r}) == 0);
}

TEST_CASE("h on the round sphere") {
  Mesh sphere = Icosphere(12);
  BallSetup ball = PrepareBall(sphere.current, 0, kPi / 2);
  const double q[3] = {1, 0, 0};
  int w = SnapWitness(ball, q);
  for (double t : {0.4, 0.8, 1.2, 1.6, 2.0, 2.4, 2.8}) {
    double expect = std::min(2 * t, 2 * (kPi - t));
    CHECK(std::abs(HFunction(ball, std::vector<int>{w}, {t}) - expect) <= 0.05 * expect);
  }
  SlicedFillReport rep = SlicedFillWitnesses(ball, {w}, 64);
  CHECK(std::abs(rep.integral - kPi * kPi / 2) <= 0.05 * kPi * kPi / 2);
  CHECK(rep.mass_lower_bound <= rep.ball_mass + rep.tolerance);
}

TEST_CASE("slice boundary fill dominates h") {
  Rng rng(60);
  Mesh disk = Disk(1.0, 0.05);
  for (int trial = 0; trial < 30; ++trial) {
    double r = testsupport::Uniform(rng, 0.3, 0.9);
    BallSetup ball = PrepareBall(disk.current, 0, r);
    double angle = testsupport::Uniform(rng, 0, 2 * kPi);
    const double q[2] = {r * std::cos(angle), r * std::sin(angle)};
    int w = SnapWitness(ball, q);
    double t = testsupport::Uniform(rng, 0, 2 * r);
    PLFunction f = PLFunction::DistanceFromVertex(ball.refinement.refined(), w);
    SliceResult s = Slice(ball.ball, f, t);
    double fill = s.current.is_zero() ? 0.0 : FillingVolume0d(Boundary(s.current)).value;
    CHECK(fill + 1e-12 >= HFunction(ball, std::vector<int>{w}, {t}));
    CHECK(SliceBoundaryFill(s.current) == doctest::Approx(fill));
  }
}

TEST_CASE("mass lower bound on random instances") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    Mesh sq = testsupport::JitteredSquare(12, 0.3, rng);
    int p = NearestVertex(*sq.complex, testsupport::Uniform(rng, 0.3, 0.7), testsupport::Uniform(rng, 0.3, 0.7));
    double r = testsupport::Uniform(rng, 0.1, 0.5);
    PLFunction f = testsupport::RandomPL(sq.complex, rng, 0.05);
    SlicedFillReport rep = SlicedFill(sq.current, p, r, {f}, 16);
    CHECK(rep.integral >= 0);
    CHECK(rep.mass_lower_bound <= rep.ball_mass + rep.tolerance);
    CHECK(rep.bound_holds);
    for (double v : rep.values) CHECK(v >= 0);
  }
}

TEST_CASE("sliced filling is deterministic across thread counts") {
  Mesh disk = Disk(1.0, 0.05);
  PLFunction f = PLFunction::Coordinate(disk.complex, 1);
  SlicedFillReport one = SlicedFill(disk.current, 0, 0.7, {f}, 24, 1);
  SlicedFillReport three = SlicedFill(disk.current, 0, 0.7, {f}, 24, 3);
  CHECK(one.values == three.values);
  CHECK(one.integral == three.integral);
}

TEST_CASE("SF_k search") {
  Mesh disk = Disk(1.0, 0.04);
  const double r = 0.6;
  double previous = 0;
  for (int candidates : {1, 3, 6}) {
    SfkReport rep = SfK(disk.current, 0, r, 1, candidates, 32);
    CHECK(rep.value + 1e-12 >= previous);
    CHECK(rep.evaluations <= candidates);
    previous = rep.value;
  }
  // Every witness is equivalent by symmetry and h is the chord pair, whose
  // integral over [0, 2r] is 8 r^2 / 3.
  CHECK(std::abs(previous - 8 * r * r / 3) <= 0.05 * 8 * r * r / 3);
  // k = 0 is the filling volume of the sphere.
  BallSetup ball = PrepareBall(disk.current, 0, r);
  SfkReport zero = SfK(disk.current, 0, r, 0, 1);
  CHECK(zero.value == doctest::Approx(FillingVolume(Boundary(ball.ball), ball.refinement.refined()).value));
  CHECK(zero.value == doctest::Approx(Mass(ball.ball)).epsilon(1e-6));
}

TEST_CASE("SF_2 collapses on the thin torus at large radius") {
  // Normalized by r^3: close to the Euclidean value below eps / 4, far below
  // it once the ball wraps the short circle.
  const double eps = 0.4;
  auto normalized = [&](double r) {
    TorusChart chart = ThinTorusChart(eps, 1.15 * r, 4);
    return SfK(chart.mesh.current, chart.center, r, 2, 2, 6).value / (r * r * r);
  };
  double small = normalized(0.08), large = normalized(0.9);
  CHECK(small > 1.0);
  CHECK(large < 0.25 * small);
  TorusChart chart = ThinTorusChart(eps, 0.35, 4);
  CHECK_FALSE(TetraCheck(chart.mesh.current, chart.center, 0.3, 0.1, 0.5, 5, 2).passed);
}

TEST_CASE("h scales with the metric") {
  Mesh small = MeshFromSoup(DiskSoup(1.0, 0.05), Metric::Euclidean(2));
  for (double lambda : {0.5, 2.0, 3.0}) {
    Mesh big = MeshFromSoup(DiskSoup(lambda, 0.05 * lambda), Metric::Euclidean(2));
    const double r = 0.55;
    BallSetup b1 = PrepareBall(small.current, 0, r), b2 = PrepareBall(big.current, 0, lambda * r);
    const double q1[2] = {0, r}, q2[2] = {0, lambda * r};
    int w1 = SnapWitness(b1, q1), w2 = SnapWitness(b2, q2);
    for (double t : {0.2, 0.5, 0.8}) {
      double h1 = HFunction(b1, std::vector<int>{w1}, {t});
      double h2 = HFunction(b2, std::vector<int>{w2}, {lambda * t});
      CHECK(h2 == doctest::Approx(lambda * h1).epsilon(1e-8));
    }
  }
}

TEST_CASE("tetrahedral check on a disk") {
  Mesh disk = Disk(1.0, 0.04);
  const double r = 0.6;
  // h ranges over [chord(r/2), chord(3r/2)] ~ [0.968 r, 1.98 r] for beta = 1/2.
  TetraReport pass = TetraCheck(disk.current, 0, r, 0.8, 0.5, 9, 4);
  CHECK(pass.passed);
  CHECK(pass.integral_passed);
  CHECK(pass.min_h >= 0.8 * r);
  CHECK(pass.mass_bound_holds);
  CHECK(pass.ball_mass >= pass.integral_target);
  TetraReport fail = TetraCheck(disk.current, 0, r, 1.2, 0.5, 9, 4);
  CHECK_FALSE(fail.passed);
  for (const TetraReport& rep : {pass, fail}) {
    if (rep.passed) CHECK(rep.integral_passed);
    for (double h : rep.h_values)
      if (rep.passed) CHECK(h >= rep.c * rep.r);
  }
}

TEST_CASE("pointwise tetrahedral pass implies the integral pass") {
  Rng rng(62);
  Mesh disk = Disk(1.0, 0.05);
  for (int trial = 0; trial < 12; ++trial) {
    double r = testsupport::Uniform(rng, 0.3, 0.6);
    double c = testsupport::Uniform(rng, 0.2, 1.4);
    double beta = testsupport::Uniform(rng, 0.1, 0.9);
    TetraReport rep = TetraCheck(disk.current, 0, r, c, beta, 5, 2);
    if (rep.passed) {
      CHECK(rep.integral_passed);
      CHECK(rep.ball_mass >= rep.integral_target);
    }
  }
}

TEST_CASE("Euclidean tetrahedral constant") {
  CHECK(kEuclidean3TetraConstant == 0.0);
  Mesh disk = Disk(1.0, 0.1);
  CHECK_THROWS_AS(TetraCheck(disk.current, 0, 0.5, kEuclidean3TetraConstant, 0.5, 3, 1), ArgumentError);
  CHECK_THROWS_AS(TetraCheck(disk.current, 0, 0.5, 0.5, 1.0, 3, 1), ArgumentError);
  CHECK_THROWS_AS(TetraCheck(disk.current, 0, 0.5, 0.5, 0.0, 3, 1), ArgumentError);
}
