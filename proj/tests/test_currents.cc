#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "doctest.h"

#include "currentlab/chain_io.h"
#include "currentlab/current.h"
#include "currentlab/meshes.h"
#include "currentlab/refinement.h"
#include "currentlab/slicing.h"
#include "support.h"

using namespace currentlab;
using testsupport::Rng;

namespace {

ComplexPtr Triangle(double ax, double ay, double bx, double by, double cx, double cy) {
  return testsupport::MakeComplex(2, {ax, ay, bx, by, cx, cy}, {{0, 1, 2}});
}

ComplexPtr UnitEdge() { return testsupport::MakeComplex(1, {0, 1}, {{0, 1}}); }

// Random test chains in dimensions 1..3.
SimplicialCurrent RandomInstance(Rng& rng, int trial) {
  if (trial % 3 == 0) {
    Mesh cube = testsupport::JitteredCube(2, 0.2, rng);
    return testsupport::RandomChain(cube.complex, 1 + (trial / 3) % 3, 0.5, 3, rng);
  }
  Mesh sq = testsupport::JitteredSquare(3, 0.3, rng);
  return testsupport::RandomChain(sq.complex, 1 + trial % 2, 0.6, 3, rng);
}

using Form = std::map<std::vector<std::vector<double>>, int64_t>;

Form Sum(Form a, const Form& b) {
  for (const auto& [key, c] : b) {
    if ((a[key] += c) == 0) a.erase(key);
  }
  return a;
}

double Heron(const GeometricComplex& cx, int i) {
  const Simplex& s = cx.simplex(2, i);
  return testsupport::TriangleArea(cx.point(s[0]), cx.point(s[1]), cx.point(s[2]), cx.metric().dims());
}

}  // namespace

TEST_CASE("boundary examples") {
  ComplexPtr e = UnitEdge();
  SimplicialCurrent edge(e, 1, {{0, 1}});
  SimplicialCurrent b = Boundary(edge);
  CHECK(b.coeff(1) == 1);
  CHECK(b.coeff(0) == -1);

  ComplexPtr tri = Triangle(0, 0, 1, 0, 0, 1);
  SimplicialCurrent loop(tri, 1);
  loop.AddSimplex({0, 1}, 1);
  loop.AddSimplex({1, 2}, 1);
  loop.AddSimplex({2, 0}, 1);
  CHECK(Boundary(loop).is_zero());

  SimplicialCurrent face(tri, 2, {{0, 1}});
  SimplicialCurrent db = Boundary(face);
  CHECK(db.coeff(tri->Find({1, 2})) == 1);
  CHECK(db.coeff(tri->Find({0, 2})) == -1);
  CHECK(db.coeff(tri->Find({0, 1})) == 1);
  CHECK(db.coeffs().size() == 3);
  CHECK(Boundary(SimplicialCurrent(e, 0, {{0, 4}})).is_zero());
}

TEST_CASE("orientation follows the permutation sign") {
  ComplexPtr tri = Triangle(0, 0, 1, 0, 0, 1);
  SimplicialCurrent t(tri, 2);
  t.AddSimplex({1, 0, 2}, 1);
  CHECK(t.coeff(0) == -1);
  t.AddSimplex({2, 0, 1}, 1);
  CHECK(t.is_zero());
  t.AddSimplex({0, 0, 1}, 5);
  CHECK(t.is_zero());
}

TEST_CASE("mass examples") {
  CHECK(Mass(SimplicialCurrent(UnitEdge(), 1, {{0, 3}})) == doctest::Approx(3.0));
  CHECK(Mass(SimplicialCurrent(Triangle(0, 0, 1, 0, 0, 1), 2, {{0, 1}})) == doctest::Approx(0.5).epsilon(1e-12));
  ComplexPtr eq = Triangle(0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2);
  CHECK(Mass(SimplicialCurrent(eq, 2, {{0, -2}})) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(Mass(SimplicialCurrent(eq, 0, {{0, -2}, {2, 1}})) == 3);
}

TEST_CASE("total mass examples") {
  CHECK(TotalMass(SimplicialCurrent(UnitEdge(), 1)) == 0);
  CHECK(TotalMass(SimplicialCurrent(UnitEdge(), 1, {{0, 1}})) == doctest::Approx(3.0));
  ComplexPtr eq = Triangle(0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2);
  SimplicialCurrent loop(eq, 1);
  loop.AddSimplex({0, 1}, 1);
  loop.AddSimplex({1, 2}, 1);
  loop.AddSimplex({2, 0}, 1);
  CHECK(TotalMass(loop) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("simplex volumes match coordinate formulas") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Mesh sq = testsupport::JitteredSquare(3, 0.4, rng);
    for (int i = 0; i < sq.complex->num_simplices(2); ++i)
      CHECK(sq.complex->volume(2, i) == doctest::Approx(Heron(*sq.complex, i)).epsilon(1e-10));
    Mesh cube = testsupport::JitteredCube(1, 0.3, rng);
    const GeometricComplex& cx = *cube.complex;
    for (int i = 0; i < cx.num_simplices(3); ++i) {
      const Simplex& s = cx.simplex(3, i);
      double v = testsupport::TetraVolume(cx.point(s[0]), cx.point(s[1]), cx.point(s[2]), cx.point(s[3]));
      CHECK(cx.volume(3, i) == doctest::Approx(v).epsilon(1e-10));
    }
    for (int i = 0; i < cx.num_simplices(2); ++i)
      CHECK(cx.volume(2, i) == doctest::Approx(Heron(cx, i)).epsilon(1e-10));
  }
  // Matrix metric: an equilateral triangle from distances alone.
  auto space = std::make_shared<const FiniteMetricSpace>(
      std::vector<std::vector<double>>{{0, 2, 2}, {2, 0, 2}, {2, 2, 0}});
  ComplexPtr m = GeometricComplex::Create(Metric::Matrix(space), std::vector<double>{0, 1, 2}, {{0, 1, 2}});
  CHECK(m->volume(2, 0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(m->volume(0, 1) == 1);
  // A metric with no Euclidean tetrahedron: the apex would have to sit at
  // distance 1 from the corners of a triangle with circumradius 2 / sqrt(3).
  auto bad = std::make_shared<const FiniteMetricSpace>(std::vector<std::vector<double>>{
      {0, 1, 1, 1}, {1, 0, 2, 2}, {1, 2, 0, 2}, {1, 2, 2, 0}});
  CHECK_THROWS_AS(GeometricComplex::Create(Metric::Matrix(bad), std::vector<double>{0, 1, 2, 3},
                                                  {{0, 1, 2, 3}}),
                  ArgumentError);
}

TEST_CASE("complex closure and validation") {
  ComplexPtr tet = testsupport::MakeComplex(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1}, {{0, 1, 2, 3}});
  CHECK(tet->num_simplices(0) == 4);
  CHECK(tet->num_simplices(1) == 6);
  CHECK(tet->num_simplices(2) == 4);
  CHECK(tet->num_simplices(3) == 1);
  for (int k = 1; k <= 3; ++k)
    for (int i = 0; i < tet->num_simplices(k); ++i)
      for (int f : tet->faces(k, i)) CHECK(f >= 0);
  CHECK_THROWS_AS(testsupport::MakeComplex(2, {0, 0, 1, 0}, {{0, 5}}), ArgumentError);
  CHECK_THROWS_AS(testsupport::MakeComplex(2, {0, 0, 1, 0}, {{0, 0}}), ArgumentError);
}

TEST_CASE("boundary of boundary vanishes on random chains") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    SimplicialCurrent t = RandomInstance(rng, trial);
    CHECK(Boundary(Boundary(t)).is_zero());
  }
}

TEST_CASE("mass is subadditive and additive on disjoint supports") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    Mesh sq = testsupport::JitteredSquare(3, 0.3, rng);
    int dim = 1 + trial % 2;
    SimplicialCurrent a = testsupport::RandomChain(sq.complex, dim, 0.5, 2, rng);
    SimplicialCurrent b = testsupport::RandomChain(sq.complex, dim, 0.5, 2, rng);
    CHECK(Mass(a + b) <= Mass(a) + Mass(b) + 1e-12);
    SimplicialCurrent disjoint(sq.complex, dim);
    for (const auto& [i, c] : b.coeffs())
      if (a.coeff(i) == 0) disjoint.Add(i, c);
    CHECK(Mass(a + disjoint) == doctest::Approx(Mass(a) + Mass(disjoint)).epsilon(1e-12));
  }
}

TEST_CASE("push-forward examples and naturality") {
  ComplexPtr tri = Triangle(0, 0, 1, 0, 0, 1);
  SimplicialCurrent face(tri, 2, {{0, 1}});
  CHECK(PushForward(face, {0, 1, 2}, tri) == face);
  SimplicialCurrent edge(tri, 1);
  edge.AddSimplex({0, 1}, 1);
  CHECK(PushForward(edge, {0, 0, 2}, tri).is_zero());

  // Isometric relabeling of a triangle: coordinates permuted with the ids.
  std::vector<int> perm = {2, 0, 1};
  std::vector<double> coords(6);
  for (int v = 0; v < 3; ++v) {
    coords[2 * perm[v]] = tri->point(v)[0];
    coords[2 * perm[v] + 1] = tri->point(v)[1];
  }
  ComplexPtr relabeled = testsupport::MakeComplex(2, coords, {{0, 1, 2}});
  SimplicialCurrent image = PushForward(face, perm, relabeled);
  CHECK(std::abs(Mass(image) - Mass(face)) < 1e-12);
  CHECK(GeometricForm(image) == GeometricForm(face));

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Mesh sq = testsupport::JitteredSquare(3, 0.3, rng);
    const int n = sq.complex->num_vertices();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<double> moved(2 * n);
    for (int v = 0; v < n; ++v) {
      moved[2 * p[v]] = sq.complex->point(v)[0];
      moved[2 * p[v] + 1] = sq.complex->point(v)[1];
    }
    std::vector<Simplex> top;
    for (int i = 0; i < sq.complex->num_simplices(2); ++i) {
      const Simplex& s = sq.complex->simplex(2, i);
      top.push_back({p[s[0]], p[s[1]], p[s[2]]});
    }
    ComplexPtr target = testsupport::MakeComplex(2, moved, top);
    SimplicialCurrent t = testsupport::RandomChain(sq.complex, 1 + trial % 2, 0.5, 3, rng);
    CHECK(Boundary(PushForward(t, p, target)) == PushForward(Boundary(t), p, target));
    CHECK(Mass(PushForward(t, p, target)) == doctest::Approx(Mass(t)).epsilon(1e-12));
  }
}

TEST_CASE("restriction examples") {
  ComplexPtr tri = Triangle(0, 0, 1, 0, 0, 1);
  SimplicialCurrent face(tri, 2, {{0, 1}});
  CHECK(RestrictBarycenter(face, [](std::span<const double>) { return true; }) == face);
  CHECK(RestrictBarycenter(face, [](std::span<const double>) { return false; }).is_zero());

  std::vector<double> xs;
  std::vector<Simplex> edges;
  for (int i = 0; i <= 10; ++i) xs.push_back(i / 10.0);
  for (int i = 0; i < 10; ++i) edges.push_back({i, i + 1});
  ComplexPtr seg = testsupport::MakeComplex(1, xs, edges);
  SimplicialCurrent chain = SimplicialCurrent::AllSimplices(seg, 1);
  SimplicialCurrent left = RestrictSubdivided(chain, PLFunction::Coordinate(seg, 0), 0.35);
  CHECK(Mass(left) == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("restriction to a set and its complement gives back T") {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    Mesh sq = testsupport::JitteredSquare(3, 0.3, rng);
    SimplicialCurrent t = testsupport::RandomChain(sq.complex, 1 + trial % 2, 0.6, 3, rng);
    PLFunction f = testsupport::RandomPL(sq.complex, rng);
    double s = testsupport::Uniform(rng, f.MinValue(), f.MaxValue());
    Refinement ref;
    SimplicialCurrent below = RestrictSubdivided(t, f, s, true, &ref);
    SimplicialCurrent above = RestrictSubdivided(t, f, s, false);
    CHECK(Sum(GeometricForm(below), GeometricForm(above)) == GeometricForm(ref.Transfer(t)));
    CHECK(Mass(below) + Mass(above) == doctest::Approx(Mass(t)).epsilon(1e-10));
  }
}

TEST_CASE("evaluation examples") {
  ComplexPtr e = UnitEdge();
  SimplicialCurrent edge(e, 1, {{0, 1}});
  CHECK(Evaluate(edge, PLFunction::Constant(e, 1), {PLFunction::Coordinate(e, 0)}) ==
        doctest::Approx(1.0));
  CHECK(Evaluate(edge, PLFunction::Coordinate(e, 0), {PLFunction::Constant(e, 3)}) == 0);

  Mesh sq = UnitSquare(2);
  PLFunction x = PLFunction::Coordinate(sq.complex, 0), y = PLFunction::Coordinate(sq.complex, 1);
  PLFunction one = PLFunction::Constant(sq.complex, 1);
  double xy = Evaluate(sq.current, one, {x, y});
  CHECK(xy == doctest::Approx(1.0));
  CHECK(Evaluate(sq.current, one, {y, x}) == doctest::Approx(-xy));
  CHECK_THROWS_AS(Evaluate(sq.current, one, {x}), ArgumentError);
}

TEST_CASE("evaluation is multilinear, antisymmetric and bounded by mass") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Mesh sq = testsupport::JitteredSquare(3, 0.3, rng);
    ComplexPtr k = sq.complex;
    SimplicialCurrent t = testsupport::RandomChain(k, 2, 0.7, 3, rng);
    PLFunction f = testsupport::RandomPL(k, rng), g = testsupport::RandomPL(k, rng);
    PLFunction p1 = testsupport::RandomPL(k, rng), p2 = testsupport::RandomPL(k, rng);
    PLFunction q1 = testsupport::RandomPL(k, rng);
    double a = testsupport::Uniform(rng, -2, 2), b = testsupport::Uniform(rng, -2, 2);
    auto combo = [&](const PLFunction& u, const PLFunction& v) {
      std::vector<double> w(k->num_vertices());
      for (int i = 0; i < k->num_vertices(); ++i) w[i] = a * u.value(i) + b * v.value(i);
      return PLFunction(k, w);
    };
    double base = Evaluate(t, f, {p1, p2});
    double scale = 1 + std::abs(base);
    CHECK(Evaluate(t, combo(f, g), {p1, p2}) ==
          doctest::Approx(a * base + b * Evaluate(t, g, {p1, p2})).epsilon(1e-10).scale(scale));
    CHECK(Evaluate(t, f, {combo(p1, q1), p2}) ==
          doctest::Approx(a * base + b * Evaluate(t, f, {q1, p2})).epsilon(1e-10).scale(scale));
    CHECK(Evaluate(t, f, {p2, p1}) == doctest::Approx(-base).epsilon(1e-12).scale(scale));
    double sup = 0;
    for (double v : f.values()) sup = std::max(sup, std::abs(v));
    CHECK(std::abs(base) <= sup * p1.lip() * p2.lip() * Mass(t) * (1 + 1e-12));
  }
}

TEST_CASE("chain json round trip") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    Mesh sq = testsupport::JitteredSquare(2, 0.3, rng);
    SimplicialCurrent t = testsupport::RandomChain(sq.complex, 1 + trial % 2, 0.6, 3, rng);
    nlohmann::json doc = ChainToJson(t);
    std::istringstream text(doc.dump());
    SimplicialCurrent back = ChainFromJson(ParseJsonText(text));
    CHECK(GeometricForm(back) == GeometricForm(t));
    CHECK(Mass(back) == Mass(t));
    CHECK(ChainToJson(back).dump() == doc.dump());
  }
  Mesh sphere = Icosphere(2);
  SimplicialCurrent back = ChainFromJson(ChainToJson(sphere.current));
  CHECK(back.complex()->metric().kind() == MetricKind::kSphere);
  CHECK(Mass(back) == doctest::Approx(Mass(sphere.current)).epsilon(1e-14));
}

TEST_CASE("chain json errors carry positions") {
  std::istringstream bad("{\"complex\": {\"vertices\": [[0, 0],\n [1, 0]]\n ,,}");
  try {
    ParseJsonText(bad);
    FAIL("bad json accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  nlohmann::json missing = {{"complex", {{"vertices", {{0, 0}, {1, 0}}}}}};
  CHECK_THROWS_AS(ChainFromJson(missing), ParseError);
  nlohmann::json out_of_range = {
      {"complex", {{"vertices", {{0, 0}, {1, 0}}}, {"simplices", {{"1", {{0, 1}}}}}}},
      {"current", {{"dim", 1}, {"coeffs", {{3, 1}}}}}};
  CHECK_THROWS_AS(ChainFromJson(out_of_range), ParseError);
}

TEST_CASE("off import") {
  std::istringstream off("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
  OffMesh m = ReadOff(off);
  CHECK(m.complex->num_simplices(2) == 2);
  CHECK(Mass(m.surface) == doctest::Approx(1.0));
  CHECK(Boundary(m.surface).coeffs().size() == 4);
  std::istringstream truncated("OFF\n4 1 0\n0 0 0\n");
  CHECK_THROWS_AS(ReadOff(truncated), ParseError);
}
