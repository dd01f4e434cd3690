#include "support.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "currentlab/refinement.h"
#include "currentlab/slicing.h"

namespace testsupport {

using namespace currentlab;

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int UniformInt(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ComplexPtr MakeComplex(int dims, std::vector<double> coords, const std::vector<Simplex>& top) {
  return GeometricComplex::Create(Metric::Euclidean(dims), std::move(coords), top);
}

namespace {

// Rebuilds a mesh with moved coordinates, keeping vertex ids and orientations.
Mesh Rebuild(const Mesh& mesh, std::vector<double> coords) {
  const GeometricComplex& cx = *mesh.complex;
  const int d = cx.dim();
  std::vector<Simplex> top;
  for (int i = 0; i < cx.num_simplices(d); ++i) top.push_back(cx.simplex(d, i));
  Mesh out;
  out.complex = GeometricComplex::Create(cx.metric(), std::move(coords), top);
  out.current = SimplicialCurrent(out.complex, d);
  for (const auto& [i, c] : mesh.current.coeffs()) out.current.AddSimplex(cx.simplex(d, i), c);
  return out;
}

std::vector<double> Jitter(const GeometricComplex& cx, double amount, Rng& rng) {
  const int dims = cx.metric().dims();
  std::vector<double> coords(cx.coords()->begin(), cx.coords()->end());
  for (int v = 0; v < cx.num_vertices(); ++v) {
    bool interior = true;
    for (int a = 0; a < dims; ++a) {
      double x = coords[v * dims + a];
      if (x < 1e-12 || x > 1 - 1e-12) interior = false;
    }
    if (!interior) continue;
    for (int a = 0; a < dims; ++a) coords[v * dims + a] += Uniform(rng, -amount, amount);
  }
  return coords;
}

}  // namespace

Mesh JitteredSquare(int n, double jitter, Rng& rng) {
  Mesh base = UnitSquare(n);
  return Rebuild(base, Jitter(*base.complex, jitter / n, rng));
}

Mesh JitteredCube(int n, double jitter, Rng& rng) {
  Mesh base = KuhnBox({0, 0, 0}, {1, 1, 1}, {n, n, n});
  return Rebuild(base, Jitter(*base.complex, jitter / n, rng));
}

SimplicialCurrent RandomChain(ComplexPtr k, int dim, double density, int max_coeff, Rng& rng) {
  SimplicialCurrent t(k, dim);
  for (int i = 0; i < k->num_simplices(dim); ++i) {
    if (Uniform(rng, 0, 1) >= density) continue;
    int c = 0;
    while (c == 0) c = UniformInt(rng, -max_coeff, max_coeff);
    t.Add(i, c);
  }
  return t;
}

PLFunction RandomPL(ComplexPtr k, Rng& rng, double noise) {
  const int dims = k->metric().dims();
  std::vector<double> grad(dims);
  for (double& g : grad) g = Uniform(rng, -1, 1);
  std::vector<double> values(k->num_vertices());
  for (int v = 0; v < k->num_vertices(); ++v) {
    double x = 0;
    for (int a = 0; a < dims; ++a) x += grad[a] * k->point(v)[a];
    values[v] = x + Uniform(rng, -noise, noise);
  }
  return PLFunction(k, values);
}

FiniteMetricSpace RandomSpace(int n, Rng& rng, bool rounded) {
  std::vector<std::vector<double>> pts(n, std::vector<double>(2));
  for (auto& p : pts) {
    for (double& x : p) {
      x = rounded ? UniformInt(rng, 0, 3) : Uniform(rng, 0, 3);
    }
  }
  if (!rounded) return FiniteMetricSpace::FromPoints(pts);
  // Manhattan distances keep ties exact.
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = std::abs(pts[i][0] - pts[j][0]) + std::abs(pts[i][1] - pts[j][1]);
  return FiniteMetricSpace(d);
}

Form SumForms(Form a, const Form& b, int64_t sign) {
  for (const auto& [key, c] : b) {
    if ((a[key] += sign * c) == 0) a.erase(key);
  }
  return a;
}

double Affine::operator()(const double* x) const {
  double v = b;
  for (size_t i = 0; i < a.size(); ++i) v += a[i] * x[i];
  return v;
}

PLFunction Affine::On(ComplexPtr k) const {
  std::vector<double> values(k->num_vertices());
  for (int v = 0; v < k->num_vertices(); ++v) values[v] = (*this)(k->point(v));
  return PLFunction(k, values);
}

Affine RandomAffine(Rng& rng, int dims) {
  Affine g;
  for (int i = 0; i < dims; ++i) g.a.push_back(Uniform(rng, -1, 1));
  g.b = Uniform(rng, -0.2, 0.2);
  return g;
}

double RandomLevel(Rng& rng, const PLFunction& f) { return Uniform(rng, f.MinValue(), f.MaxValue()); }

SimplicialCurrent RandomInstance(Rng& rng, int trial) {
  if (trial % 4 == 3) {
    Mesh cube = JitteredCube(2, 0.2, rng);
    return RandomChain(cube.complex, 2 + trial % 2, 0.5, 2, rng);
  }
  Mesh sq = JitteredSquare(3, 0.3, rng);
  return RandomChain(sq.complex, 1 + trial % 2, 0.6, 3, rng);
}

Relabeling RandomRelabeling(Rng& rng) {
  Relabeling out;
  out.source = JitteredSquare(3, 0.3, rng);
  const GeometricComplex& k = *out.source.complex;
  const int n = k.num_vertices();
  out.map.resize(n);
  std::iota(out.map.begin(), out.map.end(), 0);
  std::shuffle(out.map.begin(), out.map.end(), rng);
  std::vector<double> moved(2 * n);
  for (int v = 0; v < n; ++v) {
    moved[2 * out.map[v]] = k.point(v)[0];
    moved[2 * out.map[v] + 1] = k.point(v)[1];
  }
  std::vector<Simplex> top;
  for (int i = 0; i < k.num_simplices(2); ++i) {
    const Simplex& s = k.simplex(2, i);
    top.push_back({out.map[s[0]], out.map[s[1]], out.map[s[2]]});
  }
  out.target = MakeComplex(2, moved, top);
  return out;
}

bool BoundaryBoundaryVanishes(Rng& rng, int trial) {
  return Boundary(Boundary(RandomInstance(rng, trial))).is_zero();
}

bool SliceIsAdditive(Rng& rng, int trial) {
  SimplicialCurrent a = RandomInstance(rng, trial);
  SimplicialCurrent b = RandomChain(a.complex(), a.dim(), 0.5, 2, rng);
  PLFunction f = RandomPL(a.complex(), rng);
  double s = RandomLevel(rng, f);
  return GeometricForm(Slice(a + b, f, s).current) ==
         SumForms(GeometricForm(Slice(a, f, s).current), GeometricForm(Slice(b, f, s).current));
}

bool BoundarySliceAnticommutes(Rng& rng, int trial) {
  SimplicialCurrent t = RandomInstance(rng, trial);
  if (t.dim() < 2) t = RandomChain(t.complex(), 2, 0.6, 3, rng);
  PLFunction f = RandomPL(t.complex(), rng);
  double s = RandomLevel(rng, f);
  return GeometricForm(Boundary(Slice(t, f, s).current)) == GeometricForm(Slice(-Boundary(t), f, s).current);
}

bool SliceCommutesWithRestriction(Rng& rng, int trial) {
  SimplicialCurrent t = RandomInstance(rng, trial);
  Affine g = RandomAffine(rng, t.complex()->metric().dims());
  PLFunction gk = g.On(t.complex());
  // A = {g <= c} becomes a subcomplex after cutting along g = c.
  Refinement ref = SubdivideAtLevel(t.complex(), gk, RandomLevel(rng, gk));
  SimplicialCurrent t1 = ref.Transfer(t);
  const double level = ref.level();
  SimplicialCurrent ta = RestrictSublevel(t1, ref.function(), level);
  PLFunction f = RandomPL(ref.refined(), rng);
  double s = RandomLevel(rng, f);
  auto in_a = [&](std::span<const double> x) { return g(x.data()) <= level + 1e-9; };
  return GeometricForm(Slice(ta, f, s).current) ==
         GeometricForm(RestrictBarycenter(Slice(t1, f, s).current, in_a));
}

bool PushForwardIsNatural(Rng& rng, int trial) {
  Relabeling r = RandomRelabeling(rng);
  SimplicialCurrent t = RandomChain(r.source.complex, 1 + trial % 2, 0.6, 3, rng);
  SimplicialCurrent image = PushForward(t, r.map, r.target);
  if (!(Boundary(image) == PushForward(Boundary(t), r.map, r.target))) return false;
  if (std::abs(Mass(image) - Mass(t)) > 1e-12 * (1 + Mass(t))) return false;
  // Slicing by f on the target equals slicing by f o phi before pushing.
  PLFunction f = RandomPL(r.target, rng);
  std::vector<double> pulled(r.map.size());
  for (size_t v = 0; v < r.map.size(); ++v) pulled[v] = f.value(r.map[v]);
  double s = RandomLevel(rng, f);
  return GeometricForm(Slice(t, PLFunction(r.source.complex, pulled), s).current) ==
         GeometricForm(Slice(image, f, s).current);
}

// ------------------------------------------------------------------ GH

namespace {

struct GhSearch {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  std::vector<std::pair<int, int>> pairs;
  double best;

  // Largest distortion the new pair adds against the pairs already chosen.
  double Added(int a, int b) const {
    double m = 0.0;
    for (const auto& [c, d] : pairs) m = std::max(m, std::abs(x(a, c) - y(b, d)));
    return m;
  }

  void ChooseF(int a, double current) {
    if (a == x.size()) {
      ChooseG(0, current);
      return;
    }
    for (int b = 0; b < y.size(); ++b) {
      double now = std::max(current, Added(a, b));
      if (now >= best) continue;
      pairs.push_back({a, b});
      ChooseF(a + 1, now);
      pairs.pop_back();
    }
  }

  void ChooseG(int b, double current) {
    if (b == y.size()) {
      best = current;
      return;
    }
    for (int a = 0; a < x.size(); ++a) {
      double now = std::max(current, Added(a, b));
      if (now >= best) continue;
      pairs.push_back({a, b});
      ChooseG(b + 1, now);
      pairs.pop_back();
    }
  }
};

}  // namespace

double BruteForceGH(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  // X x Y itself is a correspondence; its distortion starts the search.
  double start = 0.0;
  for (int a = 0; a < x.size(); ++a)
    for (int c = 0; c < x.size(); ++c)
      for (int b = 0; b < y.size(); ++b)
        for (int d = 0; d < y.size(); ++d) start = std::max(start, std::abs(x(a, c) - y(b, d)));
  GhSearch s{x, y, {}, std::nextafter(start, std::numeric_limits<double>::infinity())};
  s.ChooseF(0, 0.0);
  return s.best / 2;
}

int BruteForcePacking(const FiniteMetricSpace& x, double r) {
  const int n = x.size();
  int best = 0;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    int count = __builtin_popcount(mask);
    if (count <= best) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = i + 1; j < n && ok; ++j) {
        if ((mask >> j & 1) && x(i, j) < 2 * r) ok = false;
      }
    }
    if (ok) best = count;
  }
  return best;
}

// ------------------------------------------------------------ flat norm

double ExhaustiveFlatNorm(const SimplicialCurrent& s, const SimplicialCurrent& t, ComplexPtr k,
                          int range) {
  const int m = s.dim();
  const int nm = k->num_simplices(m), nv = k->num_simplices(m + 1);
  std::vector<double> diff(nm, 0.0);
  for (const auto& [i, c] : s.coeffs()) diff[i] += static_cast<double>(c);
  for (const auto& [i, c] : t.coeffs()) diff[i] -= static_cast<double>(c);
  // Boundary columns written out from the vertex tuples.
  std::vector<std::vector<std::pair<int, int>>> cols(nv);
  for (int j = 0; j < nv; ++j) {
    const Simplex& sj = k->simplex(m + 1, j);
    for (int f = 0; f < sj.size; ++f) {
      int face = k->Find(sj.Face(f));
      cols[j].push_back({face, f % 2 == 0 ? 1 : -1});
    }
  }
  std::vector<int> v(nv, -range);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<double> u = diff;
    double cost = 0.0;
    for (int j = 0; j < nv; ++j) {
      cost += std::abs(v[j]) * k->volume(m + 1, j);
      for (const auto& [face, sign] : cols[j]) u[face] -= sign * v[j];
    }
    for (int i = 0; i < nm; ++i) cost += std::abs(u[i]) * k->volume(m, i);
    best = std::min(best, cost);
    int j = 0;
    while (j < nv && v[j] == range) v[j++] = -range;
    if (j == nv) break;
    ++v[j];
  }
  return best;
}

FlatInstance RandomFlatInstance(Rng& rng, int trial) {
  FlatInstance out;
  std::vector<double> coords;
  std::vector<Simplex> top;
  int dim = 0;
  if (trial % 2 == 0) {
    // One or two triangles sharing an edge.
    int tris = 1 + trial / 2 % 2;
    for (int v = 0; v < 2 + tris; ++v) {
      coords.push_back(v + Uniform(rng, -0.3, 0.3));
      coords.push_back((v % 2) + Uniform(rng, -0.3, 0.3));
    }
    for (int i = 0; i < tris; ++i) top.push_back({i, i + 1, i + 2});
    dim = 1;
  } else {
    int n = UniformInt(rng, 2, 6);
    for (int v = 0; v < n; ++v) {
      coords.push_back(Uniform(rng, 0, 3));
      coords.push_back(Uniform(rng, 0, 3));
    }
    for (int v = 0; v + 1 < n; ++v) top.push_back({v, v + 1});
    if (n >= 3 && trial % 4 == 1) top.push_back({0, n - 1});
  }
  out.k = MakeComplex(2, coords, top);
  out.s = RandomChain(out.k, dim, 0.6, 2, rng);
  out.t = RandomChain(out.k, dim, 0.6, 2, rng);
  return out;
}

double BruteForceTransport(const FiniteMetricSpace& space, const std::vector<int>& theta,
                           const std::vector<int>& sigma) {
  std::vector<int> plus, minus;
  for (size_t i = 0; i < theta.size(); ++i) {
    for (int u = 0; u < theta[i]; ++u) (sigma[i] > 0 ? plus : minus).push_back(static_cast<int>(i));
  }
  if (plus.size() != minus.size()) return std::numeric_limits<double>::quiet_NaN();
  std::vector<int> perm(minus.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (size_t i = 0; i < plus.size(); ++i) cost += space(plus[i], minus[perm[i]]);
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return plus.empty() ? 0.0 : best;
}

double TriangleArea(const double* a, const double* b, const double* c, int dims) {
  double u[3] = {0, 0, 0}, w[3] = {0, 0, 0};
  for (int i = 0; i < dims; ++i) {
    u[i] = b[i] - a[i];
    w[i] = c[i] - a[i];
  }
  double x = u[1] * w[2] - u[2] * w[1], y = u[2] * w[0] - u[0] * w[2], z = u[0] * w[1] - u[1] * w[0];
  return 0.5 * std::sqrt(x * x + y * y + z * z);
}

double TetraVolume(const double* a, const double* b, const double* c, const double* d) {
  double u[3], v[3], w[3];
  for (int i = 0; i < 3; ++i) {
    u[i] = b[i] - a[i];
    v[i] = c[i] - a[i];
    w[i] = d[i] - a[i];
  }
  double det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
               u[2] * (v[0] * w[1] - v[1] * w[0]);
  return std::abs(det) / 6;
}

}  // namespace testsupport
