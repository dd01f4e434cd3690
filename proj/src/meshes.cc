#include "currentlab/meshes.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace currentlab {

namespace {

double Det3(const double* a, const double* b, const double* c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

int OrientationSign(const TriangleSoup& soup, int stride, const std::array<int, 3>& t) {
  const double* a = soup.coords.data() + static_cast<size_t>(t[0]) * stride;
  const double* b = soup.coords.data() + static_cast<size_t>(t[1]) * stride;
  const double* c = soup.coords.data() + static_cast<size_t>(t[2]) * stride;
  double s;
  if (stride == 2) {
    s = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  } else {
    s = Det3(a, b, c);
  }
  return s >= 0 ? 1 : -1;
}

}  // namespace

Mesh MeshFromSoup(const TriangleSoup& soup, const Metric& metric) {
  const int stride = metric.dims();
  if (stride != 2 && stride != 3) throw ArgumentError("triangle soups need 2 or 3 coordinates");
  std::vector<Simplex> gens;
  gens.reserve(soup.triangles.size());
  for (const auto& t : soup.triangles) {
    Simplex s{t[0], t[1], t[2]};
    Canonicalize(&s);
    gens.push_back(s);
  }
  Mesh mesh;
  mesh.complex = GeometricComplex::Create(metric, soup.coords, gens);
  mesh.current = SimplicialCurrent(mesh.complex, 2);
  for (const auto& t : soup.triangles) {
    int sign = soup.oriented ? 1 : OrientationSign(soup, stride, t);
    mesh.current.AddSimplex(Simplex{t[0], t[1], t[2]}, sign);
  }
  return mesh;
}

TriangleSoup RectangleSoup(double x0, double x1, double y0, double y1, int nx, int ny) {
  if (nx < 1 || ny < 1) throw ArgumentError("need at least one cell per axis");
  TriangleSoup soup;
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      soup.coords.push_back(i == nx ? x1 : x0 + (x1 - x0) * i / nx);
      soup.coords.push_back(j == ny ? y1 : y0 + (y1 - y0) * j / ny);
    }
  }
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      soup.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      soup.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  soup.oriented = true;
  return soup;
}

Mesh UnitSquare(int n) { return MeshFromSoup(RectangleSoup(0, 1, 0, 1, n, n), Metric::Euclidean(2)); }

TriangleSoup DiskSoup(double radius, double h) {
  if (!(radius > 0) || !(h > 0)) throw ArgumentError("disk radius and spacing must be positive");
  const int rings = std::max(1, static_cast<int>(std::lround(radius / h)));
  TriangleSoup soup;
  soup.coords = {0.0, 0.0};
  std::vector<int> start(rings + 1, 0);
  for (int i = 1; i <= rings; ++i) {
    start[i] = static_cast<int>(soup.coords.size() / 2);
    const int n = 6 * i;
    const double rad = radius * i / rings;
    for (int k = 0; k < n; ++k) {
      double a = 2 * std::numbers::pi * k / n;
      soup.coords.push_back(rad * std::cos(a));
      soup.coords.push_back(rad * std::sin(a));
    }
  }
  for (int k = 0; k < 6; ++k) soup.triangles.push_back({0, start[1] + k, start[1] + (k + 1) % 6});
  for (int i = 2; i <= rings; ++i) {
    const int n0 = 6 * (i - 1), n1 = 6 * i;
    int a = 0, b = 0;
    while (a < n0 || b < n1) {
      int ia = start[i - 1] + a % n0, ib = start[i] + b % n1;
      // Advance whichever ring's next point comes first in angle.
      bool inner = b == n1 || (a < n0 && static_cast<int64_t>(a + 1) * n1 <= static_cast<int64_t>(b + 1) * n0);
      if (inner) {
        soup.triangles.push_back({ia, ib, start[i - 1] + (a + 1) % n0});
        ++a;
      } else {
        soup.triangles.push_back({ia, ib, start[i] + (b + 1) % n1});
        ++b;
      }
    }
  }
  return soup;
}

Mesh Disk(double radius, double h) { return MeshFromSoup(DiskSoup(radius, h), Metric::Euclidean(2)); }

TriangleSoup RefinedDiskSoup(double radius, double h0, int level, int push_levels) {
  if (level < 0) throw ArgumentError("refinement level must be nonnegative");
  if (push_levels < 0) push_levels = level;
  TriangleSoup soup = DiskSoup(radius, h0);
  soup.oriented = false;
  // Orient once so subdivision keeps orientation.
  for (auto& t : soup.triangles)
    if (OrientationSign(soup, 2, t) < 0) std::swap(t[1], t[2]);
  soup.oriented = true;
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> count;
    for (const auto& t : soup.triangles)
      for (int e = 0; e < 3; ++e) ++count[std::minmax(t[e], t[(e + 1) % 3])];
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      int id = static_cast<int>(soup.coords.size() / 2);
      double x = 0.5 * (soup.coords[2 * key.first] + soup.coords[2 * key.second]);
      double y = 0.5 * (soup.coords[2 * key.first + 1] + soup.coords[2 * key.second + 1]);
      if (l < push_levels && count[key] == 1) {
        double norm = std::hypot(x, y);
        x *= radius / norm;
        y *= radius / norm;
      }
      soup.coords.push_back(x);
      soup.coords.push_back(y);
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(soup.triangles.size() * 4);
    for (const auto& t : soup.triangles) {
      int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
      next.push_back({ab, bc, ca});
    }
    soup.triangles.swap(next);
  }
  return soup;
}

TriangleSoup IcosphereSoup(int frequency, double radius) {
  if (frequency < 1) throw ArgumentError("icosphere frequency must be at least 1");
  std::vector<std::array<double, 3>> base;
  base.push_back({0, 0, 1});
  const double z = 1 / std::sqrt(5.0), rho = 2 / std::sqrt(5.0);
  for (int i = 0; i < 5; ++i) {
    double a = 2 * std::numbers::pi * i / 5;
    base.push_back({rho * std::cos(a), rho * std::sin(a), z});
  }
  for (int i = 0; i < 5; ++i) {
    double a = 2 * std::numbers::pi * (i + 0.5) / 5;
    base.push_back({rho * std::cos(a), rho * std::sin(a), -z});
  }
  base.push_back({0, 0, -1});
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 5; ++i) {
    int u0 = 1 + i, u1 = 1 + (i + 1) % 5, l0 = 6 + i, l1 = 6 + (i + 1) % 5;
    faces.push_back({0, u0, u1});
    faces.push_back({u0, l0, u1});
    faces.push_back({u1, l0, l1});
    faces.push_back({11, l1, l0});
  }

  TriangleSoup soup;
  // Points keyed by their integer barycentric weights on base vertices, so
  // shared edges produce identical vertices.
  std::map<std::vector<std::pair<int, int>>, int> index;
  auto vertex = [&](std::vector<std::pair<int, int>> w) {
    w.erase(std::remove_if(w.begin(), w.end(), [](const auto& p) { return p.second == 0; }), w.end());
    std::sort(w.begin(), w.end());
    auto it = index.find(w);
    if (it != index.end()) return it->second;
    double p[3] = {0, 0, 0};
    for (const auto& [v, k] : w)
      for (int a = 0; a < 3; ++a) p[a] += k * base[v][a];
    double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    int id = static_cast<int>(soup.coords.size() / 3);
    for (int a = 0; a < 3; ++a) soup.coords.push_back(radius * p[a] / norm);
    index.emplace(w, id);
    return id;
  };
  for (int v = 0; v < 12; ++v) vertex({{v, 1}});
  const int f = frequency;
  for (const auto& face : faces) {
    auto at = [&](int a, int b) {
      return vertex({{face[0], f - a - b}, {face[1], a}, {face[2], b}});
    };
    for (int a = 0; a < f; ++a) {
      for (int b = 0; b < f - a; ++b) {
        soup.triangles.push_back({at(a, b), at(a + 1, b), at(a, b + 1)});
        if (b < f - 1 - a) soup.triangles.push_back({at(a + 1, b), at(a + 1, b + 1), at(a, b + 1)});
      }
    }
  }
  // Orient outward.
  for (auto& t : soup.triangles)
    if (OrientationSign(soup, 3, t) < 0) std::swap(t[1], t[2]);
  soup.oriented = true;
  return soup;
}

Mesh Icosphere(int frequency, double radius) {
  return MeshFromSoup(IcosphereSoup(frequency, radius), Metric::Sphere(radius));
}

int KuhnVertex(std::array<int, 3> n, std::array<bool, 3> periodic, int i, int j, int k) {
  std::array<int, 3> idx{i, j, k}, count;
  for (int a = 0; a < 3; ++a) {
    count[a] = periodic[a] ? n[a] : n[a] + 1;
    if (periodic[a]) idx[a] = ((idx[a] % n[a]) + n[a]) % n[a];
  }
  return (idx[2] * count[1] + idx[1]) * count[0] + idx[0];
}

Mesh KuhnBox(std::array<double, 3> lo, std::array<double, 3> hi, std::array<int, 3> n,
             std::array<bool, 3> periodic) {
  std::array<int, 3> count;
  bool any_periodic = false;
  std::vector<double> periods(3, 0.0);
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 1 || !(hi[a] > lo[a])) throw ArgumentError("bad box extent");
    if (periodic[a]) {
      if (n[a] < 3) throw ArgumentError("a periodic axis needs at least 3 cells");
      any_periodic = true;
      periods[a] = hi[a] - lo[a];
    }
    count[a] = periodic[a] ? n[a] : n[a] + 1;
  }
  std::vector<double> coords;
  coords.reserve(static_cast<size_t>(count[0]) * count[1] * count[2] * 3);
  for (int k = 0; k < count[2]; ++k)
    for (int j = 0; j < count[1]; ++j)
      for (int i = 0; i < count[0]; ++i) {
        std::array<int, 3> idx{i, j, k};
        for (int a = 0; a < 3; ++a) {
          coords.push_back(idx[a] == n[a] ? hi[a] : lo[a] + (hi[a] - lo[a]) * idx[a] / n[a]);
        }
      }
  Metric metric = any_periodic ? Metric::FlatTorus(periods) : Metric::Euclidean(3);
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<Simplex> tets;
  std::vector<Simplex> oriented;
  std::vector<int> signs;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i)
        for (const auto& perm : perms) {
          std::array<int, 3> c{i, j, k};
          Simplex s;
          s.size = 4;
          s.v[0] = KuhnVertex(n, periodic, c[0], c[1], c[2]);
          for (int step = 0; step < 3; ++step) {
            ++c[perm[step]];
            s.v[step + 1] = KuhnVertex(n, periodic, c[0], c[1], c[2]);
          }
          // Permutation parity gives the orientation of the path simplex.
          int parity = (perm[0] == 0 && perm[1] == 1) || (perm[0] == 1 && perm[1] == 2) ||
                               (perm[0] == 2 && perm[1] == 0)
                           ? 1
                           : -1;
          oriented.push_back(s);
          signs.push_back(parity);
          Simplex canon = s;
          Canonicalize(&canon);
          tets.push_back(canon);
        }
  Mesh mesh;
  mesh.complex = GeometricComplex::Create(metric, std::move(coords), tets);
  mesh.current = SimplicialCurrent(mesh.complex, 3);
  for (size_t t = 0; t < oriented.size(); ++t) mesh.current.AddSimplex(oriented[t], signs[t]);
  return mesh;
}

Mesh ThinTorus(double eps, int cells_xy, int cells_z) {
  if (!(eps > 0)) throw ArgumentError("torus thickness must be positive");
  const double tau = 2 * std::numbers::pi;
  return KuhnBox({0, 0, 0}, {tau, tau, 2 * eps}, {cells_xy, cells_xy, cells_z}, {true, true, true});
}

TorusChart ThinTorusChart(double eps, double half_width, int cells_per_half_width) {
  if (!(eps > 0) || !(half_width > 0) || cells_per_half_width < 1) {
    throw ArgumentError("bad torus chart parameters");
  }
  const double a = half_width;
  const int c = cells_per_half_width;
  const double cell = a / c;
  TorusChart out;
  if (2 * eps <= 2 * a) {
    int nz = std::max(4, 2 * static_cast<int>(std::lround(eps / cell)));
    out.mesh = KuhnBox({-a, -a, -eps}, {a, a, eps}, {2 * c, 2 * c, nz}, {false, false, true});
    out.center = KuhnVertex({2 * c, 2 * c, nz}, {false, false, true}, c, c, nz / 2);
  } else {
    out.mesh = KuhnBox({-a, -a, -a}, {a, a, a}, {2 * c, 2 * c, 2 * c});
    out.center = KuhnVertex({2 * c, 2 * c, 2 * c}, {false, false, false}, c, c, c);
  }
  return out;
}

SpikedSphere SphereWithSpikes(int frequency, int spikes, double height, double width,
                              uint64_t seed) {
  if (spikes < 0 || !(height >= 0) || !(width > 0)) throw ArgumentError("bad spike parameters");
  TriangleSoup soup = IcosphereSoup(frequency, 1.0);
  const int nv = static_cast<int>(soup.coords.size() / 3);
  auto pt = [&](int v) { return soup.coords.data() + static_cast<size_t>(v) * 3; };
  auto chord = [&](int a, int b) {
    const double *p = pt(a), *q = pt(b);
    return std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                     (p[2] - q[2]) * (p[2] - q[2]));
  };

  SpikedSphere out;
  std::mt19937_64 rng(seed);
  if (spikes > 0) {
    std::vector<double> dmin(nv, std::numeric_limits<double>::infinity());
    int cur = static_cast<int>(rng() % static_cast<uint64_t>(nv));
    for (int s = 0; s < spikes; ++s) {
      out.tips.push_back(cur);
      int next = -1;
      for (int v = 0; v < nv; ++v) {
        dmin[v] = std::min(dmin[v], chord(v, cur));
        if (next < 0 || dmin[v] > dmin[next]) next = v;
      }
      cur = next;
    }
  }
  // Base points: vertices farthest from every tip.
  {
    std::vector<double> dmin(nv, std::numeric_limits<double>::infinity());
    for (int v = 0; v < nv; ++v)
      for (int t : out.tips) dmin[v] = std::min(dmin[v], chord(v, t));
    std::vector<int> order(nv);
    for (int v = 0; v < nv; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dmin[a] > dmin[b]; });
    for (int i = 0; i < std::min(3, nv); ++i) out.bases.push_back(order[i]);
  }

  for (int tip : out.tips) {
    double shortest = std::numeric_limits<double>::infinity();
    for (const auto& t : soup.triangles)
      for (int e = 0; e < 3; ++e)
        if (t[e] == tip) shortest = std::min({shortest, chord(tip, t[(e + 1) % 3]), chord(tip, t[(e + 2) % 3])});
    const double cut = 0.5 * width;
    if (cut < 0.9 * shortest) {
      std::map<int, int> split;
      auto split_point = [&](int u) {
        auto it = split.find(u);
        if (it != split.end()) return it->second;
        double lam = cut / chord(tip, u);
        int id = static_cast<int>(soup.coords.size() / 3);
        double p[3];
        for (int a = 0; a < 3; ++a) p[a] = pt(tip)[a] + lam * (pt(u)[a] - pt(tip)[a]);
        soup.coords.insert(soup.coords.end(), p, p + 3);
        split.emplace(u, id);
        return id;
      };
      std::vector<std::array<int, 3>> next;
      for (auto t : soup.triangles) {
        int e = -1;
        for (int i = 0; i < 3; ++i)
          if (t[i] == tip) e = i;
        if (e < 0) {
          next.push_back(t);
          continue;
        }
        std::rotate(t.begin(), t.begin() + e, t.end());
        int mb = split_point(t[1]), mc = split_point(t[2]);
        next.push_back({tip, mb, mc});
        next.push_back({mb, t[1], t[2]});
        next.push_back({mb, t[2], mc});
      }
      soup.triangles.swap(next);
    }
    double* p = soup.coords.data() + static_cast<size_t>(tip) * 3;
    double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    for (int a = 0; a < 3; ++a) p[a] *= (1 + height) / norm;
  }
  out.mesh = MeshFromSoup(soup, Metric::Euclidean(3));
  const GeometricComplex& cx = *out.mesh.complex;
  for (int tip : out.tips) {
    for (int i = 0; i < cx.num_simplices(2); ++i) {
      const Simplex& s = cx.simplex(2, i);
      if (std::find(s.begin(), s.end(), tip) != s.end()) out.spike_area += cx.volume(2, i);
    }
  }
  return out;
}

}  // namespace currentlab
