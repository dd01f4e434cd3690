#include "currentlab/complex.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace currentlab {

Simplex::Simplex(std::initializer_list<int> vertices) {
  if (vertices.size() > kMaxSimplexVertices) throw ArgumentError("simplex dimension too large");
  for (int x : vertices) v[size++] = x;
}

Simplex::Simplex(std::span<const int> vertices) {
  if (vertices.size() > kMaxSimplexVertices) throw ArgumentError("simplex dimension too large");
  for (int x : vertices) v[size++] = x;
}

Simplex Simplex::Face(int i) const {
  Simplex f;
  for (int j = 0; j < size; ++j)
    if (j != i) f.v[f.size++] = v[j];
  return f;
}

bool Simplex::operator==(const Simplex& o) const {
  return size == o.size && std::equal(begin(), end(), o.begin());
}

bool Simplex::operator<(const Simplex& o) const {
  if (size != o.size) return size < o.size;
  return std::lexicographical_compare(begin(), end(), o.begin(), o.end());
}

size_t SimplexHash::operator()(const Simplex& s) const {
  uint64_t h = 1469598103934665603ull ^ static_cast<uint64_t>(s.size);
  for (int i = 0; i < s.size; ++i) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(s.v[i])) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
  }
  return static_cast<size_t>(h);
}

int Canonicalize(Simplex* s) {
  int sign = 1;
  for (int i = 1; i < s->size; ++i) {
    for (int j = i; j > 0 && s->v[j - 1] >= s->v[j]; --j) {
      if (s->v[j - 1] == s->v[j]) return 0;
      std::swap(s->v[j - 1], s->v[j]);
      sign = -sign;
    }
  }
  return sign;
}

double SmallDeterminant(const double* m, int n) {
  double a[kMaxSimplexVertices * kMaxSimplexVertices];
  std::copy(m, m + n * n, a);
  double det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[pivot * n + c])) pivot = r;
    if (a[pivot * n + c] == 0) return 0;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[pivot * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      double f = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

std::shared_ptr<const GeometricComplex> GeometricComplex::Create(
    Metric metric, std::vector<double> coords, const std::vector<Simplex>& generators) {
  return Create(std::move(metric), std::make_shared<const std::vector<double>>(std::move(coords)),
                generators);
}

std::shared_ptr<const GeometricComplex> GeometricComplex::Create(
    Metric metric, std::shared_ptr<const std::vector<double>> coords,
    const std::vector<Simplex>& generators) {
  if (!coords) throw ArgumentError("null coordinate array");
  if (coords->size() % metric.dims() != 0) {
    throw ArgumentError("coordinate array length is not a multiple of the metric dimension");
  }
  std::shared_ptr<GeometricComplex> c(new GeometricComplex());
  c->metric_ = std::move(metric);
  c->coords_ = std::move(coords);
  c->num_vertices_ = static_cast<int>(c->coords_->size() / c->metric_.dims());
  if (c->metric_.kind() == MetricKind::kMatrix) {
    for (int v = 0; v < c->num_vertices_; ++v) {
      double idx = c->point(v)[0];
      if (idx < 0 || idx >= c->metric_.matrix()->size() || idx != std::floor(idx)) {
        throw ArgumentError("vertex " + std::to_string(v) + " is not a point of the metric space");
      }
    }
  }
  c->Build(generators);
  return c;
}

void GeometricComplex::Build(const std::vector<Simplex>& generators) {
  int top = 0;
  for (const Simplex& g : generators) {
    if (g.size == 0) throw ArgumentError("empty simplex");
    top = std::max(top, g.dim());
  }
  simplices_.assign(top + 1, {});
  index_.assign(top + 1, {});
  used_.assign(num_vertices_, 0);
  simplices_[0].reserve(num_vertices_);
  for (int v = 0; v < num_vertices_; ++v) simplices_[0].push_back(Simplex{v});
  auto insert = [&](Simplex s) {
    for (int i = 0; i < s.size; ++i) {
      if (s.v[i] < 0 || s.v[i] >= num_vertices_) {
        throw ArgumentError("simplex references vertex " + std::to_string(s.v[i]) +
                            " outside the vertex list");
      }
    }
    if (Canonicalize(&s) == 0) throw ArgumentError("simplex with a repeated vertex");
    if (s.dim() == 0) {
      used_[s.v[0]] = 1;
      return;
    }
    auto [it, fresh] = index_[s.dim()].try_emplace(s, static_cast<int>(simplices_[s.dim()].size()));
    if (fresh) simplices_[s.dim()].push_back(s);
  };
  for (const Simplex& g : generators) insert(g);
  for (int k = top; k >= 2; --k) {
    for (size_t i = 0; i < simplices_[k].size(); ++i) {
      Simplex s = simplices_[k][i];
      for (int j = 0; j <= k; ++j) insert(s.Face(j));
    }
  }
  if (top >= 1) {
    for (const Simplex& e : simplices_[1]) used_[e.v[0]] = used_[e.v[1]] = 1;
  }
  faces_.assign(top + 1, {});
  volumes_.assign(top + 1, {});
  volumes_[0].assign(num_vertices_, 1.0);
  for (int k = 1; k <= top; ++k) {
    const auto& list = simplices_[k];
    faces_[k].resize(list.size() * (k + 1));
    volumes_[k].resize(list.size());
    for (size_t i = 0; i < list.size(); ++i) {
      for (int j = 0; j <= k; ++j) {
        Simplex f = list[i].Face(j);
        faces_[k][i * (k + 1) + j] = k == 1 ? f.v[0] : index_[k - 1].at(f);
      }
      volumes_[k][i] = SimplexVolume(list[i]);
    }
  }
}

std::shared_ptr<const GeometricComplex> GeometricComplex::Subcomplex(
    const std::vector<std::pair<int, int>>& dim_and_index) const {
  std::vector<Simplex> gens;
  gens.reserve(dim_and_index.size());
  for (const auto& [k, i] : dim_and_index) gens.push_back(simplex(k, i));
  std::shared_ptr<GeometricComplex> c(new GeometricComplex());
  c->metric_ = metric_;
  c->coords_ = coords_;
  c->num_vertices_ = num_vertices_;
  c->Build(gens);
  return c;
}

int GeometricComplex::Find(const Simplex& s) const {
  if (s.size == 1) return s.v[0] >= 0 && s.v[0] < num_vertices_ ? s.v[0] : -1;
  if (s.dim() > dim()) return -1;
  auto it = index_[s.dim()].find(s);
  return it == index_[s.dim()].end() ? -1 : it->second;
}

std::vector<std::vector<int>> GeometricComplex::Cofaces(int k) const {
  std::vector<std::vector<int>> out(num_simplices(k));
  if (k + 1 > dim()) return out;
  for (int i = 0; i < num_simplices(k + 1); ++i)
    for (int f : faces(k + 1, i)) out[f].push_back(i);
  return out;
}

double GeometricComplex::Diameter() const {
  std::vector<int> verts;
  for (int v = 0; v < num_vertices_; ++v)
    if (used_[v]) verts.push_back(v);
  double d = 0;
  for (size_t a = 0; a < verts.size(); ++a)
    for (size_t b = a + 1; b < verts.size(); ++b) d = std::max(d, distance(verts[a], verts[b]));
  return d;
}

void GeometricComplex::Gram(const Simplex& s, double* out) const {
  const int k = s.dim();
  if (metric_.has_coordinates()) {
    const int n = metric_.dims();
    std::vector<double> e(static_cast<size_t>(k) * n);
    for (int i = 0; i < k; ++i) metric_.Displacement(point(s.v[0]), point(s.v[i + 1]), &e[i * n]);
    for (int i = 0; i < k; ++i) {
      for (int j = i; j < k; ++j) {
        double dot = 0;
        for (int c = 0; c < n; ++c) dot += e[i * n + c] * e[j * n + c];
        out[i * k + j] = out[j * k + i] = dot;
      }
    }
    return;
  }
  for (int i = 0; i < k; ++i) {
    double d0i = edge_length(s.v[0], s.v[i + 1]);
    for (int j = i; j < k; ++j) {
      double d0j = edge_length(s.v[0], s.v[j + 1]);
      double dij = edge_length(s.v[i + 1], s.v[j + 1]);
      out[i * k + j] = out[j * k + i] = 0.5 * (d0i * d0i + d0j * d0j - dij * dij);
    }
  }
}

double GeometricComplex::SimplexVolume(const Simplex& s) const {
  const int k = s.dim();
  if (k == 0) return 1.0;
  double g[kMaxSimplexVertices * kMaxSimplexVertices];
  Gram(s, g);
  double det = SmallDeterminant(g, k);
  double scale = 0;
  for (int i = 0; i < k; ++i) scale = std::max(scale, g[i * k + i]);
  if (det < 0) {
    if (det < -1e-9 * std::pow(scale, k)) {
      throw ArgumentError("simplex edge lengths are not realizable (negative Cayley-Menger "
                          "determinant)");
    }
    det = 0;
  }
  double fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::sqrt(det) / fact;
}

}  // namespace currentlab
