#include "currentlab/pl_function.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace currentlab {

namespace {

// Solves g x = b in place for a small symmetric positive semidefinite g.
// Returns false when g is numerically singular.
bool SmallSolve(double* g, double* b, int n) {
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(g[r * n + c]) > std::abs(g[pivot * n + c])) pivot = r;
    double scale = 0;
    for (int r = 0; r < n; ++r) scale = std::max(scale, std::abs(g[r * n + r]));
    if (std::abs(g[pivot * n + c]) <= 1e-14 * scale) return false;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(g[c * n + k], g[pivot * n + k]);
      std::swap(b[c], b[pivot]);
    }
    for (int r = c + 1; r < n; ++r) {
      double f = g[r * n + c] / g[c * n + c];
      for (int k = c; k < n; ++k) g[r * n + k] -= f * g[c * n + k];
      b[r] -= f * b[c];
    }
  }
  for (int c = n - 1; c >= 0; --c) {
    for (int k = c + 1; k < n; ++k) b[c] -= g[c * n + k] * b[k];
    b[c] /= g[c * n + c];
  }
  return true;
}

}  // namespace

double PLLipschitzConstant(const GeometricComplex& complex, const std::vector<double>& values) {
  double lip = 0;
  for (int k = 1; k <= complex.dim(); ++k) {
    std::vector<char> has_coface(complex.num_simplices(k), 0);
    if (k < complex.dim()) {
      for (int i = 0; i < complex.num_simplices(k + 1); ++i)
        for (int f : complex.faces(k + 1, i)) has_coface[f] = 1;
    }
    for (int i = 0; i < complex.num_simplices(k); ++i) {
      if (has_coface[i]) continue;
      const Simplex& s = complex.simplex(k, i);
      double g[kMaxSimplexVertices * kMaxSimplexVertices];
      double delta[kMaxSimplexVertices];
      double x[kMaxSimplexVertices];
      complex.Gram(s, g);
      for (int j = 0; j < k; ++j) x[j] = delta[j] = values[s[j + 1]] - values[s[0]];
      if (SmallSolve(g, x, k)) {
        double q = 0;
        for (int j = 0; j < k; ++j) q += delta[j] * x[j];
        lip = std::max(lip, std::sqrt(std::max(q, 0.0)));
      }
      // Edge quotients also bound the constant from below, and cover
      // degenerate simplices where the gradient is undefined.
      for (int a = 0; a <= k; ++a) {
        for (int b = a + 1; b <= k; ++b) {
          double len = complex.edge_length(s[a], s[b]);
          double diff = std::abs(values[s[a]] - values[s[b]]);
          if (len > 0) lip = std::max(lip, diff / len);
        }
      }
    }
  }
  return lip;
}

PLFunction::PLFunction(ComplexPtr complex, std::vector<double> values)
    : complex_(std::move(complex)), values_(std::move(values)) {
  if (!complex_) throw ArgumentError("PL function without a complex");
  if (static_cast<int>(values_.size()) != complex_->num_vertices()) {
    throw ArgumentError("PL function needs one value per vertex");
  }
  lip_ = PLLipschitzConstant(*complex_, values_);
}

PLFunction::PLFunction(ComplexPtr complex, std::vector<double> values, double lip)
    : complex_(std::move(complex)), values_(std::move(values)), lip_(lip) {
  if (!complex_) throw ArgumentError("PL function without a complex");
  if (static_cast<int>(values_.size()) != complex_->num_vertices()) {
    throw ArgumentError("PL function needs one value per vertex");
  }
}

PLFunction PLFunction::Constant(ComplexPtr complex, double c) {
  std::vector<double> v(complex->num_vertices(), c);
  return PLFunction(std::move(complex), std::move(v), 0.0);
}

PLFunction PLFunction::Coordinate(ComplexPtr complex, int axis) {
  if (!complex->metric().has_coordinates() || axis < 0 || axis >= complex->metric().dims()) {
    throw ArgumentError("coordinate axis out of range");
  }
  std::vector<double> v(complex->num_vertices());
  for (int i = 0; i < complex->num_vertices(); ++i) v[i] = complex->point(i)[axis];
  return PLFunction(std::move(complex), std::move(v));
}

PLFunction PLFunction::DistanceFromVertex(ComplexPtr complex, int p) {
  if (p < 0 || p >= complex->num_vertices()) throw ArgumentError("center vertex out of range");
  std::vector<double> v(complex->num_vertices());
  for (int i = 0; i < complex->num_vertices(); ++i) v[i] = complex->distance(p, i);
  return PLFunction(std::move(complex), std::move(v));
}

PLFunction PLFunction::DistanceFromPoint(ComplexPtr complex, std::span<const double> point) {
  if (!complex->metric().has_coordinates() ||
      static_cast<int>(point.size()) != complex->metric().dims()) {
    throw ArgumentError("point has the wrong number of coordinates");
  }
  std::vector<double> v(complex->num_vertices());
  for (int i = 0; i < complex->num_vertices(); ++i) {
    v[i] = complex->metric().Distance(point.data(), complex->point(i));
  }
  return PLFunction(std::move(complex), std::move(v));
}

PLFunction PLFunction::GraphDistance(ComplexPtr complex, int p) {
  const int n = complex->num_vertices();
  if (p < 0 || p >= n) throw ArgumentError("center vertex out of range");
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (int e = 0; e < complex->num_simplices(1); ++e) {
    const Simplex& s = complex->simplex(1, e);
    double w = complex->volume(1, e);
    adj[s[0]].emplace_back(s[1], w);
    adj[s[1]].emplace_back(s[0], w);
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n, inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  d[p] = 0;
  heap.emplace(0.0, p);
  while (!heap.empty()) {
    auto [dist, u] = heap.top();
    heap.pop();
    if (dist > d[u]) continue;
    for (auto [w, len] : adj[u]) {
      if (dist + len < d[w]) {
        d[w] = dist + len;
        heap.emplace(d[w], w);
      }
    }
  }
  double far = 0;
  for (double x : d)
    if (x < inf) far = std::max(far, x);
  for (double& x : d)
    if (x == inf) x = far;
  return PLFunction(std::move(complex), std::move(d));
}

double PLFunction::MinValue() const {
  double m = std::numeric_limits<double>::infinity();
  const auto& used = complex_->used_vertices();
  for (size_t v = 0; v < values_.size(); ++v)
    if (used[v]) m = std::min(m, values_[v]);
  return m;
}

double PLFunction::MaxValue() const {
  double m = -std::numeric_limits<double>::infinity();
  const auto& used = complex_->used_vertices();
  for (size_t v = 0; v < values_.size(); ++v)
    if (used[v]) m = std::max(m, values_[v]);
  return m;
}

PLFunction PLFunction::OnComplex(ComplexPtr other) const {
  if (other->num_vertices() != complex_->num_vertices() ||
      other->coords() != complex_->coords()) {
    throw ArgumentError("target complex does not share this function's vertices");
  }
  return PLFunction(std::move(other), values_);
}

}  // namespace currentlab
