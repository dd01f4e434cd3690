#include "currentlab/current.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace currentlab {

SimplicialCurrent::SimplicialCurrent(ComplexPtr complex, int dim)
    : complex_(std::move(complex)), dim_(dim) {
  if (!complex_) throw ArgumentError("current without a complex");
  if (dim_ < 0) throw ArgumentError("negative current dimension");
}

SimplicialCurrent::SimplicialCurrent(ComplexPtr complex, int dim, std::map<int, int64_t> coeffs)
    : SimplicialCurrent(std::move(complex), dim) {
  for (const auto& [i, c] : coeffs) {
    if (i < 0 || i >= complex_->num_simplices(dim_)) {
      throw ArgumentError("coefficient on simplex " + std::to_string(i) + " of dimension " +
                          std::to_string(dim_) + " which does not exist");
    }
    if (c != 0) coeffs_.emplace(i, c);
  }
}

SimplicialCurrent SimplicialCurrent::AllSimplices(ComplexPtr complex, int dim,
                                                  const std::function<int(int)>& sign) {
  SimplicialCurrent t(complex, dim);
  for (int i = 0; i < complex->num_simplices(dim); ++i) t.Add(i, sign ? sign(i) : 1);
  return t;
}

int64_t SimplicialCurrent::coeff(int simplex) const {
  auto it = coeffs_.find(simplex);
  return it == coeffs_.end() ? 0 : it->second;
}

void SimplicialCurrent::Add(int simplex, int64_t c) {
  if (c == 0) return;
  if (simplex < 0 || simplex >= complex_->num_simplices(dim_)) {
    throw ArgumentError("simplex index out of range");
  }
  auto [it, fresh] = coeffs_.try_emplace(simplex, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

void SimplicialCurrent::AddSimplex(const Simplex& oriented, int64_t c) {
  if (oriented.dim() != dim_) throw ArgumentError("simplex dimension does not match current");
  Simplex s = oriented;
  int sign = Canonicalize(&s);
  if (sign == 0) return;
  int idx = complex_->Find(s);
  if (idx < 0) throw ArgumentError("simplex is not in the complex");
  Add(idx, sign * c);
}

void SimplicialCurrent::CheckCompatible(const SimplicialCurrent& o) const {
  if (complex_ != o.complex_) throw ArgumentError("currents live on different complexes");
  if (dim_ != o.dim_) throw ArgumentError("currents have different dimensions");
}

SimplicialCurrent SimplicialCurrent::operator+(const SimplicialCurrent& o) const {
  CheckCompatible(o);
  SimplicialCurrent r = *this;
  for (const auto& [i, c] : o.coeffs_) r.Add(i, c);
  return r;
}

SimplicialCurrent SimplicialCurrent::operator-(const SimplicialCurrent& o) const {
  CheckCompatible(o);
  SimplicialCurrent r = *this;
  for (const auto& [i, c] : o.coeffs_) r.Add(i, -c);
  return r;
}

SimplicialCurrent SimplicialCurrent::operator-() const { return *this * -1; }

SimplicialCurrent SimplicialCurrent::operator*(int64_t c) const {
  SimplicialCurrent r(complex_, dim_);
  if (c == 0) return r;
  for (const auto& [i, v] : coeffs_) r.coeffs_.emplace(i, v * c);
  return r;
}

bool SimplicialCurrent::operator==(const SimplicialCurrent& o) const {
  return complex_ == o.complex_ && dim_ == o.dim_ && coeffs_ == o.coeffs_;
}

std::vector<int> SimplicialCurrent::SupportVertices() const {
  std::set<int> verts;
  for (const auto& [i, c] : coeffs_)
    for (int v : complex_->simplex(dim_, i)) verts.insert(v);
  return {verts.begin(), verts.end()};
}

std::vector<std::pair<int, int>> SimplicialCurrent::Support() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(coeffs_.size());
  for (const auto& [i, c] : coeffs_) out.emplace_back(dim_, i);
  return out;
}

SimplicialCurrent Boundary(const SimplicialCurrent& t) {
  if (t.dim() == 0) return SimplicialCurrent(t.complex(), 0);
  SimplicialCurrent b(t.complex(), t.dim() - 1);
  for (const auto& [i, c] : t.coeffs()) {
    auto faces = t.complex()->faces(t.dim(), i);
    for (int j = 0; j <= t.dim(); ++j) b.Add(faces[j], (j % 2 == 0) ? c : -c);
  }
  return b;
}

double Mass(const SimplicialCurrent& t) {
  double m = 0;
  for (const auto& [i, c] : t.coeffs()) {
    m += std::abs(static_cast<double>(c)) * t.complex()->volume(t.dim(), i);
  }
  return m;
}

double TotalMass(const SimplicialCurrent& t) { return Mass(t) + Mass(Boundary(t)); }

SimplicialCurrent PushForward(const SimplicialCurrent& t, const std::vector<int>& vertex_map,
                              ComplexPtr target) {
  SimplicialCurrent out(target, t.dim());
  for (const auto& [i, c] : t.coeffs()) {
    Simplex image;
    for (int v : t.complex()->simplex(t.dim(), i)) {
      if (v >= static_cast<int>(vertex_map.size()) || vertex_map[v] < 0 ||
          vertex_map[v] >= target->num_vertices()) {
        throw ArgumentError("vertex " + std::to_string(v) + " is not mapped into the target");
      }
      image.v[image.size++] = vertex_map[v];
    }
    Simplex canonical = image;
    int sign = Canonicalize(&canonical);
    if (sign == 0) continue;
    int idx = target->Find(canonical);
    if (idx < 0) throw ArgumentError("image simplex is missing from the target complex");
    out.Add(idx, sign * c);
  }
  return out;
}

SimplicialCurrent RestrictBarycenter(const SimplicialCurrent& t,
                                     const std::function<bool(std::span<const double>)>& keep) {
  const auto& cx = *t.complex();
  const int n = cx.metric().dims();
  SimplicialCurrent out(t.complex(), t.dim());
  std::vector<double> bary(n);
  std::vector<double> disp(n);
  for (const auto& [i, c] : t.coeffs()) {
    const Simplex& s = cx.simplex(t.dim(), i);
    const double* base = cx.point(s[0]);
    std::copy(base, base + n, bary.begin());
    if (cx.metric().has_coordinates()) {
      // Average displacements so barycenters are correct across torus seams.
      for (int j = 1; j < s.size; ++j) {
        cx.metric().Displacement(base, cx.point(s[j]), disp.data());
        for (int a = 0; a < n; ++a) bary[a] += disp[a] / s.size;
      }
    }
    if (keep(bary)) out.Add(i, c);
  }
  return out;
}

SimplicialCurrent RestrictSublevel(const SimplicialCurrent& t, const PLFunction& f, double level) {
  if (f.complex()->num_vertices() < t.complex()->num_vertices()) {
    throw ArgumentError("function does not cover the current's vertices");
  }
  SimplicialCurrent out(t.complex(), t.dim());
  for (const auto& [i, c] : t.coeffs()) {
    bool inside = true;
    for (int v : t.complex()->simplex(t.dim(), i)) {
      if (f.value(v) > level) {
        inside = false;
        break;
      }
    }
    if (inside) out.Add(i, c);
  }
  return out;
}

double Evaluate(const SimplicialCurrent& t, const PLFunction& f,
                const std::vector<PLFunction>& pis) {
  const int k = t.dim();
  if (static_cast<int>(pis.size()) != k) {
    throw ArgumentError("evaluation needs exactly dim(T) = " + std::to_string(k) +
                        " functions, got " + std::to_string(pis.size()));
  }
  const int nv = t.complex()->num_vertices();
  if (f.complex()->num_vertices() < nv) throw ArgumentError("f does not cover the complex");
  for (const auto& pi : pis)
    if (pi.complex()->num_vertices() < nv) throw ArgumentError("pi does not cover the complex");
  double fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  double total = 0;
  double m[kMaxSimplexVertices * kMaxSimplexVertices];
  for (const auto& [i, c] : t.coeffs()) {
    const Simplex& s = t.complex()->simplex(k, i);
    double fbar = 0;
    for (int v : s) fbar += f.value(v);
    fbar /= s.size;
    double det = 1;
    if (k > 0) {
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m[a * k + b] = pis[a].value(s[b + 1]) - pis[a].value(s[0]);
      det = SmallDeterminant(m, k);
    }
    total += static_cast<double>(c) * fbar * det / fact;
  }
  return total;
}

std::map<std::vector<std::vector<double>>, int64_t> GeometricForm(const SimplicialCurrent& t) {
  std::map<std::vector<std::vector<double>>, int64_t> out;
  const auto& cx = *t.complex();
  const int n = cx.metric().dims();
  for (const auto& [i, c] : t.coeffs()) {
    const Simplex& s = cx.simplex(t.dim(), i);
    std::vector<std::vector<double>> pts;
    for (int v : s) pts.emplace_back(cx.point(v), cx.point(v) + n);
    int sign = 1;
    for (size_t a = 1; a < pts.size(); ++a) {
      for (size_t b = a; b > 0 && pts[b] < pts[b - 1]; --b) {
        std::swap(pts[b], pts[b - 1]);
        sign = -sign;
      }
    }
    auto& slot = out[pts];
    slot += sign * c;
    if (slot == 0) out.erase(pts);
  }
  return out;
}

}  // namespace currentlab
