#ifndef CURRENTLAB_COMPLEX_H_
#define CURRENTLAB_COMPLEX_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "currentlab/geometry.h"

namespace currentlab {

inline constexpr int kMaxSimplexVertices = 7;

// Vertex tuple of a simplex. Canonical simplices keep vertices ascending.
struct Simplex {
  std::array<int32_t, kMaxSimplexVertices> v{};
  int size = 0;

  Simplex() = default;
  Simplex(std::initializer_list<int> vertices);
  explicit Simplex(std::span<const int> vertices);

  int dim() const { return size - 1; }
  int operator[](int i) const { return v[i]; }
  const int32_t* begin() const { return v.data(); }
  const int32_t* end() const { return v.data() + size; }
  // The face opposite vertex position i.
  Simplex Face(int i) const;
  bool operator==(const Simplex& o) const;
  bool operator<(const Simplex& o) const;
};

struct SimplexHash {
  size_t operator()(const Simplex& s) const;
};

// Sorts the vertices in place and returns the sign of the sorting
// permutation, or 0 when a vertex repeats.
int Canonicalize(Simplex* s);

// Simplicial complex with vertices in a metric model. Every listed simplex has
// all its faces listed; 0-simplices are exactly the vertices, indexed by vertex
// id. Simplex volumes come from the Gram (Cayley-Menger) determinant of edge
// lengths. Instances are immutable and shared through shared_ptr.
class GeometricComplex {
 public:
  // Builds the closure of the generators. Coordinates are stored with stride
  // metric.dims(). Throws ArgumentError on bad vertex ids, repeated vertices,
  // or simplices whose edge lengths are not realizable in Euclidean space.
  static std::shared_ptr<const GeometricComplex> Create(Metric metric, std::vector<double> coords,
                                                        const std::vector<Simplex>& generators);
  static std::shared_ptr<const GeometricComplex> Create(
      Metric metric, std::shared_ptr<const std::vector<double>> coords,
      const std::vector<Simplex>& generators);

  // Complex on the closure of a subset of this complex's simplices, sharing
  // vertex ids and coordinates.
  std::shared_ptr<const GeometricComplex> Subcomplex(
      const std::vector<std::pair<int, int>>& dim_and_index) const;

  int dim() const { return static_cast<int>(simplices_.size()) - 1; }
  int num_vertices() const { return num_vertices_; }
  int num_simplices(int k) const {
    return k >= 0 && k <= dim() ? static_cast<int>(simplices_[k].size()) : 0;
  }
  const Simplex& simplex(int k, int i) const { return simplices_[k][i]; }
  // Index of a canonical simplex, or -1.
  int Find(const Simplex& s) const;
  double volume(int k, int i) const { return volumes_[k][i]; }
  // For k >= 1, the k+1 faces; face j omits vertex position j.
  std::span<const int> faces(int k, int i) const {
    return {faces_[k].data() + static_cast<size_t>(i) * (k + 1), static_cast<size_t>(k + 1)};
  }
  // For each k-simplex, the indices of (k+1)-simplices having it as a face.
  std::vector<std::vector<int>> Cofaces(int k) const;

  const Metric& metric() const { return metric_; }
  const double* point(int v) const { return coords_->data() + static_cast<size_t>(v) * metric_.dims(); }
  const std::shared_ptr<const std::vector<double>>& coords() const { return coords_; }
  double distance(int a, int b) const { return metric_.Distance(point(a), point(b)); }
  double edge_length(int a, int b) const { return metric_.EdgeLength(point(a), point(b)); }

  // Vertices that belong to at least one simplex of dimension >= 1, plus
  // isolated vertices listed as generators.
  const std::vector<char>& used_vertices() const { return used_; }
  // Largest vertex-to-vertex metric distance over used vertices.
  double Diameter() const;

  // Gram matrix of the edge vectors from the first vertex, k x k row-major.
  void Gram(const Simplex& s, double* out) const;
  double SimplexVolume(const Simplex& s) const;

 private:
  GeometricComplex() = default;
  void Build(const std::vector<Simplex>& generators);

  Metric metric_;
  std::shared_ptr<const std::vector<double>> coords_;
  int num_vertices_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::unordered_map<Simplex, int, SimplexHash>> index_;
  std::vector<std::vector<double>> volumes_;
  std::vector<std::vector<int>> faces_;
  std::vector<char> used_;
};

using ComplexPtr = std::shared_ptr<const GeometricComplex>;

// Determinant of a small dense n x n row-major matrix (destroys a copy).
double SmallDeterminant(const double* m, int n);

}  // namespace currentlab

#endif  // CURRENTLAB_COMPLEX_H_
