#ifndef CURRENTLAB_REFINEMENT_H_
#define CURRENTLAB_REFINEMENT_H_

#include <vector>

#include "currentlab/current.h"
#include "currentlab/pl_function.h"

namespace currentlab {

// Levels closer than this fraction of the value range to a vertex value are
// moved onto that value, so no split produces a sliver thinner than the
// tolerance.
inline constexpr double kSnapRelative = 1e-7;
// Pieces whose volume is below this fraction of their parent's are counted.
inline constexpr double kVolumeFloor = 1e-12;

// A vertex created on edge (a, b) at parameter lambda measured from a, where a
// precedes b in lexicographic coordinate order.
struct SplitVertex {
  int a = 0;
  int b = 0;
  double lambda = 0.0;
};

// Result of cutting a complex so that {f <= level} becomes a subcomplex.
// Every edge whose endpoint values lie strictly on opposite sides of the level
// is split at the level; edges are processed in a geometric order (by
// endpoint coordinates), which makes the refinement conforming and independent
// of vertex numbering. Source vertex ids are preserved; new vertices are
// appended in split order.
class Refinement {
 public:
  const ComplexPtr& source() const { return source_; }
  const ComplexPtr& refined() const { return refined_; }
  double requested_level() const { return requested_level_; }
  double level() const { return level_; }
  bool snapped() const { return level_ != requested_level_; }
  int degenerate_pieces() const { return degenerate_pieces_; }
  // Maximal simplices lying entirely in the level set.
  int flat_simplices() const { return flat_simplices_; }
  const std::vector<SplitVertex>& new_vertices() const { return new_vertices_; }
  // The cutting function on the refined complex; exactly level at new vertices.
  const PLFunction& function() const { return function_; }

  // Carries a chain on the source complex to the refined complex.
  SimplicialCurrent Transfer(const SimplicialCurrent& t) const;
  // Extends vertex values linearly to the new vertices (same Lipschitz constant).
  PLFunction Transfer(const PLFunction& g) const;
  std::vector<double> TransferValues(const std::vector<double>& values) const;

 private:
  friend Refinement SubdivideAtLevel(ComplexPtr complex, const PLFunction& f, double level);

  ComplexPtr source_;
  ComplexPtr refined_;
  double requested_level_ = 0.0;
  double level_ = 0.0;
  int degenerate_pieces_ = 0;
  int flat_simplices_ = 0;
  std::vector<SplitVertex> new_vertices_;
  PLFunction function_;
  // pieces_[k] in CSR form: offsets_[k][i]..offsets_[k][i+1] index into
  // piece_index_[k] / piece_sign_[k].
  std::vector<std::vector<int>> offsets_;
  std::vector<std::vector<int>> piece_index_;
  std::vector<std::vector<int8_t>> piece_sign_;
};

// f must give a value for every vertex id of the complex.
Refinement SubdivideAtLevel(ComplexPtr complex, const PLFunction& f, double level);

// The level actually used for cutting f's range at s.
double SnapLevel(const std::vector<double>& values, const std::vector<char>& used, double s);

// Same chain on another complex that contains its simplices under the same
// vertex ids (e.g. a subcomplex or supercomplex).
SimplicialCurrent Reindex(const SimplicialCurrent& t, ComplexPtr target);

// Complex on the closure of the support of t, sharing vertex ids.
ComplexPtr SupportComplex(const SimplicialCurrent& t);

}  // namespace currentlab

#endif  // CURRENTLAB_REFINEMENT_H_
