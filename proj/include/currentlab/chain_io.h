#ifndef CURRENTLAB_CHAIN_IO_H_
#define CURRENTLAB_CHAIN_IO_H_

#include <istream>
#include <string>
#include <vector>

#include "json.hpp"

#include "currentlab/current.h"
#include "currentlab/metric_space.h"

namespace currentlab {

// Chain JSON:
//   {"complex": {"vertices": [[x, y, ...], ...],
//                "simplices": {"1": [[i, j], ...], "2": [[i, j, k], ...]},
//                "metric": {...}},            (optional, default Euclidean)
//    "current": {"dim": k, "coeffs": [[simplex_index, c], ...]}}
// simplex_index refers to the listed simplices of dimension k (vertex index
// for k = 0). "metric" may be {"kind": "euclidean"}, {"kind": "sphere",
// "radius": R}, {"kind": "flat_torus", "periods": [...]} or {"kind": "matrix",
// "distances": [[...]]}, each with an optional "interval_dims" count of
// appended product coordinates.
SimplicialCurrent ChainFromJson(const nlohmann::json& doc);
nlohmann::json ChainToJson(const SimplicialCurrent& t);
// Parses text, reporting syntax errors with line and column.
nlohmann::json ParseJsonText(std::istream& in);

ComplexPtr ComplexFromJson(const nlohmann::json& doc);
nlohmann::json ComplexToJson(const GeometricComplex& complex);

// OFF mesh: the polygonal faces are fanned into triangles. Returns the complex;
// the fundamental 2-chain orients triangles as listed.
struct OffMesh {
  ComplexPtr complex;
  SimplicialCurrent surface;
};
OffMesh ReadOff(std::istream& in);

// Point-set JSON: {"points": [[x..], ...] or "distances": [[...]],
//                  "theta": [...], "sigma": [...]}.
struct SignedPointSet {
  FiniteMetricSpace space;
  std::vector<int> theta;
  std::vector<int> sigma;
};
SignedPointSet PointSetFromJson(const nlohmann::json& doc);

}  // namespace currentlab

#endif  // CURRENTLAB_CHAIN_IO_H_
