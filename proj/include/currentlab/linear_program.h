#ifndef CURRENTLAB_LINEAR_PROGRAM_H_
#define CURRENTLAB_LINEAR_PROGRAM_H_

#include <string>
#include <vector>

namespace currentlab {

// minimize c'x subject to A x = b, x >= 0, with A given as triplets.
struct LinearProgram {
  struct Entry {
    int row;
    int col;
    double value;
  };
  int rows = 0;
  int cols = 0;
  std::vector<Entry> entries;
  std::vector<double> b;
  std::vector<double> c;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };
enum class LPMethod { kAuto, kSimplex, kInteriorPoint };

struct LPSolution {
  LPStatus status = LPStatus::kOptimal;
  std::vector<double> x;
  // Equality multipliers: c - A'y >= 0 at optimality.
  std::vector<double> y;
  double objective = 0.0;
  // b'y adjusted for any violated reduced costs; a lower bound on the optimum.
  double dual_bound = 0.0;
  // max |A x - b|.
  double residual = 0.0;
  int iterations = 0;
  std::string method;
};

// Problems with rows * cols up to this size go to the dense simplex solver in
// kAuto mode.
inline constexpr double kDenseSimplexLimit = 2e5;

// Dense two-phase primal simplex (largest reduced cost, Bland's rule after a
// run of degenerate pivots) or a Mehrotra predictor-corrector interior point
// method on the sparse normal equations. Both are deterministic.
LPSolution SolveLP(const LinearProgram& lp, LPMethod method = LPMethod::kAuto);

std::string ToString(LPStatus status);

}  // namespace currentlab

#endif  // CURRENTLAB_LINEAR_PROGRAM_H_
