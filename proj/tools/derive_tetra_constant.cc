// Recomputes the tetrahedral constant of Euclidean 3-space: the best (over
// two unit witnesses q1, q2) infimum over levels (t1, t2) in [1/2, 3/2]^2 of
// h(0, 1, t1, t2), the separation of the points x on the unit sphere with
// |x - q1| = t1 and |x - q2| = t2.
//
// With q1 = e1 and q2 = (g, sqrt(1 - g^2), 0) those points are
// (a, (b - g a) / s, +-z) with a = 1 - t1^2 / 2, b = 1 - t2^2 / 2 and
// z^2 = 1 - a^2 - ((b - g a) / s)^2, so h = 2 z when z^2 > 0 and 0 otherwise.
// Only the Gram cosine g matters by symmetry.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "currentlab/sliced_fill.h"

namespace {

double Separation(double g, double t1, double t2) {
  double s2 = 1 - g * g;
  if (s2 <= 0) return 0.0;
  double a = 1 - t1 * t1 / 2, b = 1 - t2 * t2 / 2;
  double y = (b - g * a) / std::sqrt(s2);
  double z2 = 1 - a * a - y * y;
  return z2 > 0 ? 2 * std::sqrt(z2) : 0.0;
}

struct Minimum {
  double h = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

Minimum InfOverSquare(double g, int n) {
  Minimum best{std::numeric_limits<double>::infinity(), 0, 0};
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      double t1 = 0.5 + static_cast<double>(i) / n, t2 = 0.5 + static_cast<double>(j) / n;
      double h = Separation(g, t1, t2);
      if (h < best.h) best = {h, t1, t2};
    }
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int gram_steps = argc > 1 ? std::atoi(argv[1]) : 4000;
  int level_steps = argc > 2 ? std::atoi(argv[2]) : 200;
  if (gram_steps < 2 || level_steps < 2) {
    std::fprintf(stderr, "usage: derive_tetra_constant [gram_steps] [level_steps]\n");
    return 2;
  }
  double best = 0.0, best_g = 0.0;
  for (int k = 1; k < gram_steps; ++k) {
    double g = -1 + 2.0 * k / gram_steps;
    Minimum m = InfOverSquare(g, level_steps);
    if (m.h > best) {
      best = m.h;
      best_g = g;
    }
  }
  // The two corners that cannot both be nonempty.
  double g_low = 1.0, g_high = -1.0;
  for (int k = 1; k < gram_steps; ++k) {
    double g = -1 + 2.0 * k / gram_steps;
    if (Separation(g, 0.5, 0.5) > 0) g_low = std::min(g_low, g);
    if (Separation(g, 0.5, 1.5) > 0) g_high = std::max(g_high, g);
  }
  std::printf("corner (1/2, 1/2) nonempty for g >= %.6f\n", g_low);
  std::printf("corner (1/2, 3/2) nonempty for g <= %.6f\n", g_high);
  for (double g : {0.0, 0.371, 0.5, 0.53125, 0.75}) {
    Minimum m = InfOverSquare(g, level_steps);
    std::printf("g = %.5f: inf h = %.6f at (%.3f, %.3f)\n", g, m.h, m.t1, m.t2);
  }
  std::printf("best g = %.6f\n", best_g);
  std::printf("C_E3 = %.17g\n", best);
  std::printf("repository constant = %.17g\n", currentlab::kEuclidean3TetraConstant);
  return best == currentlab::kEuclidean3TetraConstant ? 0 : 1;
}
