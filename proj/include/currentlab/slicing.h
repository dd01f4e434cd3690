#ifndef CURRENTLAB_SLICING_H_
#define CURRENTLAB_SLICING_H_

#include <span>
#include <string>
#include <vector>

#include "currentlab/current.h"
#include "currentlab/refinement.h"

namespace currentlab {

struct SliceResult {
  SimplicialCurrent current;
  std::vector<double> requested_levels;
  // Levels actually used after snapping onto nearby vertex values.
  std::vector<double> levels;
  // The slicing functions carried to the refined complex.
  std::vector<PLFunction> functions;
  ComplexPtr refined_complex;
  int snapped_levels = 0;
  int non_generic_levels = 0;
  int degenerate_pieces = 0;
  std::vector<std::string> warnings;
};

// T restricted to the closed sublevel set {f <= s} (or its complement when
// below is false), computed exactly after cutting the support along f = s.
// The result lives on the refined complex; refinement is returned if asked.
SimplicialCurrent RestrictSubdivided(const SimplicialCurrent& t, const PLFunction& f, double s,
                                     bool below = true, Refinement* refinement = nullptr);

// <T, f, s> = boundary(T restricted to {f <= s}) - (boundary T) restricted to
// {f <= s}. f must give values for every vertex id of T's complex.
SliceResult Slice(const SimplicialCurrent& t, const PLFunction& f, double s);

// Left-to-right iterated slice by functions f_1..f_j at levels t_1..t_j.
SliceResult IteratedSlice(const SimplicialCurrent& t, const std::vector<PLFunction>& fs,
                          const std::vector<double>& levels);

struct CoareaProfile {
  double integral = 0.0;
  // Lip(f) * M(T).
  double bound = 0.0;
  double step = 0.0;
  double max_slice_mass = 0.0;
  std::vector<double> levels;
  std::vector<double> masses;
};

// Trapezoid rule for s -> M(<T, f, s>) on [min f, max f] over T's support.
// The two end samples sit a relative 1e-6 inside the range.
CoareaProfile ComputeCoareaProfile(const SimplicialCurrent& t, const PLFunction& f, int samples,
                                   int threads = 1);

struct BallResult {
  SimplicialCurrent ball;
  // rho on the refined complex; the sphere vertices are where rho == level.
  PLFunction rho;
  double level = 0.0;
  std::vector<std::string> warnings;
};

// S(p, r): T restricted to {rho <= r} after cutting along rho = r.
BallResult Ball(const SimplicialCurrent& t, const PLFunction& rho, double r);
BallResult Ball(const SimplicialCurrent& t, int p, double r);

// The slice of T by rho at r.
SliceResult Sphere(const SimplicialCurrent& t, const PLFunction& rho, double r);
SliceResult Sphere(const SimplicialCurrent& t, int p, double r);

// Mass of T in the open band {r - delta < rho < r + delta}.
double AnnulusMass(const SimplicialCurrent& t, const PLFunction& rho, double r, double delta);

}  // namespace currentlab

#endif  // CURRENTLAB_SLICING_H_
