#include "currentlab/slicing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "currentlab/parallel.h"

namespace currentlab {

namespace {

std::string Describe(double requested, double used) {
  std::ostringstream os;
  os.precision(17);
  os << "level " << requested << " snapped to vertex value " << used;
  return os.str();
}

void CheckCovers(const std::vector<double>& values, const GeometricComplex& cx) {
  if (static_cast<int>(values.size()) < cx.num_vertices()) {
    throw ArgumentError("function does not give values on all of the current's vertices");
  }
}

// Cuts the support of t along f = s and returns t carried to the refined
// complex.
SimplicialCurrent CutSupport(const SimplicialCurrent& t, const PLFunction& f, double s,
                             Refinement* out) {
  CheckCovers(f.values(), *t.complex());
  ComplexPtr support = SupportComplex(t);
  *out = SubdivideAtLevel(support, f, s);
  return out->Transfer(Reindex(t, support));
}

SliceResult SliceWith(const SimplicialCurrent& t, const PLFunction& f, double s, Refinement* r) {
  if (t.dim() < 1) throw ArgumentError("cannot slice a 0-dimensional current");
  SliceResult out;
  out.requested_levels = {s};
  SimplicialCurrent fine = CutSupport(t, f, s, r);
  const PLFunction& g = r->function();
  SimplicialCurrent a = RestrictSublevel(fine, g, r->level());
  out.current = Boundary(a) - RestrictSublevel(Boundary(fine), g, r->level());
  out.levels = {r->level()};
  out.functions = {g};
  out.refined_complex = r->refined();
  if (r->snapped()) {
    out.snapped_levels = 1;
    out.warnings.push_back(Describe(s, r->level()));
  }
  if (r->flat_simplices() > 0) {
    out.non_generic_levels = 1;
    out.warnings.push_back("non-generic level: " + std::to_string(r->flat_simplices()) +
                           " simplices lie in the level set");
  }
  out.degenerate_pieces = r->degenerate_pieces();
  if (r->degenerate_pieces() > 0) {
    out.warnings.push_back(std::to_string(r->degenerate_pieces()) +
                           " pieces below the volume floor");
  }
  return out;
}

}  // namespace

SimplicialCurrent RestrictSubdivided(const SimplicialCurrent& t, const PLFunction& f, double s,
                                     bool below, Refinement* refinement) {
  Refinement local;
  Refinement* r = refinement ? refinement : &local;
  SimplicialCurrent fine = CutSupport(t, f, s, r);
  SimplicialCurrent lower = RestrictSublevel(fine, r->function(), r->level());
  return below ? lower : fine - lower;
}

SliceResult Slice(const SimplicialCurrent& t, const PLFunction& f, double s) {
  Refinement r;
  return SliceWith(t, f, s, &r);
}

SliceResult IteratedSlice(const SimplicialCurrent& t, const std::vector<PLFunction>& fs,
                          const std::vector<double>& levels) {
  if (fs.size() != levels.size()) throw ArgumentError("need one level per slicing function");
  if (static_cast<int>(fs.size()) > t.dim()) {
    throw ArgumentError("more slicing functions than the current's dimension");
  }
  SliceResult out;
  out.current = t;
  out.refined_complex = t.complex();
  out.requested_levels = levels;
  std::vector<std::vector<double>> values;
  std::vector<double> lips;
  for (const PLFunction& f : fs) {
    CheckCovers(f.values(), *t.complex());
    values.emplace_back(f.values().begin(), f.values().begin() + t.complex()->num_vertices());
    lips.push_back(f.lip());
  }
  for (size_t j = 0; j < fs.size(); ++j) {
    Refinement r;
    PLFunction fj(out.refined_complex, values[j], lips[j]);
    SliceResult step = SliceWith(out.current, fj, levels[j], &r);
    for (size_t i = 0; i < fs.size(); ++i) values[i] = r.TransferValues(values[i]);
    out.current = std::move(step.current);
    out.refined_complex = step.refined_complex;
    out.levels.push_back(step.levels[0]);
    out.snapped_levels += step.snapped_levels;
    out.non_generic_levels += step.non_generic_levels;
    out.degenerate_pieces += step.degenerate_pieces;
    out.warnings.insert(out.warnings.end(), step.warnings.begin(), step.warnings.end());
  }
  for (size_t i = 0; i < fs.size(); ++i) {
    out.functions.emplace_back(out.refined_complex, values[i], lips[i]);
  }
  return out;
}

CoareaProfile ComputeCoareaProfile(const SimplicialCurrent& t, const PLFunction& f, int samples,
                                   int threads) {
  if (samples < 2) throw ArgumentError("coarea profile needs at least 2 samples");
  CheckCovers(f.values(), *t.complex());
  CoareaProfile out;
  out.bound = f.lip() * Mass(t);
  std::vector<int> verts = t.SupportVertices();
  if (verts.empty() || t.dim() == 0) return out;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int v : verts) {
    lo = std::min(lo, f.value(v));
    hi = std::max(hi, f.value(v));
  }
  if (!(hi > lo)) return out;
  const double nudge = 1e-6 * (hi - lo);
  out.step = (hi - lo) / (samples - 1);
  out.levels.resize(samples);
  out.masses.resize(samples);
  for (int i = 0; i < samples; ++i) out.levels[i] = lo + i * out.step;
  out.levels.front() = lo + nudge;
  out.levels.back() = hi - nudge;
  ParallelFor(samples, threads, [&](int i) {
    out.masses[i] = Mass(Slice(t, f, out.levels[i]).current);
  });
  for (int i = 0; i < samples; ++i) {
    double w = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
    out.integral += w * out.step * out.masses[i];
    out.max_slice_mass = std::max(out.max_slice_mass, out.masses[i]);
  }
  return out;
}

BallResult Ball(const SimplicialCurrent& t, const PLFunction& rho, double r) {
  if (!(r > 0)) throw ArgumentError("ball radius must be positive");
  BallResult out;
  Refinement ref;
  out.ball = RestrictSubdivided(t, rho, r, true, &ref);
  out.rho = ref.function();
  out.level = ref.level();
  if (ref.snapped()) out.warnings.push_back(Describe(r, ref.level()));
  if (ref.flat_simplices() > 0) out.warnings.push_back("non-generic radius");
  return out;
}

BallResult Ball(const SimplicialCurrent& t, int p, double r) {
  return Ball(t, PLFunction::DistanceFromVertex(t.complex(), p), r);
}

SliceResult Sphere(const SimplicialCurrent& t, const PLFunction& rho, double r) {
  if (!(r > 0)) throw ArgumentError("sphere radius must be positive");
  return Slice(t, rho, r);
}

SliceResult Sphere(const SimplicialCurrent& t, int p, double r) {
  return Sphere(t, PLFunction::DistanceFromVertex(t.complex(), p), r);
}

double AnnulusMass(const SimplicialCurrent& t, const PLFunction& rho, double r, double delta) {
  if (!(delta > 0)) throw ArgumentError("annulus half-width must be positive");
  Refinement outer;
  SimplicialCurrent inside = RestrictSubdivided(t, rho, r + delta, true, &outer);
  if (inside.is_zero()) return 0.0;
  PLFunction g = outer.function();
  SimplicialCurrent band = RestrictSubdivided(inside, g, r - delta, false);
  return Mass(band);
}

}  // namespace currentlab
