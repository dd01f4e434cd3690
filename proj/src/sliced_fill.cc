#include "currentlab/sliced_fill.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "currentlab/parallel.h"

namespace currentlab {

std::vector<double> TrapezoidWeights(int n, double h) {
  std::vector<double> w(n, h);
  if (n == 1) return {0.0};
  w.front() = w.back() = 0.5 * h;
  return w;
}

std::vector<double> HalfGridWeights(int n, double h) {
  const int intervals = n - 1;
  if (intervals < 2) return TrapezoidWeights(n, h);
  std::vector<double> w(n, 0.0);
  const int paired = intervals - intervals % 2;
  for (int i = 0; i < paired; i += 2) {
    w[i] += h;
    w[i + 2] += h;
  }
  if (paired < intervals) {
    w[paired] += 0.5 * h;
    w[paired + 1] += 0.5 * h;
  }
  return w;
}

BallSetup PrepareBall(const SimplicialCurrent& t, const PLFunction& rho, double r) {
  if (!(r > 0)) throw ArgumentError("radius must be positive");
  BallSetup out;
  out.t = t;
  out.r = r;
  out.ball = RestrictSubdivided(t, rho, r, true, &out.refinement);
  out.level = out.refinement.level();
  if (out.refinement.snapped()) {
    out.warnings.push_back("radius snapped to vertex value " + std::to_string(out.level));
  }
  if (out.refinement.degenerate_pieces() > 0) {
    out.warnings.push_back(std::to_string(out.refinement.degenerate_pieces()) +
                           " pieces below the volume floor");
  }
  const PLFunction& f = out.refinement.function();
  for (int v : out.ball.SupportVertices()) {
    if (f.value(v) == out.level) out.sphere_vertices.push_back(v);
  }
  return out;
}

BallSetup PrepareBall(const SimplicialCurrent& t, int p, double r) {
  if (p < 0 || p >= t.complex()->num_vertices()) throw ArgumentError("center is not a vertex");
  BallSetup out = PrepareBall(t, PLFunction::DistanceFromVertex(t.complex(), p), r);
  out.p = p;
  return out;
}

int SnapWitness(const BallSetup& ball, std::span<const double> point) {
  if (ball.sphere_vertices.empty()) throw ArgumentError("the discrete sphere is empty");
  const GeometricComplex& cx = *ball.refinement.refined();
  int best = -1;
  double dbest = std::numeric_limits<double>::infinity();
  for (int v : ball.sphere_vertices) {
    double d = cx.metric().Distance(cx.point(v), point.data());
    if (d < dbest) {
      dbest = d;
      best = v;
    }
  }
  return best;
}

double SliceBoundaryFill(const SimplicialCurrent& slice) {
  SimplicialCurrent b = Boundary(slice);
  if (b.is_zero()) return 0.0;
  if (b.dim() == 0) return FillingVolume0d(b).value;
  return FillingVolume(b, slice.complex()).value;
}

SlicedFillReport IntegrateSlices(
    const BallSetup& ball, const std::vector<PLFunction>& fs, int grid, int threads,
    const std::function<double(const SimplicialCurrent& slice)>& node_value) {
  if (grid < 2) throw ArgumentError("grid needs at least 2 nodes per axis");
  SlicedFillReport rep;
  rep.p = ball.p;
  rep.r = ball.r;
  rep.ball_mass = Mass(ball.ball);
  rep.warnings = ball.warnings;
  const int k = static_cast<int>(fs.size());
  if (k > ball.ball.dim()) throw ArgumentError("more slicing functions than the ball's dimension");
  std::vector<int> verts = ball.ball.SupportVertices();
  std::vector<std::vector<double>> wf(k), wc(k);
  for (int j = 0; j < k; ++j) {
    rep.lipschitz.push_back(fs[j].lip());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int v : verts) {
      lo = std::min(lo, fs[j].value(v));
      hi = std::max(hi, fs[j].value(v));
    }
    if (verts.empty()) lo = hi = 0.0;
    rep.box.push_back({lo, hi});
    double h = (hi - lo) / (grid - 1);
    std::vector<double> axis(grid);
    for (int i = 0; i < grid; ++i) axis[i] = lo + i * h;
    axis.back() = hi;
    rep.nodes.push_back(axis);
    wf[j] = TrapezoidWeights(grid, h);
    wc[j] = HalfGridWeights(grid, h);
  }
  int total = 1;
  for (int j = 0; j < k; ++j) total *= grid;
  rep.values.assign(total, 0.0);
  std::vector<char> failed(total, 0);
  std::vector<int> snapped(total, 0);
  std::vector<std::string> first_error(total);
  if (!ball.ball.is_zero()) {
    ParallelFor(total, threads, [&](int node) {
      std::vector<double> t(k);
      int rest = node;
      for (int j = k - 1; j >= 0; --j) {
        t[j] = rep.nodes[j][rest % grid];
        rest /= grid;
      }
      try {
        SliceResult s = IteratedSlice(ball.ball, fs, t);
        snapped[node] = s.snapped_levels;
        rep.values[node] = node_value(s.current);
      } catch (const std::exception& e) {
        failed[node] = 1;
        first_error[node] = e.what();
      }
    });
  }
  double fine = 0.0, coarse = 0.0;
  for (int node = 0; node < total; ++node) {
    double a = 1.0, b = 1.0;
    int rest = node;
    for (int j = k - 1; j >= 0; --j) {
      a *= wf[j][rest % grid];
      b *= wc[j][rest % grid];
      rest /= grid;
    }
    fine += a * rep.values[node];
    coarse += b * rep.values[node];
    rep.snapped_levels += snapped[node];
    if (failed[node]) {
      if (rep.failed_nodes == 0) rep.warnings.push_back("node failed: " + first_error[node]);
      ++rep.failed_nodes;
    }
  }
  rep.integral = fine;
  rep.richardson_error = std::abs(fine - coarse) / 3.0;
  if (rep.failed_nodes > 0) {
    rep.warnings.push_back(std::to_string(rep.failed_nodes) + " grid nodes skipped");
  }
  return rep;
}

namespace {

void FinishBound(SlicedFillReport* rep) {
  double lip = 1.0;
  for (double l : rep->lipschitz) lip *= l;
  if (!(lip > 0)) {
    rep->mass_lower_bound = 0.0;
    rep->warnings.push_back("a slicing function is constant on the ball");
  } else {
    rep->mass_lower_bound = rep->integral / lip;
  }
  rep->tolerance = 2.0 * rep->richardson_error / (lip > 0 ? lip : 1.0) + 1e-6;
  rep->bound_holds = rep->mass_lower_bound <= rep->ball_mass + rep->tolerance;
}

std::vector<PLFunction> WitnessFunctions(const BallSetup& ball, const std::vector<int>& witnesses) {
  std::vector<PLFunction> fs;
  for (int w : witnesses) fs.push_back(PLFunction::DistanceFromVertex(ball.refinement.refined(), w));
  return fs;
}

}  // namespace

SlicedFillReport SlicedFill(const SimplicialCurrent& t, int p, double r,
                            const std::vector<PLFunction>& fs, int grid, int threads) {
  if (static_cast<int>(fs.size()) > t.dim() - 1) {
    throw ArgumentError("sliced filling needs k <= m - 1 functions");
  }
  BallSetup ball = PrepareBall(t, p, r);
  std::vector<PLFunction> carried;
  for (const PLFunction& f : fs) carried.push_back(ball.refinement.Transfer(f));
  SlicedFillReport rep = IntegrateSlices(ball, carried, grid, threads, SliceBoundaryFill);
  FinishBound(&rep);
  return rep;
}

SlicedFillReport SlicedFillWitnesses(const BallSetup& ball, const std::vector<int>& witnesses,
                                     int grid, int threads) {
  if (static_cast<int>(witnesses.size()) > ball.t.dim() - 1) {
    throw ArgumentError("sliced filling needs k <= m - 1 witnesses");
  }
  SlicedFillReport rep =
      IntegrateSlices(ball, WitnessFunctions(ball, witnesses), grid, threads, SliceBoundaryFill);
  const GeometricComplex& cx = *ball.refinement.refined();
  rep.witnesses = witnesses;
  for (int w : witnesses) {
    rep.witness_points.emplace_back(cx.point(w), cx.point(w) + cx.metric().dims());
  }
  FinishBound(&rep);
  return rep;
}

double HFunction(const BallSetup& ball, const std::vector<PLFunction>& fs,
                 const std::vector<double>& levels, std::vector<std::string>* warnings) {
  const int m = ball.t.dim();
  if (static_cast<int>(fs.size()) != m - 1 || levels.size() != fs.size()) {
    throw ArgumentError("h needs m - 1 functions and levels");
  }
  if (ball.ball.is_zero()) return 0.0;
  SliceResult s = IteratedSlice(ball.ball, fs, levels);
  if (warnings) warnings->insert(warnings->end(), s.warnings.begin(), s.warnings.end());
  SimplicialCurrent pts = Boundary(s.current);
  const GeometricComplex& cx = *pts.complex();
  std::vector<int> support;
  for (const auto& [v, c] : pts.coeffs()) support.push_back(v);
  // Merge near-duplicates created by slicing.
  const double merge = 1e-9 * ball.r;
  std::vector<int> distinct;
  for (int v : support) {
    bool dup = false;
    for (int u : distinct)
      if (cx.distance(u, v) <= merge) dup = true;
    if (!dup) distinct.push_back(v);
  }
  if (distinct.size() < 2) return 0.0;
  double h = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < distinct.size(); ++a)
    for (size_t b = a + 1; b < distinct.size(); ++b) h = std::min(h, cx.distance(distinct[a], distinct[b]));
  return h;
}

double HFunction(const BallSetup& ball, const std::vector<int>& witnesses,
                 const std::vector<double>& levels, std::vector<std::string>* warnings) {
  return HFunction(ball, WitnessFunctions(ball, witnesses), levels, warnings);
}

namespace {

// Sphere vertices ordered by farthest-point traversal from the first one.
std::vector<int> FarthestOrder(const BallSetup& ball) {
  const GeometricComplex& cx = *ball.refinement.refined();
  std::vector<int> pool = ball.sphere_vertices;
  std::vector<int> order;
  if (pool.empty()) return order;
  std::vector<double> dmin(pool.size(), std::numeric_limits<double>::infinity());
  std::vector<char> taken(pool.size(), 0);
  int cur = 0;
  for (size_t step = 0; step < pool.size(); ++step) {
    taken[cur] = 1;
    order.push_back(pool[cur]);
    int next = -1;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      dmin[i] = std::min(dmin[i], cx.distance(pool[i], pool[cur]));
      if (next < 0 || dmin[i] > dmin[next]) next = static_cast<int>(i);
    }
    if (next < 0) break;
    cur = next;
  }
  return order;
}

// Seeds with the first k farthest-point vertices, then tries single swaps from
// the same ordering until the budget is spent. The evaluation sequence does
// not depend on the budget, so a larger budget never does worse.
template <typename Eval>
std::vector<int> WitnessSearch(const std::vector<int>& order, int k, int budget, Eval eval,
                               double* best_value, int* evaluations) {
  std::vector<int> best(order.begin(), order.begin() + std::min<size_t>(k, order.size()));
  while (static_cast<int>(best.size()) < k) best.push_back(order.front());
  *best_value = eval(best);
  *evaluations = 1;
  bool improved = true;
  while (improved && *evaluations < budget) {
    improved = false;
    for (int j = 0; j < k && *evaluations < budget; ++j) {
      for (int cand : order) {
        if (*evaluations >= budget) break;
        if (std::find(best.begin(), best.end(), cand) != best.end()) continue;
        std::vector<int> trial = best;
        trial[j] = cand;
        double v = eval(trial);
        ++*evaluations;
        if (v > *best_value) {
          *best_value = v;
          best = trial;
          improved = true;
        }
      }
    }
  }
  return best;
}

}  // namespace

SfkReport SfK(const SimplicialCurrent& t, int p, double r, int k, int candidates, int grid,
              int threads) {
  if (k < 0 || k > t.dim() - 1) throw ArgumentError("SF_k needs 0 <= k <= m - 1");
  if (candidates < 1) throw ArgumentError("candidate budget must be at least 1");
  SfkReport out;
  out.k = k;
  BallSetup ball = PrepareBall(t, p, r);
  if (k == 0) {
    out.best = IntegrateSlices(ball, {}, grid, threads, SliceBoundaryFill);
    FinishBound(&out.best);
    out.value = out.best.integral;
    out.evaluations = 1;
    return out;
  }
  if (ball.sphere_vertices.empty()) {
    out.warnings.push_back("the discrete sphere is empty");
    out.best.p = p;
    out.best.r = r;
    out.best.ball_mass = Mass(ball.ball);
    return out;
  }
  std::vector<int> order = FarthestOrder(ball);
  std::vector<int> best = WitnessSearch(
      order, k, candidates,
      [&](const std::vector<int>& w) { return SlicedFillWitnesses(ball, w, grid, threads).integral; },
      &out.value, &out.evaluations);
  out.best = SlicedFillWitnesses(ball, best, grid, threads);
  out.value = out.best.integral;
  out.warnings = out.best.warnings;
  return out;
}

TetraReport TetraCheck(const SimplicialCurrent& t, int p, double r, double c, double beta,
                       int samples, int candidates) {
  if (!(c > 0)) throw ArgumentError("tetrahedral constant C must be positive");
  if (!(beta > 0 && beta < 1)) throw ArgumentError("beta must lie in (0, 1)");
  if (samples < 2) throw ArgumentError("need at least 2 samples per axis");
  if (candidates < 1) throw ArgumentError("candidate budget must be at least 1");
  const int m = t.dim();
  if (m < 2) throw ArgumentError("tetrahedral property needs dimension at least 2");
  TetraReport rep;
  rep.p = p;
  rep.r = r;
  rep.c = c;
  rep.beta = beta;
  BallSetup ball = PrepareBall(t, p, r);
  rep.warnings = ball.warnings;
  rep.ball_mass = Mass(ball.ball);
  const double lo = (1 - beta) * r, hi = (1 + beta) * r;
  const double step = (hi - lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) rep.samples.push_back(lo + i * step);
  const int k = m - 1;
  int total = 1;
  for (int j = 0; j < k; ++j) total *= samples;

  auto sweep = [&](const std::vector<int>& w, std::vector<double>* values) {
    std::vector<PLFunction> fs;
    for (int v : w) fs.push_back(PLFunction::DistanceFromVertex(ball.refinement.refined(), v));
    values->assign(total, 0.0);
    double mn = std::numeric_limits<double>::infinity();
    for (int node = 0; node < total; ++node) {
      std::vector<double> lv(k);
      int rest = node;
      for (int j = k - 1; j >= 0; --j) {
        lv[j] = rep.samples[rest % samples];
        rest /= samples;
      }
      (*values)[node] = HFunction(ball, fs, lv);
      mn = std::min(mn, (*values)[node]);
    }
    return mn;
  };

  if (ball.sphere_vertices.empty()) {
    rep.warnings.push_back("the discrete sphere is empty");
    rep.h_values.assign(total, 0.0);
  } else {
    std::vector<int> order = FarthestOrder(ball);
    std::vector<double> scratch;
    double best_min = 0.0;
    rep.witnesses = WitnessSearch(
        order, k, candidates, [&](const std::vector<int>& w) { return sweep(w, &scratch); }, &best_min,
        &rep.evaluations);
    sweep(rep.witnesses, &rep.h_values);
    const GeometricComplex& cx = *ball.refinement.refined();
    for (int w : rep.witnesses) rep.witness_points.emplace_back(cx.point(w), cx.point(w) + cx.metric().dims());
  }
  rep.min_h = *std::min_element(rep.h_values.begin(), rep.h_values.end());
  std::vector<double> w = TrapezoidWeights(samples, step);
  for (int node = 0; node < total; ++node) {
    double a = 1.0;
    int rest = node;
    for (int j = k - 1; j >= 0; --j) {
      a *= w[rest % samples];
      rest /= samples;
    }
    rep.h_integral += a * rep.h_values[node];
  }
  rep.passed = rep.min_h >= c * r;
  rep.integral_target = c * std::pow(2 * beta, k) * std::pow(r, m);
  rep.integral_passed = rep.h_integral >= rep.integral_target;
  if (rep.passed || rep.integral_passed) {
    rep.mass_bound_holds = rep.ball_mass >= rep.integral_target * (1 - 1e-9);
  }
  return rep;
}

nlohmann::json ToJson(const SlicedFillReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["r"] = r.r;
  if (r.epsilon > 0) j["epsilon"] = r.epsilon;
  j["witnesses"] = r.witnesses;
  j["witness_points"] = r.witness_points;
  j["lipschitz"] = r.lipschitz;
  nlohmann::json box = nlohmann::json::array();
  for (const auto& [lo, hi] : r.box) box.push_back({lo, hi});
  j["box"] = box;
  j["grid"] = r.nodes;
  j["values"] = r.values;
  j["integral"] = r.integral;
  j["richardson_error"] = r.richardson_error;
  j["mass_lower_bound"] = r.mass_lower_bound;
  j["ball_mass"] = r.ball_mass;
  j["tolerance"] = r.tolerance;
  j["bound_holds"] = r.bound_holds;
  j["failed_nodes"] = r.failed_nodes;
  j["snapped_levels"] = r.snapped_levels;
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::json ToJson(const SfkReport& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["k"] = r.k;
  j["evaluations"] = r.evaluations;
  j["best"] = ToJson(r.best);
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::json ToJson(const TetraReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["r"] = r.r;
  j["C"] = r.c;
  j["beta"] = r.beta;
  j["witnesses"] = r.witnesses;
  j["witness_points"] = r.witness_points;
  j["samples"] = r.samples;
  j["h_values"] = r.h_values;
  j["min_h"] = r.min_h;
  j["h_integral"] = r.h_integral;
  j["integral_target"] = r.integral_target;
  j["ball_mass"] = r.ball_mass;
  j["passed"] = r.passed;
  j["integral_passed"] = r.integral_passed;
  j["mass_bound_holds"] = r.mass_bound_holds;
  j["evaluations"] = r.evaluations;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace currentlab
