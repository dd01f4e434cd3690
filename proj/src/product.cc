#include "currentlab/product.h"

#include <cmath>

namespace currentlab {

std::vector<int> PrismComplex::LiftMap(int layer) const {
  std::vector<int> out(base->num_vertices());
  for (int v = 0; v < base->num_vertices(); ++v) out[v] = Lift(v, layer);
  return out;
}

PrismComplex BuildPrism(ComplexPtr base, const std::vector<std::vector<double>>& layer_coords,
                        const Metric& metric) {
  const int layers = static_cast<int>(layer_coords.size()) - 1;
  if (layers < 1) throw ArgumentError("a prism needs at least two layers");
  const int n = base->num_vertices();
  const int dims = metric.dims();
  std::vector<double> coords;
  coords.reserve(static_cast<size_t>(n) * (layers + 1) * dims);
  for (const auto& layer : layer_coords) {
    if (static_cast<int>(layer.size()) != n * dims) throw ArgumentError("layer coordinates have the wrong size");
    coords.insert(coords.end(), layer.begin(), layer.end());
  }
  PrismComplex pc;
  pc.base = base;
  pc.layers = layers;
  std::vector<Simplex> gens;
  for (int v = 0; v < n; ++v) {
    if (!base->used_vertices()[v]) continue;
    for (int l = 0; l <= layers; ++l) gens.push_back(Simplex{pc.Lift(v, l)});
  }
  for (int k = 0; k <= base->dim(); ++k) {
    for (int i = 0; i < base->num_simplices(k); ++i) {
      const Simplex& s = base->simplex(k, i);
      for (int l = 0; l < layers; ++l) {
        for (int pos = 0; pos <= k; ++pos) {
          Simplex g;
          g.size = k + 2;
          for (int a = 0; a <= pos; ++a) g.v[a] = pc.Lift(s[a], l);
          for (int a = pos; a <= k; ++a) g.v[a + 1] = pc.Lift(s[a], l + 1);
          gens.push_back(g);
        }
      }
    }
  }
  pc.prism = GeometricComplex::Create(metric, std::move(coords), gens);
  return pc;
}

PrismComplex ProductComplex(ComplexPtr base, double epsilon, int layers) {
  if (!(epsilon > 0)) throw ArgumentError("interval length must be positive");
  if (layers < 1) throw ArgumentError("need at least one layer");
  Metric metric = base->metric().WithInterval();
  const int n = base->num_vertices();
  const int bd = base->metric().dims();
  std::vector<std::vector<double>> layer_coords(layers + 1);
  for (int l = 0; l <= layers; ++l) {
    double z = epsilon * l / layers;
    auto& c = layer_coords[l];
    c.reserve(static_cast<size_t>(n) * (bd + 1));
    for (int v = 0; v < n; ++v) {
      c.insert(c.end(), base->point(v), base->point(v) + bd);
      c.push_back(z);
    }
  }
  return BuildPrism(base, layer_coords, metric);
}

SimplicialCurrent ProductCurrent(const SimplicialCurrent& t, const PrismComplex& pc) {
  SimplicialCurrent src = t.complex() == pc.base ? t : Reindex(t, pc.base);
  const int k = src.dim();
  SimplicialCurrent out(pc.prism, k + 1);
  for (const auto& [i, c] : src.coeffs()) {
    const Simplex& s = pc.base->simplex(k, i);
    for (int l = 0; l < pc.layers; ++l) {
      for (int pos = 0; pos <= k; ++pos) {
        Simplex g;
        g.size = k + 2;
        for (int a = 0; a <= pos; ++a) g.v[a] = pc.Lift(s[a], l);
        for (int a = pos; a <= k; ++a) g.v[a + 1] = pc.Lift(s[a], l + 1);
        out.AddSimplex(g, pos % 2 == 0 ? c : -c);
      }
    }
  }
  return out;
}

SimplicialCurrent LiftCurrent(const SimplicialCurrent& t, const PrismComplex& pc, int layer) {
  if (layer < 0 || layer > pc.layers) throw ArgumentError("layer out of range");
  SimplicialCurrent src = t.complex() == pc.base ? t : Reindex(t, pc.base);
  return PushForward(src, pc.LiftMap(layer), pc.prism);
}

IntervalFillReport IntervalFillingVolume(const SimplicialCurrent& t, double epsilon, int layers,
                                         const FillOptions& options) {
  if (!(epsilon > 0)) throw ArgumentError("interval length must be positive");
  IntervalFillReport out;
  out.epsilon = epsilon;
  out.mass = Mass(t);
  if (t.is_zero()) {
    out.fill.method = "zero";
    out.fill.integral = true;
    return out;
  }
  PrismComplex pc = ProductComplex(SupportComplex(t), epsilon, layers);
  SimplicialCurrent prod = ProductCurrent(Reindex(t, pc.base), pc);
  SimplicialCurrent b = Boundary(prod);
  if (!Boundary(b).is_zero()) throw AssertionFailure("boundary of the product is not a cycle");
  out.fill = FillingVolume(b, pc.prism, options);
  out.scaled_value = out.fill.value / epsilon;
  out.bound_holds = out.scaled_value <= out.mass * (1 + 1e-9) + 1e-9;
  return out;
}

SlicedFillReport SlicedIntervalFill(const SimplicialCurrent& t, int p, double r,
                                    const std::vector<PLFunction>& fs, double epsilon, int grid,
                                    int layers, int threads) {
  if (!(epsilon > 0)) throw ArgumentError("interval length must be positive");
  if (static_cast<int>(fs.size()) > t.dim()) throw ArgumentError("interval slicing needs k <= m functions");
  BallSetup ball = PrepareBall(t, p, r);
  std::vector<PLFunction> carried;
  for (const PLFunction& f : fs) carried.push_back(ball.refinement.Transfer(f));
  auto node = [&](const SimplicialCurrent& slice) {
    if (slice.is_zero()) return 0.0;
    return IntervalFillingVolume(slice, epsilon, layers).fill.value;
  };
  SlicedFillReport rep = IntegrateSlices(ball, carried, grid, threads, node);
  rep.epsilon = epsilon;
  rep.integral /= epsilon;
  rep.richardson_error /= epsilon;
  double lip = 1.0;
  for (double l : rep.lipschitz) lip *= l;
  if (!(lip > 0)) {
    rep.warnings.push_back("a slicing function is constant on the ball");
    rep.mass_lower_bound = 0.0;
    lip = 1.0;
  } else {
    rep.mass_lower_bound = rep.integral / lip;
  }
  rep.tolerance = 2.0 * rep.richardson_error / lip + 1e-6;
  rep.bound_holds = rep.mass_lower_bound <= rep.ball_mass + rep.tolerance;
  return rep;
}

}  // namespace currentlab
