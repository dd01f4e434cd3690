#include "currentlab/refinement.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace currentlab {

double SnapLevel(const std::vector<double>& values, const std::vector<char>& used, double s) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) continue;
    lo = std::min(lo, values[v]);
    hi = std::max(hi, values[v]);
  }
  if (!(hi >= lo)) return s;
  const double tol = kSnapRelative * (hi - lo);
  double best = s;
  double best_gap = std::numeric_limits<double>::infinity();
  for (size_t v = 0; v < used.size(); ++v) {
    if (!used[v]) continue;
    double gap = std::abs(values[v] - s);
    if (gap <= tol && gap < best_gap) {
      best_gap = gap;
      best = values[v];
    }
  }
  return best;
}

SimplicialCurrent Reindex(const SimplicialCurrent& t, ComplexPtr target) {
  if (t.complex() == target) return t;
  if (target->coords() != t.complex()->coords()) {
    throw ArgumentError("target complex does not share the current's vertices");
  }
  SimplicialCurrent out(target, t.dim());
  for (const auto& [i, c] : t.coeffs()) {
    int j = target->Find(t.complex()->simplex(t.dim(), i));
    if (j < 0) throw ArgumentError("target complex is missing a simplex of the current");
    out.Add(j, c);
  }
  return out;
}

ComplexPtr SupportComplex(const SimplicialCurrent& t) {
  return t.complex()->Subcomplex(t.Support());
}

namespace {

bool CoordLess(const GeometricComplex& cx, int a, int b) {
  const int n = cx.metric().dims();
  return std::lexicographical_compare(cx.point(a), cx.point(a) + n, cx.point(b), cx.point(b) + n);
}

}  // namespace

Refinement SubdivideAtLevel(ComplexPtr complex, const PLFunction& f, double level) {
  const GeometricComplex& cx = *complex;
  const int n = cx.num_vertices();
  if (static_cast<int>(f.values().size()) < n) {
    throw ArgumentError("cutting function does not cover the complex's vertices");
  }
  const std::vector<double>& val = f.values();
  Refinement r;
  r.source_ = complex;
  r.requested_level_ = level;
  r.level_ = SnapLevel(std::vector<double>(val.begin(), val.begin() + n), cx.used_vertices(), level);
  const double s = r.level_;

  // Crossing edges in geometric order.
  struct Cut {
    int edge, lo, hi;
  };
  std::vector<Cut> cuts;
  for (int e = 0; e < cx.num_simplices(1); ++e) {
    int a = cx.simplex(1, e)[0], b = cx.simplex(1, e)[1];
    double va = val[a], vb = val[b];
    if ((va < s && vb > s) || (va > s && vb < s)) {
      if (CoordLess(cx, b, a)) std::swap(a, b);
      cuts.push_back({e, a, b});
    }
  }
  std::sort(cuts.begin(), cuts.end(), [&](const Cut& x, const Cut& y) {
    if (x.lo != y.lo) return CoordLess(cx, x.lo, y.lo);
    return CoordLess(cx, x.hi, y.hi);
  });

  const int dims = cx.metric().dims();
  auto coords = std::make_shared<std::vector<double>>(*cx.coords());
  coords->resize(static_cast<size_t>(n + cuts.size()) * dims);
  std::vector<int> rank_of_edge(cx.num_simplices(1), -1);
  for (size_t j = 0; j < cuts.size(); ++j) {
    const Cut& c = cuts[j];
    double lambda = (s - val[c.lo]) / (val[c.hi] - val[c.lo]);
    cx.metric().Interpolate(cx.point(c.lo), cx.point(c.hi), lambda,
                            coords->data() + static_cast<size_t>(n + j) * dims);
    r.new_vertices_.push_back({c.lo, c.hi, lambda});
    rank_of_edge[c.edge] = static_cast<int>(j);
  }

  // Pieces of every simplex, as oriented tuples with signs.
  struct Piece {
    Simplex s;
    int sign;
  };
  const int top = cx.dim();
  std::vector<std::vector<std::vector<Piece>>> pieces(top + 1);
  std::vector<Simplex> generators;
  for (int v = 0; v < n; ++v)
    if (cx.used_vertices()[v]) generators.push_back(Simplex{v});
  std::vector<int> ranks;
  for (int k = 1; k <= top; ++k) {
    pieces[k].resize(cx.num_simplices(k));
    for (int i = 0; i < cx.num_simplices(k); ++i) {
      const Simplex& sigma = cx.simplex(k, i);
      ranks.clear();
      if (!cuts.empty()) {
        if (k == 1) {
          if (rank_of_edge[i] >= 0) ranks.push_back(rank_of_edge[i]);
        } else {
          for (int a = 0; a < sigma.size; ++a) {
            for (int b = a + 1; b < sigma.size; ++b) {
              int e = cx.Find(Simplex{sigma[a], sigma[b]});
              if (rank_of_edge[e] >= 0) ranks.push_back(rank_of_edge[e]);
            }
          }
          std::sort(ranks.begin(), ranks.end());
        }
      }
      std::vector<Piece> current{{sigma, 1}};
      for (int rank : ranks) {
        const int a = cuts[rank].lo, b = cuts[rank].hi, w = n + rank;
        std::vector<Piece> next;
        next.reserve(current.size() * 2);
        for (const Piece& p : current) {
          int pa = -1, pb = -1;
          for (int j = 0; j < p.s.size; ++j) {
            if (p.s[j] == a) pa = j;
            if (p.s[j] == b) pb = j;
          }
          if (pa < 0 || pb < 0) {
            next.push_back(p);
            continue;
          }
          Piece p1 = p, p2 = p;
          p1.s.v[pb] = w;
          p2.s.v[pa] = w;
          next.push_back(p1);
          next.push_back(p2);
        }
        current.swap(next);
      }
      for (Piece& p : current) {
        p.sign *= Canonicalize(&p.s);
        generators.push_back(p.s);
      }
      pieces[k][i] = std::move(current);
    }
  }

  r.refined_ = GeometricComplex::Create(cx.metric(), coords, generators);
  const GeometricComplex& rc = *r.refined_;

  r.offsets_.assign(top + 1, {});
  r.piece_index_.assign(top + 1, {});
  r.piece_sign_.assign(top + 1, {});
  for (int k = 1; k <= top; ++k) {
    auto& off = r.offsets_[k];
    off.assign(1, 0);
    for (int i = 0; i < cx.num_simplices(k); ++i) {
      for (const Piece& p : pieces[k][i]) {
        int idx = rc.Find(p.s);
        r.piece_index_[k].push_back(idx);
        r.piece_sign_[k].push_back(static_cast<int8_t>(p.sign));
        if (pieces[k][i].size() > 1 && rc.volume(k, idx) < kVolumeFloor * cx.volume(k, i)) {
          ++r.degenerate_pieces_;
        }
      }
      off.push_back(static_cast<int>(r.piece_index_[k].size()));
    }
  }

  // Maximal simplices entirely on the level set make the level non-generic.
  for (int k = 1; k <= top; ++k) {
    std::vector<char> has_coface(cx.num_simplices(k), 0);
    if (k < top)
      for (int i = 0; i < cx.num_simplices(k + 1); ++i)
        for (int fc : cx.faces(k + 1, i)) has_coface[fc] = 1;
    for (int i = 0; i < cx.num_simplices(k); ++i) {
      if (has_coface[i]) continue;
      bool flat = true;
      for (int v : cx.simplex(k, i))
        if (val[v] != s) flat = false;
      if (flat) ++r.flat_simplices_;
    }
  }

  std::vector<double> fv(val.begin(), val.begin() + n);
  fv.resize(n + cuts.size(), s);
  r.function_ = PLFunction(r.refined_, std::move(fv), f.lip());
  return r;
}

std::vector<double> Refinement::TransferValues(const std::vector<double>& values) const {
  const int n = source_->num_vertices();
  if (static_cast<int>(values.size()) < n) {
    throw ArgumentError("function does not cover the source complex");
  }
  std::vector<double> out(values.begin(), values.begin() + n);
  out.reserve(n + new_vertices_.size());
  for (const SplitVertex& sv : new_vertices_) {
    out.push_back(values[sv.a] + sv.lambda * (values[sv.b] - values[sv.a]));
  }
  return out;
}

PLFunction Refinement::Transfer(const PLFunction& g) const {
  return PLFunction(refined_, TransferValues(g.values()), g.lip());
}

SimplicialCurrent Refinement::Transfer(const SimplicialCurrent& t) const {
  SimplicialCurrent src = Reindex(t, source_);
  SimplicialCurrent out(refined_, src.dim());
  if (src.dim() == 0) {
    for (const auto& [i, c] : src.coeffs()) out.Add(i, c);
    return out;
  }
  const int k = src.dim();
  for (const auto& [i, c] : src.coeffs()) {
    for (int j = offsets_[k][i]; j < offsets_[k][i + 1]; ++j) {
      out.Add(piece_index_[k][j], c * piece_sign_[k][j]);
    }
  }
  return out;
}

}  // namespace currentlab
