#include "currentlab/metric_space.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "csv_util.h"

namespace currentlab {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<double>> dist,
                                     std::vector<std::string> labels)
    : n_(static_cast<int>(dist.size())), labels_(std::move(labels)) {
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_) {
    throw ArgumentError("label count does not match point count");
  }
  dist_.resize(static_cast<size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(dist[i].size()) != n_) {
      throw ArgumentError("distance matrix row " + std::to_string(i) + " has " +
                          std::to_string(dist[i].size()) + " entries, expected " +
                          std::to_string(n_));
    }
    for (int j = 0; j < n_; ++j) {
      double d = dist[i][j];
      if (!std::isfinite(d) || d < 0) {
        throw ArgumentError("distance (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is negative or not finite");
      }
      dist_[static_cast<size_t>(i) * n_ + j] = d;
    }
  }
  for (int i = 0; i < n_; ++i) {
    if ((*this)(i, i) > kMetricTolerance) {
      throw ArgumentError("nonzero self distance at point " + std::to_string(i));
    }
    for (int j = i + 1; j < n_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > kMetricTolerance) {
        throw ArgumentError("asymmetric distances at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
      }
    }
  }
  // Symmetrize exactly so later comparisons are order independent.
  for (int i = 0; i < n_; ++i) {
    dist_[static_cast<size_t>(i) * n_ + i] = 0.0;
    for (int j = i + 1; j < n_; ++j) {
      dist_[static_cast<size_t>(j) * n_ + i] = dist_[static_cast<size_t>(i) * n_ + j];
    }
  }
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      double dij = (*this)(i, j);
      for (int k = 0; k < n_; ++k) {
        if ((*this)(i, k) > dij + (*this)(j, k) + kMetricTolerance) {
          throw ArgumentError("triangle inequality violated for (" + std::to_string(i) + "," +
                              std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::FromPoints(const std::vector<std::vector<double>>& points) {
  const size_t n = points.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    if (points[i].size() != points[0].size()) {
      throw ArgumentError("points have differing dimensions");
    }
    for (size_t j = i + 1; j < n; ++j) {
      double s = 0;
      for (size_t c = 0; c < points[i].size(); ++c) {
        double t = points[i][c] - points[j][c];
        s += t * t;
      }
      d[i][j] = d[j][i] = std::sqrt(s);
    }
  }
  return FiniteMetricSpace(std::move(d));
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> m(n_, std::vector<double>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
  return m;
}

FiniteMetricSpace FiniteMetricSpace::Subspace(const std::vector<int>& points) const {
  std::vector<std::vector<double>> m(points.size(), std::vector<double>(points.size()));
  std::vector<std::string> labels;
  for (size_t a = 0; a < points.size(); ++a) {
    if (points[a] < 0 || points[a] >= n_) throw ArgumentError("subspace index out of range");
    for (size_t b = 0; b < points.size(); ++b) m[a][b] = (*this)(points[a], points[b]);
    if (!labels_.empty()) labels.push_back(labels_[points[a]]);
  }
  return FiniteMetricSpace(std::move(m), std::move(labels));
}

double Diameter(const FiniteMetricSpace& x) {
  double d = 0;
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j) d = std::max(d, x(i, j));
  return d;
}

PackingReport PackingNumber(const FiniteMetricSpace& x, double r) {
  if (!(r > 0)) throw ArgumentError("packing radius must be positive");
  PackingReport report;
  report.radius = r;
  for (int i = 0; i < x.size(); ++i) {
    bool free = true;
    for (int c : report.centers) {
      if (x(i, c) < 2 * r) {
        free = false;
        break;
      }
    }
    if (free) report.centers.push_back(i);
  }
  report.count = static_cast<int>(report.centers.size());
  return report;
}

PackingReport ExactPackingNumber(const FiniteMetricSpace& x, double r) {
  if (!(r > 0)) throw ArgumentError("packing radius must be positive");
  const int n = x.size();
  if (n > 12) throw ArgumentError("exhaustive packing limited to 12 points");
  std::vector<unsigned> conflict(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && x(i, j) < 2 * r) conflict[i] |= 1u << j;
  unsigned best = 0;
  int best_count = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int count = __builtin_popcount(mask);
    if (count <= best_count) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if ((mask >> i & 1u) && (conflict[i] & mask)) ok = false;
    if (ok) {
      best = mask;
      best_count = count;
    }
  }
  PackingReport report;
  report.radius = r;
  for (int i = 0; i < n; ++i)
    if (best >> i & 1u) report.centers.push_back(i);
  report.count = best_count;
  return report;
}

double HausdorffDistance(const FiniteMetricSpace& x, const std::vector<int>& a,
                         const std::vector<int>& b) {
  if (a.empty() || b.empty()) throw ArgumentError("Hausdorff distance of an empty subset");
  for (int i : a)
    if (i < 0 || i >= x.size()) throw ArgumentError("subset index out of range");
  for (int i : b)
    if (i < 0 || i >= x.size()) throw ArgumentError("subset index out of range");
  auto directed = [&](const std::vector<int>& from, const std::vector<int>& to) {
    double worst = 0;
    for (int p : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int q : to) nearest = std::min(nearest, x(p, q));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double Distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                  const std::vector<std::pair<int, int>>& correspondence) {
  double worst = 0;
  for (const auto& [a, b] : correspondence)
    for (const auto& [c, d] : correspondence) worst = std::max(worst, std::abs(x(a, c) - y(b, d)));
  return worst;
}

namespace {

// Backtracking search for a correspondence of distortion <= tau. A minimal
// correspondence is a function X -> Y plus one partner for each point of Y
// missed by that function, so the search enumerates exactly those.
class CorrespondenceSearch {
 public:
  CorrespondenceSearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y, double tau)
      : x_(x), y_(y), tau_(tau), covered_(y.size(), 0) {}

  bool Run() { return AssignX(0); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

 private:
  bool Compatible(int a, int b) const {
    for (const auto& [c, d] : pairs_)
      if (std::abs(x_(a, c) - y_(b, d)) > tau_) return false;
    return true;
  }

  bool AssignX(int a) {
    if (a == x_.size()) return CoverY(0);
    for (int b = 0; b < y_.size(); ++b) {
      if (!Compatible(a, b)) continue;
      pairs_.emplace_back(a, b);
      ++covered_[b];
      if (AssignX(a + 1)) return true;
      --covered_[b];
      pairs_.pop_back();
    }
    return false;
  }

  bool CoverY(int b) {
    while (b < y_.size() && covered_[b] > 0) ++b;
    if (b == y_.size()) return true;
    for (int a = 0; a < x_.size(); ++a) {
      if (!Compatible(a, b)) continue;
      pairs_.emplace_back(a, b);
      ++covered_[b];
      if (CoverY(b + 1)) return true;
      --covered_[b];
      pairs_.pop_back();
    }
    return false;
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  double tau_;
  std::vector<int> covered_;
  std::vector<std::pair<int, int>> pairs_;
};

std::vector<std::pair<int, int>> GreedyCorrespondence(const FiniteMetricSpace& x,
                                                      const FiniteMetricSpace& y) {
  std::vector<std::pair<int, int>> pairs;
  auto increment = [&](int a, int b) {
    double worst = 0;
    for (const auto& [c, d] : pairs) worst = std::max(worst, std::abs(x(a, c) - y(b, d)));
    return worst;
  };
  std::vector<char> covered(y.size(), 0);
  for (int a = 0; a < x.size(); ++a) {
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int b = 0; b < y.size(); ++b) {
      double c = increment(a, b);
      if (c < best_cost) {
        best_cost = c;
        best = b;
      }
    }
    pairs.emplace_back(a, best);
    covered[best] = 1;
  }
  for (int b = 0; b < y.size(); ++b) {
    if (covered[b]) continue;
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int a = 0; a < x.size(); ++a) {
      double c = increment(a, b);
      if (c < best_cost) {
        best_cost = c;
        best = a;
      }
    }
    pairs.emplace_back(best, b);
  }
  return pairs;
}

}  // namespace

GHBounds GromovHausdorffBounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               int exact_limit) {
  if (x.empty() || y.empty()) throw ArgumentError("Gromov-Hausdorff bounds of an empty space");
  GHBounds out;
  const double diam_gap = std::abs(Diameter(x) - Diameter(y)) / 2;
  if (std::max(x.size(), y.size()) <= exact_limit) {
    std::vector<double> candidates;
    for (int a = 0; a < x.size(); ++a)
      for (int c = 0; c < x.size(); ++c)
        for (int b = 0; b < y.size(); ++b)
          for (int d = 0; d < y.size(); ++d) candidates.push_back(std::abs(x(a, c) - y(b, d)));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // The full product X x Y has distortion equal to the largest candidate, so
    // the last candidate is always feasible.
    size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      CorrespondenceSearch search(x, y, candidates[mid]);
      if (search.Run()) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    CorrespondenceSearch search(x, y, candidates[lo]);
    search.Run();
    out.correspondence = search.pairs();
    out.upper = candidates[lo] / 2;
    out.lower = out.upper;
    out.exact = true;
    return out;
  }
  auto forward = GreedyCorrespondence(x, y);
  auto backward = GreedyCorrespondence(y, x);
  for (auto& [a, b] : backward) std::swap(a, b);
  double df = Distortion(x, y, forward);
  double db = Distortion(x, y, backward);
  out.correspondence = df <= db ? forward : backward;
  double best = std::min(df, db);
  if (x.size() == y.size()) {
    std::vector<std::pair<int, int>> identity;
    for (int i = 0; i < x.size(); ++i) identity.emplace_back(i, i);
    double di = Distortion(x, y, identity);
    if (di < best) {
      best = di;
      out.correspondence = identity;
    }
  }
  out.upper = best / 2;
  out.lower = std::min(diam_gap, out.upper);
  return out;
}

FiniteMetricSpace ReadDistanceMatrixCsv(std::istream& in) {
  auto rows = internal::ReadCsv(in);
  std::vector<std::string> labels;
  size_t first = 0;
  if (!rows.empty() && !rows[0].cells.empty() &&
      !internal::LooksNumeric(rows[0].cells[0].text)) {
    for (const auto& cell : rows[0].cells) labels.push_back(cell.text);
    first = 1;
  }
  std::vector<std::vector<double>> m;
  for (size_t r = first; r < rows.size(); ++r) m.push_back(internal::ParseNumbers(rows[r]));
  const size_t n = m.size();
  for (size_t r = 0; r < n; ++r) {
    if (m[r].size() != n) {
      const auto& row = rows[r + first];
      throw ParseError("expected " + std::to_string(n) + " entries, found " +
                           std::to_string(m[r].size()),
                       row.line, 1);
    }
  }
  if (!labels.empty() && labels.size() != n) {
    throw ParseError("header has " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(n) + " rows",
                     rows[0].line, 1);
  }
  return FiniteMetricSpace(std::move(m), std::move(labels));
}

FiniteMetricSpace ReadPointCloudCsv(std::istream& in) {
  auto rows = internal::ReadCsv(in);
  std::vector<std::vector<double>> points;
  for (const auto& row : rows) {
    points.push_back(internal::ParseNumbers(row));
    if (points.back().size() != points.front().size()) {
      throw ParseError("ragged row: expected " + std::to_string(points.front().size()) +
                           " coordinates",
                       row.line, 1);
    }
  }
  return FiniteMetricSpace::FromPoints(points);
}

}  // namespace currentlab
