#include "currentlab/linear_program.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "currentlab/errors.h"

namespace currentlab {

std::string ToString(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal:
      return "optimal";
    case LPStatus::kInfeasible:
      return "infeasible";
    case LPStatus::kUnbounded:
      return "unbounded";
    case LPStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

void Validate(const LinearProgram& lp) {
  if (lp.rows < 0 || lp.cols < 0 || static_cast<int>(lp.b.size()) != lp.rows ||
      static_cast<int>(lp.c.size()) != lp.cols) {
    throw ArgumentError("linear program has inconsistent sizes");
  }
  for (const auto& e : lp.entries) {
    if (e.row < 0 || e.row >= lp.rows || e.col < 0 || e.col >= lp.cols) {
      throw ArgumentError("linear program entry out of range");
    }
  }
}

void Finish(const LinearProgram& lp, LPSolution* sol) {
  std::vector<double> ax(lp.rows, 0.0);
  std::vector<double> aty(lp.cols, 0.0);
  for (const auto& e : lp.entries) {
    ax[e.row] += e.value * sol->x[e.col];
    aty[e.col] += e.value * sol->y[e.row];
  }
  sol->residual = 0.0;
  for (int i = 0; i < lp.rows; ++i) sol->residual = std::max(sol->residual, std::abs(ax[i] - lp.b[i]));
  sol->objective = 0.0;
  for (int j = 0; j < lp.cols; ++j) sol->objective += lp.c[j] * sol->x[j];

  // With c >= 0, y = 0 is dual feasible, so shrinking y toward 0 until every
  // reduced cost is nonnegative gives a certified bound.
  double scale = 1.0;
  bool nonneg_cost = std::all_of(lp.c.begin(), lp.c.end(), [](double v) { return v >= 0; });
  if (nonneg_cost) {
    for (int j = 0; j < lp.cols; ++j) {
      if (aty[j] > lp.c[j]) scale = std::min(scale, lp.c[j] / aty[j]);
    }
  }
  double by = 0.0;
  for (int i = 0; i < lp.rows; ++i) by += lp.b[i] * sol->y[i];
  sol->dual_bound = scale * by;
}

// ---------------------------------------------------------------- simplex

class DenseSimplex {
 public:
  explicit DenseSimplex(const LinearProgram& lp) : lp_(lp), m_(lp.rows), n_(lp.cols) {}

  LPSolution Solve() {
    LPSolution sol;
    sol.method = "simplex";
    sign_.assign(m_, 1.0);
    for (int i = 0; i < m_; ++i)
      if (lp_.b[i] < 0) sign_[i] = -1.0;

    // Columns that are a single positive entry can start in the basis.
    std::vector<int> nnz(n_, 0), only_row(n_, -1);
    std::vector<double> only_val(n_, 0.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m_, n_);
    for (const auto& e : lp_.entries) a(e.row, e.col) += e.value * sign_[e.row];
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < m_; ++i) {
        if (a(i, j) != 0.0) {
          ++nnz[j];
          only_row[j] = i;
          only_val[j] = a(i, j);
        }
      }
    }
    std::vector<int> start(m_, -1);
    for (int j = 0; j < n_; ++j) {
      if (nnz[j] == 1 && only_val[j] > 0 && start[only_row[j]] < 0) start[only_row[j]] = j;
    }
    int artificials = 0;
    for (int i = 0; i < m_; ++i)
      if (start[i] < 0) ++artificials;
    width_ = n_ + artificials;
    t_ = Eigen::MatrixXd::Zero(m_ + 1, width_ + 1);
    t_.block(0, 0, m_, n_) = a;
    basis_.assign(m_, -1);
    int next_art = n_;
    for (int i = 0; i < m_; ++i) {
      t_(i, width_) = lp_.b[i] * sign_[i];
      if (start[i] >= 0) {
        double piv = t_(i, start[i]);
        t_.row(i) /= piv;
        basis_[i] = start[i];
      } else {
        t_(i, next_art) = 1.0;
        art_row_.push_back(i);
        basis_[i] = next_art++;
      }
    }
    scale_ = 1.0;
    for (double v : lp_.b) scale_ = std::max(scale_, std::abs(v));

    // Phase 1.
    if (artificials > 0) {
      std::vector<double> cost(width_, 0.0);
      for (int j = n_; j < width_; ++j) cost[j] = 1.0;
      SetObjective(cost);
      LPStatus st = Iterate(width_, &sol.iterations);
      if (st == LPStatus::kIterationLimit) return Fail(st, sol);
      if (-t_(m_, width_) > 1e-9 * scale_) return Fail(LPStatus::kInfeasible, sol);
      DriveOutArtificials();
    }

    // Phase 2; artificial columns may no longer enter.
    std::vector<double> cost(width_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = lp_.c[j];
    SetObjective(cost);
    LPStatus st = Iterate(n_, &sol.iterations);
    if (st != LPStatus::kOptimal) return Fail(st, sol);

    sol.status = LPStatus::kOptimal;
    sol.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.x[basis_[i]] = std::max(0.0, t_(i, width_));
    }
    sol.y = Duals();
    Finish(lp_, &sol);
    return sol;
  }

 private:
  LPSolution Fail(LPStatus st, LPSolution& sol) {
    sol.status = st;
    sol.x.assign(n_, 0.0);
    sol.y.assign(m_, 0.0);
    return sol;
  }

  void SetObjective(const std::vector<double>& cost) {
    cost_ = cost;
    t_.row(m_).setZero();
    for (int j = 0; j < width_; ++j) t_(m_, j) = cost[j];
    for (int i = 0; i < m_; ++i) {
      double cb = cost[basis_[i]];
      if (cb != 0.0) t_.row(m_) -= cb * t_.row(i);
    }
  }

  void Pivot(int r, int q) {
    t_.row(r) /= t_(r, q);
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      double f = t_(i, q);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = q;
  }

  // Columns below `allowed` may enter.
  LPStatus Iterate(int allowed, int* iterations) {
    const double tol = 1e-10;
    const int limit = 50 * (m_ + width_) + 1000;
    int degenerate_run = 0;
    std::vector<char> in_basis(width_, 0);
    for (int b : basis_) in_basis[b] = 1;
    for (int it = 0; it < limit; ++it) {
      double cmax = 1.0;
      for (int j = 0; j < allowed; ++j) cmax = std::max(cmax, std::abs(cost_[j]));
      const bool bland = degenerate_run > 20;
      int q = -1;
      double best = -tol * cmax;
      for (int j = 0; j < allowed; ++j) {
        if (in_basis[j]) continue;
        double d = t_(m_, j);
        if (d < best) {
          q = j;
          if (bland) break;
          best = d;
        }
      }
      if (q < 0) return LPStatus::kOptimal;
      int r = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        double a = t_(i, q);
        if (a <= 1e-11) continue;
        double rt = std::max(0.0, t_(i, width_)) / a;
        if (rt < ratio - 1e-12 || (rt <= ratio + 1e-12 && r >= 0 && basis_[i] < basis_[r])) {
          if (rt < ratio) ratio = rt;
          r = i;
        }
      }
      if (r < 0) return LPStatus::kUnbounded;
      degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
      in_basis[basis_[r]] = 0;
      in_basis[q] = 1;
      Pivot(r, q);
      ++*iterations;
    }
    return LPStatus::kIterationLimit;
  }

  void DriveOutArtificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int q = -1;
      double best = 1e-9;
      for (int j = 0; j < n_; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        if (std::abs(t_(i, j)) > best) {
          best = std::abs(t_(i, j));
          q = j;
        }
      }
      if (q >= 0) Pivot(i, q);
      // Otherwise the row is redundant and the artificial stays at zero.
    }
  }

  std::vector<double> Duals() const {
    Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(m_, m_);
    Eigen::VectorXd cb(m_);
    std::vector<std::vector<std::pair<int, double>>> cols(n_);
    for (const auto& e : lp_.entries) cols[e.col].push_back({e.row, e.value * sign_[e.row]});
    for (int i = 0; i < m_; ++i) {
      int j = basis_[i];
      if (j < n_) {
        for (const auto& [row, v] : cols[j]) bmat(row, i) += v;
        cb(i) = lp_.c[j];
      } else {
        // Artificial: identity column of its original row.
        bmat(art_row_[j - n_], i) = 1.0;
        cb(i) = 0.0;
      }
    }
    Eigen::VectorXd y = bmat.transpose().partialPivLu().solve(cb);
    std::vector<double> out(m_);
    for (int i = 0; i < m_; ++i) out[i] = y(i) * sign_[i];
    return out;
  }

  const LinearProgram& lp_;
  int m_;
  int n_;
  int width_ = 0;
  double scale_ = 1.0;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  std::vector<double> sign_;
  std::vector<double> cost_;
  std::vector<int> art_row_;
};

// ----------------------------------------------------------- interior point

using SpMat = Eigen::SparseMatrix<double>;

// Relative primal, dual and gap error at which an iterate counts as optimal.
constexpr double kIpmAcceptance = 1e-8;

LPSolution InteriorPoint(const LinearProgram& lp) {
  LPSolution sol;
  sol.method = "interior_point";
  const int m = lp.rows, n = lp.cols;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(lp.entries.size());
  for (const auto& e : lp.entries) trips.emplace_back(e.row, e.col, e.value);
  SpMat a(m, n);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  SpMat at = a.transpose();
  Eigen::Map<const Eigen::VectorXd> b(lp.b.data(), m), c(lp.c.data(), n);

  const double reg = 1e-11;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  auto normal = [&](const Eigen::VectorXd& d) {
    SpMat adat = a * d.asDiagonal() * at;
    double dmax = d.maxCoeff();
    for (int i = 0; i < m; ++i) adat.coeffRef(i, i) += reg * std::max(1.0, dmax);
    return adat;
  };

  // Mehrotra's starting point.
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  SpMat aat = normal(ones);
  ldlt.analyzePattern(aat);
  ldlt.factorize(aat);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("normal equations are singular");
  Eigen::VectorXd x = at * ldlt.solve(b);
  Eigen::VectorXd y = ldlt.solve(a * c);
  Eigen::VectorXd s = c - at * y;
  double dx = std::max(-1.5 * x.minCoeff(), 0.0);
  double ds = std::max(-1.5 * s.minCoeff(), 0.0);
  x.array() += dx;
  s.array() += ds;
  double xs = x.dot(s);
  double dx2 = 0.5 * xs / std::max(s.sum(), 1e-300);
  double ds2 = 0.5 * xs / std::max(x.sum(), 1e-300);
  x.array() += dx2;
  s.array() += ds2;
  if (!(x.minCoeff() > 0)) x.setOnes();
  if (!(s.minCoeff() > 0)) s.setOnes();

  const double bnorm = 1.0 + b.lpNorm<Eigen::Infinity>();
  const double cnorm = 1.0 + c.lpNorm<Eigen::Infinity>();
  sol.status = LPStatus::kIterationLimit;
  // Close to the optimum the normal equations lose accuracy and the residuals
  // can drift back up, so the best iterate seen is kept.
  Eigen::VectorXd best_x = x, best_y = y;
  double best_merit = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int it = 0; it < 200; ++it) {
    sol.iterations = it;
    Eigen::VectorXd rp = b - a * x;
    Eigen::VectorXd rd = c - at * y - s;
    double mu = x.dot(s) / n;
    double pobj = c.dot(x), dobj = b.dot(y);
    double merit = std::max({rp.lpNorm<Eigen::Infinity>() / bnorm, rd.lpNorm<Eigen::Infinity>() / cnorm,
                             std::abs(pobj - dobj) / (1.0 + std::abs(pobj))});
    if (merit < best_merit) {
      best_merit = merit;
      best_x = x;
      best_y = y;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (merit < 1e-11) break;
    if (x.lpNorm<Eigen::Infinity>() > 1e14 || y.lpNorm<Eigen::Infinity>() > 1e14) break;
    if (since_best >= 5 || mu < 1e-30) break;
    Eigen::VectorXd d = (x.array() / s.array()).matrix();
    SpMat m_mat = normal(d);
    ldlt.factorize(m_mat);
    if (ldlt.info() != Eigen::Success) break;

    auto solve_dir = [&](const Eigen::VectorXd& rxs, Eigen::VectorXd* ddx, Eigen::VectorXd* ddy,
                         Eigen::VectorXd* dds) {
      // S dx + X ds = rxs, A dx = rp, A'dy + ds = rd.
      Eigen::VectorXd rhs = rp + a * (d.cwiseProduct(rd) - (rxs.array() / s.array()).matrix());
      *ddy = ldlt.solve(rhs);
      // The regularization grows with max(d); refine against the exact system.
      for (int k = 0; k < 3; ++k) {
        Eigen::VectorXd r = rhs - a * d.cwiseProduct(at * *ddy);
        *ddy += ldlt.solve(r);
      }
      *dds = rd - at * *ddy;
      *ddx = (rxs.array() / s.array()).matrix() - d.cwiseProduct(*dds);
    };
    auto step = [](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
      double alpha = 1.0;
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv(i) < 0) alpha = std::min(alpha, -v(i) / dv(i));
      return alpha;
    };

    Eigen::VectorXd ax, ay, as;
    Eigen::VectorXd rxs = -(x.array() * s.array()).matrix();
    solve_dir(rxs, &ax, &ay, &as);
    double ap = step(x, ax), ad = step(s, as);
    double mu_aff = (x + ap * ax).dot(s + ad * as) / n;
    double sigma = std::pow(mu_aff / mu, 3);
    Eigen::VectorXd rxs2 =
        (-(x.array() * s.array()) - ax.array() * as.array() + sigma * mu).matrix();
    Eigen::VectorXd cx, cy, cs;
    solve_dir(rxs2, &cx, &cy, &cs);
    ap = std::min(1.0, 0.995 * step(x, cx));
    ad = std::min(1.0, 0.995 * step(s, cs));
    x += ap * cx;
    y += ad * cy;
    s += ad * cs;
  }
  if (best_merit <= kIpmAcceptance) {
    sol.status = LPStatus::kOptimal;
  } else if (x.lpNorm<Eigen::Infinity>() > 1e14) {
    sol.status = LPStatus::kInfeasible;
  } else if (y.lpNorm<Eigen::Infinity>() > 1e14) {
    sol.status = LPStatus::kUnbounded;
  }
  sol.x.assign(best_x.data(), best_x.data() + n);
  for (double& v : sol.x) v = std::max(v, 0.0);
  sol.y.assign(best_y.data(), best_y.data() + m);
  Finish(lp, &sol);
  return sol;
}

}  // namespace

LPSolution SolveLP(const LinearProgram& lp, LPMethod method) {
  Validate(lp);
  if (lp.rows == 0) {
    LPSolution sol;
    sol.method = "trivial";
    sol.x.assign(lp.cols, 0.0);
    for (double v : lp.c) {
      if (v < 0) {
        sol.status = LPStatus::kUnbounded;
        return sol;
      }
    }
    return sol;
  }
  if (method == LPMethod::kAuto) {
    method = static_cast<double>(lp.rows) * lp.cols <= kDenseSimplexLimit ? LPMethod::kSimplex
                                                                          : LPMethod::kInteriorPoint;
  }
  if (method == LPMethod::kSimplex) return DenseSimplex(lp).Solve();
  return InteriorPoint(lp);
}

}  // namespace currentlab
