#include "currentlab/fillvol.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

#include "currentlab/refinement.h"

namespace currentlab {

namespace {

SimplicialCurrent OnAmbient(const SimplicialCurrent& t, const ComplexPtr& k) {
  if (t.complex() == k) return t;
  if (t.complex()->coords() == k->coords()) return Reindex(t, k);
  return CarryByCoordinates(t, k);
}

std::vector<double> Dense(const SimplicialCurrent& t, int n) {
  std::vector<double> out(n, 0.0);
  for (const auto& [i, c] : t.coeffs()) out[i] = static_cast<double>(c);
  return out;
}

// Boundary matrix entries from (k+1)-simplices (columns) to k-simplices (rows).
template <typename Fn>
void ForBoundaryEntries(const GeometricComplex& cx, int k1, Fn fn) {
  for (int j = 0; j < cx.num_simplices(k1); ++j) {
    auto faces = cx.faces(k1, j);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) fn(faces[f], j, (f % 2 == 0) ? 1 : -1);
  }
}

bool RoundAll(const std::vector<double>& x, std::vector<int64_t>* out) {
  out->resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double r = std::round(x[i]);
    if (std::abs(x[i] - r) > kIntegralityTolerance) return false;
    (*out)[i] = static_cast<int64_t>(r);
  }
  return true;
}

RealChain ToRealChain(int dim, const std::vector<double>& x) {
  RealChain out;
  out.dim = dim;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) out.coeffs.push_back({static_cast<int>(i), x[i]});
  return out;
}

SimplicialCurrent ToCurrent(const ComplexPtr& k, int dim, const std::vector<int64_t>& x) {
  SimplicialCurrent out(k, dim);
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out.Add(static_cast<int>(i), x[i]);
  return out;
}

double SupportDiameter(const SimplicialCurrent& t) {
  std::vector<int> v = t.SupportVertices();
  double d = 0.0;
  for (size_t a = 0; a < v.size(); ++a)
    for (size_t b = a + 1; b < v.size(); ++b) d = std::max(d, t.complex()->distance(v[a], v[b]));
  return d;
}

// Filling in the top dimension of an orientable pseudomanifold: the filling is
// a locally constant multiple of the fundamental class plus a particular
// solution, so each connected piece has at most one free constant, chosen by
// a weighted median. Returns false if the ambient does not qualify or the
// cycle does not bound there (the LP then decides).
bool PotentialFill(const SimplicialCurrent& b, const ComplexPtr& k, FillingReport* report) {
  const GeometricComplex& cx = *k;
  const int kd = b.dim(), top = kd + 1;
  if (cx.dim() != top) return false;
  const int nf = cx.num_simplices(kd), nt = cx.num_simplices(top);
  // Cofaces with the sign of the face inside each coface.
  std::vector<std::vector<std::pair<int, int>>> cof(nf);
  ForBoundaryEntries(cx, top, [&](int f, int j, int s) { cof[f].push_back({j, s}); });
  for (const auto& c : cof)
    if (c.size() > 2) return false;
  std::vector<double> bval = Dense(b, nf);
  for (int f = 0; f < nf; ++f)
    if (cof[f].empty() && bval[f] != 0.0) return false;

  // Neighbour lists through interior faces.
  std::vector<std::vector<int>> through(nt);
  for (int f = 0; f < nf; ++f) {
    if (cof[f].size() == 2) {
      through[cof[f][0].first].push_back(f);
      through[cof[f][1].first].push_back(f);
    }
  }
  std::vector<int> orient(nt, 0);
  std::vector<int64_t> phi(nt, 0);
  std::vector<int> comp(nt, -1);
  int ncomp = 0;
  for (int root = 0; root < nt; ++root) {
    if (comp[root] >= 0) continue;
    orient[root] = 1;
    comp[root] = ncomp;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      for (int f : through[t]) {
        auto [t1, s1] = cof[f][0];
        auto [t2, s2] = cof[f][1];
        if (t1 != t) {
          std::swap(t1, t2);
          std::swap(s1, s2);
        }
        // phi(t) o(t) s1 + phi(t2) o(t2) s2 = b(f), with o(t2) s2 = -o(t) s1.
        int want = -orient[t] * s1 * s2;
        int64_t jump = static_cast<int64_t>(bval[f]) * orient[t] * s1;
        if (comp[t2] < 0) {
          comp[t2] = ncomp;
          orient[t2] = want;
          phi[t2] = phi[t] - jump;
          queue.push_back(t2);
        } else if (orient[t2] != want) {
          return false;  // not orientable
        } else if (phi[t2] != phi[t] - jump) {
          return false;
        }
      }
    }
    ++ncomp;
  }

  // Constants per component: pinned by boundary faces, or a weighted median.
  std::vector<int64_t> shift(ncomp, 0);
  std::vector<char> pinned(ncomp, 0);
  for (int f = 0; f < nf; ++f) {
    if (cof[f].size() != 1) continue;
    auto [t, s] = cof[f][0];
    int64_t need = static_cast<int64_t>(bval[f]) * orient[t] * s - phi[t];
    int c = comp[t];
    if (!pinned[c]) {
      pinned[c] = 1;
      shift[c] = need;
    } else if (shift[c] != need) {
      return false;
    }
  }
  std::vector<std::vector<std::pair<int64_t, double>>> free_vals(ncomp);
  for (int t = 0; t < nt; ++t)
    if (!pinned[comp[t]]) free_vals[comp[t]].push_back({-phi[t], cx.volume(top, t)});
  for (int c = 0; c < ncomp; ++c) {
    if (pinned[c]) continue;
    auto& v = free_vals[c];
    std::sort(v.begin(), v.end());
    double total = 0.0;
    for (const auto& [val, w] : v) total += w;
    double acc = 0.0;
    for (const auto& [val, w] : v) {
      acc += w;
      if (acc >= 0.5 * total) {
        shift[c] = val;
        break;
      }
    }
  }
  std::vector<int64_t> coeff(nt);
  for (int t = 0; t < nt; ++t) coeff[t] = (phi[t] + shift[comp[t]]) * orient[t];
  SimplicialCurrent fill = ToCurrent(k, top, coeff);
  if (!(Boundary(fill) == Reindex(b, k))) return false;
  report->method = "potential";
  report->integral = true;
  report->integral_certificate = fill;
  std::vector<double> real(coeff.begin(), coeff.end());
  report->certificate = ToRealChain(top, real);
  report->value = Mass(fill);
  report->lower_bound = report->value;
  report->upper_bound = report->value;
  report->residual = 0.0;
  return true;
}

void CheckSolved(const LPSolution& sol) {
  if (sol.status != LPStatus::kOptimal) {
    throw std::runtime_error("linear program not solved: " + ToString(sol.status));
  }
}

}  // namespace

SimplicialCurrent CarryByCoordinates(const SimplicialCurrent& t, ComplexPtr target) {
  const GeometricComplex& src = *t.complex();
  const int dims = target->metric().dims();
  if (src.metric().dims() != dims) throw ArgumentError("complexes have different coordinate dimensions");
  std::map<std::vector<double>, int> where;
  for (int v = 0; v < target->num_vertices(); ++v) {
    where.emplace(std::vector<double>(target->point(v), target->point(v) + dims), v);
  }
  std::vector<int> vmap(src.num_vertices(), -1);
  for (int v : t.SupportVertices()) {
    auto it = where.find(std::vector<double>(src.point(v), src.point(v) + dims));
    if (it == where.end()) throw ArgumentError("vertex " + std::to_string(v) + " has no counterpart in the ambient complex");
    vmap[v] = it->second;
  }
  return PushForward(t, vmap, target);
}

FillingReport FlatDistance(const SimplicialCurrent& s, const SimplicialCurrent& t, ComplexPtr k,
                           const FillOptions& options) {
  if (s.dim() != t.dim()) throw ArgumentError("flat distance needs currents of equal dimension");
  const int m = s.dim();
  if (k->dim() < m + 1) {
    throw ArgumentError("ambient complex has no simplices of dimension " + std::to_string(m + 1));
  }
  SimplicialCurrent diff = OnAmbient(s, k) - OnAmbient(t, k);
  FillingReport report;
  report.method = "lp";
  const int nm = k->num_simplices(m), nm1 = k->num_simplices(m + 1);
  if (diff.is_zero()) {
    report.method = "zero";
    report.integral = true;
    report.integral_certificate = SimplicialCurrent(k, m + 1);
    report.integral_certificate_u = SimplicialCurrent(k, m);
    report.certificate.dim = m + 1;
    report.certificate_u.dim = m;
    return report;
  }
  LinearProgram lp;
  lp.rows = nm;
  lp.cols = 2 * nm + 2 * nm1;
  lp.b = Dense(diff, nm);
  lp.c.resize(lp.cols);
  for (int i = 0; i < nm; ++i) {
    lp.c[i] = lp.c[nm + i] = k->volume(m, i);
    lp.entries.push_back({i, i, 1.0});
    lp.entries.push_back({i, nm + i, -1.0});
  }
  for (int j = 0; j < nm1; ++j) lp.c[2 * nm + j] = lp.c[2 * nm + nm1 + j] = k->volume(m + 1, j);
  ForBoundaryEntries(*k, m + 1, [&](int f, int j, int sg) {
    lp.entries.push_back({f, 2 * nm + j, static_cast<double>(sg)});
    lp.entries.push_back({f, 2 * nm + nm1 + j, static_cast<double>(-sg)});
  });
  LPSolution sol = SolveLP(lp, options.method);
  CheckSolved(sol);
  std::vector<double> u(nm), v(nm1);
  for (int i = 0; i < nm; ++i) u[i] = sol.x[i] - sol.x[nm + i];
  for (int j = 0; j < nm1; ++j) v[j] = sol.x[2 * nm + j] - sol.x[2 * nm + nm1 + j];
  report.certificate = ToRealChain(m + 1, v);
  report.certificate_u = ToRealChain(m, u);
  report.value = sol.objective;
  report.upper_bound = sol.objective;
  report.lower_bound = std::min(sol.dual_bound, sol.objective);
  report.residual = sol.residual;
  std::vector<int64_t> ui, vi;
  if (RoundAll(u, &ui) && RoundAll(v, &vi)) {
    SimplicialCurrent uc = ToCurrent(k, m, ui), vc = ToCurrent(k, m + 1, vi);
    if (uc + Boundary(vc) == diff) {
      report.integral = true;
      report.integral_certificate = vc;
      report.integral_certificate_u = uc;
      report.residual = 0.0;
    }
  }
  if (report.residual > kLPResidualTolerance * (1.0 + Mass(diff))) {
    report.warnings.push_back("certificate residual " + std::to_string(report.residual) +
                              " exceeds tolerance");
  }
  return report;
}

FillingReport FillingVolume(const SimplicialCurrent& b_in, ComplexPtr k, const FillOptions& options) {
  SimplicialCurrent bd = Boundary(b_in);
  if (!bd.is_zero()) {
    throw ArgumentError("filling volume needs a cycle; boundary mass is " + std::to_string(Mass(bd)));
  }
  const int kd = b_in.dim();
  FillingReport report;
  report.certificate.dim = kd + 1;
  if (b_in.is_zero()) {
    report.method = "zero";
    report.integral = true;
    report.integral_certificate = SimplicialCurrent(k, kd + 1);
    return report;
  }
  if (k->dim() < kd + 1) {
    throw ArgumentError("ambient complex has no simplices of dimension " + std::to_string(kd + 1));
  }
  SimplicialCurrent b = OnAmbient(b_in, k);
  report.cone_bound = Mass(b) * SupportDiameter(b);

  if (!(options.allow_potential && PotentialFill(b, k, &report))) {
    report.method = "lp";
    const int nk = k->num_simplices(kd), nk1 = k->num_simplices(kd + 1);
    LinearProgram lp;
    lp.rows = nk;
    lp.cols = 2 * nk + 2 * nk1;
    lp.b = Dense(b, nk);
    lp.c.resize(lp.cols);
    for (int i = 0; i < nk; ++i) {
      lp.entries.push_back({i, i, 1.0});
      lp.entries.push_back({i, nk + i, -1.0});
    }
    for (int j = 0; j < nk1; ++j) lp.c[2 * nk + j] = lp.c[2 * nk + nk1 + j] = k->volume(kd + 1, j);
    ForBoundaryEntries(*k, kd + 1, [&](int f, int j, int sg) {
      lp.entries.push_back({f, 2 * nk + j, static_cast<double>(sg)});
      lp.entries.push_back({f, 2 * nk + nk1 + j, static_cast<double>(-sg)});
    });
    // Exact penalty: slack on the boundary constraint costs penalty * mass.
    double penalty = 10.0 * std::max(1.0, k->Diameter());
    const double bmass = Mass(b);
    LPSolution sol;
    std::vector<double> u(nk), v(nk1);
    bool clean = false;
    for (int attempt = 0; attempt < 4 && !clean; ++attempt, penalty *= 100.0) {
      for (int i = 0; i < nk; ++i) lp.c[i] = lp.c[nk + i] = penalty * k->volume(kd, i);
      sol = SolveLP(lp, options.method);
      CheckSolved(sol);
      double slack = 0.0;
      for (int i = 0; i < nk; ++i) {
        u[i] = sol.x[i] - sol.x[nk + i];
        slack += std::abs(u[i]) * k->volume(kd, i);
      }
      clean = slack <= 1e-7 * (1.0 + bmass);
    }
    if (!clean) throw ArgumentError("cycle does not bound in the ambient complex");
    double fill_mass = 0.0;
    for (int j = 0; j < nk1; ++j) {
      v[j] = sol.x[2 * nk + j] - sol.x[2 * nk + nk1 + j];
      fill_mass += std::abs(v[j]) * k->volume(kd + 1, j);
    }
    report.certificate = ToRealChain(kd + 1, v);
    report.value = fill_mass;
    report.upper_bound = fill_mass;
    report.lower_bound = std::min(sol.dual_bound, fill_mass);
    // Residual of dV = B.
    std::vector<double> dv(nk, 0.0);
    ForBoundaryEntries(*k, kd + 1, [&](int f, int j, int sg) { dv[f] += sg * v[j]; });
    report.residual = 0.0;
    for (int i = 0; i < nk; ++i) report.residual = std::max(report.residual, std::abs(dv[i] - lp.b[i]));
    std::vector<int64_t> vi;
    if (RoundAll(v, &vi)) {
      SimplicialCurrent vc = ToCurrent(k, kd + 1, vi);
      if (Boundary(vc) == b) {
        report.integral = true;
        report.integral_certificate = vc;
        report.residual = 0.0;
        report.value = report.upper_bound = Mass(vc);
        report.lower_bound = std::min(report.lower_bound, report.value);
      }
    }
    if (report.residual > kLPResidualTolerance * (1.0 + bmass)) {
      report.warnings.push_back("certificate residual " + std::to_string(report.residual) +
                                " exceeds tolerance");
    }
  }
  if (report.value > report.cone_bound * (1.0 + 1e-9) + 1e-12) {
    report.warnings.push_back("filling within the ambient exceeds the cone bound");
  }
  return report;
}

namespace {

FillingReport TransportFill(int n, const std::vector<int>& theta, const std::vector<int>& sigma,
                            const std::function<double(int, int)>& dist) {
  if (static_cast<int>(theta.size()) != n || static_cast<int>(sigma.size()) != n) {
    throw ArgumentError("theta and sigma must have one entry per point");
  }
  int64_t balance = 0;
  std::vector<int> pos, neg;
  std::vector<int64_t> supply, demand;
  for (int i = 0; i < n; ++i) {
    if (theta[i] <= 0) throw ArgumentError("weights theta must be positive integers");
    if (sigma[i] != 1 && sigma[i] != -1) throw ArgumentError("signs sigma must be +1 or -1");
    balance += static_cast<int64_t>(sigma[i]) * theta[i];
    if (sigma[i] > 0) {
      pos.push_back(i);
      supply.push_back(theta[i]);
    } else {
      neg.push_back(i);
      demand.push_back(theta[i]);
    }
  }
  if (balance != 0) throw ArgumentError("signed weights do not sum to zero");
  FillingReport report;
  report.method = n == 0 ? "zero" : "transport";
  report.integral = true;
  report.certificate.dim = 1;
  if (n == 0) return report;
  TransportPlan plan = SolveTransport(supply, demand, [&](int i, int j) { return dist(pos[i], neg[j]); });
  for (auto& f : plan.flows) {
    f.source = pos[f.source];
    f.sink = neg[f.sink];
  }
  report.value = plan.cost;
  report.upper_bound = plan.cost;
  report.plan = std::move(plan);
  double lower = 0.0;
  for (int j = 0; j < n; ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      if (i != j) nearest = std::min(nearest, dist(i, j));
    if (nearest < std::numeric_limits<double>::infinity()) lower = std::max(lower, theta[j] * nearest);
  }
  report.lower_bound = lower;
  return report;
}

}  // namespace

double PointFillingLowerBound(const FiniteMetricSpace& space, const std::vector<int>& theta) {
  double lower = 0.0;
  const int n = space.size();
  for (int j = 0; j < n; ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      if (i != j) nearest = std::min(nearest, space(i, j));
    if (n > 1) lower = std::max(lower, theta[j] * nearest);
  }
  return lower;
}

FillingReport FillingVolume0d(const FiniteMetricSpace& space, const std::vector<int>& theta,
                              const std::vector<int>& sigma) {
  return TransportFill(space.size(), theta, sigma, [&](int i, int j) { return space(i, j); });
}

FillingReport FillingVolume0d(const SimplicialCurrent& b) {
  if (b.dim() != 0) throw ArgumentError("expected a 0-dimensional current");
  std::vector<int> verts, theta, sigma;
  for (const auto& [v, c] : b.coeffs()) {
    verts.push_back(v);
    theta.push_back(static_cast<int>(std::abs(c)));
    sigma.push_back(c > 0 ? 1 : -1);
  }
  const GeometricComplex& cx = *b.complex();
  return TransportFill(static_cast<int>(verts.size()), theta, sigma,
                       [&](int i, int j) { return cx.distance(verts[i], verts[j]); });
}

ContinuityGap FillvolContinuityGap(const SimplicialCurrent& m1, const SimplicialCurrent& m2,
                                   ComplexPtr k, const FillOptions& options) {
  if (m1.dim() != m2.dim()) throw ArgumentError("currents must have equal dimension");
  ContinuityGap out;
  out.fill1 = FillingVolume(Boundary(OnAmbient(m1, k)), k, options).value;
  out.fill2 = FillingVolume(Boundary(OnAmbient(m2, k)), k, options).value;
  out.bound = FlatDistance(m1, m2, k, options).value;
  out.gap = std::abs(out.fill1 - out.fill2);
  out.tolerance = 1e-6 + 1e-8 * (out.fill1 + out.fill2 + out.bound);
  out.holds = out.gap <= out.bound + out.tolerance;
  return out;
}

nlohmann::json RealChainToJson(const RealChain& chain) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [i, c] : chain.coeffs) coeffs.push_back({i, c});
  return {{"dim", chain.dim}, {"coeffs", coeffs}};
}

nlohmann::json ReportToJson(const FillingReport& report) {
  nlohmann::json j;
  j["value"] = report.value;
  j["lower_bound"] = report.lower_bound;
  j["upper_bound"] = report.upper_bound;
  j["cone_bound"] = report.cone_bound;
  j["integral"] = report.integral;
  j["method"] = report.method;
  j["residual"] = report.residual;
  j["certificate"] = RealChainToJson(report.certificate);
  if (!report.certificate_u.coeffs.empty()) {
    j["certificate_u"] = RealChainToJson(report.certificate_u);
  }
  if (!report.plan.flows.empty()) {
    nlohmann::json flows = nlohmann::json::array();
    for (const auto& f : report.plan.flows) flows.push_back({f.source, f.sink, f.amount});
    j["plan"] = flows;
  }
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace currentlab
