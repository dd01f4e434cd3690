#include "currentlab/transport.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "currentlab/errors.h"

namespace currentlab {

TransportPlan SolveTransport(const std::vector<int64_t>& supply, const std::vector<int64_t>& demand,
                             const std::function<double(int, int)>& cost) {
  const int n = static_cast<int>(supply.size());
  const int m = static_cast<int>(demand.size());
  for (int64_t s : supply)
    if (s < 0) throw ArgumentError("negative supply");
  for (int64_t d : demand)
    if (d < 0) throw ArgumentError("negative demand");
  if (std::accumulate(supply.begin(), supply.end(), int64_t{0}) !=
      std::accumulate(demand.begin(), demand.end(), int64_t{0})) {
    throw ArgumentError("supply and demand totals differ");
  }
  std::vector<double> c(static_cast<size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double v = cost(i, j);
      if (!(v >= 0)) throw ArgumentError("transport costs must be nonnegative");
      c[static_cast<size_t>(i) * m + j] = v;
    }
  }

  // Nodes: 0..n-1 supplies, n..n+m-1 demands, n+m the sink. The source is
  // implicit: every supply node with remaining supply starts at distance 0.
  const int sink = n + m;
  const int nodes = n + m + 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<int64_t> left_s = supply, left_d = demand;
  std::vector<int64_t> flow(static_cast<size_t>(n) * m, 0);
  std::vector<double> pot(nodes, 0.0), dist(nodes);
  std::vector<int> prev(nodes);
  std::vector<char> done(nodes);

  for (;;) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(prev.begin(), prev.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (left_s[i] > 0) {
        dist[i] = 0.0;
        any = true;
      }
    }
    if (!any) break;
    for (;;) {
      int u = -1;
      for (int v = 0; v < nodes; ++v)
        if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
      if (u < 0) break;
      done[u] = 1;
      auto relax = [&](int v, double w) {
        double nd = dist[u] + w + pot[u] - pot[v];
        if (nd < dist[v] - 1e-15) {
          dist[v] = nd;
          prev[v] = u;
        }
      };
      if (u < n) {
        for (int j = 0; j < m; ++j) relax(n + j, c[static_cast<size_t>(u) * m + j]);
      } else if (u < sink) {
        int j = u - n;
        if (left_d[j] > 0) relax(sink, 0.0);
        for (int i = 0; i < n; ++i)
          if (flow[static_cast<size_t>(i) * m + j] > 0) relax(i, -c[static_cast<size_t>(i) * m + j]);
      }
    }
    if (dist[sink] == inf) throw std::runtime_error("transport has no augmenting path");
    for (int v = 0; v < nodes; ++v)
      if (dist[v] < inf) pot[v] += dist[v];

    // Bottleneck along the path.
    int64_t amount = std::numeric_limits<int64_t>::max();
    int v = sink;
    amount = std::min(amount, left_d[prev[v] - n]);
    v = prev[v];
    while (prev[v] >= 0) {
      int u = prev[v];
      if (u >= n) amount = std::min(amount, flow[static_cast<size_t>(v) * m + (u - n)]);
      v = u;
    }
    amount = std::min(amount, left_s[v]);

    v = sink;
    left_d[prev[v] - n] -= amount;
    v = prev[v];
    while (prev[v] >= 0) {
      int u = prev[v];
      if (u < n) {
        flow[static_cast<size_t>(u) * m + (v - n)] += amount;
      } else {
        flow[static_cast<size_t>(v) * m + (u - n)] -= amount;
      }
      v = u;
    }
    left_s[v] -= amount;
  }

  TransportPlan plan;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      int64_t f = flow[static_cast<size_t>(i) * m + j];
      if (f > 0) {
        plan.flows.push_back({i, j, f});
        plan.cost += static_cast<double>(f) * c[static_cast<size_t>(i) * m + j];
      }
    }
  }
  return plan;
}

}  // namespace currentlab
