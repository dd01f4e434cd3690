#ifndef CURRENTLAB_TRANSPORT_H_
#define CURRENTLAB_TRANSPORT_H_

#include <cstdint>
#include <functional>
#include <vector>

namespace currentlab {

struct TransportFlow {
  int source = 0;
  int sink = 0;
  int64_t amount = 0;
};

struct TransportPlan {
  double cost = 0.0;
  std::vector<TransportFlow> flows;
};

// Minimum-cost transport of integer supplies onto integer demands (equal
// totals) with nonnegative costs cost(i, j), by successive shortest paths on
// the complete bipartite graph with Dijkstra and node potentials.
TransportPlan SolveTransport(const std::vector<int64_t>& supply, const std::vector<int64_t>& demand,
                             const std::function<double(int, int)>& cost);

}  // namespace currentlab

#endif  // CURRENTLAB_TRANSPORT_H_
