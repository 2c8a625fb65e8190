/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/mst.hpp"

#include <algorithm>
#include <limits>

namespace mdc {

MstResult mst(const FiniteMetric& m) {
  const std::int32_t n = m.size();
  MstResult res;
  if (n <= 1) return res;

  std::vector<bool> used(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::int32_t> parent(n, -1);
  best[0] = 0.0;
  for (std::int32_t it = 0; it < n; ++it) {
    std::int32_t u = -1;
    for (std::int32_t v = 0; v < n; ++v)
      if (!used[v] && (u == -1 || best[v] < best[u])) u = v;
    used[u] = true;
    if (parent[u] != -1) {
      res.edges.push_back({std::min(parent[u], u), std::max(parent[u], u), best[u]});
      res.total_weight += best[u];
    }
    for (std::int32_t v = 0; v < n; ++v) {
      if (!used[v] && m(u, v) < best[v]) {
        best[v] = m(u, v);
        parent[v] = u;
      }
    }
  }
  return res;
}

}  // namespace mdc
