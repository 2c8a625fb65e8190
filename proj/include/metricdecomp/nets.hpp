/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_NETS_HPP
#define METRICDECOMP_NETS_HPP

#include <cstdint>
#include <vector>

#include "metricdecomp/finite_metric.hpp"

namespace mdc {

struct GreedyNet {
  std::vector<std::int32_t> net;             // selected point indices, in scan order
  std::vector<std::int32_t> representative;  // for every point: nearest net member
};

// Greedy r-net over the scan order (default: index order). Net members are
// pairwise > r apart; every point is within r of some net member. Ties in the
// representative map go to the lowest index.
GreedyNet greedy_net(const FiniteMetric& m, double r);
GreedyNet greedy_net(const FiniteMetric& m, double r, std::span<const std::int32_t> order);

struct NetLevel {
  double radius = 1.0;                       // 2^i
  std::vector<std::int32_t> net;
  std::vector<std::int32_t> representative;  // over all points of the input
};

// Nested hierarchy N_0 = X, N_{i+1} obtained by thinning N_i at radius
// 2^{i+1}. Thinning keeps packing exact (> 2^i for i >= 1) but lets the
// covering radius relative to X drift up to 2^{i+1} - 2; representatives are
// nearest net members and tests assert the 2^{i+1} covering bound.
struct NetHierarchy {
  std::vector<NetLevel> levels;
};

// Requires minimum pairwise distance >= 1 (callers rescale). Builds levels
// until the net is a single point, with at least ceil(log2 diam) + 1 levels.
NetHierarchy build_net_hierarchy(const FiniteMetric& m);
NetHierarchy build_net_hierarchy(const PointSet& s);

}  // namespace mdc

#endif
