/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_MST_HPP
#define METRICDECOMP_MST_HPP

#include <cstdint>
#include <vector>

#include "metricdecomp/finite_metric.hpp"

namespace mdc {

struct MstEdge {
  std::int32_t i = 0, j = 0;
  double weight = 0.0;
};

struct MstResult {
  std::vector<MstEdge> edges;
  double total_weight = 0.0;
};

// Prim over the complete metric graph, O(n^2).
MstResult mst(const FiniteMetric& m);

}  // namespace mdc

#endif
