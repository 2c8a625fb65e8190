/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_PARTITION_HPP
#define METRICDECOMP_PARTITION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metricdecomp/finite_metric.hpp"

namespace mdc {

// Assignment of every point to one cluster at scale delta. Cluster ids are
// contiguous 0..cluster_count-1, numbered by first occurrence in index order.
struct Partition {
  double delta = 0.0;
  std::int32_t cluster_count = 0;
  std::vector<std::int32_t> assignment;

  std::int32_t operator()(std::int32_t i) const { return assignment[i]; }
};

// Renumbers arbitrary labels to contiguous first-occurrence ids.
Partition make_partition(double delta, std::span<const std::int64_t> labels);
Partition make_partition(double delta, std::span<const std::int32_t> labels);

struct DiameterCheck {
  bool ok = true;
  double max_diameter = 0.0;
  std::int32_t witness_i = -1, witness_j = -1;
};

// True iff every cluster's diameter is <= P.delta; exhaustive pairwise scan.
DiameterCheck check_partition_diameter(const FiniteMetric& m, const Partition& p);

// True iff every cluster of `fine` is contained in one cluster of `coarse`.
bool refines(const Partition& fine, const Partition& coarse);

// File format: {"delta": real, "assignment": [int,...]}
std::string partition_to_json(const Partition& p);
Partition partition_from_json(const std::string& text);

// Common interface for the decomposition samplers. A sampler is bound to one
// instance at construction; sample(seed) is pure and bit-reproducible.
struct PartitionSampler {
  virtual ~PartitionSampler() = default;
  virtual Partition sample(std::uint64_t seed) const = 0;
  virtual double delta() const = 0;
  virtual std::int32_t size() const = 0;
};

}  // namespace mdc

#endif
