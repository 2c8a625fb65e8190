/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_SPANNER_HPP
#define METRICDECOMP_SPANNER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "metricdecomp/partition.hpp"
#include "metricdecomp/point_set.hpp"

namespace mdc {

struct SpannerEdge {
  std::int32_t i = 0, j = 0;
  double weight = 0.0;  // always the metric distance of the endpoints
};

struct SpannerGraph {
  std::int32_t n = 0;
  std::vector<SpannerEdge> edges;
};

enum class SpannerMode { lipschitz, capped };

struct SpannerSpec {
  SpannerMode mode = SpannerMode::lipschitz;
  double t = 2.0;          // stretch driver (capped mode scale multiplier)
  double epsilon = 0.1;    // must be in (0, 1/8)
  std::int32_t repetitions = 0;  // 0 -> ceil(4 ln n)
  std::uint64_t seed = 0;
  double level_beta = 0.0;  // lipschitz-mode level multiplier; 0 -> sampler default
};

// Sampler factories let tests swap the decomposition behind the construction.
using LipschitzFactory =
    std::function<std::unique_ptr<PartitionSampler>(std::shared_ptr<const PointSet>, double)>;
using CappedFactory = std::function<std::unique_ptr<PartitionSampler>(
    std::shared_ptr<const PointSet>, double, double)>;

struct SpannerDeps {
  LipschitzFactory lipschitz;  // (points, delta)
  CappedFactory capped;        // (points, t, delta)
};
SpannerDeps default_spanner_deps();

// Net-hierarchy spanner: per level i, R sampled partitions of the 2^i-net at
// scale beta*2^{i+1} (lipschitz) or (t, t*2^{i+1}) (capped); a star from the
// lowest-index point of every cluster; plus net-parent edges and the MST at
// the bottom. Requires minimum distance >= 1.
SpannerGraph build_spanner(std::shared_ptr<const PointSet> s, const SpannerSpec& spec,
                           const SpannerDeps& deps = default_spanner_deps());

struct StretchReport {
  bool connected = true;
  double stretch_max = 0.0;
  double stretch_p99 = 0.0;
  std::int32_t witness_i = -1, witness_j = -1;  // pair attaining the max (or disconnection)
};

// Exact shortest paths (Dijkstra per source) over all pairs, or a sample.
StretchReport eval_stretch(const FiniteMetric& m, const SpannerGraph& g);
StretchReport eval_stretch(const FiniteMetric& m, const SpannerGraph& g,
                           std::span<const std::pair<std::int32_t, std::int32_t>> pairs);

struct SizeLightnessReport {
  std::int64_t edge_count = 0;
  double total_weight = 0.0;
  double mst_weight = 0.0;
  double lightness = 0.0;
};

SizeLightnessReport eval_size_lightness(const FiniteMetric& m, const SpannerGraph& g);

// {"n": int, "edges": [[i, j, w], ...]}
std::string spanner_to_json(const SpannerGraph& g);
SpannerGraph spanner_from_json(const std::string& text);

}  // namespace mdc

#endif
