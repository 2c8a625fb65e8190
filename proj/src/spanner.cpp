/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "metricdecomp/capped.hpp"
#include "metricdecomp/lipschitz.hpp"
#include "metricdecomp/mst.hpp"
#include "metricdecomp/nets.hpp"
#include "metricdecomp/rng.hpp"

namespace mdc {

SpannerDeps default_spanner_deps() {
  SpannerDeps deps;
  deps.lipschitz = [](std::shared_ptr<const PointSet> s, double delta) {
    return make_lipschitz_sampler(std::move(s), delta);
  };
  deps.capped = [](std::shared_ptr<const PointSet> s, double t, double delta) {
    return make_capped_sampler(std::move(s), t, delta);
  };
  return deps;
}

namespace {

// default level multiplier for lipschitz mode: the routed sampler's claimed
// beta shape with a small constant
double default_level_beta(const PointSet& s) {
  const double ln_n = ln_floor(s.n);
  if (s.p == 2.0) return 2.0 * std::sqrt(ln_n);
  if (s.p > 2.0 && s.p != kInfExponent) return 2.0 * std::pow(ln_n, 1.0 - 1.0 / s.p);
  return 2.0 * ln_n;
}

PointSet subset_points(const PointSet& s, std::span<const std::int32_t> idx) {
  std::vector<double> coords;
  coords.reserve(idx.size() * s.d);
  for (std::int32_t i : idx) coords.insert(coords.end(), s.row(i).begin(), s.row(i).end());
  return make_point_set(std::move(coords), static_cast<std::int32_t>(idx.size()), s.d, s.p, false);
}

}  // namespace

SpannerGraph build_spanner(std::shared_ptr<const PointSet> s, const SpannerSpec& spec,
                           const SpannerDeps& deps) {
  const PointSet& pts = *s;
  if (!(spec.epsilon > 0.0 && spec.epsilon < 0.125))
    throw std::invalid_argument("spanner: epsilon must be in (0, 1/8)");
  if (!(spec.t >= 1.0)) throw std::invalid_argument("spanner: t must be >= 1");

  SpannerGraph g;
  g.n = pts.n;
  if (pts.n == 1) return g;

  const FiniteMetric metric = FiniteMetric::from_points(pts);
  if (metric.min_distance() < 1.0 - 1e-9)
    throw std::invalid_argument("spanner: minimum distance must be >= 1 (rescale first)");

  const std::int32_t reps = spec.repetitions > 0
                                ? spec.repetitions
                                : static_cast<std::int32_t>(std::ceil(4.0 * ln_floor(pts.n)));
  const double level_beta = spec.level_beta > 0.0 ? spec.level_beta : default_level_beta(pts);

  std::set<std::pair<std::int32_t, std::int32_t>> edge_set;
  const auto add_edge = [&](std::int32_t a, std::int32_t b) {
    if (a == b) return;
    edge_set.emplace(std::min(a, b), std::max(a, b));
  };

  // MST at the bottom: replaces the pruned low levels and forces connectivity
  const MstResult tree = mst(metric);
  for (const auto& e : tree.edges) add_edge(e.i, e.j);

  const double level_floor =
      spec.epsilon * tree.total_weight / (static_cast<double>(pts.n) * pts.n);

  const NetHierarchy hierarchy = build_net_hierarchy(metric);
  for (std::size_t li = 0; li < hierarchy.levels.size(); ++li) {
    const NetLevel& level = hierarchy.levels[li];

    // parent edges into the next level keep the chain to coarser scales short
    if (li + 1 < hierarchy.levels.size()) {
      const NetLevel& up = hierarchy.levels[li + 1];
      for (std::int32_t x : level.net) add_edge(x, up.representative[x]);
    }

    if (level.radius < level_floor) continue;  // covered by the MST edges
    if (level.net.size() < 2) continue;

    const double scale = 2.0 * level.radius;  // 2^{i+1}
    const auto sub = std::make_shared<PointSet>(subset_points(pts, level.net));
    std::unique_ptr<PartitionSampler> sampler;
    if (spec.mode == SpannerMode::lipschitz)
      sampler = deps.lipschitz(sub, level_beta * scale);
    else
      sampler = deps.capped(sub, spec.t, spec.t * scale);

    for (std::int32_t rep = 0; rep < reps; ++rep) {
      const Partition p = sampler->sample(
          derive_seed(spec.seed, static_cast<std::uint64_t>(li), static_cast<std::uint64_t>(rep)));
      // star per cluster, centered at its lowest-index member; level.net is
      // ascending so the first member seen is the center
      std::vector<std::int32_t> center(p.cluster_count, -1);
      for (std::size_t a = 0; a < level.net.size(); ++a) {
        const std::int32_t c = p.assignment[a];
        if (center[c] == -1)
          center[c] = level.net[a];
        else
          add_edge(center[c], level.net[a]);
      }
    }
  }

  g.edges.reserve(edge_set.size());
  for (const auto& [a, b] : edge_set) g.edges.push_back({a, b, metric(a, b)});
  return g;
}

namespace {

std::vector<double> dijkstra(const SpannerGraph& g,
                             const std::vector<std::vector<std::pair<std::int32_t, double>>>& adj,
                             std::int32_t src) {
  std::vector<double> dist(g.n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.emplace(0.0, src);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        queue.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<std::pair<std::int32_t, double>>> adjacency(const SpannerGraph& g) {
  std::vector<std::vector<std::pair<std::int32_t, double>>> adj(g.n);
  for (const auto& e : g.edges) {
    adj[e.i].emplace_back(e.j, e.weight);
    adj[e.j].emplace_back(e.i, e.weight);
  }
  return adj;
}

}  // namespace

StretchReport eval_stretch(const FiniteMetric& m, const SpannerGraph& g) {
  std::vector<std::pair<std::int32_t, std::int32_t>> all;
  for (std::int32_t i = 0; i < g.n; ++i)
    for (std::int32_t j = i + 1; j < g.n; ++j) all.emplace_back(i, j);
  return eval_stretch(m, g, all);
}

StretchReport eval_stretch(const FiniteMetric& m, const SpannerGraph& g,
                           std::span<const std::pair<std::int32_t, std::int32_t>> pairs) {
  StretchReport rep;
  if (g.n < 2 || pairs.empty()) {
    rep.stretch_max = g.n < 2 ? 1.0 : rep.stretch_max;
    rep.stretch_p99 = rep.stretch_max;
    return rep;
  }
  const auto adj = adjacency(g);

  // group by source so each Dijkstra is run once
  std::vector<std::vector<std::int32_t>> by_src(g.n);
  for (const auto& [i, j] : pairs) by_src[i].push_back(j);

  std::vector<double> ratios;
  ratios.reserve(pairs.size());
  for (std::int32_t src = 0; src < g.n; ++src) {
    if (by_src[src].empty()) continue;
    const auto dist = dijkstra(g, adj, src);
    for (std::int32_t j : by_src[src]) {
      if (!std::isfinite(dist[j])) {
        rep.connected = false;
        rep.stretch_max = std::numeric_limits<double>::infinity();
        rep.witness_i = src;
        rep.witness_j = j;
        return rep;
      }
      const double ratio = dist[j] / m(src, j);
      ratios.push_back(ratio);
      if (ratio > rep.stretch_max) {
        rep.stretch_max = ratio;
        rep.witness_i = src;
        rep.witness_j = j;
      }
    }
  }
  std::sort(ratios.begin(), ratios.end());
  rep.stretch_p99 = ratios[static_cast<std::size_t>(0.99 * (ratios.size() - 1))];
  return rep;
}

SizeLightnessReport eval_size_lightness(const FiniteMetric& m, const SpannerGraph& g) {
  SizeLightnessReport rep;
  rep.edge_count = static_cast<std::int64_t>(g.edges.size());
  for (const auto& e : g.edges) rep.total_weight += e.weight;
  rep.mst_weight = mst(m).total_weight;
  rep.lightness = rep.mst_weight > 0.0
                      ? rep.total_weight / rep.mst_weight
                      : (rep.total_weight > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  return rep;
}

std::string spanner_to_json(const SpannerGraph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  auto arr = nlohmann::json::array();
  for (const auto& e : g.edges) arr.push_back({e.i, e.j, e.weight});
  j["edges"] = std::move(arr);
  return j.dump();
}

SpannerGraph spanner_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SpannerGraph g;
  g.n = j.at("n").get<std::int32_t>();
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e[0].get<std::int32_t>(), e[1].get<std::int32_t>(), e[2].get<double>()});
  return g;
}

}  // namespace mdc
