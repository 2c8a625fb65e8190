/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/nets.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mdc {

GreedyNet greedy_net(const FiniteMetric& m, double r, std::span<const std::int32_t> order) {
  if (!(r > 0.0)) throw std::invalid_argument("greedy_net: radius must be positive");
  GreedyNet out;
  const std::int32_t n = m.size();
  for (std::int32_t idx : order) {
    bool covered = false;
    for (std::int32_t c : out.net) {
      if (m(idx, c) <= r) {
        covered = true;
        break;
      }
    }
    if (!covered) out.net.push_back(idx);
  }
  out.representative.resize(n);
  for (std::int32_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::int32_t rep = out.net.front();
    for (std::int32_t c : out.net) {
      const double d = m(i, c);
      if (d < best || (d == best && c < rep)) {
        best = d;
        rep = c;
      }
    }
    out.representative[i] = rep;
  }
  return out;
}

GreedyNet greedy_net(const FiniteMetric& m, double r) {
  std::vector<std::int32_t> order(m.size());
  std::iota(order.begin(), order.end(), 0);
  return greedy_net(m, r, order);
}

NetHierarchy build_net_hierarchy(const FiniteMetric& m) {
  const std::int32_t n = m.size();
  if (n > 1) {
    const double mind = m.min_distance();
    if (mind == 0.0) throw duplicate_points_error("net hierarchy: duplicate points");
    if (mind < 1.0 - 1e-9)
      throw std::invalid_argument("net hierarchy: minimum distance must be >= 1 (rescale first)");
  }

  NetHierarchy h;
  NetLevel base;
  base.radius = 1.0;
  base.net.resize(n);
  base.representative.resize(n);
  std::iota(base.net.begin(), base.net.end(), 0);
  std::iota(base.representative.begin(), base.representative.end(), 0);
  h.levels.push_back(std::move(base));
  if (n == 1) return h;

  const double diam = m.diameter();
  const std::int32_t min_levels =
      static_cast<std::int32_t>(std::ceil(std::log2(std::max(diam, 1.0)))) + 1;

  while (h.levels.back().net.size() > 1 ||
         static_cast<std::int32_t>(h.levels.size()) < min_levels) {
    const NetLevel& prev = h.levels.back();
    NetLevel next;
    next.radius = prev.radius * 2.0;
    // thin the previous net in index order (prev.net is already ascending)
    for (std::int32_t idx : prev.net) {
      bool covered = false;
      for (std::int32_t c : next.net) {
        if (m(idx, c) <= next.radius) {
          covered = true;
          break;
        }
      }
      if (!covered) next.net.push_back(idx);
    }
    next.representative.resize(n);
    for (std::int32_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::int32_t rep = next.net.front();
      for (std::int32_t c : next.net) {
        const double d = m(i, c);
        if (d < best || (d == best && c < rep)) {
          best = d;
          rep = c;
        }
      }
      next.representative[i] = rep;
    }
    h.levels.push_back(std::move(next));
    if (h.levels.size() > 64) throw std::runtime_error("net hierarchy: too many levels");
  }
  return h;
}

NetHierarchy build_net_hierarchy(const PointSet& s) {
  return build_net_hierarchy(FiniteMetric::from_points(s));
}

}  // namespace mdc
