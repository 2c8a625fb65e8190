/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/partition.hpp"

#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace mdc {

namespace {
template <typename T>
Partition renumber(double delta, std::span<const T> labels) {
  Partition p;
  p.delta = delta;
  p.assignment.resize(labels.size());
  std::unordered_map<T, std::int32_t> ids;
  ids.reserve(labels.size());
  std::int32_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], next);
    if (inserted) ++next;
    p.assignment[i] = it->second;
  }
  p.cluster_count = next;
  return p;
}
}  // namespace

Partition make_partition(double delta, std::span<const std::int64_t> labels) {
  return renumber(delta, labels);
}

Partition make_partition(double delta, std::span<const std::int32_t> labels) {
  return renumber(delta, labels);
}

DiameterCheck check_partition_diameter(const FiniteMetric& m, const Partition& p) {
  if (static_cast<std::int32_t>(p.assignment.size()) != m.size())
    throw std::invalid_argument("partition size does not match metric");
  DiameterCheck res;
  for (std::int32_t i = 0; i < m.size(); ++i) {
    for (std::int32_t j = i + 1; j < m.size(); ++j) {
      if (p.assignment[i] != p.assignment[j]) continue;
      const double r = m(i, j);
      if (r > res.max_diameter) {
        res.max_diameter = r;
        res.witness_i = i;
        res.witness_j = j;
      }
    }
  }
  res.ok = res.max_diameter <= p.delta;
  return res;
}

bool refines(const Partition& fine, const Partition& coarse) {
  if (fine.assignment.size() != coarse.assignment.size()) return false;
  std::vector<std::int32_t> owner(fine.cluster_count, -1);
  for (std::size_t i = 0; i < fine.assignment.size(); ++i) {
    const std::int32_t f = fine.assignment[i];
    if (owner[f] == -1)
      owner[f] = coarse.assignment[i];
    else if (owner[f] != coarse.assignment[i])
      return false;
  }
  return true;
}

std::string partition_to_json(const Partition& p) {
  nlohmann::json j;
  j["delta"] = p.delta;
  j["assignment"] = p.assignment;
  return j.dump();
}

Partition partition_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<std::int32_t> assignment = j.at("assignment").get<std::vector<std::int32_t>>();
  Partition p = make_partition(j.at("delta").get<double>(), std::span<const std::int32_t>(assignment));
  return p;
}

}  // namespace mdc
