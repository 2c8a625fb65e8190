/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_FINITE_METRIC_HPP
#define METRICDECOMP_FINITE_METRIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metricdecomp/point_set.hpp"

namespace mdc {

// Finite metric with all pairwise distances materialized. Point-set inputs
// are metrics by construction; explicit matrices are validated (symmetry,
// zero diagonal, nonnegativity, triangle inequality).
class FiniteMetric {
 public:
  static FiniteMetric from_points(const PointSet& s);
  static FiniteMetric from_matrix(std::int32_t n, std::vector<double> dist, bool validate = true);

  // Sub-metric over a subset of indices, in the given order.
  FiniteMetric restrict(std::span<const std::int32_t> indices) const;

  double operator()(std::int32_t i, std::int32_t j) const {
    return dist_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::int32_t size() const { return n_; }
  double diameter() const;
  double min_distance() const;  // +inf when n == 1

 private:
  FiniteMetric(std::int32_t n, std::vector<double> dist) : n_(n), dist_(std::move(dist)) {}
  std::int32_t n_ = 0;
  std::vector<double> dist_;
};

// File format: {"dist": [[real,...],...]}
FiniteMetric metric_from_json(const std::string& text);
FiniteMetric load_metric(const std::string& path);

}  // namespace mdc

#endif
