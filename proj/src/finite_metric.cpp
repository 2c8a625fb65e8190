/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/finite_metric.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mdc {

FiniteMetric FiniteMetric::from_points(const PointSet& s) {
  const std::int32_t n = s.n;
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = i + 1; j < n; ++j) {
      const double r = lp_distance(s, i, j);
      dist[static_cast<std::size_t>(i) * n + j] = r;
      dist[static_cast<std::size_t>(j) * n + i] = r;
    }
  }
  return FiniteMetric(n, std::move(dist));
}

FiniteMetric FiniteMetric::from_matrix(std::int32_t n, std::vector<double> dist, bool validate) {
  if (n < 1) throw std::invalid_argument("metric needs n >= 1");
  if (dist.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("distance matrix size does not match n*n");
  if (validate) {
    double scale = 0.0;
    for (double v : dist) {
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("distances must be finite and nonnegative");
      scale = std::max(scale, v);
    }
    const double tol = 1e-9 * std::max(scale, 1.0);
    for (std::int32_t i = 0; i < n; ++i) {
      if (dist[static_cast<std::size_t>(i) * n + i] != 0.0)
        throw std::invalid_argument("distance matrix diagonal must be zero");
      for (std::int32_t j = i + 1; j < n; ++j) {
        const double a = dist[static_cast<std::size_t>(i) * n + j];
        const double b = dist[static_cast<std::size_t>(j) * n + i];
        if (std::abs(a - b) > tol) throw std::invalid_argument("distance matrix must be symmetric");
      }
    }
    for (std::int32_t i = 0; i < n; ++i)
      for (std::int32_t j = 0; j < n; ++j)
        for (std::int32_t k = 0; k < n; ++k) {
          const double ij = dist[static_cast<std::size_t>(i) * n + j];
          const double ik = dist[static_cast<std::size_t>(i) * n + k];
          const double kj = dist[static_cast<std::size_t>(k) * n + j];
          if (ij > ik + kj + tol)
            throw std::invalid_argument("triangle inequality violated at (" + std::to_string(i) +
                                        "," + std::to_string(j) + "," + std::to_string(k) + ")");
        }
  }
  return FiniteMetric(n, std::move(dist));
}

FiniteMetric FiniteMetric::restrict(std::span<const std::int32_t> indices) const {
  const std::int32_t m = static_cast<std::int32_t>(indices.size());
  std::vector<double> dist(static_cast<std::size_t>(m) * m, 0.0);
  for (std::int32_t a = 0; a < m; ++a)
    for (std::int32_t b = 0; b < m; ++b)
      dist[static_cast<std::size_t>(a) * m + b] = (*this)(indices[a], indices[b]);
  return FiniteMetric(m, std::move(dist));
}

double FiniteMetric::diameter() const {
  double m = 0.0;
  for (double v : dist_) m = std::max(m, v);
  return m;
}

double FiniteMetric::min_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::int32_t i = 0; i < n_; ++i)
    for (std::int32_t j = i + 1; j < n_; ++j) m = std::min(m, (*this)(i, j));
  return m;
}

FiniteMetric metric_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("dist")) throw std::invalid_argument("metric json: missing \"dist\"");
  const auto& rows = j["dist"];
  const std::int32_t n = static_cast<std::int32_t>(rows.size());
  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<std::int32_t>(row.size()) != n)
      throw std::invalid_argument("metric json: matrix must be square");
    for (const auto& v : row) dist.push_back(v.get<double>());
  }
  return FiniteMetric::from_matrix(n, std::move(dist), true);
}

FiniteMetric load_metric(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return metric_from_json(ss.str());
}

}  // namespace mdc
