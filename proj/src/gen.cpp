/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#include "metricdecomp/gen.hpp"

#include <cmath>
#include <stdexcept>

#include "metricdecomp/rng.hpp"

namespace mdc {

PointSet gen_gaussian(std::int32_t n, std::int32_t d, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(static_cast<std::size_t>(n) * d);
  for (double& c : coords) c = rng.normal();
  return make_point_set(std::move(coords), n, d, p, false);
}

PointSet gen_line(std::int32_t n, double p) {
  std::vector<double> coords(n);
  for (std::int32_t i = 0; i < n; ++i) coords[i] = static_cast<double>(i);
  return make_point_set(std::move(coords), n, 1, p, false);
}

PointSet gen_hypercube_corners(std::int32_t d, double p) {
  if (d < 1 || d > 20) throw std::invalid_argument("hypercube_corners: d must be in [1, 20]");
  const std::int32_t n = 1 << d;
  std::vector<double> coords(static_cast<std::size_t>(n) * d);
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t k = 0; k < d; ++k)
      coords[static_cast<std::size_t>(i) * d + k] = (i >> k) & 1 ? 1.0 : 0.0;
  return make_point_set(std::move(coords), n, d, p, false);
}

PointSet gen_uniform_ball(std::int32_t n, std::int32_t d, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(static_cast<std::size_t>(n) * d);
  for (std::int32_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    std::vector<double> g(d);
    for (auto& v : g) {
      v = rng.normal();
      norm2 += v * v;
    }
    const double norm = std::sqrt(norm2);
    const double radius = std::pow(rng.next_open(), 1.0 / d);
    for (std::int32_t k = 0; k < d; ++k)
      coords[static_cast<std::size_t>(i) * d + k] = norm > 0 ? radius * g[k] / norm : 0.0;
  }
  return make_point_set(std::move(coords), n, d, p, false);
}

PointSet gen_named(const std::string& dist, std::int32_t n, std::int32_t d, double p,
                   std::uint64_t seed) {
  if (dist == "gaussian") return gen_gaussian(n, d, p, seed);
  if (dist == "line") return gen_line(n, p);
  if (dist == "hypercube_corners") return gen_hypercube_corners(d, p);
  if (dist == "uniform_ball") return gen_uniform_ball(n, d, p, seed);
  throw std::invalid_argument("unknown distribution: " + dist);
}

}  // namespace mdc
