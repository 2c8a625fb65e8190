/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_GEN_HPP
#define METRICDECOMP_GEN_HPP

#include <cstdint>
#include <string>

#include "metricdecomp/point_set.hpp"

namespace mdc {

// Synthetic instances for experiments. All are deterministic in the seed.
PointSet gen_gaussian(std::int32_t n, std::int32_t d, double p, std::uint64_t seed);
PointSet gen_line(std::int32_t n, double p);                  // 0..n-1 on one axis
PointSet gen_hypercube_corners(std::int32_t d, double p);     // all 2^d corners
PointSet gen_uniform_ball(std::int32_t n, std::int32_t d, double p, std::uint64_t seed);

PointSet gen_named(const std::string& dist, std::int32_t n, std::int32_t d, double p,
                   std::uint64_t seed);

}  // namespace mdc

#endif
