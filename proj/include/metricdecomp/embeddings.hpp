/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_EMBEDDINGS_HPP
#define METRICDECOMP_EMBEDDINGS_HPP

#include <cstdint>
#include <vector>

#include "metricdecomp/point_set.hpp"

namespace mdc {

// Scaled Mazur map l_p -> l_2 for p > 2. Valid on sets whose translated
// points have l_p norm at most c0; on such sets it is non-expanding and
// contracts by at most (2/p)(2 c0)^{1-p/2} on the (p/2)-power of distances.
struct MazurConfig {
  double p = 4.0;                  // source exponent, must be > 2
  double c0 = 1.0;                 // norm bound after translation
  std::vector<double> base_point;  // translation origin
};

// Coordinate-wise sign(x-b)|x-b|^{p/2} / ((p/2) c0^{p/2-1}); output has p = 2.
PointSet mazur_map(const PointSet& s, const MazurConfig& cfg);

// Two-sided distance bound of the scaled Mazur map, for tests and reports.
double mazur_lower_bound(double rho, double p, double c0);  // (2/p)(2c0)^{1-p/2} rho^{p/2}

struct JlConfig {
  std::int32_t target_dim = 1;
  std::uint64_t seed = 0;
};

// ceil(8 ln n / eps^2), the default target dimension at distortion eps.
std::int32_t jl_default_dim(std::int32_t n, double eps = 0.5);

// x -> (1/sqrt(k)) G x with G a k x d matrix of standard normals drawn from
// the seed; deterministic in (seed, d, k).
PointSet jl_project(const PointSet& s, const JlConfig& cfg);

// Isometric embedding of the (p/2)-snowflake of a finite l_p set, p in (1,2),
// into l_2: classical MDS on D_ij = ||x_i-x_j||_p^{p/2}. Exact up to
// eigensolver noise; a significantly negative eigenvalue is a hard error.
PointSet snowflake_embed(const PointSet& s);

}  // namespace mdc

#endif
