/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_POINT_SET_HPP
#define METRICDECOMP_POINT_SET_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdc {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Duplicate points get their own error type: nets and labeling assume a
// positive minimum distance, so callers can catch this and deduplicate.
struct duplicate_points_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// n points in R^d under the l_p norm, p >= 1 (kInfExponent for l_inf).
// Immutable after construction; coordinates are stored row-major.
struct PointSet {
  std::int32_t n = 0;
  std::int32_t d = 0;
  double p = 2.0;
  std::vector<double> coords;

  std::span<const double> row(std::int32_t i) const {
    return {coords.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
  }
};

double lp_distance(std::span<const double> u, std::span<const double> v, double p);

inline double lp_distance(const PointSet& s, std::int32_t i, std::int32_t j) {
  return lp_distance(s.row(i), s.row(j), s.p);
}

// Validates invariants (n >= 1, d >= 1, finite coords, p >= 1). With
// check_duplicates set, coordinate-identical rows raise duplicate_points_error.
PointSet make_point_set(std::vector<double> coords, std::int32_t n, std::int32_t d, double p,
                        bool check_duplicates = false);

double min_pairwise_distance(const PointSet& s);
double diameter(const PointSet& s);

// Returns a copy scaled so the minimum pairwise distance equals target.
PointSet normalize_min_distance(const PointSet& s, double target = 1.0);

// File format: {"p": real or "inf", "points": [[real,...],...]}
PointSet point_set_from_json(const std::string& text, bool check_duplicates = true);
std::string point_set_to_json(const PointSet& s);
PointSet load_point_set(const std::string& path, bool check_duplicates = true);
void save_point_set(const PointSet& s, const std::string& path);

}  // namespace mdc

#endif
