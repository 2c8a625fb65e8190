/**
 * metricdecomp
 *
 * This code is released under the
 * Apache License Version 2.0 http://www.apache.org/licenses/.
 */
#ifndef METRICDECOMP_LSH_HPP
#define METRICDECOMP_LSH_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "metricdecomp/point_set.hpp"

namespace mdc {

enum class LshScheme { p_stable, ball_lattice, snowflake_composed };

std::string to_string(LshScheme s);
LshScheme lsh_scheme_from_string(const std::string& s);

// A seeded hash family over a fixed finite point set. Functions are addressed
// by point index because the snowflake scheme is data-dependent (it hashes
// the embedded copy of the input, not raw coordinates).
struct LshFamily {
  LshScheme scheme = LshScheme::p_stable;
  double r = 1.0;   // near threshold
  double t = 2.0;   // far multiplier; far threshold is t*r
  std::uint64_t seed = 0;

  std::shared_ptr<const PointSet> points;  // what the hashes act on

  // scheme parameters
  double w = 0.0;        // p_stable: quantization width; ball_lattice: ball radius
  double pitch = 0.0;    // ball_lattice: lattice pitch
  double alpha = 2.0;    // p_stable: stability index (= source exponent)
  double r_prime = 0.0;  // snowflake: thresholds after the power transform
  double t_prime = 0.0;
  double source_p = 2.0;

  // Unprojected lattices have bucket diameter <= t*r in the hashed space
  // itself, so pairs beyond t*r provably never collide.
  bool exact_diameter = false;
};

// Datar-Indyk quantized random projections; requires p in (0, 2].
LshFamily make_p_stable_family(std::shared_ptr<const PointSet> points, double r, double t,
                               std::uint64_t seed, double w = 0.0);

// Randomly shifted lattice of radius-w balls probed in rounds, w = r*t/2;
// above 8 dimensions each hash projects down first (nearest-point probing on
// an integer lattice needs pitch ~ w/sqrt(d), which shreds nearby pairs), so
// the t*r bucket-diameter bound then holds in the projected space.
LshFamily make_ball_lattice_family(std::shared_ptr<const PointSet> points, double r, double t,
                                   std::uint64_t seed);

// Lemma-style composition for p in (1, 2): snowflake-embed the set into l_2
// and hash with the l_2 ball lattice at r' = r^{p/2}, t' = t^{p/2}.
LshFamily snowflake_lsh_family(std::shared_ptr<const PointSet> points, double r, double t,
                               std::uint64_t seed);

// One sampled hash function: a pure function of (family.seed, draw, point).
class LshFunction {
 public:
  LshFunction(const LshFamily& family, std::uint64_t draw);
  std::uint64_t bucket(std::int32_t point_index) const;

 private:
  const LshFamily* fam_;
  std::uint64_t fn_seed_;
  std::vector<double> proj_;  // p_stable: one projection direction
  double shift_ = 0.0;
};

LshFunction lsh_sample(const LshFamily& family, std::uint64_t draw);

// Closed-form l_2 p-stable collision probability at distance c (Gaussian cdf
// form); the Monte Carlo oracle cross-checks measured rates against this.
double p_stable_l2_collision_prob(double c, double w);

// Descriptor JSON {"scheme", "r", "t", "seed", "params"}; together with the
// source point set this reproduces the family exactly.
std::string lsh_family_to_json(const LshFamily& f);

}  // namespace mdc

#endif
