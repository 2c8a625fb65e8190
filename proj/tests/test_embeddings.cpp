#include <cmath>
#include <vector>

#include "doctest.h"
#include "metricdecomp/embeddings.hpp"
#include "metricdecomp/gen.hpp"
#include "metricdecomp/rng.hpp"

using namespace mdc;

TEST_CASE("mazur map formula and sandwich") {
  // p = 4, c0 = 1, base 0: x = (1, 0) maps to (1/2, 0)
  const PointSet s = make_point_set({1.0, 0.0, 0.0, 0.0}, 2, 2, 4.0);
  const MazurConfig cfg{4.0, 1.0, {0.0, 0.0}};
  const PointSet img = mazur_map(s, cfg);
  CHECK(img.p == 2.0);
  CHECK(img.row(0)[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(img.row(0)[1] == 0.0);
  CHECK(img.row(1)[0] == 0.0);

  // the pair (1,0) vs (0,0): image distance 1/2; lower bound 1/4, upper 1
  const double rho = lp_distance(s, 0, 1);
  const double img_d = lp_distance(img, 0, 1);
  CHECK(img_d == doctest::Approx(0.5));
  CHECK(mazur_lower_bound(rho, 4.0, 1.0) == doctest::Approx(0.25));
  CHECK(img_d >= mazur_lower_bound(rho, 4.0, 1.0) - 1e-9);
  CHECK(img_d <= rho + 1e-9);
}

TEST_CASE("mazur map base point maps to zero and precondition is enforced") {
  const PointSet s = make_point_set({2.0, 3.0, 2.0, 4.0}, 2, 2, 3.0);
  const MazurConfig cfg{3.0, 2.0, {2.0, 3.0}};
  const PointSet img = mazur_map(s, cfg);
  CHECK(img.row(0)[0] == 0.0);
  CHECK(img.row(0)[1] == 0.0);

  const MazurConfig tight{3.0, 0.5, {2.0, 3.0}};
  CHECK_THROWS_AS(mazur_map(s, tight), std::invalid_argument);
  CHECK_THROWS_AS(mazur_map(s, MazurConfig{2.0, 1.0, {0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("mazur sandwich holds on random bounded sets") {
  Rng rng(21);
  for (double p : {2.5, 4.0, 8.0}) {
    const std::int32_t n = 24, d = 6;
    const double c0 = 2.0;
    std::vector<double> coords(static_cast<std::size_t>(n) * d);
    // scale each point inside the l_p ball of radius c0
    for (std::int32_t i = 0; i < n; ++i) {
      std::vector<double> v(d);
      double norm = 0.0;
      for (auto& x : v) x = rng.normal();
      for (auto& x : v) norm += std::pow(std::abs(x), p);
      norm = std::pow(norm, 1.0 / p);
      const double target = c0 * rng.next_double();
      for (std::int32_t k = 0; k < d; ++k)
        coords[static_cast<std::size_t>(i) * d + k] = v[k] * target / norm;
    }
    const PointSet s = make_point_set(std::move(coords), n, d, p);
    const PointSet img = mazur_map(s, MazurConfig{p, c0, std::vector<double>(d, 0.0)});
    for (std::int32_t i = 0; i < n; ++i) {
      for (std::int32_t j = i + 1; j < n; ++j) {
        const double rho = lp_distance(s, i, j);
        const double du = lp_distance(img, i, j);
        CHECK(du <= rho * (1.0 + 1e-9) + 1e-9);
        CHECK(du >= mazur_lower_bound(rho, p, c0) * (1.0 - 1e-9) - 1e-9);
      }
    }
  }
}

TEST_CASE("jl projection") {
  SUBCASE("zero preserved, linearity, determinism") {
    const PointSet s = make_point_set({0.0, 0.0, 0.0,  1.0, -2.0, 0.5,  2.0, 1.0, -1.0,
                                       -1.0, -3.0, 1.5},
                                      4, 3, 2.0);
    const JlConfig cfg{5, 99};
    const PointSet a = jl_project(s, cfg);
    const PointSet b = jl_project(s, cfg);
    CHECK(a.coords == b.coords);  // bit-identical given the seed
    for (double c : a.row(0)) CHECK(c == 0.0);
    // linear map: f(x) - f(y) = f(x - y);
    // x - y = (1,-2,0.5) - (2,1,-1) = (-1,-3,1.5) = row 3
    for (std::int32_t k = 0; k < a.d; ++k)
      CHECK(a.row(1)[k] - a.row(2)[k] == doctest::Approx(a.row(3)[k]).epsilon(1e-12));
  }
  SUBCASE("distance concentration at the default dimension") {
    const std::int32_t n = 256, d = 512;
    const PointSet s = gen_gaussian(n, d, 2.0, 5);
    const double eps = 0.5;
    const PointSet proj = jl_project(s, JlConfig{jl_default_dim(n, eps), 17});
    std::int64_t within = 0, total = 0;
    Rng rng(33);
    for (int rep = 0; rep < 2000; ++rep) {
      const auto i = static_cast<std::int32_t>(rng.below(n));
      const auto j = static_cast<std::int32_t>(rng.below(n));
      if (i == j) continue;
      const double orig = lp_distance(s, i, j);
      const double now = lp_distance(proj, i, j);
      within += now >= (1.0 - eps) * orig && now <= (1.0 + eps) * orig;
      ++total;
    }
    CHECK(static_cast<double>(within) / static_cast<double>(total) >= 0.95);
  }
}

TEST_CASE("snowflake embedding") {
  SUBCASE("two points: exact by construction") {
    const PointSet s = make_point_set({0.0, 4.0}, 2, 1, 1.5);
    const PointSet img = snowflake_embed(s);
    CHECK(img.p == 2.0);
    CHECK(lp_distance(img, 0, 1) == doctest::Approx(std::pow(4.0, 0.75)).epsilon(1e-12));
  }
  SUBCASE("isometry of the (p/2)-snowflake on random sets") {
    for (double p : {1.25, 1.5, 1.75}) {
      const PointSet s = gen_gaussian(16, 5, p, 77);
      const PointSet img = snowflake_embed(s);
      double worst = 0.0;
      for (std::int32_t i = 0; i < s.n; ++i) {
        for (std::int32_t j = i + 1; j < s.n; ++j) {
          const double want = std::pow(lp_distance(s, i, j), p / 2.0);
          const double got = lp_distance(img, i, j);
          worst = std::max(worst, std::abs(got - want) / want);
        }
      }
      CHECK(worst <= 1e-6);
    }
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(snowflake_embed(gen_gaussian(8, 3, 2.0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(snowflake_embed(gen_line(1, 1.5)), std::invalid_argument);
  }
}
