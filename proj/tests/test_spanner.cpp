#include <cmath>
#include <memory>
#include <set>

#include "doctest.h"
#include "metricdecomp/gen.hpp"
#include "metricdecomp/mst.hpp"
#include "metricdecomp/spanner.hpp"

using namespace mdc;

namespace {

SpannerGraph complete_graph(const FiniteMetric& m) {
  SpannerGraph g;
  g.n = m.size();
  for (std::int32_t i = 0; i < g.n; ++i)
    for (std::int32_t j = i + 1; j < g.n; ++j) g.edges.push_back({i, j, m(i, j)});
  return g;
}

}  // namespace

TEST_CASE("eval_stretch hand cases") {
  SUBCASE("complete graph has stretch exactly 1") {
    const FiniteMetric m = FiniteMetric::from_points(gen_gaussian(10, 3, 2.0, 1));
    const StretchReport rep = eval_stretch(m, complete_graph(m));
    CHECK(rep.connected);
    CHECK(rep.stretch_max == doctest::Approx(1.0));
  }
  SUBCASE("path over collinear points is tight") {
    const FiniteMetric m = FiniteMetric::from_points(gen_line(3, 2.0));
    SpannerGraph g;
    g.n = 3;
    g.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
    const StretchReport rep = eval_stretch(m, g);
    CHECK(rep.stretch_max == doctest::Approx(1.0));
  }
  SUBCASE("star on the unit square corners") {
    // corners (0,0),(1,0),(0,1),(1,1); star centered at corner 0
    const PointSet sq = gen_hypercube_corners(2, 2.0);
    const FiniteMetric m = FiniteMetric::from_points(sq);
    SpannerGraph g;
    g.n = 4;
    g.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, std::sqrt(2.0)}};
    // the off-center diagonal pair (1,0)-(0,1) routes through 0: stretch sqrt(2)
    const std::vector<std::pair<std::int32_t, std::int32_t>> diag{{1, 2}};
    CHECK(eval_stretch(m, g, diag).stretch_max == doctest::Approx(2.0 / std::sqrt(2.0)));
    // overall worst is an adjacent pair detouring over the long spoke
    CHECK(eval_stretch(m, g).stretch_max == doctest::Approx(1.0 + std::sqrt(2.0)));
  }
  SUBCASE("disconnected graph reports a witness") {
    const FiniteMetric m = FiniteMetric::from_points(gen_line(3, 2.0));
    SpannerGraph g;
    g.n = 3;
    g.edges = {{0, 1, 1.0}};
    const StretchReport rep = eval_stretch(m, g);
    CHECK_FALSE(rep.connected);
    CHECK(std::isinf(rep.stretch_max));
    CHECK(rep.witness_j == 2);
  }
}

TEST_CASE("eval_size_lightness hand cases") {
  const FiniteMetric m = FiniteMetric::from_points(gen_line(3, 2.0));
  SUBCASE("the MST itself has lightness exactly 1") {
    SpannerGraph g;
    g.n = 3;
    g.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
    const SizeLightnessReport rep = eval_size_lightness(m, g);
    CHECK(rep.lightness == doctest::Approx(1.0));
    CHECK(rep.edge_count == 2);
  }
  SUBCASE("MST plus one edge of weight w(MST) doubles the lightness") {
    SpannerGraph g;
    g.n = 3;
    g.edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}};  // weight(0,2) = metric distance = w(MST)
    CHECK(eval_size_lightness(m, g).lightness == doctest::Approx(2.0));
  }
}

TEST_CASE("build_spanner basics") {
  SUBCASE("n = 1 empty graph") {
    const auto s = std::make_shared<PointSet>(gen_line(1, 2.0));
    const SpannerGraph g = build_spanner(s, SpannerSpec{});
    CHECK(g.edges.empty());
  }
  SUBCASE("n = 2 single edge") {
    const auto s = std::make_shared<PointSet>(make_point_set({0.0, 1.5}, 2, 1, 2.0));
    const SpannerGraph g = build_spanner(s, SpannerSpec{});
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].weight == doctest::Approx(1.5));
  }
  SUBCASE("epsilon range enforced") {
    const auto s = std::make_shared<PointSet>(gen_line(4, 2.0));
    SpannerSpec spec;
    spec.epsilon = 0.2;
    CHECK_THROWS_AS(build_spanner(s, spec), std::invalid_argument);
  }
  SUBCASE("edge weights equal metric distances; includes the MST; connected") {
    const auto s =
        std::make_shared<PointSet>(normalize_min_distance(gen_gaussian(40, 3, 2.0, 5)));
    const FiniteMetric m = FiniteMetric::from_points(*s);
    SpannerSpec spec;
    spec.seed = 9;
    const SpannerGraph g = build_spanner(s, spec);
    std::set<std::pair<std::int32_t, std::int32_t>> edges;
    for (const auto& e : g.edges) {
      CHECK(e.weight == m(e.i, e.j));
      CHECK(e.i < e.j);
      CHECK(edges.emplace(e.i, e.j).second);  // no duplicates
    }
    for (const auto& e : mst(m).edges)
      CHECK(edges.count({std::min(e.i, e.j), std::max(e.i, e.j)}) == 1);
    const StretchReport rep = eval_stretch(m, g);
    CHECK(rep.connected);
    CHECK(rep.stretch_max >= 1.0);
    const SizeLightnessReport sl = eval_size_lightness(m, g);
    CHECK(sl.lightness >= 1.0);
  }
}

TEST_CASE("build_spanner repetition monotonicity") {
  // same seed, more repetitions: the edge set only grows, stretch never rises
  const auto s = std::make_shared<PointSet>(normalize_min_distance(gen_gaussian(32, 3, 2.0, 8)));
  const FiniteMetric m = FiniteMetric::from_points(*s);
  SpannerSpec spec;
  spec.seed = 4;
  spec.repetitions = 3;
  const SpannerGraph small = build_spanner(s, spec);
  spec.repetitions = 9;
  const SpannerGraph big = build_spanner(s, spec);
  std::set<std::pair<std::int32_t, std::int32_t>> big_edges;
  for (const auto& e : big.edges) big_edges.emplace(e.i, e.j);
  for (const auto& e : small.edges) CHECK(big_edges.count({e.i, e.j}) == 1);
  CHECK(eval_stretch(m, big).stretch_max <= eval_stretch(m, small).stretch_max + 1e-12);
}

TEST_CASE("build_spanner determinism and capped mode") {
  const auto s = std::make_shared<PointSet>(normalize_min_distance(gen_gaussian(32, 4, 4.0, 2)));
  const FiniteMetric m = FiniteMetric::from_points(*s);
  SpannerSpec spec;
  spec.mode = SpannerMode::capped;
  spec.t = 2.0;
  spec.seed = 12;
  spec.repetitions = 4;
  const SpannerGraph a = build_spanner(s, spec);
  const SpannerGraph b = build_spanner(s, spec);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].i == b.edges[i].i);
    CHECK(a.edges[i].j == b.edges[i].j);
  }
  CHECK(eval_stretch(m, a).connected);
}
