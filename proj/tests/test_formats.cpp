#include <cstdio>

#include "doctest.h"
#include "metricdecomp/finite_metric.hpp"
#include "metricdecomp/gen.hpp"
#include "metricdecomp/lsh.hpp"
#include "metricdecomp/partition.hpp"
#include "metricdecomp/point_set.hpp"
#include "metricdecomp/spanner.hpp"

#include "json.hpp"

using namespace mdc;

TEST_CASE("point set json") {
  const PointSet s = point_set_from_json(R"({"p": 4, "points": [[0, 1], [2, 3.5]]})");
  CHECK(s.n == 2);
  CHECK(s.d == 2);
  CHECK(s.p == 4.0);
  CHECK(s.row(1)[1] == 3.5);

  const PointSet inf = point_set_from_json(R"({"p": "inf", "points": [[0], [1]]})");
  CHECK(inf.p == kInfExponent);

  // roundtrip
  const PointSet back = point_set_from_json(point_set_to_json(inf));
  CHECK(back.p == kInfExponent);
  CHECK(back.coords == inf.coords);

  CHECK_THROWS(point_set_from_json(R"({"points": []})"));
  CHECK_THROWS(point_set_from_json(R"({"points": [[1], [1, 2]]})"));
  CHECK_THROWS_AS(point_set_from_json(R"({"p": 2, "points": [[1], [1]]})"),
                  duplicate_points_error);
}

TEST_CASE("explicit metric json") {
  const FiniteMetric m = metric_from_json(R"({"dist": [[0, 1], [1, 0]]})");
  CHECK(m.size() == 2);
  CHECK(m(0, 1) == 1.0);
  CHECK_THROWS(metric_from_json(R"({"dist": [[0, 1], [2, 0]]})"));
}

TEST_CASE("partition json") {
  Partition p;
  p.delta = 2.5;
  p.cluster_count = 2;
  p.assignment = {0, 1, 0};
  const std::string text = partition_to_json(p);
  const Partition back = partition_from_json(text);
  CHECK(back.delta == 2.5);
  CHECK(back.assignment == p.assignment);
  CHECK(back.cluster_count == 2);

  const auto j = nlohmann::json::parse(text);
  CHECK(j.contains("delta"));
  CHECK(j.contains("assignment"));
}

TEST_CASE("spanner json") {
  SpannerGraph g;
  g.n = 3;
  g.edges = {{0, 1, 1.0}, {1, 2, 2.0}};
  const SpannerGraph back = spanner_from_json(spanner_to_json(g));
  CHECK(back.n == 3);
  REQUIRE(back.edges.size() == 2);
  CHECK(back.edges[1].weight == 2.0);
}

TEST_CASE("lsh family descriptor json") {
  const auto pts = std::make_shared<PointSet>(gen_gaussian(8, 3, 2.0, 1));
  const LshFamily fam = make_ball_lattice_family(pts, 1.0, 2.0, 42);
  const auto j = nlohmann::json::parse(lsh_family_to_json(fam));
  CHECK(j["scheme"] == "ball_lattice");
  CHECK(j["r"] == doctest::Approx(1.0));
  CHECK(j["t"] == doctest::Approx(2.0));
  CHECK(j["seed"] == 42);
  CHECK(j["params"]["w"] == doctest::Approx(1.0));
  CHECK(j["params"].contains("pitch"));
}
