#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "susd/errors.hpp"
#include "susd/graph.hpp"

using namespace susd;

TEST_CASE("complete graph lists everyone else in ascending order") {
    const VisibilityGraph g = VisibilityGraph::complete(4);
    const std::vector<Vec2> positions(4);
    CHECK(g.neighbors(2, positions) == std::vector<int>{0, 1, 3});
    CHECK(g.neighbors(0, positions) == std::vector<int>{1, 2, 3});
    CHECK(g.is_connected(positions));
    CHECK(g.agent_count() == 4);
    CHECK(g.kind() == GraphKind::Complete);
}

TEST_CASE("static graph keeps the given undirected edges") {
    const VisibilityGraph g = VisibilityGraph::static_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    const std::vector<Vec2> positions(4);
    CHECK(g.neighbors(0, positions) == std::vector<int>{1});
    CHECK(g.neighbors(1, positions) == std::vector<int>{0, 2});
    CHECK(g.neighbors(3, positions) == std::vector<int>{2});
    CHECK(g.is_connected(positions));
}

TEST_CASE("static graph validates its edge list") {
    CHECK_THROWS_AS(VisibilityGraph::static_edges(3, {{0, 0}}), ConfigError);
    CHECK_THROWS_AS(VisibilityGraph::static_edges(3, {{0, 3}}), ConfigError);
    CHECK_THROWS_AS(VisibilityGraph::static_edges(3, {{-1, 1}}), ConfigError);
    CHECK_NOTHROW(VisibilityGraph::static_edges(3, {{0, 1}, {1, 0}, {1, 2}}));
}

TEST_CASE("disconnected static graph is reported") {
    const VisibilityGraph g = VisibilityGraph::static_edges(4, {{0, 1}, {2, 3}});
    CHECK_FALSE(g.is_connected(std::vector<Vec2>(4)));
}

TEST_CASE("dynamic graph picks the k nearest, ties to the lower id") {
    const VisibilityGraph g = VisibilityGraph::dynamic_k_nearest(4, 2);
    const std::vector<Vec2> line{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
    CHECK(g.neighbors(0, line) == std::vector<int>{1, 2});
    CHECK(g.neighbors(3, line) == std::vector<int>{1, 2});

    // Agent 1 sits exactly between 0 and 2; with k = 1 the tie goes to id 0.
    const VisibilityGraph g1 = VisibilityGraph::dynamic_k_nearest(3, 1);
    const std::vector<Vec2> tie{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    CHECK(g1.neighbors(1, tie) == std::vector<int>{0});
}

TEST_CASE("dynamic graph caps k at the number of other agents") {
    const VisibilityGraph g = VisibilityGraph::dynamic_k_nearest(3, 7);
    const std::vector<Vec2> positions{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    CHECK(g.neighbors(0, positions) == std::vector<int>{1, 2});
    CHECK(g.k() == 7);
}

TEST_CASE("dynamic graph connectivity depends on the positions") {
    const VisibilityGraph g = VisibilityGraph::dynamic_k_nearest(4, 1);
    // Two tight pairs far apart: each agent's nearest is its pair partner.
    const std::vector<Vec2> split{{0.0, 0.0}, {0.1, 0.0}, {100.0, 0.0}, {100.1, 0.0}};
    CHECK_FALSE(g.is_connected(split));
    // A chain with growing gaps: nearest-neighbor edges symmetrize into a path.
    const std::vector<Vec2> chain{{0.0, 0.0}, {1.0, 0.0}, {1.9, 0.0}, {2.7, 0.0}};
    CHECK(g.is_connected(chain));
}

TEST_CASE("graph construction validates the agent count") {
    CHECK_THROWS_AS(VisibilityGraph::complete(0), ConfigError);
    CHECK_THROWS_AS(VisibilityGraph::dynamic_k_nearest(3, 0), ConfigError);
    CHECK_THROWS_AS(VisibilityGraph::dynamic_k_nearest(0, 2), ConfigError);
}
