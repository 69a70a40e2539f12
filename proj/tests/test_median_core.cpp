#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "medianforge/errors.hpp"
#include "medianforge/io.hpp"
#include "support.hpp"

using namespace medianforge;
using namespace mf_test;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::BAD_INPUT;
}

// Halfspace-intersection hull: every vertex on the set's side of each hyperplane not meeting the set.
std::vector<VertexId> oracle_hull(const MedianGraph& g, const std::vector<VertexId>& set) {
    std::vector<VertexId> out;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        bool inside = true;
        for (const auto& h : g.hyperplanes()) {
            std::set<Side> sides;
            for (VertexId s : set) sides.insert(g.side(h.id, s));
            if (sides.size() == 1 && g.side(h.id, VertexId(v)) != *sides.begin()) inside = false;
        }
        if (inside) out.push_back(VertexId(v));
    }
    return out;
}

}  // namespace

TEST_CASE("grid boxes validate with one hyperplane per grid line") {
    auto g = grid_box({3, 2});
    CHECK(g.vertex_count() == 12);
    CHECK(g.hyperplane_count() == 5);
    CHECK(g.validation().exhaustive);
    CHECK(grid_box({1}).hyperplane_count() == 1);
    auto cube = grid_box({2, 2, 2});
    CHECK(cube.vertex_count() == 27);
    CHECK(cube.hyperplane_count() == 6);
    CHECK(cube.dimension() == 3);
}

TEST_CASE("explicit 3x2 grid with radius 5 builds") {
    // Same box entered by hand with the radii from the worked example.
    std::vector<VertexRecord> vs;
    std::vector<EdgeRecord> es;
    auto id = [](int i, int j) { return static_cast<std::uint32_t>(j * 4 + i); };
    for (int j = 0; j <= 2; ++j) {
        for (int i = 0; i <= 3; ++i) {
            vs.push_back({id(i, j), ""});
            if (i < 3) es.push_back({id(i, j), id(i + 1, j), "x"});
            if (j < 2) es.push_back({id(i, j), id(i, j + 1), "y"});
        }
    }
    auto g = build_median_graph(vs, es, VertexId(0), 5, 5);
    CHECK(g.vertex_count() == 12);
    CHECK(g.hyperplane_count() == 5);
}

TEST_CASE("odd cycles are rejected before median checks") {
    CHECK(code_of([] { from_edges(3, {{0, 1}, {1, 2}, {2, 0}}, 2, 1); }) == ErrorCode::NOT_BIPARTITE);
}

TEST_CASE("six-cycle reports an antipodal triple without a median") {
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> c6 = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
    // Oracle: brute-force median search on the raw cycle.
    std::vector<std::vector<int>> d(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) d[i][j] = std::min((i - j + 6) % 6, (j - i + 6) % 6);
    CHECK(oracle_medians(d, 0, 2, 4).empty());
    CHECK(oracle_medians(d, 0, 1, 3).size() == 1);
    try {
        from_edges(6, c6, 3, 3);
        FAIL("C6 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MEDIAN_VIOLATION);
        REQUIRE(e.witness().size() == 3);
        CHECK(oracle_medians(d, e.witness()[0], e.witness()[1], e.witness()[2]).empty());
    }
}

TEST_CASE("K_{2,3} is a median violation") {
    // 0 and 1 both adjacent to 2, 3, 4.
    auto code = code_of([] { from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}, 3, 3); });
    CHECK(code == ErrorCode::MEDIAN_VIOLATION);
}

TEST_CASE("cube with a corner removed fails only the triple check") {
    // Vertices are bit patterns 0..6 of {x,y,z}; 7 = 111 is missing.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
    for (std::uint32_t v = 0; v < 7; ++v)
        for (std::uint32_t bit : {1u, 2u, 4u})
            if (!(v & bit) && (v | bit) < 7) es.emplace_back(v, v | bit);
    try {
        from_edges(7, es, 4, 4);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MEDIAN_VIOLATION);
        std::vector<std::uint32_t> w = e.witness();
        std::sort(w.begin(), w.end());
        CHECK(w == std::vector<std::uint32_t>{3, 5, 6});
    }
}

TEST_CASE("input errors") {
    CHECK(code_of([] { from_edges(3, {{0, 1}}, 2, 2); }) == ErrorCode::NOT_CONNECTED);
    CHECK(code_of([] { from_edges(2, {{0, 1}}, 1, 2); }) == ErrorCode::BAD_RADIUS);
    CHECK(code_of([] { from_edges(3, {{0, 1}, {1, 2}}, 1, 1); }) == ErrorCode::BAD_RADIUS);
    CHECK(code_of([] { from_edges(2, {{0, 1}, {1, 0}}, 2, 2); }) == ErrorCode::BAD_INPUT);
    CHECK(code_of([] { from_edges(2, {{0, 0}}, 2, 2); }) == ErrorCode::BAD_INPUT);
}

TEST_CASE("trees have one hyperplane per edge") {
    auto p = path_graph(4);
    CHECK(p.hyperplane_count() == 4);
    CHECK(p.dimension() == 1);
    for (const auto& h : p.hyperplanes()) CHECK(h.dual_edges.size() == 1);
}

TEST_CASE("Z^2 ball of radius 2 has 8 hyperplanes") {
    auto g = raag_ball(pg_of({"a", "b"}, {{"a", "b"}}), 2);
    CHECK(g.vertex_count() == 13);
    // Oracle: grid lines x = k + 1/2 and y = k + 1/2 meeting the l1 ball of radius 2.
    int lines = 0;
    for (int k = -3; k <= 3; ++k) {
        bool meets = false;
        for (int x = -2; x <= 2; ++x)
            for (int y = -2; y <= 2; ++y)
                if (std::abs(x) + std::abs(y) <= 2 && x == k && std::abs(x + 1) + std::abs(y) <= 2) meets = true;
        if (meets) ++lines;
    }
    CHECK(g.hyperplane_count() == static_cast<std::size_t>(2 * lines));
    CHECK(g.hyperplane_count() == 8);
}

TEST_CASE("distance") {
    auto g = grid_box({3, 2});
    CHECK(distance(g, vertex(g, "1"), vertex(g, "aaabb")) == 5);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) CHECK(distance(g, VertexId(v), VertexId(v)) == 0);

    auto ck = raag_ball(croke_kleiner(), 6);
    const auto x = vertex(ck, "1");
    const auto y = vertex(ck, "aabb");
    CHECK(ck.find_word("abab") == std::nullopt);  // stored in normal form
    CHECK(oracle_bfs(ck, x.value)[y.value] == 4);
    CHECK(distance(ck, x, y) == 4);
    CHECK(ck.separating_hyperplanes(x, y).size() == 4);
    CHECK(code_of([&] { distance(ck, x, vertex(ck, "aaaaab")); }) == ErrorCode::OUT_OF_CORE);
}

TEST_CASE("medians") {
    auto g = grid_box({3, 2});
    auto d = oracle_all_pairs(g);
    const auto a = vertex(g, "1"), b = vertex(g, "aaab"), c = vertex(g, "abb");
    auto expected = oracle_medians(d, a.value, b.value, c.value);
    REQUIRE(expected.size() == 1);
    CHECK(median(g, a, b, c) == VertexId(expected[0]));
    CHECK(median(g, a, b, c) == vertex(g, "ab"));
    CHECK(median(g, a, a, b) == a);

    auto f2 = raag_ball(pg_of({"a", "b"}), 3);
    CHECK(median(f2, vertex(f2, "1"), vertex(f2, "ab"), vertex(f2, "ab^-1")) == vertex(f2, "a"));
}

TEST_CASE("intervals and hulls") {
    auto g = grid_box({3, 2});
    const std::vector<VertexId> pair = {vertex(g, "1"), vertex(g, "aab")};
    auto hull = convex_hull(g, pair);
    CHECK(hull.size() == 6);
    CHECK(hull == oracle_hull(g, pair));
    CHECK(interval(g, pair[0], pair[1]) == hull);
    const std::vector<VertexId> single = {vertex(g, "ab")};
    CHECK(convex_hull(g, single) == single);

    auto f2 = raag_ball(pg_of({"a", "b"}), 4);
    const std::vector<VertexId> ends = {vertex(f2, "1"), vertex(f2, "ab")};
    std::vector<VertexId> path = {vertex(f2, "1"), vertex(f2, "a"), vertex(f2, "ab")};
    std::sort(path.begin(), path.end());
    CHECK(convex_hull(f2, ends) == path);
}

TEST_CASE("hull touching the sphere is truncated") {
    auto z2 = raag_ball(pg_of({"a", "b"}, {{"a", "b"}}), 3);
    const std::vector<VertexId> corners = {vertex(z2, "aa"), vertex(z2, "bb")};
    // The box [0,2]x[0,2] contains aabb at depth 4 > 3, so the hull reaches the sphere.
    CHECK(code_of([&] { convex_hull(z2, corners); }) == ErrorCode::HULL_TRUNCATED);
}

TEST_CASE("crossing relation") {
    auto g = grid_box({3, 2});
    const auto vertical = g.hyperplane_of(*g.find_edge(vertex(g, "1"), vertex(g, "a")));
    const auto horizontal = g.hyperplane_of(*g.find_edge(vertex(g, "1"), vertex(g, "b")));
    CHECK(crossing_relation(g, vertical, horizontal).kind == CrossingKind::CROSS);

    auto p2 = path_graph(2);
    CHECK(crossing_relation(p2, HyperplaneId(0), HyperplaneId(1)).kind == CrossingKind::OSCULATE);
    auto p3 = path_graph(3);
    auto rel = crossing_relation(p3, p3.hyperplane_of(EdgeId(0)), p3.hyperplane_of(EdgeId(2)));
    CHECK(rel.kind == CrossingKind::SEPARATED);
    CHECK(rel.separation == 1);
}

TEST_CASE("crossing ambiguity near the sphere") {
    // Two opposite leaf edges of a path both touch the sphere.
    auto p = from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 2, 2, 2);
    CHECK(code_of([&] { crossing_relation(p, p.hyperplane_of(EdgeId(0)), p.hyperplane_of(EdgeId(3))); }) ==
          ErrorCode::TRUNCATION_AMBIGUOUS);
}

TEST_CASE("facing triples") {
    // Tripod: centre 0, legs 0-1-2, 0-3-4, 0-5-6.
    auto tripod = from_edges(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}}, 3, 3);
    auto tip = [&](std::uint32_t a, std::uint32_t b) { return tripod.hyperplane_of(*tripod.find_edge(VertexId(a), VertexId(b))); };
    auto report = facing_triple(tripod, tip(1, 2), tip(3, 4), tip(5, 6));
    CHECK(report.facing);
    auto permuted = facing_triple(tripod, tip(5, 6), tip(1, 2), tip(3, 4));
    CHECK(permuted.facing);

    auto g = grid_box({3, 2});
    std::vector<HyperplaneId> verticals;
    for (int i = 0; i < 3; ++i) {
        verticals.push_back(g.hyperplane_of(*g.find_edge(vertex(g, grid_word(i, 0)), vertex(g, grid_word(i + 1, 0)))));
    }
    CHECK_FALSE(facing_triple(g, verticals[0], verticals[1], verticals[2]).facing);
    const auto horizontal = g.hyperplane_of(*g.find_edge(vertex(g, "1"), vertex(g, "b")));
    // Oracle: exhaustive side check over every third hyperplane.
    for (const auto& h : g.hyperplanes()) {
        if (h.id == verticals[0] || h.id == horizontal) continue;
        auto r = facing_triple(g, verticals[0], horizontal, h.id);
        CHECK_FALSE(r.facing);
        CHECK_FALSE(r.sides[0][0].has_value());
    }
}

TEST_CASE("geodesic rays from words") {
    auto z2 = raag_ball(pg_of({"a", "b"}, {{"a", "b"}}), 15);
    auto ray = ray_from_word(z2, "a", 10);
    CHECK(ray.length() == 10);
    CHECK(z2.word(ray.at(10)) == "aaaaaaaaaa");
    auto stair = ray_from_word(z2, "ab", 8);
    CHECK(stair.length() == 10);  // core radius 10 truncates 16 steps
    CHECK(code_of([&] { ray_from_word(z2, "a a^-1", 2); }) == ErrorCode::NOT_GEODESIC);
    CHECK(code_of([&] { GeodesicRay::from_vertices(z2, {ray.at(0), ray.at(2)}); }) == ErrorCode::BAD_INPUT);
    CHECK(ray.prefix(3).length() == 3);
}

TEST_CASE("complex files round trip") {
    auto g = raag_ball(croke_kleiner(), 3);
    std::stringstream ss;
    write_complex(ss, g);
    const auto text = ss.str();
    CHECK(text.rfind("medianforge-complex 1 base=0 radius=3 core=2\n", 0) == 0);
    auto back = read_complex(ss);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edge_count() == g.edge_count());
    std::stringstream again;
    write_complex(again, back);
    CHECK(again.str() == text);

    std::istringstream bad("medianforge-complex 2 base=0 radius=1 core=1\n");
    CHECK(code_of([&] { read_complex(bad); }) == ErrorCode::BAD_INPUT);
}

TEST_CASE("oriented labels survive normalisation") {
    std::istringstream in("medianforge-complex 1 base=0 radius=2 core=2\nv 0 1\nv 1 a\nv 2 aa\ne 1 0 a^-1\ne 1 2 a\n");
    auto g = read_complex(in);
    CHECK(g.step(VertexId(0), Letter{0, false}) == VertexId(1));
    CHECK(g.step(VertexId(2), Letter{0, true}) == VertexId(1));
}

TEST_CASE("property: distance equals separation on small balls") {
    for (auto pg : {pg_of({"a"}), pg_of({"a", "b"}), pg_of({"a", "b"}, {{"a", "b"}}), croke_kleiner()}) {
        auto g = raag_ball(pg, 4);
        auto d = oracle_all_pairs(g);
        for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
            for (std::uint32_t y = 0; y < g.vertex_count(); ++y)
                REQUIRE(static_cast<std::size_t>(d[x][y]) == g.separation(VertexId(x), VertexId(y)));
    }
}

TEST_CASE("property: median axioms on core triples") {
    auto g = raag_ball(croke_kleiner(), 3);
    auto d = oracle_all_pairs(g);
    std::vector<std::uint32_t> core;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (g.in_core(VertexId(v))) core.push_back(v);
    for (auto x : core)
        for (auto y : core)
            for (auto z : core) {
                auto m = oracle_medians(d, x, y, z);
                REQUIRE(m.size() == 1);
                REQUIRE(median(g, VertexId(x), VertexId(y), VertexId(z)) == VertexId(m[0]));
                REQUIRE(median(g, VertexId(y), VertexId(z), VertexId(x)) == VertexId(m[0]));
            }
}

TEST_CASE("property: hull idempotence, halfspace convexity and Helly") {
    auto g = raag_ball(croke_kleiner(), 6);
    std::vector<VertexId> inner;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (g.depth(VertexId(v)) <= 2) inner.push_back(VertexId(v));
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> pick(0, inner.size() - 1);
    auto random_hull = [&] {
        std::vector<VertexId> s = {inner[pick(rng)], inner[pick(rng)]};
        return convex_hull(g, s);
    };
    for (int t = 0; t < 50; ++t) {
        auto h = random_hull();
        REQUIRE(convex_hull(g, h) == h);
        auto a = random_hull(), b = random_hull(), c = random_hull();
        auto meets = [](const auto& p, const auto& q) {
            std::vector<VertexId> out;
            std::set_intersection(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(out));
            return out;
        };
        if (!meets(a, b).empty() && !meets(b, c).empty() && !meets(a, c).empty()) {
            REQUIRE_FALSE(meets(meets(a, b), c).empty());
        }
    }
    // Halfspaces of a finite box are convex.
    auto box = grid_box({3, 2});
    for (const auto& h : box.hyperplanes()) {
        for (Side s : {Side::LEFT, Side::RIGHT}) {
            std::vector<VertexId> half;
            for (std::uint32_t v = 0; v < box.vertex_count(); ++v)
                if (Halfspace{h.id, s}.contains(box, VertexId(v))) half.push_back(VertexId(v));
            REQUIRE(convex_hull(box, half) == half);
        }
    }
}
