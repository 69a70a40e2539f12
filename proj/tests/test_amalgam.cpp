#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "medianforge/boundary.hpp"
#include "medianforge/builders.hpp"
#include "medianforge/errors.hpp"
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

PresentationGraph p4() { return croke_kleiner(); }

// Median validation is covered elsewhere; a light sample keeps these builds quick.
BuildOptions light() {
    BuildOptions o;
    o.exhaustive_cap = 0;
    o.sampled_triples = 2000;
    o.sampled_roots = 4;
    return o;
}

AmalgamSpec spec_of(int level, int radius, std::string word = "ad") {
    AmalgamSpec s;
    s.base = p4();
    s.rank_one_word = std::move(word);
    s.level = level;
    s.radius = radius;
    return s;
}

}  // namespace

TEST_CASE("level one is the base ball") {
    auto res = amalgam_ball(spec_of(1, 6), light());
    auto ball = raag_ball(p4(), 6, {}, light());
    CHECK(res.graph.vertex_count() == ball.vertex_count());
    CHECK(res.graph.edge_count() == ball.edge_count());
    REQUIRE(res.copies.size() == 1);
    CHECK(res.copies[0].vertices.size() == ball.vertex_count());
    CHECK(res.convexity_violations == 0);
}

TEST_CASE("level two glues two convex copies along the axis hull") {
    auto res = amalgam_ball(spec_of(2, 6), light());
    const auto& g = res.graph;
    REQUIRE(res.copies.size() == 2);
    CHECK(res.copies[1].parent == res.copies[0].tree_node);
    CHECK(res.copies[1].depth == 1);
    CHECK(res.axis_half_length >= 1);
    CHECK(res.edge_space_size >= static_cast<std::size_t>(2 * res.axis_half_length + 1));
    CHECK(res.convexity_violations == 0);
    CHECK(g.alphabet().find("t1").has_value());

    // Every vertex lies in a copy or on a stable edge out of one.
    std::vector<char> covered(g.vertex_count(), 0);
    for (const auto& c : res.copies)
        for (auto v : c.vertices) covered[v.value] = 1;
    CHECK(std::all_of(covered.begin(), covered.end(), [](char x) { return x == 1; }));

    // The stable letter starts a geodesic into the child copy.
    auto into_child = ray_from_word(g, "t1", "b", 4);
    CHECK(into_child.length() >= 2);
    const auto& child = res.copies[1].vertices;
    CHECK(std::binary_search(child.begin(), child.end(), into_child.at(into_child.length())));
}

TEST_CASE("collapsed gluing shares the edge space") {
    auto spec = spec_of(2, 6);
    spec.collapsed = true;
    auto res = amalgam_ball(spec, light());
    REQUIRE(res.copies.size() == 2);
    CHECK(res.convexity_violations == 0);
    CHECK_FALSE(res.graph.alphabet().find("t1").has_value());
    std::vector<VertexId> shared;
    std::set_intersection(res.copies[0].vertices.begin(), res.copies[0].vertices.end(),
                          res.copies[1].vertices.begin(), res.copies[1].vertices.end(), std::back_inserter(shared));
    CHECK(shared.size() > 0);
    CHECK(shared.size() <= res.edge_space_size);
}

TEST_CASE("tree depth doubles the copies") {
    auto spec = spec_of(2, 6);
    spec.tree_depth = 2;
    auto res = amalgam_ball(spec, light());
    CHECK(res.copies.size() == 4);
    CHECK(res.convexity_violations == 0);
    int deepest = 0;
    for (const auto& c : res.copies) deepest = std::max(deepest, c.depth);
    CHECK(deepest == 2);
}

TEST_CASE("amalgam preconditions") {
    CHECK(code_of([] { amalgam_ball(spec_of(2, 6, "a"), light()); }) == ErrorCode::NOT_RANK_ONE);
    CHECK(code_of([] { amalgam_ball(spec_of(2, 6, "ab"), light()); }) == ErrorCode::NOT_RANK_ONE);
    CHECK(code_of([] { amalgam_ball(spec_of(0, 6), light()); }) == ErrorCode::PARAM_RANGE);
    auto clash = spec_of(2, 6);
    clash.base = pg_of({"a", "t1", "c"}, {{"a", "t1"}});
    clash.rank_one_word = "c";
    CHECK(code_of([&] { amalgam_ball(clash, light()); }) == ErrorCode::BAD_INPUT);
    auto tiny = spec_of(2, 6);
    tiny.limits.max_vertices = 100;
    CHECK(code_of([&] { amalgam_ball(tiny, light()); }) == ErrorCode::SIZE_LIMIT);
}

TEST_CASE("amalgam spec parsing") {
    std::istringstream in("# glued\ngraph = p4.pg\nrank_one_word = ad\nlevel = 2\ntree_depth = 1\nradius = 7\n"
                          "p_max = 1\ncollapsed = false\nmax_vertices = 5000\n");
    const auto dir = (std::filesystem::temp_directory_path() / "mf_amalgam_parse").string();
    std::filesystem::create_directories(dir);
    {
        std::ofstream pg(dir + "/p4.pg");
        p4().write(pg);
    }
    auto spec = AmalgamSpec::parse(in, dir);
    CHECK(spec.base.size() == 4);
    CHECK(spec.rank_one_word == "ad");
    CHECK(spec.level == 2);
    CHECK(spec.radius == 7);
    CHECK(spec.limits.max_vertices == 5000);
    CHECK_FALSE(spec.collapsed);

    std::istringstream unknown("graph = p4.pg\nrank_one_word = ad\nlevels = 2\n");
    CHECK(code_of([&] { AmalgamSpec::parse(unknown, dir); }) == ErrorCode::BAD_INPUT);
    std::istringstream missing("level = 2\n");
    CHECK(code_of([&] { AmalgamSpec::parse(missing, dir); }) == ErrorCode::BAD_INPUT);
}
