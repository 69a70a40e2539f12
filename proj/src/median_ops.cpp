#include <algorithm>
#include <unordered_set>

#include "medianforge/errors.hpp"
#include "medianforge/median_graph.hpp"
#include "medianforge/traversal.hpp"

namespace medianforge {

namespace {

void require_core(const MedianGraph& g, VertexId v) {
    if (v.value >= g.vertex_count()) {
        throw Error(ErrorCode::BAD_INPUT, "vertex " + std::to_string(v.value) + " does not exist", {v.value});
    }
    if (!g.in_core(v)) {
        throw Error(ErrorCode::OUT_OF_CORE,
                    "vertex " + std::to_string(v.value) + " lies at depth " + std::to_string(g.depth(v)) +
                        " outside core radius " + std::to_string(g.core_radius()),
                    {v.value});
    }
}

void require_core(const MedianGraph& g, HyperplaneId h) {
    if (h.value >= g.hyperplane_count()) {
        throw Error(ErrorCode::BAD_INPUT, "hyperplane " + std::to_string(h.value) + " does not exist", {h.value});
    }
    if (!g.touches_core(h)) {
        throw Error(ErrorCode::OUT_OF_CORE, "hyperplane " + std::to_string(h.value) + " has no dual edge in the core",
                    {h.value});
    }
}

}  // namespace

std::span<const Hyperplane> compute_hyperplanes(const MedianGraph& g) { return g.hyperplanes(); }

int distance(const MedianGraph& g, VertexId x, VertexId y) {
    require_core(g, x);
    require_core(g, y);
    const VertexId sources[] = {x};
    const auto dist = bfs_distances(g, sources, [](VertexId) { return true; });
    const auto d = dist[y.value];
    if (static_cast<std::size_t>(d) != g.separation(x, y)) {
        throw Error(ErrorCode::INCONSISTENT_SIDES,
                    "distance " + std::to_string(d) + " disagrees with " + std::to_string(g.separation(x, y)) +
                        " separating hyperplanes",
                    {x.value, y.value});
    }
    return d;
}

VertexId median(const MedianGraph& g, VertexId x, VertexId y, VertexId z) {
    require_core(g, x);
    require_core(g, y);
    require_core(g, z);
    auto sx = g.separating_set(x);
    auto sy = g.separating_set(y);
    auto sz = g.separating_set(z);
    std::vector<HyperplaneId> xy, xz, yz, majority;
    std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(xy));
    std::set_intersection(sx.begin(), sx.end(), sz.begin(), sz.end(), std::back_inserter(xz));
    std::set_intersection(sy.begin(), sy.end(), sz.begin(), sz.end(), std::back_inserter(yz));
    std::vector<HyperplaneId> tmp;
    std::set_union(xy.begin(), xy.end(), xz.begin(), xz.end(), std::back_inserter(tmp));
    std::set_union(tmp.begin(), tmp.end(), yz.begin(), yz.end(), std::back_inserter(majority));
    if (auto m = g.vertex_with_separating_set(majority)) return *m;
    throw Error(ErrorCode::MEDIAN_VIOLATION,
                "triple (" + std::to_string(x.value) + "," + std::to_string(y.value) + "," + std::to_string(z.value) +
                    ") has no median",
                {x.value, y.value, z.value});
}

std::vector<VertexId> convex_hull(const MedianGraph& g, std::span<const VertexId> set) {
    if (set.empty()) return {};
    for (VertexId v : set) require_core(g, v);
    const VertexId anchor = set.front();
    std::vector<std::uint8_t> crossing(g.hyperplane_count(), 0);
    for (VertexId v : set) {
        for (HyperplaneId h : g.separating_hyperplanes(anchor, v)) crossing[h.value] = 1;
    }
    // The hull is what the anchor reaches through edges dual to hyperplanes meeting the set.
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    std::vector<VertexId> out{anchor};
    seen[anchor.value] = 1;
    for (std::size_t head = 0; head < out.size(); ++head) {
        const VertexId v = out[head];
        if (g.on_sphere(v)) {
            throw Error(ErrorCode::HULL_TRUNCATED,
                        "hull reaches vertex " + std::to_string(v.value) + " on the truncation sphere", {v.value});
        }
        for (const Neighbor& n : g.neighbors(v)) {
            if (seen[n.vertex.value] || !crossing[g.hyperplane_of(n.edge).value]) continue;
            seen[n.vertex.value] = 1;
            out.push_back(n.vertex);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> interval(const MedianGraph& g, VertexId x, VertexId y) {
    const VertexId pair[] = {x, y};
    return convex_hull(g, pair);
}

CrossingRelation crossing_relation(const MedianGraph& g, HyperplaneId a, HyperplaneId b) {
    require_core(g, a);
    require_core(g, b);
    if (a == b) throw Error(ErrorCode::BAD_INPUT, "hyperplane compared with itself", {a.value});
    if (g.crosses(a, b)) return {CrossingKind::CROSS, 0};
    if (g.hyperplane(a).boundary_flag && g.hyperplane(b).boundary_flag) {
        throw Error(ErrorCode::TRUNCATION_AMBIGUOUS,
                    "hyperplanes " + std::to_string(a.value) + " and " + std::to_string(b.value) +
                        " do not cross inside the truncation but both reach its sphere",
                    {a.value, b.value});
    }
    const auto from = g.carrier(a);
    const auto to = g.carrier(b);
    const auto dist = bfs_distances(g, from, [](VertexId) { return true; });
    int best = -1;
    for (VertexId v : to) {
        if (dist[v.value] != kUnreached && (best < 0 || dist[v.value] < best)) best = dist[v.value];
    }
    if (best == 0) return {CrossingKind::OSCULATE, 0};
    return {CrossingKind::SEPARATED, best};
}

Side side_containing(const MedianGraph& g, HyperplaneId of, HyperplaneId other) {
    if (g.crosses(of, other)) {
        throw Error(ErrorCode::BAD_INPUT,
                    "hyperplanes " + std::to_string(of.value) + " and " + std::to_string(other.value) + " cross",
                    {of.value, other.value});
    }
    const EdgeInfo& e = g.edge(g.hyperplane(other).dual_edges.front());
    return g.side(of, e.u);
}

FacingTripleReport facing_triple(const MedianGraph& g, HyperplaneId a, HyperplaneId b, HyperplaneId c) {
    FacingTripleReport report;
    report.hyperplanes = {a, b, c};
    for (HyperplaneId h : report.hyperplanes) require_core(g, h);
    if (a == b || b == c || a == c) throw Error(ErrorCode::BAD_INPUT, "facing triple needs distinct hyperplanes");
    const auto& hs = report.hyperplanes;
    bool any_cross = false;
    for (int i = 0; i < 3; ++i) {
        if (g.crosses(hs[i], hs[(i + 1) % 3])) any_cross = true;
    }
    if (!any_cross) {
        for (int i = 0; i < 3; ++i) {
            const auto p = hs[i], q = hs[(i + 1) % 3];
            if (g.hyperplane(p).boundary_flag && g.hyperplane(q).boundary_flag) {
                throw Error(ErrorCode::TRUNCATION_AMBIGUOUS,
                            "non-crossing hyperplanes " + std::to_string(p.value) + " and " + std::to_string(q.value) +
                                " both reach the truncation sphere",
                            {p.value, q.value});
            }
        }
    }
    bool facing = !any_cross;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 2; ++k) {
            const auto other = hs[(i + 1 + k) % 3];
            if (!g.crosses(hs[i], other)) report.sides[i][k] = side_containing(g, hs[i], other);
        }
        if (facing && report.sides[i][0] != report.sides[i][1]) facing = false;
    }
    report.facing = facing;
    return report;
}

GeodesicRay GeodesicRay::from_vertices(const MedianGraph& g, std::vector<VertexId> path) {
    if (path.empty()) throw Error(ErrorCode::BAD_INPUT, "empty path");
    GeodesicRay ray;
    std::unordered_set<HyperplaneId> crossed;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto e = g.find_edge(path[i], path[i + 1]);
        if (!e) {
            throw Error(ErrorCode::BAD_INPUT,
                        "no edge between " + std::to_string(path[i].value) + " and " + std::to_string(path[i + 1].value),
                        {path[i].value, path[i + 1].value});
        }
        const HyperplaneId h = g.hyperplane_of(*e);
        if (!crossed.insert(h).second) {
            throw Error(ErrorCode::NOT_GEODESIC,
                        "hyperplane " + std::to_string(h.value) + " crossed twice by step " + std::to_string(i + 1),
                        {h.value});
        }
        ray.edges.push_back(*e);
        ray.crossings.push_back(h);
    }
    ray.vertices = std::move(path);
    return ray;
}

GeodesicRay GeodesicRay::prefix(int len) const {
    if (len < 0 || len > length()) throw Error(ErrorCode::PARAM_RANGE, "prefix length out of range");
    GeodesicRay out;
    out.vertices.assign(vertices.begin(), vertices.begin() + len + 1);
    out.edges.assign(edges.begin(), edges.begin() + len);
    out.crossings.assign(crossings.begin(), crossings.begin() + len);
    return out;
}

GeodesicRay ray_from_word(const MedianGraph& g, std::string_view prefix, std::string_view word, int repetitions) {
    if (repetitions < 0) throw Error(ErrorCode::PARAM_RANGE, "repetitions must be nonnegative");
    const Word head = g.alphabet().parse(prefix);
    const Word letters = g.alphabet().parse(word);
    if (letters.empty()) throw Error(ErrorCode::BAD_INPUT, "ray word is empty");
    std::vector<VertexId> path{g.base()};
    std::unordered_set<HyperplaneId> crossed;
    auto advance = [&](Letter l) {
        const auto next = g.step(path.back(), l);
        if (!next || !g.in_core(*next)) return false;
        const HyperplaneId h = g.hyperplane_of(*g.find_edge(path.back(), *next));
        if (!crossed.insert(h).second) {
            throw Error(ErrorCode::NOT_GEODESIC,
                        "word " + std::string(word) + " recrosses hyperplane " + std::to_string(h.value) +
                            " at step " + std::to_string(path.size()),
                        {h.value, static_cast<std::uint32_t>(path.size())});
        }
        path.push_back(*next);
        return true;
    };
    bool open = true;
    for (std::size_t i = 0; i < head.size() && open; ++i) open = advance(head[i]);
    for (int rep = 0; rep < repetitions && open; ++rep)
        for (std::size_t i = 0; i < letters.size() && open; ++i) open = advance(letters[i]);
    return GeodesicRay::from_vertices(g, std::move(path));
}

GeodesicRay ray_from_word(const MedianGraph& g, std::string_view word, int repetitions) {
    return ray_from_word(g, "", word, repetitions);
}

}  // namespace medianforge
