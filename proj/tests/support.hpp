#pragma once

#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "medianforge/builders.hpp"
#include "medianforge/median_graph.hpp"

namespace mf_test {

using namespace medianforge;

// Graph from an undirected edge list, every edge labelled with its own generator.
inline MedianGraph from_edges(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                              int radius, int core, std::uint32_t base = 0) {
    std::vector<VertexRecord> vs;
    for (std::uint32_t i = 0; i < n; ++i) vs.push_back({i, ""});
    std::vector<EdgeRecord> es;
    for (std::size_t i = 0; i < edges.size(); ++i) es.push_back({edges[i].first, edges[i].second, "e" + std::to_string(i)});
    return build_median_graph(vs, es, VertexId(base), radius, core);
}

inline MedianGraph path_graph(std::uint32_t length) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
    for (std::uint32_t i = 0; i < length; ++i) es.emplace_back(i, i + 1);
    return from_edges(length + 1, es, static_cast<int>(length) + 1, static_cast<int>(length) + 1);
}

// Plain adjacency-list BFS, independent of the library's traversal code.
inline std::vector<int> oracle_bfs(const MedianGraph& g, std::uint32_t s) {
    std::vector<int> d(g.vertex_count(), -1);
    std::queue<std::uint32_t> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
            const auto& info = g.edge(EdgeId(e));
            std::uint32_t w;
            if (info.u.value == v) w = info.v.value;
            else if (info.v.value == v) w = info.u.value;
            else continue;
            if (d[w] < 0) {
                d[w] = d[v] + 1;
                q.push(w);
            }
        }
    }
    return d;
}

inline std::vector<std::vector<int>> oracle_all_pairs(const MedianGraph& g) {
    std::vector<std::vector<int>> d;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) d.push_back(oracle_bfs(g, v));
    return d;
}

// Vertices m with d(x,m)+d(m,y)=d(x,y) for all three pairs.
inline std::vector<std::uint32_t> oracle_medians(const std::vector<std::vector<int>>& d, std::uint32_t x,
                                                 std::uint32_t y, std::uint32_t z) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < d.size(); ++m) {
        if (d[x][m] + d[m][y] == d[x][y] && d[y][m] + d[m][z] == d[y][z] && d[x][m] + d[m][z] == d[x][z]) out.push_back(m);
    }
    return out;
}

inline VertexId vertex(const MedianGraph& g, const std::string& word) {
    auto v = g.find_word(word);
    if (!v) throw std::runtime_error("no vertex with word " + word);
    return *v;
}

inline std::string grid_word(int i, int j) {
    if (i == 0 && j == 0) return "1";
    return std::string(static_cast<std::size_t>(i), 'a') + std::string(static_cast<std::size_t>(j), 'b');
}

inline PresentationGraph pg_of(std::vector<std::string> gens, std::vector<std::pair<std::string, std::string>> comms = {}) {
    return PresentationGraph(std::move(gens), comms);
}

inline PresentationGraph croke_kleiner() { return pg_of({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}}); }

}  // namespace mf_test
