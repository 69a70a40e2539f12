#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "medianforge/median_graph.hpp"

namespace medianforge {

inline constexpr std::int32_t kUnreached = -1;

// Multi-source BFS restricted to vertices accepted by `allowed`; stops expanding
// past `limit`. Sources rejected by `allowed` stay unreached.
template <class Allowed>
std::vector<std::int32_t> bfs_distances(const MedianGraph& g, std::span<const VertexId> sources, Allowed&& allowed,
                                        std::int32_t limit = std::numeric_limits<std::int32_t>::max()) {
    std::vector<std::int32_t> dist(g.vertex_count(), kUnreached);
    std::vector<std::uint32_t> queue;
    queue.reserve(64);
    for (VertexId s : sources) {
        if (dist[s.value] == kUnreached && allowed(s)) {
            dist[s.value] = 0;
            queue.push_back(s.value);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t v = queue[head];
        if (dist[v] >= limit) continue;
        for (const Neighbor& n : g.neighbors(VertexId(v))) {
            const std::uint32_t w = n.vertex.value;
            if (dist[w] != kUnreached || !allowed(n.vertex)) continue;
            dist[w] = dist[v] + 1;
            queue.push_back(w);
        }
    }
    return dist;
}

inline std::vector<std::int32_t> bfs_distances(const MedianGraph& g, VertexId source) {
    const VertexId s[] = {source};
    return bfs_distances(g, std::span<const VertexId>(s), [](VertexId) { return true; });
}

}  // namespace medianforge
