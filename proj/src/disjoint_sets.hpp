#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace medianforge::detail {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    // Classes ordered by least member, members ascending.
    std::vector<std::vector<std::size_t>> classes() {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> slot(parent.size(), parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) {
            const auto r = find(i);
            if (slot[r] == parent.size()) {
                slot[r] = out.size();
                out.emplace_back();
            }
            out[slot[r]].push_back(i);
        }
        return out;
    }
    std::vector<std::size_t> parent;
};

}  // namespace medianforge::detail
