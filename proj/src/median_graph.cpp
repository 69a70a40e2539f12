#include "medianforge/median_graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "medianforge/errors.hpp"
#include "medianforge/traversal.hpp"

namespace medianforge {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) std::swap(a, b);
        parent[a] = b;
    }
};

std::string strip_inverse(std::string_view label) {
    for (std::string_view marker : {std::string_view("^-1"), std::string_view("'"), std::string_view("⁻¹")}) {
        if (label.size() > marker.size() && label.substr(label.size() - marker.size()) == marker) {
            return std::string(label.substr(0, label.size() - marker.size()));
        }
    }
    return std::string(label);
}

std::string triple_text(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

}  // namespace

class GraphAssembler {
public:
    explicit GraphAssembler(const BuildOptions& options) : options_(options) {}

    MedianGraph run(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges, VertexId base, int radius,
                    int core_radius) {
        g_.base_ = base;
        g_.radius_ = radius;
        g_.core_radius_ = core_radius;
        load_vertices(vertices);
        load_edges(edges);
        layer_from_base();
        check_radii();
        partition_hyperplanes();
        assign_separating_sets();
        index_separating_sets();
        compute_dimension();
        if (options_.check_medians) check_medians();
        g_.validation_.seed = options_.seed;
        return std::move(g_);
    }

private:
    void load_vertices(std::vector<VertexRecord>& vertices) {
        const std::size_t n = vertices.size();
        if (n == 0) throw Error(ErrorCode::BAD_INPUT, "complex has no vertices");
        std::vector<const VertexRecord*> slot(n, nullptr);
        for (const auto& rec : vertices) {
            if (rec.id >= n) throw Error(ErrorCode::BAD_INPUT, "vertex ids must be 0..n-1; got " + std::to_string(rec.id));
            if (slot[rec.id]) throw Error(ErrorCode::BAD_INPUT, "duplicate vertex id " + std::to_string(rec.id));
            slot[rec.id] = &rec;
        }
        if (g_.base_.value >= n) throw Error(ErrorCode::BAD_INPUT, "base vertex is not a vertex");
        g_.word_offset_.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            g_.word_offset_[i] = static_cast<std::uint32_t>(g_.word_pool_.size());
            g_.word_pool_ += slot[i]->word;
            if (!slot[i]->word.empty()) g_.has_words_ = true;
        }
        g_.word_offset_[n] = static_cast<std::uint32_t>(g_.word_pool_.size());
        if (g_.has_words_) {
            g_.by_word_.resize(n);
            std::iota(g_.by_word_.begin(), g_.by_word_.end(), 0u);
            std::sort(g_.by_word_.begin(), g_.by_word_.end(), [&](std::uint32_t a, std::uint32_t b) {
                return g_.word(VertexId(a)) < g_.word(VertexId(b));
            });
        }
        g_.depth_.assign(n, -1);
    }

    void load_edges(std::vector<EdgeRecord>& edges) {
        const std::size_t n = g_.depth_.size();
        std::set<std::string> names;
        for (const auto& e : edges) names.insert(strip_inverse(e.label));
        g_.alphabet_ = Alphabet(std::vector<std::string>(names.begin(), names.end()));
        g_.edges_.reserve(edges.size());
        for (const auto& e : edges) {
            if (e.u >= n || e.v >= n) throw Error(ErrorCode::BAD_INPUT, "edge endpoint is not a vertex");
            if (e.u == e.v) throw Error(ErrorCode::BAD_INPUT, "loop at vertex " + std::to_string(e.u), {e.u});
            Letter l = g_.alphabet_.parse_letter(e.label);
            EdgeInfo info{VertexId(e.u), VertexId(e.v), l};
            if (e.u > e.v) info = EdgeInfo{VertexId(e.v), VertexId(e.u), l.inverted()};
            g_.edges_.push_back(info);
        }
        std::sort(g_.edges_.begin(), g_.edges_.end(), [](const EdgeInfo& a, const EdgeInfo& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        for (std::size_t i = 1; i < g_.edges_.size(); ++i) {
            if (g_.edges_[i].u == g_.edges_[i - 1].u && g_.edges_[i].v == g_.edges_[i - 1].v) {
                throw Error(ErrorCode::BAD_INPUT, "parallel edges between " + std::to_string(g_.edges_[i].u.value) +
                                                      " and " + std::to_string(g_.edges_[i].v.value),
                            {g_.edges_[i].u.value, g_.edges_[i].v.value});
            }
        }
        std::vector<std::uint32_t> degree(n + 1, 0);
        for (const auto& e : g_.edges_) {
            ++degree[e.u.value];
            ++degree[e.v.value];
        }
        g_.adj_offset_.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) g_.adj_offset_[i + 1] = g_.adj_offset_[i] + degree[i];
        g_.adj_.resize(g_.adj_offset_[n]);
        std::vector<std::uint32_t> fill(g_.adj_offset_.begin(), g_.adj_offset_.end() - 1);
        for (std::uint32_t i = 0; i < g_.edges_.size(); ++i) {
            const auto& e = g_.edges_[i];
            g_.adj_[fill[e.u.value]++] = Neighbor{e.v, EdgeId(i)};
            g_.adj_[fill[e.v.value]++] = Neighbor{e.u, EdgeId(i)};
        }
        // Tie-break order: (generator label, vertex id).
        for (std::size_t v = 0; v < n; ++v) {
            auto first = g_.adj_.begin() + g_.adj_offset_[v];
            auto last = g_.adj_.begin() + g_.adj_offset_[v + 1];
            std::sort(first, last, [&](const Neighbor& a, const Neighbor& b) {
                const auto ga = g_.edges_[a.edge.value].letter.generator;
                const auto gb = g_.edges_[b.edge.value].letter.generator;
                return std::pair(ga, a.vertex) < std::pair(gb, b.vertex);
            });
        }
    }

    void layer_from_base() {
        auto dist = bfs_distances(g_, g_.base_);
        for (std::size_t v = 0; v < dist.size(); ++v) {
            if (dist[v] == kUnreached) {
                throw Error(ErrorCode::NOT_CONNECTED,
                            "vertex " + std::to_string(v) + " is not reachable from the base",
                            {static_cast<std::uint32_t>(v)});
            }
        }
        g_.depth_ = std::move(dist);
        for (const auto& e : g_.edges_) {
            if (g_.depth_[e.u.value] == g_.depth_[e.v.value]) {
                throw Error(ErrorCode::NOT_BIPARTITE,
                            "edge " + std::to_string(e.u.value) + "-" + std::to_string(e.v.value) +
                                " closes an odd cycle",
                            {e.u.value, e.v.value});
            }
        }
    }

    void check_radii() {
        if (g_.radius_ < 0 || g_.core_radius_ < 0) throw Error(ErrorCode::BAD_RADIUS, "radii must be nonnegative");
        if (g_.core_radius_ > g_.radius_) {
            throw Error(ErrorCode::BAD_RADIUS, "core radius " + std::to_string(g_.core_radius_) + " exceeds radius " +
                                                   std::to_string(g_.radius_));
        }
        for (std::size_t v = 0; v < g_.depth_.size(); ++v) {
            if (g_.depth_[v] > g_.radius_) {
                throw Error(ErrorCode::BAD_RADIUS,
                            "vertex " + std::to_string(v) + " lies at distance " + std::to_string(g_.depth_[v]) +
                                " beyond radius " + std::to_string(g_.radius_),
                            {static_cast<std::uint32_t>(v)});
            }
            if (g_.depth_[v] <= g_.core_radius_) ++g_.core_count_;
        }
    }

    // Union-find over square-opposite edges; squares are visited once from their least vertex.
    void partition_hyperplanes() {
        const std::size_t n = g_.vertex_count();
        UnionFind uf(g_.edges_.size());
        std::vector<std::pair<std::uint32_t, std::uint32_t>> crossing_edges;
        struct Reach {
            std::uint32_t far;      // x
            std::uint32_t near_edge;  // edge v-u
            std::uint32_t far_edge;   // edge u-x
        };
        std::vector<Reach> reach;
        for (std::uint32_t v = 0; v < n; ++v) {
            reach.clear();
            for (const Neighbor& nu : g_.neighbors(VertexId(v))) {
                for (const Neighbor& nx : g_.neighbors(nu.vertex)) {
                    if (nx.vertex.value <= v) continue;
                    reach.push_back({nx.vertex.value, nu.edge.value, nx.edge.value});
                }
            }
            std::sort(reach.begin(), reach.end(), [](const Reach& a, const Reach& b) {
                return std::pair(a.far, a.near_edge) < std::pair(b.far, b.near_edge);
            });
            for (std::size_t i = 0; i < reach.size();) {
                std::size_t j = i;
                while (j < reach.size() && reach[j].far == reach[i].far) ++j;
                if (j - i >= 3) {
                    // v and x share three neighbours: K_{2,3}, two medians for those three.
                    auto other = [&](std::size_t k) {
                        const auto& e = g_.edges_[reach[k].near_edge];
                        return e.u.value == v ? e.v.value : e.u.value;
                    };
                    throw Error(ErrorCode::MEDIAN_VIOLATION,
                                "triple " + triple_text(other(i), other(i + 1), other(i + 2)) + " has two medians " +
                                    std::to_string(v) + " and " + std::to_string(reach[i].far),
                                {other(i), other(i + 1), other(i + 2)});
                }
                if (j - i == 2) {
                    // Square v - u1 - x - u2: opposite edges are parallel.
                    const auto& a = reach[i];
                    const auto& b = reach[i + 1];
                    const bool v_is_least = [&] {
                        auto u1 = g_.edges_[a.near_edge].u.value == v ? g_.edges_[a.near_edge].v.value
                                                                        : g_.edges_[a.near_edge].u.value;
                        auto u2 = g_.edges_[b.near_edge].u.value == v ? g_.edges_[b.near_edge].v.value
                                                                        : g_.edges_[b.near_edge].u.value;
                        return v < u1 && v < u2;
                    }();
                    if (v_is_least) {
                        uf.unite(a.near_edge, b.far_edge);
                        uf.unite(b.near_edge, a.far_edge);
                        crossing_edges.emplace_back(a.near_edge, b.near_edge);
                    }
                }
                i = j;
            }
        }
        const std::size_t m = g_.edges_.size();
        std::vector<std::uint32_t> class_of_root(m, UINT32_MAX);
        g_.edge_hyperplane_.assign(m, 0);
        for (std::uint32_t e = 0; e < m; ++e) {
            const std::uint32_t r = uf.find(e);
            if (class_of_root[r] == UINT32_MAX) {
                class_of_root[r] = static_cast<std::uint32_t>(g_.hyperplanes_.size());
                Hyperplane h;
                h.id = HyperplaneId(class_of_root[r]);
                g_.hyperplanes_.push_back(std::move(h));
            }
            g_.edge_hyperplane_[e] = class_of_root[r];
            auto& h = g_.hyperplanes_[class_of_root[r]];
            h.dual_edges.push_back(EdgeId(e));
            const auto& info = g_.edges_[e];
            if (g_.depth_[info.u.value] == g_.radius_ || g_.depth_[info.v.value] == g_.radius_) h.boundary_flag = true;
        }
        // Crossing graph as CSR.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        pairs.reserve(crossing_edges.size() * 2);
        for (auto [e1, e2] : crossing_edges) {
            const auto h1 = g_.edge_hyperplane_[e1];
            const auto h2 = g_.edge_hyperplane_[e2];
            if (h1 == h2) {
                throw Error(ErrorCode::INCONSISTENT_SIDES,
                            "hyperplane " + std::to_string(h1) + " crosses itself in a square", {h1});
            }
            pairs.emplace_back(h1, h2);
            pairs.emplace_back(h2, h1);
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        const std::size_t hn = g_.hyperplanes_.size();
        g_.cross_offset_.assign(hn + 1, 0);
        for (auto [a, b] : pairs) ++g_.cross_offset_[a + 1];
        for (std::size_t i = 0; i < hn; ++i) g_.cross_offset_[i + 1] += g_.cross_offset_[i];
        g_.cross_.reserve(pairs.size());
        for (auto [a, b] : pairs) g_.cross_.push_back(HyperplaneId(b));
    }

    void assign_separating_sets() {
        const std::size_t n = g_.vertex_count();
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return g_.depth_[a] < g_.depth_[b]; });
        std::vector<std::uint32_t> parent_edge(n, UINT32_MAX);
        for (std::uint32_t v : order) {
            for (const Neighbor& nb : g_.neighbors(VertexId(v))) {
                if (g_.depth_[nb.vertex.value] == g_.depth_[v] + 1 && parent_edge[nb.vertex.value] == UINT32_MAX) {
                    parent_edge[nb.vertex.value] = nb.edge.value;
                }
            }
        }
        std::vector<std::vector<HyperplaneId>> sets(n);
        for (std::uint32_t v : order) {
            if (v == g_.base_.value) continue;
            const auto& e = g_.edges_[parent_edge[v]];
            const std::uint32_t p = e.u.value == v ? e.v.value : e.u.value;
            const HyperplaneId h(g_.edge_hyperplane_[parent_edge[v]]);
            auto& s = sets[v];
            s = sets[p];
            auto it = std::lower_bound(s.begin(), s.end(), h);
            if (it != s.end() && *it == h) inconsistent(VertexId(p), VertexId(v));
            s.insert(it, h);
        }
        // Every edge must flip exactly its own hyperplane.
        for (std::uint32_t i = 0; i < g_.edges_.size(); ++i) {
            const auto& e = g_.edges_[i];
            std::uint32_t lo = e.u.value, hi = e.v.value;
            if (g_.depth_[lo] > g_.depth_[hi]) std::swap(lo, hi);
            const auto& sl = sets[lo];
            const auto& sh = sets[hi];
            const HyperplaneId h(g_.edge_hyperplane_[i]);
            bool ok = sh.size() == sl.size() + 1;
            if (ok) {
                std::size_t a = 0, b = 0;
                bool skipped = false;
                while (a < sl.size() && ok) {
                    if (sl[a] == sh[b]) {
                        ++a;
                        ++b;
                    } else if (!skipped && sh[b] == h) {
                        skipped = true;
                        ++b;
                    } else {
                        ok = false;
                    }
                }
                if (ok && !skipped) ok = sh[b] == h;
            }
            if (!ok) inconsistent(VertexId(lo), VertexId(hi));
        }
        g_.sep_offset_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) g_.sep_offset_[v + 1] = g_.sep_offset_[v] + sets[v].size();
        g_.sep_.reserve(g_.sep_offset_[n]);
        for (auto& s : sets) {
            g_.sep_.insert(g_.sep_.end(), s.begin(), s.end());
            std::vector<HyperplaneId>().swap(s);
        }
    }

    // Sides cannot be assigned consistently. Look for a triple without a median
    // through the quadrangle condition seen from the base; otherwise report the edge.
    [[noreturn]] void inconsistent(VertexId a, VertexId b) {
        const std::size_t n = g_.vertex_count();
        for (std::uint32_t z = 0; z < n; ++z) {
            std::vector<std::uint32_t> down;
            for (const Neighbor& nb : g_.neighbors(VertexId(z))) {
                if (g_.depth_[nb.vertex.value] + 1 == g_.depth_[z]) down.push_back(nb.vertex.value);
            }
            for (std::size_t i = 0; i < down.size(); ++i) {
                for (std::size_t j = i + 1; j < down.size(); ++j) {
                    bool common = false;
                    for (const Neighbor& x : g_.neighbors(VertexId(down[i]))) {
                        if (g_.depth_[x.vertex.value] + 2 != g_.depth_[z]) continue;
                        for (const Neighbor& y : g_.neighbors(VertexId(down[j]))) {
                            if (y.vertex == x.vertex) common = true;
                        }
                    }
                    if (!common) {
                        const auto o = g_.base_.value;
                        throw Error(ErrorCode::MEDIAN_VIOLATION,
                                    "triple " + triple_text(o, down[i], down[j]) + " has no median",
                                    {o, down[i], down[j]});
                    }
                }
            }
        }
        throw Error(ErrorCode::INCONSISTENT_SIDES,
                    "hyperplane sides disagree across edge " + std::to_string(a.value) + "-" + std::to_string(b.value),
                    {a.value, b.value});
    }

    void index_separating_sets() {
        std::uint64_t state = 0x5eed5eedULL;
        g_.hyperplane_key_.resize(g_.hyperplanes_.size());
        for (auto& k : g_.hyperplane_key_) k = splitmix64(state);
        const std::size_t n = g_.vertex_count();
        g_.key_index_.resize(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            std::uint64_t key = 0;
            for (HyperplaneId h : g_.separating_set(VertexId(v))) key ^= g_.hyperplane_key_[h.value];
            g_.key_index_[v] = {key, v};
        }
        std::sort(g_.key_index_.begin(), g_.key_index_.end());
        for (std::size_t i = 1; i < n; ++i) {
            if (g_.key_index_[i].first != g_.key_index_[i - 1].first) continue;
            const VertexId a(g_.key_index_[i - 1].second), b(g_.key_index_[i].second);
            auto sa = g_.separating_set(a);
            auto sb = g_.separating_set(b);
            if (std::equal(sa.begin(), sa.end(), sb.begin(), sb.end())) {
                throw Error(ErrorCode::MEDIAN_VIOLATION,
                            "vertices " + std::to_string(a.value) + " and " + std::to_string(b.value) +
                                " are separated by no hyperplane",
                            {g_.base_.value, a.value, b.value});
            }
        }
    }

    void compute_dimension() {
        int best = g_.edges_.empty() ? 0 : 1;
        std::vector<HyperplaneId> local;
        for (std::uint32_t v = 0; v < g_.vertex_count(); ++v) {
            local.clear();
            for (const Neighbor& nb : g_.neighbors(VertexId(v))) local.push_back(g_.hyperplane_of(nb.edge));
            const std::size_t k = local.size();
            if (k <= static_cast<std::size_t>(best)) continue;
            if (k <= 20) {
                std::vector<std::uint32_t> adj(k, 0);
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = i + 1; j < k; ++j) {
                        if (g_.crosses(local[i], local[j])) {
                            adj[i] |= 1u << j;
                            adj[j] |= 1u << i;
                        }
                    }
                }
                best = std::max(best, max_clique(adj, 0, (1u << k) - 1, 0));
            }
        }
        g_.dimension_ = best;
    }

    static int max_clique(const std::vector<std::uint32_t>& adj, std::uint32_t chosen, std::uint32_t candidates,
                          int size) {
        if (candidates == 0) return size;
        int best = size;
        while (candidates) {
            if (size + __builtin_popcount(candidates) <= best) break;
            const int i = __builtin_ctz(candidates);
            candidates &= candidates - 1;
            best = std::max(best, max_clique(adj, chosen | (1u << i), candidates & adj[i], size + 1));
        }
        return best;
    }

    // Distances from roots against separation counts, then the median of core
    // triples located through its separating set. With the distance identity
    // in place, any median has the majority separating set, so a missing or
    // duplicated set is a genuine violation.
    void check_medians() {
        std::vector<std::uint32_t> core;
        for (std::uint32_t v = 0; v < g_.vertex_count(); ++v) {
            if (g_.depth_[v] <= g_.core_radius_) core.push_back(v);
        }
        auto& summary = g_.validation_;
        summary.medians_checked = true;
        summary.exhaustive = core.size() <= options_.exhaustive_cap;
        std::mt19937_64 rng(options_.seed);

        std::vector<std::uint32_t> roots;
        if (summary.exhaustive) {
            roots = core;
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, core.size() - 1);
            for (std::size_t i = 0; i < options_.sampled_roots; ++i) roots.push_back(core[pick(rng)]);
        }
        for (std::uint32_t r : roots) {
            auto dist = bfs_distances(g_, VertexId(r));
            for (std::uint32_t v = 0; v < g_.vertex_count(); ++v) {
                if (static_cast<std::size_t>(dist[v]) != g_.separation(VertexId(r), VertexId(v))) {
                    throw Error(ErrorCode::MEDIAN_VIOLATION,
                                "distance " + std::to_string(dist[v]) + " between " + std::to_string(r) + " and " +
                                    std::to_string(v) + " differs from the separating-hyperplane count",
                                {g_.base_.value, r, v});
                }
            }
        }
        summary.roots_checked = roots.size();

        const std::size_t hn = g_.hyperplanes_.size();
        std::vector<std::uint8_t> in_x(hn, 0), in_y(hn, 0);
        auto check = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
            // in_x / in_y already hold S(x), S(y).
            std::uint64_t key = 0;
            std::size_t size = 0;
            for (HyperplaneId h : g_.separating_set(VertexId(x))) {
                if (in_y[h.value]) {
                    key ^= g_.hyperplane_key_[h.value];
                    ++size;
                }
            }
            auto sz = g_.separating_set(VertexId(z));
            for (HyperplaneId h : sz) {
                if (in_x[h.value] != in_y[h.value]) {
                    key ^= g_.hyperplane_key_[h.value];
                    ++size;
                }
            }
            auto it = std::lower_bound(g_.key_index_.begin(), g_.key_index_.end(), std::pair(key, 0u));
            for (; it != g_.key_index_.end() && it->first == key; ++it) {
                auto sm = g_.separating_set(VertexId(it->second));
                if (sm.size() != size) continue;
                bool ok = true;
                for (HyperplaneId h : sm) {
                    const int votes = in_x[h.value] + in_y[h.value] + (std::binary_search(sz.begin(), sz.end(), h) ? 1 : 0);
                    if (votes < 2) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return;
            }
            throw Error(ErrorCode::MEDIAN_VIOLATION, "triple " + triple_text(x, y, z) + " has no median",
                        {x, y, z});
        };
        auto mark = [&](std::vector<std::uint8_t>& m, std::uint32_t v, std::uint8_t value) {
            for (HyperplaneId h : g_.separating_set(VertexId(v))) m[h.value] = value;
        };
        std::size_t checked = 0;
        if (summary.exhaustive) {
            checked = check_all_core_triples(core);
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, core.size() - 1);
            for (std::size_t t = 0; t < options_.sampled_triples; ++t) {
                const auto x = core[pick(rng)], y = core[pick(rng)], z = core[pick(rng)];
                mark(in_x, x, 1);
                mark(in_y, y, 1);
                check(x, y, z);
                mark(in_x, x, 0);
                mark(in_y, y, 0);
                ++checked;
            }
        }
        summary.triples_checked = checked;
    }

    // Exhaustive pass. For a pair x, y the majority set of (x, y, z) is
    // (S(x) & S(y)) + (S(z) & D) with D = S(x) ^ S(y); its two Zobrist keys and
    // size follow the BFS tree of the core, one hyperplane per step, so each z
    // costs a table lookup. Key pairs are 128 bits; a match with equal size is
    // taken as the median.
    std::size_t check_all_core_triples(const std::vector<std::uint32_t>& core) {
        const std::size_t n = g_.vertex_count();
        const std::size_t hn = g_.hyperplanes_.size();
        std::uint64_t state = 0xC0FFEE123ULL;
        std::vector<std::uint64_t> key2(hn);
        for (auto& k : key2) k = splitmix64(state);
        std::vector<std::uint64_t> vkey1(n, 0), vkey2(n, 0);
        for (std::uint32_t v = 0; v < n; ++v) {
            for (HyperplaneId h : g_.separating_set(VertexId(v))) {
                vkey1[v] ^= g_.hyperplane_key_[h.value];
                vkey2[v] ^= key2[h.value];
            }
        }
        std::size_t cap = 1;
        while (cap < 2 * n) cap <<= 1;
        std::vector<std::pair<std::uint64_t, std::uint32_t>> table(cap, {0, UINT32_MAX});
        for (std::uint32_t v = 0; v < n; ++v) {
            std::size_t slot = vkey1[v] & (cap - 1);
            while (table[slot].second != UINT32_MAX) slot = (slot + 1) & (cap - 1);
            table[slot] = {vkey1[v], v};
        }

        std::vector<std::uint32_t> order = core;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return g_.depth_[a] < g_.depth_[b]; });
        std::vector<std::uint32_t> pos(n, UINT32_MAX);
        for (std::uint32_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
        const std::size_t m = order.size();
        std::vector<std::uint32_t> parent(m, 0), step(m, 0);
        for (std::uint32_t k = 1; k < m; ++k) {
            for (const Neighbor& nb : g_.neighbors(VertexId(order[k]))) {
                if (g_.depth_[nb.vertex.value] + 1 == g_.depth_[order[k]]) {
                    parent[k] = pos[nb.vertex.value];
                    step[k] = g_.edge_hyperplane_[nb.edge.value];
                    break;
                }
            }
        }

        std::vector<std::uint8_t> in_d(hn, 0), in_y(hn, 0);
        std::vector<std::uint64_t> f1(m), f2(m);
        std::vector<std::uint32_t> count(m);
        std::size_t checked = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto sx = g_.separating_set(VertexId(order[i]));
            for (HyperplaneId h : sx) in_d[h.value] ^= 1;
            for (std::size_t j = i + 1; j < m; ++j) {
                const auto sy = g_.separating_set(VertexId(order[j]));
                for (HyperplaneId h : sy) {
                    in_d[h.value] ^= 1;
                    in_y[h.value] = 1;
                }
                std::uint64_t i1 = 0, i2 = 0;
                std::uint32_t isize = 0;
                for (HyperplaneId h : sx) {
                    if (in_y[h.value]) {
                        i1 ^= g_.hyperplane_key_[h.value];
                        i2 ^= key2[h.value];
                        ++isize;
                    }
                }
                f1[0] = f2[0] = 0;
                count[0] = 0;
                for (std::size_t k = 1; k < m; ++k) {
                    const auto h = step[k];
                    const std::uint64_t on = in_d[h] ? ~std::uint64_t{0} : 0;
                    f1[k] = f1[parent[k]] ^ (g_.hyperplane_key_[h] & on);
                    f2[k] = f2[parent[k]] ^ (key2[h] & on);
                    count[k] = count[parent[k]] + in_d[h];
                }
                for (std::size_t k = j + 1; k < m; ++k) {
                    const std::uint64_t k1 = i1 ^ f1[k], k2 = i2 ^ f2[k];
                    const std::size_t size = isize + count[k];
                    bool found = false;
                    for (std::size_t slot = k1 & (cap - 1); table[slot].second != UINT32_MAX;
                         slot = (slot + 1) & (cap - 1)) {
                        const auto v = table[slot].second;
                        if (table[slot].first == k1 && vkey2[v] == k2 &&
                            g_.sep_offset_[v + 1] - g_.sep_offset_[v] == size) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        throw Error(ErrorCode::MEDIAN_VIOLATION,
                                    "triple " + triple_text(order[i], order[j], order[k]) + " has no median",
                                    {order[i], order[j], order[k]});
                    }
                }
                checked += m - j - 1;
                for (HyperplaneId h : sy) {
                    in_d[h.value] ^= 1;
                    in_y[h.value] = 0;
                }
            }
            for (HyperplaneId h : sx) in_d[h.value] ^= 1;
        }
        return checked;
    }

    BuildOptions options_;
    MedianGraph g_;
};

MedianGraph build_median_graph(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges, VertexId base,
                               int radius, int core_radius, const BuildOptions& options) {
    return GraphAssembler(options).run(std::move(vertices), std::move(edges), base, radius, core_radius);
}

// ---- MedianGraph accessors ----

std::string_view MedianGraph::word(VertexId v) const {
    return std::string_view(word_pool_).substr(word_offset_[v.value], word_offset_[v.value + 1] - word_offset_[v.value]);
}

std::optional<VertexId> MedianGraph::find_word(std::string_view text) const {
    if (!has_words_) return std::nullopt;
    auto it = std::lower_bound(by_word_.begin(), by_word_.end(), text,
                               [&](std::uint32_t v, std::string_view t) { return word(VertexId(v)) < t; });
    if (it != by_word_.end() && word(VertexId(*it)) == text) return VertexId(*it);
    return std::nullopt;
}

std::optional<EdgeId> MedianGraph::find_edge(VertexId a, VertexId b) const {
    for (const Neighbor& n : neighbors(a)) {
        if (n.vertex == b) return n.edge;
    }
    return std::nullopt;
}

Letter MedianGraph::letter_from(EdgeId e, VertexId from) const {
    const auto& info = edges_[e.value];
    return info.u == from ? info.letter : info.letter.inverted();
}

std::optional<VertexId> MedianGraph::step(VertexId v, Letter letter) const {
    for (const Neighbor& n : neighbors(v)) {
        if (letter_from(n.edge, v) == letter) return n.vertex;
    }
    return std::nullopt;
}

Side MedianGraph::side(HyperplaneId h, VertexId v) const {
    auto s = separating_set(v);
    return std::binary_search(s.begin(), s.end(), h) ? Side::RIGHT : Side::LEFT;
}

std::size_t MedianGraph::separation(VertexId x, VertexId y) const {
    auto a = separating_set(x);
    auto b = separating_set(y);
    std::size_t common = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++common;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return a.size() + b.size() - 2 * common;
}

std::vector<HyperplaneId> MedianGraph::separating_hyperplanes(VertexId x, VertexId y) const {
    auto a = separating_set(x);
    auto b = separating_set(y);
    std::vector<HyperplaneId> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::optional<VertexId> MedianGraph::vertex_with_separating_set(std::span<const HyperplaneId> set) const {
    std::uint64_t key = 0;
    for (HyperplaneId h : set) key ^= hyperplane_key_[h.value];
    auto it = std::lower_bound(key_index_.begin(), key_index_.end(), std::pair(key, 0u));
    for (; it != key_index_.end() && it->first == key; ++it) {
        auto s = separating_set(VertexId(it->second));
        if (std::equal(s.begin(), s.end(), set.begin(), set.end())) return VertexId(it->second);
    }
    return std::nullopt;
}

bool MedianGraph::crosses(HyperplaneId a, HyperplaneId b) const {
    auto n = crossing_neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
}

std::vector<VertexId> MedianGraph::carrier(HyperplaneId h) const {
    std::vector<VertexId> out;
    for (EdgeId e : hyperplanes_[h.value].dual_edges) {
        out.push_back(edges_[e.value].u);
        out.push_back(edges_[e.value].v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool MedianGraph::touches_core(HyperplaneId h) const {
    for (EdgeId e : hyperplanes_[h.value].dual_edges) {
        if (in_core(edges_[e.value].u) || in_core(edges_[e.value].v)) return true;
    }
    return false;
}

bool Halfspace::contains(const MedianGraph& g, VertexId v) const { return g.side(hyperplane, v) == side; }

}  // namespace medianforge
