#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medianforge/ids.hpp"
#include "medianforge/word.hpp"

namespace medianforge {

struct VertexRecord {
    std::uint32_t id = 0;
    std::string word;  // empty when the vertex carries no group element
};

// `label` is a letter token; the edge reads as v = u * label.
struct EdgeRecord {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    std::string label;
};

struct BuildOptions {
    std::size_t exhaustive_cap = 2000;     // core vertex count up to which triples are checked exhaustively
    std::size_t sampled_triples = 100000;
    std::size_t sampled_roots = 64;        // BFS roots for the distance check in sampled mode
    std::uint64_t seed = 0;
    bool check_medians = true;
};

struct ValidationSummary {
    bool exhaustive = false;
    bool medians_checked = false;
    std::size_t roots_checked = 0;
    std::size_t triples_checked = 0;
    std::uint64_t seed = 0;
};

struct EdgeInfo {
    VertexId u;  // u < v
    VertexId v;
    Letter letter;  // v = u * letter
};

struct Neighbor {
    VertexId vertex;
    EdgeId edge;
};

struct Hyperplane {
    HyperplaneId id;
    std::vector<EdgeId> dual_edges;  // ascending
    bool boundary_flag = false;      // some dual edge touches the truncation sphere
};

class MedianGraph;

struct Halfspace {
    HyperplaneId hyperplane;
    Side side = Side::LEFT;

    bool contains(const MedianGraph& g, VertexId v) const;
};

class MedianGraph {
public:
    std::size_t vertex_count() const { return depth_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t hyperplane_count() const { return hyperplanes_.size(); }
    std::size_t core_vertex_count() const { return core_count_; }

    VertexId base() const { return base_; }
    int radius() const { return radius_; }
    int core_radius() const { return core_radius_; }
    int depth(VertexId v) const { return depth_[v.value]; }
    bool in_core(VertexId v) const { return depth_[v.value] <= core_radius_; }
    bool on_sphere(VertexId v) const { return depth_[v.value] == radius_; }

    const Alphabet& alphabet() const { return alphabet_; }
    bool has_words() const { return has_words_; }
    std::string_view word(VertexId v) const;
    std::optional<VertexId> find_word(std::string_view text) const;

    std::span<const Neighbor> neighbors(VertexId v) const {
        return {adj_.data() + adj_offset_[v.value], adj_.data() + adj_offset_[v.value + 1]};
    }
    const EdgeInfo& edge(EdgeId e) const { return edges_[e.value]; }
    std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
    // Letter read when walking the edge from `from`.
    Letter letter_from(EdgeId e, VertexId from) const;
    // Follows v * letter when that vertex is present.
    std::optional<VertexId> step(VertexId v, Letter letter) const;

    HyperplaneId hyperplane_of(EdgeId e) const { return HyperplaneId(edge_hyperplane_[e.value]); }
    std::span<const Hyperplane> hyperplanes() const { return hyperplanes_; }
    const Hyperplane& hyperplane(HyperplaneId h) const { return hyperplanes_[h.value]; }

    // Hyperplanes separating the base from v, ascending.
    std::span<const HyperplaneId> separating_set(VertexId v) const {
        return {sep_.data() + sep_offset_[v.value], sep_.data() + sep_offset_[v.value + 1]};
    }
    Side side(HyperplaneId h, VertexId v) const;
    // Number of hyperplanes separating x from y.
    std::size_t separation(VertexId x, VertexId y) const;
    std::vector<HyperplaneId> separating_hyperplanes(VertexId x, VertexId y) const;
    // Vertex whose separating set equals `set` (ascending), if present.
    std::optional<VertexId> vertex_with_separating_set(std::span<const HyperplaneId> set) const;

    // True when a square of the truncation has dual edges in both.
    bool crosses(HyperplaneId a, HyperplaneId b) const;
    std::span<const HyperplaneId> crossing_neighbors(HyperplaneId h) const {
        return {cross_.data() + cross_offset_[h.value], cross_.data() + cross_offset_[h.value + 1]};
    }
    // Largest family of pairwise crossing hyperplanes, read off vertex links.
    int dimension() const { return dimension_; }
    // Vertices incident to a dual edge.
    std::vector<VertexId> carrier(HyperplaneId h) const;
    bool touches_core(HyperplaneId h) const;

    const ValidationSummary& validation() const { return validation_; }

private:
    friend class GraphAssembler;
    MedianGraph() = default;

    VertexId base_;
    int radius_ = 0;
    int core_radius_ = 0;
    std::size_t core_count_ = 0;
    Alphabet alphabet_;

    std::vector<std::int32_t> depth_;
    std::vector<std::uint32_t> adj_offset_;
    std::vector<Neighbor> adj_;
    std::vector<EdgeInfo> edges_;

    bool has_words_ = false;
    std::vector<std::uint32_t> word_offset_;
    std::string word_pool_;
    std::vector<std::uint32_t> by_word_;  // vertex ids sorted by word text

    std::vector<std::uint32_t> edge_hyperplane_;
    std::vector<Hyperplane> hyperplanes_;
    std::vector<std::uint32_t> cross_offset_;
    std::vector<HyperplaneId> cross_;
    std::vector<std::uint32_t> sep_offset_;
    std::vector<HyperplaneId> sep_;
    std::vector<std::uint64_t> hyperplane_key_;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> key_index_;  // sorted (set key, vertex)
    int dimension_ = 0;
    ValidationSummary validation_;
};

// Validates and assembles a truncation. Vertex ids must be exactly 0..n-1.
MedianGraph build_median_graph(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges, VertexId base,
                               int radius, int core_radius, const BuildOptions& options = {});

std::span<const Hyperplane> compute_hyperplanes(const MedianGraph& g);

// BFS distance between core vertices; checked against the separation count.
int distance(const MedianGraph& g, VertexId x, VertexId y);

VertexId median(const MedianGraph& g, VertexId x, VertexId y, VertexId z);

std::vector<VertexId> interval(const MedianGraph& g, VertexId x, VertexId y);
std::vector<VertexId> convex_hull(const MedianGraph& g, std::span<const VertexId> set);

enum class CrossingKind { CROSS, OSCULATE, SEPARATED };

struct CrossingRelation {
    CrossingKind kind = CrossingKind::CROSS;
    int separation = 0;  // hyperplanes strictly between, SEPARATED only
};

CrossingRelation crossing_relation(const MedianGraph& g, HyperplaneId a, HyperplaneId b);

struct FacingTripleReport {
    std::array<HyperplaneId, 3> hyperplanes;
    bool facing = false;
    // sides[i] = side of hyperplanes[i] holding the other two, in cyclic order (i+1, i+2);
    // unset entries mean that pair crosses.
    std::array<std::array<std::optional<Side>, 2>, 3> sides;
};

FacingTripleReport facing_triple(const MedianGraph& g, HyperplaneId a, HyperplaneId b, HyperplaneId c);

// Side of `of` containing `other` (the two must not cross).
Side side_containing(const MedianGraph& g, HyperplaneId of, HyperplaneId other);

struct GeodesicRay {
    std::vector<VertexId> vertices;  // length() + 1 entries, vertices[0] is the base
    std::vector<EdgeId> edges;
    std::vector<HyperplaneId> crossings;

    VertexId base() const { return vertices.front(); }
    int length() const { return static_cast<int>(edges.size()); }
    VertexId at(int i) const { return vertices.at(static_cast<std::size_t>(i)); }

    // Throws NOT_GEODESIC when a hyperplane repeats, BAD_INPUT when steps are not edges.
    static GeodesicRay from_vertices(const MedianGraph& g, std::vector<VertexId> path);
    GeodesicRay prefix(int len) const;
};

// Traces `word` repeated `repetitions` times from the base, stopping before the
// path leaves the core. Throws NOT_GEODESIC when a hyperplane would be crossed twice.
GeodesicRay ray_from_word(const MedianGraph& g, std::string_view word, int repetitions);
// As above after first following `prefix` once.
GeodesicRay ray_from_word(const MedianGraph& g, std::string_view prefix, std::string_view word, int repetitions);

}  // namespace medianforge
