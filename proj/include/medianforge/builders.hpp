#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medianforge/median_graph.hpp"

namespace medianforge {

// Generators and commuting pairs of a right-angled Artin group.
class PresentationGraph {
public:
    PresentationGraph() = default;
    PresentationGraph(std::vector<std::string> generators, const std::vector<std::pair<std::string, std::string>>& commutations);

    std::size_t size() const { return generators_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    const Alphabet& alphabet() const { return alphabet_; }
    bool commute(std::uint16_t a, std::uint16_t b) const { return a != b && (commute_mask_[a] >> b & 1u); }
    std::uint64_t commute_mask(std::uint16_t a) const { return commute_mask_[a]; }
    // Unordered pairs (i < j), ascending.
    std::vector<std::pair<std::uint16_t, std::uint16_t>> commuting_pairs() const;

    // Lines `gen <name>` and `comm <name> <name>`; '#' starts a comment.
    static PresentationGraph parse(std::istream& in);
    static PresentationGraph load(const std::string& path);
    void write(std::ostream& out) const;

private:
    std::vector<std::string> generators_;
    Alphabet alphabet_;
    std::vector<std::uint64_t> commute_mask_;
};

// Shortlex normal forms for a right-angled Artin group.
class RaagNormalForm {
public:
    explicit RaagNormalForm(const PresentationGraph& pg) : pg_(&pg) {}

    // Normal form of w * x for w already in normal form.
    Word multiply(const Word& w, Letter x) const;
    Word normalize(const Word& w) const;

private:
    Word shortlex(Word w) const;
    const PresentationGraph* pg_;
};

struct BuildLimits {
    std::size_t max_vertices = 2'000'000;
};

// Core radius of a RAAG ball of radius R (see README: floor(2R/3)).
int raag_core_radius(int R);

MedianGraph raag_ball(const PresentationGraph& pg, int R, const BuildLimits& limits = {},
                      const BuildOptions& options = {});

// Product of paths of the given lengths, generators a, b, c, ...
MedianGraph grid_box(const std::vector<int>& dims, const BuildLimits& limits = {}, const BuildOptions& options = {});

struct Hyperoctahedron {
    int dimension = 0;
    // Vertex 2i and 2i+1 form the i-th antipodal pair.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> vertex_pairs;
    // Every nonempty simplex as an ascending vertex list.
    std::vector<std::vector<std::uint32_t>> simplices;
    // f_vector[k] = number of k-simplices.
    std::vector<std::size_t> f_vector;
};

// Built as the join of a point pair with the previous one; dimension 0 is two points.
Hyperoctahedron hyperoctahedron(int d);
std::vector<std::size_t> f_vector_of(const std::vector<std::vector<std::uint32_t>>& simplices);

struct AmalgamSpec {
    PresentationGraph base;
    std::string rank_one_word;
    int level = 1;
    int tree_depth = 1;
    int radius = 6;
    int p_max = 1;          // gap bound for the rank-one re-check
    bool collapsed = false;  // identify edge-space ends instead of thickening K x [-1,1]
    BuildLimits limits;

    // key = value lines: graph, rank_one_word, level, tree_depth, radius, p_max, collapsed, max_vertices.
    // `graph` names a .pg file resolved against `base_dir`.
    static AmalgamSpec parse(std::istream& in, const std::string& base_dir = ".");
};

struct AmalgamCopy {
    std::uint32_t tree_node = 0;
    std::uint32_t parent = 0;  // tree node id; equals tree_node for the root
    int depth = 0;
    std::vector<VertexId> vertices;  // surviving vertices of this copy in the result, ascending
};

struct AmalgamResult {
    MedianGraph graph;
    std::vector<AmalgamCopy> copies;
    std::size_t edge_space_size = 0;  // |K|
    int axis_half_length = 0;         // K is the hull of g^-m .. g^m
    std::size_t convexity_violations = 0;
};

// Throws CONVEXITY_VIOLATION if a vertex-space copy is not convex.
AmalgamResult amalgam_ball(const AmalgamSpec& spec, const BuildOptions& options = {});

}  // namespace medianforge
