#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "medianforge/divergence.hpp"
#include "medianforge/median_graph.hpp"

namespace medianforge {

// Hyperplanes crossed by a geodesic ray, in crossing order. Members before
// `burn_in` are excluded from asymptotic judgements.
struct BoundarySetTruncation {
    std::vector<HyperplaneId> hyperplanes;
    GeodesicRay source;
    int burn_in = 0;

    std::span<const HyperplaneId> tail() const {
        return std::span<const HyperplaneId>(hyperplanes).subspan(static_cast<std::size_t>(burn_in));
    }
};

BoundarySetTruncation ray_boundary_set(const MedianGraph& g, const GeodesicRay& ray, int burn_in);

// True when the two members, crossed at ray positions i and j, can be decided
// to cross or not inside the truncation: the nearest square of a crossing pair
// has its far corner at depth at most i + j + 2.
bool crossing_decidable(const MedianGraph& g, int i, int j);

// Symmetric difference confined to the burn-in windows at either end.
bool equivalent(const BoundarySetTruncation& a, const BoundarySetTruncation& b);
// Interior members of `a` all belong to `b`.
bool contained(const BoundarySetTruncation& a, const BoundarySetTruncation& b);

struct DecompositionReport {
    std::vector<std::vector<HyperplaneId>> blocks;  // ordered by first member along the ray
    bool verified_cross_condition = false;
    std::size_t exceptions = 0;  // cross-block non-crossing pairs beyond burn-in
};

DecompositionReport minimal_decomposition(const MedianGraph& g, const BoundarySetTruncation& bst, int k0);
int simplex_dimension(const MedianGraph& g, const BoundarySetTruncation& bst, int k0);

enum class RankOneKind { RANK_ONE, NOT_RANK_ONE, INDETERMINATE };

struct RankOneVerdict {
    RankOneKind kind = RankOneKind::INDETERMINATE;
    int p = 0;                                 // largest gap between crossing axis hyperplanes
    std::optional<std::pair<int, int>> witness;  // axis positions attaining p
    double trend_slope = 0;                    // slope of the prefix maximum gap against prefix length
    int strip_width = 0;  // most off-axis hyperplanes crossing p_max + 1 consecutive axis hyperplanes
};

RankOneVerdict rank_one_check(const MedianGraph& g, const GeodesicRay& axis, int p_max);
std::string_view to_string(RankOneKind kind);

struct GroupingOptions {
    int radius_factor = 3;
    int r_min = 0;  // 0 selects the default window
    GrowthThresholds thresholds;
};

struct ComponentGrouping {
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> groups;  // each ascending, ordered by least member
    std::vector<std::vector<Growth>> classes;      // symmetric; diagonal LINEAR
    std::vector<std::vector<std::optional<double>>> exponents;
    std::vector<std::pair<std::size_t, std::size_t>> indeterminate;
    int r_min = 0;
    int r_max = 0;

    std::size_t group_of(std::size_t ray) const;
};

// Pairwise ray divergence over r = 1..r_max; groups join LINEAR pairs transitively.
ComponentGrouping component_grouping(const MedianGraph& g, std::span<const GeodesicRay> rays, int r_max,
                                     std::vector<std::string> labels = {}, const GroupingOptions& options = {});

struct OctahedronOptions {
    int burn_in = -1;  // -1 selects a quarter of the shortest ray
    int k0 = -1;       // -1 selects the graph dimension
};

struct OctahedronMatch {
    bool matches = false;
    std::vector<std::size_t> classes;  // class index of each ray
    std::vector<std::vector<std::uint32_t>> simplices;  // over class indices
    std::vector<std::size_t> f_vector;
    std::vector<std::size_t> expected;
};

OctahedronMatch octahedron_match(const MedianGraph& g, int d, std::span<const GeodesicRay> family,
                                 const OctahedronOptions& options = {});

void write_grouping_dot(std::ostream& out, const ComponentGrouping& grouping);
void write_grouping_csv(std::ostream& out, const ComponentGrouping& grouping);
void write_decomposition_dot(std::ostream& out, const DecompositionReport& report);
// Crossing matrix of the tail: 1 cross, 0 do not, ? undecidable.
void write_crossing_csv(std::ostream& out, const MedianGraph& g, const BoundarySetTruncation& bst);

}  // namespace medianforge
