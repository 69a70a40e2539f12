#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medianforge/builders.hpp"
#include "medianforge/median_graph.hpp"
#include "medianforge/report.hpp"

namespace medianforge {

struct JoinDecomposition {
    std::vector<std::vector<std::string>> factors;  // ordered by least generator index
    bool is_nontrivial_join = false;
};

// Factors are the components of the complement of the presentation graph.
JoinDecomposition join_check(const PresentationGraph& pg);
// "nontrivial join: {a} * {b}" or "no join: {a,b,c,d}".
std::string to_string(const JoinDecomposition& join);

struct Flat {
    std::pair<std::string, std::string> generators;
    std::string representative;  // word of the coset vertex nearest the base
    std::size_t vertex_count = 0;
    std::vector<HyperplaneId> hyperplanes;  // crossing the coset inside the ball, ascending
};

struct ChainEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::size_t overlap = 0;
};

struct FlatChainWitness {
    std::vector<Flat> flats;  // cosets meeting the core, by generator pair then representative depth and word
    std::vector<ChainEdge> edges;
    int threshold = 0;
    std::size_t components = 0;
    bool connected = false;
    int coverage_tau = 0;  // largest distance from a core vertex to the nearest flat
};

// `g` must be a ball of `pg`. Throws NO_FLATS when no generators commute.
FlatChainWitness flat_chain_witness(const MedianGraph& g, const PresentationGraph& pg, int overlap_threshold);

// A subgroup generated by some generators, taken with all its cosets, or one
// explicit vertex set given by normal-form words.
struct PeripheralSpec {
    std::vector<std::string> generators;
    std::vector<std::string> words;

    // "a,b" names generators; "{1,a,ab}" lists words.
    static PeripheralSpec parse(std::string_view text);
    std::string label() const;
};

struct BowditchOptions {
    int thickening = 0;  // R; hulls are thickened by t = R / dimension
    int cycle_length = 8;  // L
    std::size_t cycle_bound = 64;
    int mu = 4;
    std::size_t bigon_samples = 10000;
    int bigon_distance = 6;
};

struct PeripheralHull {
    std::size_t family = 0;
    std::string representative;
    std::vector<VertexId> vertices;  // ascending
};

struct BowditchCertificate {
    std::vector<std::string> peripherals;
    int thickening = 0;
    int t = 0;
    int region_radius = 0;  // peripheral pieces meeting this ball are used
    std::vector<PeripheralHull> hulls;  // vertices of the intersection graph
    std::vector<std::pair<std::uint32_t, std::uint32_t>> gamma_edges;

    std::size_t xi_observed = 0;
    std::size_t xi_doubled = 0;  // same pieces measured in the ball of twice the radius
    std::optional<std::pair<std::string, std::string>> xi_witness;

    std::vector<std::size_t> fineness;  // fineness[l]: most l-cycles through one edge, l = 3..L
    bool fineness_capped = false;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> fineness_witness;

    int bigon_mu = 0;
    std::size_t bigon_pairs = 0;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> bigon_witness;

    bool coverage = false;
    std::optional<VertexId> uncovered;

    bool pass = false;
    std::string reason;  // empty on PASS
};

// `doubled` is the ball of twice the radius of `g`, used for the overlap growth check.
BowditchCertificate bowditch_certificate(const MedianGraph& g, const MedianGraph& doubled,
                                         std::span<const PeripheralSpec> peripherals,
                                         const BowditchOptions& options = {});
BowditchCertificate bowditch_certificate(const PresentationGraph& pg, int radius,
                                         std::span<const PeripheralSpec> peripherals,
                                         const BowditchOptions& options = {}, const BuildOptions& build = {});

struct ProbeReport {
    int largest = 0;  // n of the largest n x n crossing grid found
    int limit = 0;
    std::vector<HyperplaneId> side_a;
    std::vector<HyperplaneId> side_b;
    std::size_t seeds = 0;
};

// Greedy search for K_{n,n} in the crossing graph, seeded at crossing pairs dual to base edges.
ProbeReport hyperbolicity_probe(const MedianGraph& g, int limit);

void add_join_block(Report& report, const JoinDecomposition& join);
void add_flat_block(Report& report, const FlatChainWitness& witness);
void add_certificate_block(Report& report, const BowditchCertificate& cert);
void add_probe_block(Report& report, const ProbeReport& probe);

void write_chain_dot(std::ostream& out, const FlatChainWitness& witness);
void write_gamma_dot(std::ostream& out, const BowditchCertificate& cert);

}  // namespace medianforge
