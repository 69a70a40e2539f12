#include "medianforge/structure_checks.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>

#include "medianforge/errors.hpp"
#include "medianforge/traversal.hpp"
#include "disjoint_sets.hpp"

namespace medianforge {

namespace {

using detail::DisjointSets;

std::string join_names(const std::vector<std::string>& names, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += sep;
        out += names[i];
    }
    return out;
}

std::uint16_t generator_index(const MedianGraph& g, const std::string& name) {
    const auto index = g.alphabet().find(name);
    if (!index) throw Error(ErrorCode::BAD_INPUT, "generator '" + name + "' is not in the complex");
    return *index;
}

std::string word_of(const MedianGraph& g, VertexId v) {
    return g.has_words() ? std::string(g.word(v)) : "#" + std::to_string(v.value);
}

// A coset of a standard subgroup restricted to the ball; connected since cosets are gated.
struct Coset {
    VertexId gate;
    std::vector<VertexId> vertices;  // ascending
    std::vector<HyperplaneId> hyperplanes;
};

bool in_mask(std::uint64_t mask, Letter l) { return mask >> l.generator & 1u; }

// Cosets of the subgroup on `mask` generators that meet the ball of radius `reach`,
// ordered by gate depth then gate word.
std::vector<Coset> cosets_meeting(const MedianGraph& g, std::uint64_t mask, int reach) {
    std::vector<Coset> out;
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    for (std::uint32_t s = 0; s < g.vertex_count(); ++s) {
        if (seen[s] || g.depth(VertexId(s)) > reach) continue;
        Coset c;
        c.gate = VertexId(s);
        c.vertices.push_back(VertexId(s));
        seen[s] = 1;
        for (std::size_t head = 0; head < c.vertices.size(); ++head) {
            const VertexId v = c.vertices[head];
            if (g.depth(v) < g.depth(c.gate) || (g.depth(v) == g.depth(c.gate) && v < c.gate)) c.gate = v;
            for (const Neighbor& n : g.neighbors(v)) {
                if (!in_mask(mask, g.edge(n.edge).letter)) continue;
                c.hyperplanes.push_back(g.hyperplane_of(n.edge));
                if (seen[n.vertex.value]) continue;
                seen[n.vertex.value] = 1;
                c.vertices.push_back(n.vertex);
            }
        }
        std::sort(c.vertices.begin(), c.vertices.end());
        std::sort(c.hyperplanes.begin(), c.hyperplanes.end());
        c.hyperplanes.erase(std::unique(c.hyperplanes.begin(), c.hyperplanes.end()), c.hyperplanes.end());
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [&](const Coset& a, const Coset& b) {
        const int da = g.depth(a.gate), db = g.depth(b.gate);
        if (da != db) return da < db;
        return word_of(g, a.gate) < word_of(g, b.gate);
    });
    return out;
}

// Pairwise overlap counts of hyperplane sets through an inverted index.
std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> overlaps(
    std::size_t hyperplane_count, const std::vector<const std::vector<HyperplaneId>*>& sets) {
    std::vector<std::vector<std::uint32_t>> holders(hyperplane_count);
    for (std::uint32_t i = 0; i < sets.size(); ++i)
        for (HyperplaneId h : *sets[i]) holders[h.value].push_back(i);
    std::unordered_map<std::uint64_t, std::size_t> counts;
    for (const auto& list : holders)
        for (std::size_t x = 0; x < list.size(); ++x)
            for (std::size_t y = x + 1; y < list.size(); ++y) ++counts[std::uint64_t{list[x]} << 32 | list[y]];
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> out;
    for (auto [key, n] : counts) out[{static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key)}] = n;
    return out;
}

// A peripheral piece: a coset of a generator family or an explicit set.
struct Piece {
    std::size_t family = 0;
    std::string name;
    std::vector<VertexId> vertices;
    std::vector<HyperplaneId> hyperplanes;
};

std::vector<Piece> peripheral_pieces(const MedianGraph& g, std::span<const PeripheralSpec> peripherals, int reach) {
    std::vector<Piece> out;
    for (std::size_t f = 0; f < peripherals.size(); ++f) {
        const auto& spec = peripherals[f];
        if (!spec.generators.empty()) {
            std::uint64_t mask = 0;
            for (const auto& name : spec.generators) mask |= std::uint64_t{1} << generator_index(g, name);
            for (auto& c : cosets_meeting(g, mask, reach)) {
                out.push_back({f, word_of(g, c.gate) + spec.label(), std::move(c.vertices), std::move(c.hyperplanes)});
            }
            continue;
        }
        Piece p{f, spec.label(), {}, {}};
        bool meets = false;
        for (const auto& w : spec.words) {
            const auto v = g.find_word(w);
            if (!v) throw Error(ErrorCode::BAD_INPUT, "word '" + w + "' is not a vertex of the complex");
            p.vertices.push_back(*v);
            meets = meets || g.depth(*v) <= reach;
        }
        if (!meets) continue;
        std::sort(p.vertices.begin(), p.vertices.end());
        p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());
        for (VertexId v : p.vertices)
            for (HyperplaneId h : g.separating_hyperplanes(p.vertices.front(), v)) p.hyperplanes.push_back(h);
        std::sort(p.hyperplanes.begin(), p.hyperplanes.end());
        p.hyperplanes.erase(std::unique(p.hyperplanes.begin(), p.hyperplanes.end()), p.hyperplanes.end());
        out.push_back(std::move(p));
    }
    return out;
}

struct Overlap {
    std::size_t value = 0;
    std::optional<std::pair<std::string, std::string>> witness;
};

Overlap max_overlap(const MedianGraph& g, const std::vector<Piece>& pieces) {
    std::vector<const std::vector<HyperplaneId>*> sets;
    for (const auto& p : pieces) sets.push_back(&p.hyperplanes);
    Overlap best;
    for (const auto& [pair, n] : overlaps(g.hyperplane_count(), sets)) {
        if (n > best.value) {
            best.value = n;
            best.witness = std::pair{pieces[pair.first].name, pieces[pair.second].name};
        }
    }
    return best;
}

using Adjacency = std::vector<std::vector<std::uint32_t>>;

std::vector<std::vector<int>> all_pairs(const Adjacency& adj) {
    std::vector<std::vector<int>> d(adj.size(), std::vector<int>(adj.size(), -1));
    for (std::uint32_t s = 0; s < adj.size(); ++s) {
        std::vector<std::uint32_t> queue{s};
        d[s][s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto v = queue[head];
            for (auto w : adj[v]) {
                if (d[s][w] >= 0) continue;
                d[s][w] = d[s][v] + 1;
                queue.push_back(w);
            }
        }
    }
    return d;
}

constexpr std::size_t kCycleSteps = 5'000'000;
constexpr std::size_t kGeodesicsPerPair = 16;

void count_cycles(BowditchCertificate& cert, const Adjacency& adj, const BowditchOptions& options) {
    const int L = options.cycle_length;
    cert.fineness.assign(static_cast<std::size_t>(std::max(L, 2)) + 1, 0);
    std::size_t steps = 0;
    std::vector<std::uint8_t> on_path(adj.size(), 0);
    for (const auto& [u, v] : cert.gamma_edges) {
        std::vector<std::size_t> counts(cert.fineness.size(), 0);
        // Simple paths v -> u of length >= 2 close a cycle through the edge.
        auto walk = [&](auto&& self, std::uint32_t x, int len) -> void {
            for (auto w : adj[x]) {
                if (++steps > kCycleSteps) return;
                if (w == u) {
                    if (len + 1 >= 2) ++counts[static_cast<std::size_t>(len + 2)];
                    continue;
                }
                if (on_path[w] || len + 2 >= L) continue;
                on_path[w] = 1;
                self(self, w, len + 1);
                on_path[w] = 0;
            }
        };
        on_path[u] = on_path[v] = 1;
        walk(walk, v, 0);
        on_path[u] = on_path[v] = 0;
        if (steps > kCycleSteps) {
            cert.fineness_capped = true;
            cert.fineness_witness = std::pair{u, v};
            return;
        }
        for (std::size_t l = 3; l < counts.size(); ++l) {
            if (counts[l] > cert.fineness[l]) {
                cert.fineness[l] = counts[l];
                if (counts[l] > options.cycle_bound && !cert.fineness_witness) cert.fineness_witness = std::pair{u, v};
            }
        }
    }
}

void measure_bigons(BowditchCertificate& cert, const Adjacency& adj, const BowditchOptions& options) {
    const auto d = all_pairs(adj);
    const auto n = static_cast<std::uint32_t>(adj.size());
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = x + 1; y < n; ++y) {
            const int len = d[x][y];
            if (len < 1 || len > options.bigon_distance) continue;
            std::vector<std::vector<std::uint32_t>> paths;
            std::vector<std::uint32_t> path{x};
            auto extend = [&](auto&& self) -> void {
                if (paths.size() >= kGeodesicsPerPair) return;
                const auto at = path.back();
                if (at == y) {
                    paths.push_back(path);
                    return;
                }
                const int k = static_cast<int>(path.size());
                for (auto w : adj[at]) {
                    if (d[x][w] != k || d[w][y] != len - k) continue;
                    path.push_back(w);
                    self(self);
                    path.pop_back();
                }
            };
            extend(extend);
            if (paths.size() == 1) ++cert.bigon_pairs;
            for (std::size_t i = 0; i < paths.size(); ++i) {
                for (std::size_t j = i + 1; j < paths.size(); ++j) {
                    int width = 0;
                    for (std::size_t k = 0; k < paths[i].size(); ++k) width = std::max(width, d[paths[i][k]][paths[j][k]]);
                    ++cert.bigon_pairs;
                    if (width > cert.bigon_mu) {
                        cert.bigon_mu = width;
                        cert.bigon_witness = std::pair{x, y};
                    }
                    if (cert.bigon_pairs >= options.bigon_samples) return;
                }
            }
            if (cert.bigon_pairs >= options.bigon_samples) return;
        }
    }
}

std::string ids(const std::vector<HyperplaneId>& hs) {
    std::string out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(hs[i].value);
    }
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

JoinDecomposition join_check(const PresentationGraph& pg) {
    if (pg.size() == 0) throw Error(ErrorCode::BAD_INPUT, "presentation graph has no generators");
    DisjointSets sets(pg.size());
    for (std::uint16_t a = 0; a < pg.size(); ++a)
        for (std::uint16_t b = a + 1; b < pg.size(); ++b)
            if (!pg.commute(a, b)) sets.unite(a, b);
    JoinDecomposition out;
    for (const auto& cls : sets.classes()) {
        std::vector<std::string> names;
        for (auto i : cls) names.push_back(pg.generators()[i]);
        out.factors.push_back(std::move(names));
    }
    out.is_nontrivial_join = out.factors.size() >= 2;
    return out;
}

std::string to_string(const JoinDecomposition& join) {
    std::string out = join.is_nontrivial_join ? "nontrivial join: " : "no join: ";
    for (std::size_t i = 0; i < join.factors.size(); ++i) {
        if (i) out += " * ";
        out += "{" + join_names(join.factors[i]) + "}";
    }
    return out;
}

FlatChainWitness flat_chain_witness(const MedianGraph& g, const PresentationGraph& pg, int overlap_threshold) {
    if (overlap_threshold < 1) throw Error(ErrorCode::PARAM_RANGE, "overlap threshold must be positive");
    const auto pairs = pg.commuting_pairs();
    if (pairs.empty()) throw Error(ErrorCode::NO_FLATS, "no two generators commute");
    FlatChainWitness out;
    out.threshold = overlap_threshold;
    for (auto [i, j] : pairs) {
        const auto& a = pg.generators()[i];
        const auto& b = pg.generators()[j];
        const std::uint64_t mask = std::uint64_t{1} << generator_index(g, a) | std::uint64_t{1} << generator_index(g, b);
        for (auto& c : cosets_meeting(g, mask, g.core_radius())) {
            out.flats.push_back({{a, b}, word_of(g, c.gate), c.vertices.size(), std::move(c.hyperplanes)});
        }
    }
    std::vector<const std::vector<HyperplaneId>*> sets;
    for (const auto& f : out.flats) sets.push_back(&f.hyperplanes);
    DisjointSets chain(out.flats.size());
    for (const auto& [pair, n] : overlaps(g.hyperplane_count(), sets)) {
        if (n < static_cast<std::size_t>(overlap_threshold)) continue;
        out.edges.push_back({pair.first, pair.second, n});
        chain.unite(pair.first, pair.second);
    }
    out.components = chain.classes().size();
    out.connected = out.components == 1;

    std::vector<std::uint8_t> on_flat(g.vertex_count(), 0);
    for (auto [i, j] : pairs) {
        const std::uint64_t mask = std::uint64_t{1} << generator_index(g, pg.generators()[i]) |
                                   std::uint64_t{1} << generator_index(g, pg.generators()[j]);
        for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
            const auto& info = g.edge(EdgeId(e));
            if (!in_mask(mask, info.letter)) continue;
            on_flat[info.u.value] = on_flat[info.v.value] = 1;
        }
    }
    std::vector<VertexId> sources;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (on_flat[v]) sources.push_back(VertexId(v));
    const auto dist = bfs_distances(g, sources, [](VertexId) { return true; });
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (g.in_core(VertexId(v))) out.coverage_tau = std::max(out.coverage_tau, dist[v]);
    }
    return out;
}

PeripheralSpec PeripheralSpec::parse(std::string_view text) {
    PeripheralSpec out;
    const bool explicit_set = !text.empty() && text.front() == '{';
    if (explicit_set) {
        if (text.back() != '}') throw Error(ErrorCode::BAD_INPUT, "unterminated peripheral set '" + std::string(text) + "'");
        text = text.substr(1, text.size() - 2);
    }
    auto& items = explicit_set ? out.words : out.generators;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto next = std::min(text.find(',', pos), text.size());
        std::string item(text.substr(pos, next - pos));
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (!item.empty()) items.push_back(item);
        pos = next + 1;
    }
    if (items.empty()) throw Error(ErrorCode::BAD_INPUT, "empty peripheral '" + std::string(text) + "'");
    return out;
}

std::string PeripheralSpec::label() const {
    return generators.empty() ? "{" + join_names(words) + "}" : "<" + join_names(generators) + ">";
}

BowditchCertificate bowditch_certificate(const MedianGraph& g, const MedianGraph& doubled,
                                         std::span<const PeripheralSpec> peripherals, const BowditchOptions& options) {
    if (peripherals.empty()) throw Error(ErrorCode::EMPTY_PERIPHERALS, "no peripheral subgroups given");
    if (doubled.radius() != 2 * g.radius()) {
        throw Error(ErrorCode::PARAM_RANGE, "comparison ball has radius " + std::to_string(doubled.radius()) +
                                                ", expected " + std::to_string(2 * g.radius()));
    }
    if (doubled.alphabet().names() != g.alphabet().names()) {
        throw Error(ErrorCode::BAD_INPUT, "comparison ball has a different alphabet");
    }
    if (options.thickening < 0 || options.cycle_length < 3 || options.mu < 0 || options.bigon_distance < 1) {
        throw Error(ErrorCode::PARAM_RANGE, "certificate options out of range");
    }
    BowditchCertificate cert;
    for (const auto& p : peripherals) cert.peripherals.push_back(p.label());
    const int dim = std::max(1, g.dimension());
    cert.thickening = options.thickening;
    cert.t = options.thickening / dim;
    cert.region_radius = (g.core_radius() - cert.t) / dim;
    if (g.core_radius() < cert.t) {
        throw Error(ErrorCode::PARAM_RANGE, "thickening " + std::to_string(options.thickening) +
                                                " leaves no room inside core radius " + std::to_string(g.core_radius()));
    }

    const auto pieces = peripheral_pieces(g, peripherals, cert.region_radius);
    if (pieces.empty()) throw Error(ErrorCode::EMPTY_PERIPHERALS, "no peripheral piece meets the core");
    const auto here = max_overlap(g, pieces);
    const auto there = max_overlap(doubled, peripheral_pieces(doubled, peripherals, cert.region_radius));
    cert.xi_observed = here.value;
    cert.xi_doubled = there.value;
    cert.xi_witness = there.value > here.value ? there.witness : here.witness;

    std::vector<std::vector<std::uint32_t>> holders(g.vertex_count());
    for (const auto& p : pieces) {
        std::vector<VertexId> seeds;
        for (VertexId v : p.vertices)
            if (g.depth(v) <= cert.region_radius) seeds.push_back(v);
        const auto dist = bfs_distances(g, seeds, [](VertexId) { return true; }, cert.t);
        std::vector<VertexId> thick;
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
            if (dist[v] != kUnreached && dist[v] <= cert.t) thick.push_back(VertexId(v));
        const auto index = static_cast<std::uint32_t>(cert.hulls.size());
        cert.hulls.push_back({p.family, p.name, convex_hull(g, thick)});
        for (VertexId v : cert.hulls.back().vertices) holders[v.value].push_back(index);
    }

    cert.coverage = true;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        const auto& list = holders[v];
        if (list.empty() && g.depth(VertexId(v)) <= cert.region_radius && cert.coverage) {
            cert.coverage = false;
            cert.uncovered = VertexId(v);
        }
        for (std::size_t x = 0; x < list.size(); ++x)
            for (std::size_t y = x + 1; y < list.size(); ++y) edges.emplace_back(list[x], list[y]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    cert.gamma_edges = std::move(edges);

    Adjacency adj(cert.hulls.size());
    for (auto [a, b] : cert.gamma_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    count_cycles(cert, adj, options);
    measure_bigons(cert, adj, options);

    const auto most_cycles = *std::max_element(cert.fineness.begin(), cert.fineness.end());
    if (cert.xi_doubled != cert.xi_observed) cert.reason = "OVERLAP_GROWTH";
    else if (cert.fineness_capped || most_cycles > options.cycle_bound) cert.reason = "CYCLE_BLOWUP";
    else if (cert.bigon_mu > options.mu) cert.reason = "FAT_BIGON";
    else if (!cert.coverage) cert.reason = "NO_COVERAGE";
    cert.pass = cert.reason.empty();
    return cert;
}

BowditchCertificate bowditch_certificate(const PresentationGraph& pg, int radius,
                                         std::span<const PeripheralSpec> peripherals, const BowditchOptions& options,
                                         const BuildOptions& build) {
    if (peripherals.empty()) throw Error(ErrorCode::EMPTY_PERIPHERALS, "no peripheral subgroups given");
    const auto g = raag_ball(pg, radius, {}, build);
    const auto doubled = raag_ball(pg, 2 * radius, {}, build);
    return bowditch_certificate(g, doubled, peripherals, options);
}

ProbeReport hyperbolicity_probe(const MedianGraph& g, int limit) {
    if (limit < 1) throw Error(ErrorCode::PARAM_RANGE, "grid limit must be positive");
    ProbeReport best;
    best.limit = limit;
    std::vector<HyperplaneId> at_base;
    for (const Neighbor& n : g.neighbors(g.base())) at_base.push_back(g.hyperplane_of(n.edge));
    std::sort(at_base.begin(), at_base.end());

    auto admissible = [&](HyperplaneId x, const std::vector<HyperplaneId>& same, const std::vector<HyperplaneId>& other) {
        for (HyperplaneId y : same)
            if (y == x || g.crosses(x, y)) return false;
        for (HyperplaneId y : other)
            if (y == x || !g.crosses(x, y)) return false;
        return true;
    };
    auto candidates = [&](const std::vector<HyperplaneId>& same, const std::vector<HyperplaneId>& other) {
        std::vector<HyperplaneId> out;
        for (HyperplaneId x : g.crossing_neighbors(other.front()))
            if (admissible(x, same, other)) out.push_back(x);
        return out;
    };

    for (std::size_t i = 0; i < at_base.size(); ++i) {
        for (std::size_t j = i + 1; j < at_base.size(); ++j) {
            if (!g.crosses(at_base[i], at_base[j])) continue;
            ++best.seeds;
            std::vector<HyperplaneId> a{at_base[i]}, b{at_base[j]};
            while (static_cast<int>(std::min(a.size(), b.size())) < limit) {
                const bool grow_a = a.size() <= b.size();
                auto& side = grow_a ? a : b;
                auto& rest = grow_a ? b : a;
                const auto mine = candidates(side, rest);
                if (mine.empty()) break;
                const auto theirs = candidates(rest, side);
                HyperplaneId pick = mine.front();
                std::size_t score = 0;
                bool first = true;
                for (HyperplaneId x : mine) {
                    std::size_t s = 0;
                    for (HyperplaneId y : theirs) s += g.crosses(x, y) ? 1 : 0;
                    if (first || s > score) {
                        pick = x;
                        score = s;
                        first = false;
                    }
                }
                side.push_back(pick);
            }
            const int n = static_cast<int>(std::min(a.size(), b.size()));
            if (n > best.largest) {
                best.largest = n;
                a.resize(static_cast<std::size_t>(n));
                b.resize(static_cast<std::size_t>(n));
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                best.side_a = a;
                best.side_b = b;
            }
        }
    }
    return best;
}

void add_join_block(Report& report, const JoinDecomposition& join) {
    report.section("join");
    report.add("nontrivial", join.is_nontrivial_join);
    report.add("factors", join.factors.size());
    for (std::size_t i = 0; i < join.factors.size(); ++i) report.add("factor_" + std::to_string(i), join_names(join.factors[i]));
}

void add_flat_block(Report& report, const FlatChainWitness& witness) {
    report.section("flats");
    report.add("flats", witness.flats.size());
    report.add("threshold", witness.threshold);
    report.add("chain_edges", witness.edges.size());
    report.add("components", witness.components);
    report.add("connected", witness.connected);
    report.add("coverage_tau", witness.coverage_tau);
}

void add_certificate_block(Report& report, const BowditchCertificate& cert) {
    report.section("certificate");
    report.add("peripherals", join_names(cert.peripherals, ';'));
    report.add("thickening", cert.thickening);
    report.add("t", cert.t);
    report.add("region_radius", cert.region_radius);
    report.add("hulls", cert.hulls.size());
    report.add("gamma_edges", cert.gamma_edges.size());
    report.add("xi_observed", cert.xi_observed);
    report.add("xi_doubled", cert.xi_doubled);
    if (cert.xi_witness) report.add("xi_witness", cert.xi_witness->first + " " + cert.xi_witness->second);
    for (std::size_t l = 3; l < cert.fineness.size(); ++l) report.add("cycles_" + std::to_string(l), cert.fineness[l]);
    report.add("cycles_capped", cert.fineness_capped);
    if (cert.fineness_witness) {
        report.add("cycle_witness", std::to_string(cert.fineness_witness->first) + " " +
                                        std::to_string(cert.fineness_witness->second));
    }
    report.add("bigon_pairs", cert.bigon_pairs);
    report.add("bigon_mu", cert.bigon_mu);
    if (cert.bigon_witness) {
        report.add("bigon_witness", std::to_string(cert.bigon_witness->first) + " " +
                                        std::to_string(cert.bigon_witness->second));
    }
    report.add("coverage", cert.coverage);
    if (cert.uncovered) report.add("uncovered", cert.uncovered->value);
    report.add("verdict", cert.pass ? "PASS" : "FAIL");
    if (!cert.pass) report.add("reason", cert.reason);
}

void add_probe_block(Report& report, const ProbeReport& probe) {
    report.section("probe");
    report.add("largest_grid", probe.largest);
    report.add("limit", probe.limit);
    report.add("seeds", probe.seeds);
    report.add("side_a", ids(probe.side_a));
    report.add("side_b", ids(probe.side_b));
}

void write_chain_dot(std::ostream& out, const FlatChainWitness& witness) {
    out << "graph flats {\n";
    for (std::size_t i = 0; i < witness.flats.size(); ++i) {
        const auto& f = witness.flats[i];
        out << "  f" << i << " [label=\"" << dot_escape(f.representative + "<" + f.generators.first + "," +
                                                         f.generators.second + ">")
            << "\"];\n";
    }
    for (const auto& e : witness.edges) out << "  f" << e.a << " -- f" << e.b << " [label=\"" << e.overlap << "\"];\n";
    out << "}\n";
}

void write_gamma_dot(std::ostream& out, const BowditchCertificate& cert) {
    out << "graph gamma {\n";
    for (std::size_t i = 0; i < cert.hulls.size(); ++i) {
        out << "  h" << i << " [label=\"" << dot_escape(cert.hulls[i].representative) << "\"];\n";
    }
    for (auto [a, b] : cert.gamma_edges) out << "  h" << a << " -- h" << b << ";\n";
    out << "}\n";
}

}  // namespace medianforge
