#include "medianforge/boundary.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "medianforge/builders.hpp"
#include "medianforge/errors.hpp"
#include "disjoint_sets.hpp"

namespace medianforge {

namespace {

// Same-ray analogue of crossing_decidable: both members lie in S(ray(j)).
bool decidable_on_ray(const MedianGraph& g, int i, int j) { return std::max(i, j) + 2 <= g.radius(); }

void require_ray_in_core(const MedianGraph& g, const GeodesicRay& ray) {
    for (VertexId v : ray.vertices) {
        if (!g.in_core(v)) {
            throw Error(ErrorCode::OUT_OF_CORE, "ray leaves the core at vertex " + std::to_string(v.value), {v.value});
        }
    }
}

using detail::DisjointSets;

double slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return 0;
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    return sxx == 0 ? 0 : sxy / sxx;
}

}  // namespace

bool crossing_decidable(const MedianGraph& g, int i, int j) { return i + j + 2 <= g.radius(); }

BoundarySetTruncation ray_boundary_set(const MedianGraph& g, const GeodesicRay& ray, int burn_in) {
    if (burn_in < 0 || ray.length() < 2 * burn_in) {
        throw Error(ErrorCode::PARAM_RANGE, "ray of length " + std::to_string(ray.length()) +
                                                " is shorter than twice the burn-in " + std::to_string(burn_in));
    }
    require_ray_in_core(g, ray);
    BoundarySetTruncation bst;
    bst.hyperplanes = ray.crossings;
    bst.source = ray;
    bst.burn_in = burn_in;
    const auto& hs = bst.hyperplanes;
    const int n = static_cast<int>(hs.size());

    // side_at[i][j]: side of member i holding ray vertex j.
    std::vector<std::vector<Side>> side_at(n, std::vector<Side>(static_cast<std::size_t>(n) + 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j) side_at[i][j] = g.side(hs[i], ray.at(j));
    auto cross = [&](int i, int j) { return g.crosses(hs[i], hs[j]); };

    // Separation closure: everything separating the base from ray(j) was crossed before step j.
    for (int j = 0; j <= n; ++j) {
        auto sep = g.separating_set(ray.at(j));
        std::vector<HyperplaneId> prefix(hs.begin(), hs.begin() + j);
        std::sort(prefix.begin(), prefix.end());
        if (!std::equal(sep.begin(), sep.end(), prefix.begin(), prefix.end())) {
            throw Error(ErrorCode::INVARIANT_FAIL,
                        "separation closure fails at ray vertex " + std::to_string(j), {ray.at(j).value});
        }
    }
    // Unidirectional: later non-crossing members all lie on one side of each member.
    for (int i = 0; i < n; ++i) {
        std::optional<Side> tail_side;
        for (int j = i + 1; j < n; ++j) {
            if (cross(i, j)) continue;
            const Side s = side_at[i][j];
            if (tail_side && *tail_side != s) {
                throw Error(ErrorCode::INVARIANT_FAIL,
                            "unidirectionality fails: members after hyperplane " + std::to_string(hs[i].value) +
                                " lie on both of its sides",
                            {hs[i].value, hs[j].value});
            }
            tail_side = s;
        }
    }
    // No facing triple beyond burn-in.
    for (int i = burn_in; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (cross(i, j)) continue;
            for (int k = j + 1; k < n; ++k) {
                if (cross(i, k) || cross(j, k)) continue;
                const bool facing = side_at[i][j] == side_at[i][k] && side_at[j][i] == side_at[j][k] &&
                                    side_at[k][i] == side_at[k][j];
                if (facing) {
                    throw Error(ErrorCode::INVARIANT_FAIL, "facing triple among crossed hyperplanes",
                                {hs[i].value, hs[j].value, hs[k].value});
                }
            }
        }
    return bst;
}

bool contained(const BoundarySetTruncation& a, const BoundarySetTruncation& b) {
    std::vector<HyperplaneId> other(b.hyperplanes);
    std::sort(other.begin(), other.end());
    const int n = static_cast<int>(a.hyperplanes.size());
    for (int i = a.burn_in; i < n - a.burn_in; ++i) {
        if (!std::binary_search(other.begin(), other.end(), a.hyperplanes[i])) return false;
    }
    return true;
}

bool equivalent(const BoundarySetTruncation& a, const BoundarySetTruncation& b) {
    return contained(a, b) && contained(b, a);
}

DecompositionReport minimal_decomposition(const MedianGraph& g, const BoundarySetTruncation& bst, int k0) {
    if (k0 < 0) throw Error(ErrorCode::PARAM_RANGE, "exception budget must be nonnegative");
    const auto tail = bst.tail();
    const std::size_t n = tail.size();
    const int offset = bst.burn_in;
    std::vector<std::vector<std::uint8_t>> apart(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool known = decidable_on_ray(g, offset + static_cast<int>(i), offset + static_cast<int>(j));
            apart[i][j] = apart[j][i] = known && !g.crosses(tail[i], tail[j]);
        }

    DisjointSets blocks(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (apart[i][j]) blocks.unite(i, j);
    const auto classes = blocks.classes();

    // A block held together only by weak links would split under the budget.
    for (const auto& block : classes) {
        DisjointSets strong(block.size());
        for (std::size_t x = 0; x < block.size(); ++x)
            for (std::size_t y = x + 1; y < block.size(); ++y) {
                const auto i = block[x], j = block[y];
                if (!apart[i][j]) continue;
                int common = 0;
                for (std::size_t k = 0; k < n; ++k) common += apart[i][k] && apart[j][k];
                if (common > k0) strong.unite(x, y);
            }
        const auto pieces = strong.classes();
        if (pieces.size() < 2) continue;
        const bool substantial = std::all_of(pieces.begin(), pieces.end(), [&](const auto& p) {
            return static_cast<int>(p.size()) > k0 + 1;
        });
        if (!substantial) continue;
        std::size_t links = 0;
        bool within_budget = true;
        for (std::size_t p = 0; p < pieces.size(); ++p)
            for (std::size_t q = 0; q < pieces.size(); ++q) {
                if (p == q) continue;
                for (auto y : pieces[q]) {
                    int misses = 0;
                    for (auto x : pieces[p]) misses += apart[block[x]][block[y]];
                    if (p < q) links += static_cast<std::size_t>(misses);
                    if (misses > k0) within_budget = false;
                }
            }
        if (within_budget) {
            throw Error(ErrorCode::CROSS_CONDITION_FAIL,
                        "a block splits into " + std::to_string(pieces.size()) + " parts joined by " +
                            std::to_string(links) + " non-crossing pairs within the budget k0 = " +
                            std::to_string(k0),
                        {tail[block[pieces[0][0]]].value, tail[block[pieces[1][0]]].value});
        }
    }

    DecompositionReport report;
    std::vector<std::size_t> block_of(n);
    for (std::size_t b = 0; b < classes.size(); ++b) {
        report.blocks.emplace_back();
        for (auto i : classes[b]) {
            report.blocks.back().push_back(tail[i]);
            block_of[i] = b;
        }
    }
    // Each member of block j fails to cross at most k0 members of block i.
    report.verified_cross_condition = true;
    for (std::size_t y = 0; y < n; ++y) {
        std::vector<int> misses(classes.size(), 0);
        for (std::size_t x = 0; x < n; ++x) {
            if (block_of[x] != block_of[y] && apart[x][y]) ++misses[block_of[x]];
        }
        for (std::size_t b = 0; b < classes.size(); ++b) {
            if (b == block_of[y]) continue;
            report.exceptions += static_cast<std::size_t>(misses[b]);
            if (misses[b] > k0) report.verified_cross_condition = false;
        }
    }
    report.exceptions /= 2;
    return report;
}

int simplex_dimension(const MedianGraph& g, const BoundarySetTruncation& bst, int k0) {
    return static_cast<int>(minimal_decomposition(g, bst, k0).blocks.size()) - 1;
}

RankOneVerdict rank_one_check(const MedianGraph& g, const GeodesicRay& axis, int p_max) {
    if (p_max < 0) throw Error(ErrorCode::PARAM_RANGE, "p_max must be nonnegative");
    require_ray_in_core(g, axis);
    const int n = axis.length();
    if (n < std::max(4, 4 * p_max)) {
        throw Error(ErrorCode::AXIS_TOO_SHORT, "axis of length " + std::to_string(n) + " is shorter than " +
                                                   std::to_string(std::max(4, 4 * p_max)));
    }
    const auto& hs = axis.crossings;
    RankOneVerdict verdict;

    // prefix_gap[l]: largest crossing gap among the first l axis hyperplanes.
    std::vector<int> prefix_gap(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j < n; ++j) {
        prefix_gap[j + 1] = prefix_gap[j];
        if (!decidable_on_ray(g, 0, j)) continue;
        for (int i = 0; i < j; ++i) {
            if (j - i > prefix_gap[j + 1] && g.crosses(hs[i], hs[j])) {
                prefix_gap[j + 1] = j - i;
                verdict.witness = std::pair{i, j};
            }
        }
    }
    verdict.p = prefix_gap[n];
    std::vector<std::pair<double, double>> curve;
    for (int l = 2; l <= n; ++l) curve.emplace_back(l, prefix_gap[l]);
    verdict.trend_slope = slope(curve);

    // A flat strip along the axis shows up as many off-axis hyperplanes crossing a run of axis hyperplanes.
    std::vector<HyperplaneId> on_axis(hs);
    std::sort(on_axis.begin(), on_axis.end());
    const int run = p_max + 1;
    for (int k = 0; k + run <= n; ++k) {
        int width = 0;
        for (HyperplaneId h : g.crossing_neighbors(hs[k])) {
            if (std::binary_search(on_axis.begin(), on_axis.end(), h)) continue;
            bool all = true;
            for (int t = 1; t < run && all; ++t) all = g.crosses(h, hs[k + t]);
            width += all;
        }
        verdict.strip_width = std::max(verdict.strip_width, width);
    }

    if (verdict.strip_width >= run) {
        verdict.kind = RankOneKind::NOT_RANK_ONE;
    } else if (verdict.p <= p_max) {
        verdict.kind = RankOneKind::RANK_ONE;
    } else {
        verdict.kind = verdict.trend_slope >= 0.5 ? RankOneKind::NOT_RANK_ONE : RankOneKind::INDETERMINATE;
    }
    return verdict;
}

std::string_view to_string(RankOneKind kind) {
    switch (kind) {
        case RankOneKind::RANK_ONE: return "RANK_ONE";
        case RankOneKind::NOT_RANK_ONE: return "NOT_RANK_ONE";
        case RankOneKind::INDETERMINATE: return "INDETERMINATE";
    }
    return "INDETERMINATE";
}

std::size_t ComponentGrouping::group_of(std::size_t ray) const {
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (std::binary_search(groups[k].begin(), groups[k].end(), ray)) return k;
    }
    throw Error(ErrorCode::BAD_INPUT, "ray index " + std::to_string(ray) + " is not grouped");
}

ComponentGrouping component_grouping(const MedianGraph& g, std::span<const GeodesicRay> rays, int r_max,
                                     std::vector<std::string> labels, const GroupingOptions& options) {
    if (r_max < 1) throw Error(ErrorCode::PARAM_RANGE, "r_max must be positive");
    if (!labels.empty() && labels.size() != rays.size()) throw Error(ErrorCode::BAD_INPUT, "one label per ray");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].base() != g.base()) throw Error(ErrorCode::BASE_MISMATCH, "rays must start at the base vertex");
        if (rays[i].length() < r_max) {
            throw Error(ErrorCode::PARAM_RANGE, "ray " + std::to_string(i) + " has length " +
                                                    std::to_string(rays[i].length()) + " < r_max");
        }
    }
    if (g.radius() < options.radius_factor * r_max) {
        throw Error(ErrorCode::RADIUS_INSUFFICIENT, "radius " + std::to_string(g.radius()) + " is below " +
                                                        std::to_string(options.radius_factor) + " * r_max");
    }
    ComponentGrouping out;
    out.labels = std::move(labels);
    for (std::size_t i = out.labels.size(); i < rays.size(); ++i) out.labels.push_back("ray" + std::to_string(i));
    out.r_max = r_max;
    out.r_min = options.r_min > 0 ? options.r_min : std::max(1, std::min(r_max, std::max(4, r_max / 8)));
    std::vector<int> radii;
    for (int r = out.r_min; r <= r_max; ++r) radii.push_back(r);

    const std::size_t n = rays.size();
    out.classes.assign(n, std::vector<Growth>(n, Growth::LINEAR));
    out.exponents.assign(n, std::vector<std::optional<double>>(n));
    DisjointSets groups(n);
    const RayDivergenceOptions ray_options{options.radius_factor};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto profile = ray_divergence_profile(g, rays[i], rays[j], radii, ray_options);
            Growth growth;
            std::optional<double> exponent;
            if (std::any_of(profile.samples.begin(), profile.samples.end(),
                            [](const auto& s) { return s.value.infinite(); })) {
                growth = Growth::INFINITE;
            } else {
                try {
                    const auto fitted = fit_exponent(profile, out.r_min, r_max);
                    exponent = fitted.fit->exponent;
                    growth = classify_growth(fitted, options.thresholds);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::TOO_FEW_SAMPLES) throw;
                    growth = Growth::INDETERMINATE;
                }
            }
            out.classes[i][j] = out.classes[j][i] = growth;
            out.exponents[i][j] = out.exponents[j][i] = exponent;
            if (growth == Growth::LINEAR) groups.unite(i, j);
            if (growth == Growth::INDETERMINATE) out.indeterminate.emplace_back(i, j);
        }
    out.groups = groups.classes();
    return out;
}

OctahedronMatch octahedron_match(const MedianGraph& g, int d, std::span<const GeodesicRay> family,
                                 const OctahedronOptions& options) {
    if (d < 1 || family.size() != 2 * static_cast<std::size_t>(d)) {
        throw Error(ErrorCode::FAMILY_MISMATCH, "expected " + std::to_string(2 * std::max(d, 0)) +
                                                    " coordinate rays, got " + std::to_string(family.size()));
    }
    int shortest = family.front().length();
    for (const auto& ray : family) shortest = std::min(shortest, ray.length());
    const int burn_in = options.burn_in >= 0 ? options.burn_in : shortest / 4;
    const int k0 = options.k0 >= 0 ? options.k0 : g.dimension();

    std::vector<BoundarySetTruncation> sets;
    for (const auto& ray : family) sets.push_back(ray_boundary_set(g, ray, burn_in));

    OctahedronMatch match;
    const std::size_t n = sets.size();
    DisjointSets same(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (equivalent(sets[i], sets[j])) same.unite(i, j);
    const auto classes = same.classes();
    match.classes.resize(n);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (auto i : classes[c]) match.classes[i] = c;

    // Two boundary sets eventually cross when every decidable tail member of one
    // misses at most k0 decidable tail members of the other.
    auto eventually_cross = [&](const BoundarySetTruncation& a, const BoundarySetTruncation& b) {
        std::size_t decided = 0;
        for (int j = b.burn_in; j < static_cast<int>(b.hyperplanes.size()); ++j) {
            int misses = 0;
            for (int i = a.burn_in; i < static_cast<int>(a.hyperplanes.size()); ++i) {
                if (!crossing_decidable(g, i, j)) continue;
                ++decided;
                if (!g.crosses(a.hyperplanes[i], b.hyperplanes[j])) ++misses;
            }
            if (misses > k0) return false;
        }
        return decided > 0;
    };
    const std::size_t m = classes.size();
    std::vector<std::vector<std::uint8_t>> adjacent(m, std::vector<std::uint8_t>(m, 0));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q) {
            const auto& a = sets[classes[p].front()];
            const auto& b = sets[classes[q].front()];
            adjacent[p][q] = adjacent[q][p] = eventually_cross(a, b) && eventually_cross(b, a);
        }
    if (m > 20) throw Error(ErrorCode::FAMILY_MISMATCH, "too many ray classes to enumerate simplices");
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<std::uint32_t> simplex;
        for (std::uint32_t v = 0; v < m; ++v)
            if (mask >> v & 1u) simplex.push_back(v);
        bool clique = true;
        for (std::size_t x = 0; x < simplex.size() && clique; ++x)
            for (std::size_t y = x + 1; y < simplex.size() && clique; ++y) clique = adjacent[simplex[x]][simplex[y]];
        if (clique) match.simplices.push_back(std::move(simplex));
    }
    std::sort(match.simplices.begin(), match.simplices.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    match.f_vector = f_vector_of(match.simplices);
    match.expected = hyperoctahedron(d - 1).f_vector;
    match.matches = m == n && match.f_vector == match.expected;
    return match;
}

void write_grouping_dot(std::ostream& out, const ComponentGrouping& grouping) {
    out << "graph grouping {\n";
    for (const auto& label : grouping.labels) out << "  \"" << label << "\";\n";
    const std::size_t n = grouping.labels.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (grouping.classes[i][j] == Growth::LINEAR)
                out << "  \"" << grouping.labels[i] << "\" -- \"" << grouping.labels[j] << "\";\n";
    out << "}\n";
}

void write_grouping_csv(std::ostream& out, const ComponentGrouping& grouping) {
    out << "ray";
    for (const auto& label : grouping.labels) out << ',' << label;
    out << '\n';
    for (std::size_t i = 0; i < grouping.labels.size(); ++i) {
        out << grouping.labels[i];
        for (std::size_t j = 0; j < grouping.labels.size(); ++j) {
            out << ',' << (i == j ? std::string_view("-") : to_string(grouping.classes[i][j]));
        }
        out << '\n';
    }
}

void write_decomposition_dot(std::ostream& out, const DecompositionReport& report) {
    out << "graph decomposition {\n";
    for (std::size_t b = 0; b < report.blocks.size(); ++b) {
        out << "  subgraph cluster_" << b << " {\n    label = \"block " << b << "\";\n";
        for (HyperplaneId h : report.blocks[b]) out << "    h" << h.value << ";\n";
        out << "  }\n";
    }
    out << "}\n";
}

void write_crossing_csv(std::ostream& out, const MedianGraph& g, const BoundarySetTruncation& bst) {
    const auto tail = bst.tail();
    out << "hyperplane";
    for (HyperplaneId h : tail) out << ",h" << h.value;
    out << '\n';
    for (std::size_t i = 0; i < tail.size(); ++i) {
        out << 'h' << tail[i].value;
        for (std::size_t j = 0; j < tail.size(); ++j) {
            out << ',';
            const int pi = bst.burn_in + static_cast<int>(i), pj = bst.burn_in + static_cast<int>(j);
            if (i == j) out << '-';
            else if (!decidable_on_ray(g, pi, pj)) out << '?';
            else out << (g.crosses(tail[i], tail[j]) ? '1' : '0');
        }
        out << '\n';
    }
}

}  // namespace medianforge
