#include <algorithm>
#include <charconv>
#include <filesystem>
#include <istream>
#include <map>

#include "medianforge/boundary.hpp"
#include "medianforge/builders.hpp"
#include "medianforge/errors.hpp"
#include "medianforge/traversal.hpp"

namespace medianforge {

namespace {

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::BAD_INPUT, "amalgam spec: " + key + " expects an integer, got '" + value + "'");
    }
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// A vertex space together with the hull K of the axis segment through its base.
struct EdgeSpace {
    std::vector<VertexId> members;  // K, ascending
    // Spanning tree of K rooted at the base: parent and the letter read from parent to child.
    std::vector<std::pair<VertexId, Letter>> tree;  // indexed like `members`
    std::vector<std::size_t> order;                 // members in BFS order from the base
    int half_length = 0;
};

EdgeSpace axis_hull(const MedianGraph& x, const std::string& word) {
    const auto forward = ray_from_word(x, word, 1 << 20);
    const auto backward = ray_from_word(x, x.alphabet().format(inverse(x.alphabet().parse(word))), 1 << 20);
    const int period = static_cast<int>(x.alphabet().parse(word).size());
    for (int m = std::min(forward.length(), backward.length()) / period; m >= 1; --m) {
        std::vector<VertexId> segment;
        for (int i = 0; i <= m * period; ++i) segment.push_back(forward.at(i));
        for (int i = 1; i <= m * period; ++i) segment.push_back(backward.at(i));
        std::vector<VertexId> hull;
        try {
            hull = convex_hull(x, segment);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::HULL_TRUNCATED) continue;
            throw;
        }
        EdgeSpace k;
        k.members = std::move(hull);
        k.half_length = m;
        k.tree.resize(k.members.size());
        auto index = [&](VertexId v) {
            return static_cast<std::size_t>(std::lower_bound(k.members.begin(), k.members.end(), v) - k.members.begin());
        };
        std::vector<std::uint8_t> seen(k.members.size(), 0);
        const auto root = index(x.base());
        seen[root] = 1;
        k.order.push_back(root);
        for (std::size_t head = 0; head < k.order.size(); ++head) {
            const VertexId v = k.members[k.order[head]];
            for (const Neighbor& n : x.neighbors(v)) {
                if (!std::binary_search(k.members.begin(), k.members.end(), n.vertex)) continue;
                const auto j = index(n.vertex);
                if (seen[j]) continue;
                seen[j] = 1;
                k.tree[j] = {v, x.letter_from(n.edge, v)};
                k.order.push_back(j);
            }
        }
        return k;
    }
    throw Error(ErrorCode::PARAM_RANGE, "the core is too small to hold an axis segment of " + word);
}

// Image of K under the letter-by-letter translation taking the base to h.
std::optional<std::vector<VertexId>> translate(const MedianGraph& x, const EdgeSpace& k, VertexId h) {
    std::vector<VertexId> image(k.members.size());
    for (std::size_t step = 0; step < k.order.size(); ++step) {
        const auto j = k.order[step];
        if (step == 0) {
            image[j] = h;
            continue;
        }
        const auto [parent, letter] = k.tree[j];
        const auto pj = static_cast<std::size_t>(std::lower_bound(k.members.begin(), k.members.end(), parent) -
                                                 k.members.begin());
        const auto next = x.step(image[pj], letter);
        if (!next) return std::nullopt;
        image[j] = *next;
    }
    return image;
}

struct Copy {
    std::uint32_t parent = 0;
    int tree_depth = 0;
    Word prefix;                                 // global letters reaching the copy's base
    std::vector<std::vector<VertexId>> used;     // translates of K already glued, local ids
    std::vector<VertexId> attach;                // parent-side image of K, aligned with K's members
    std::vector<std::uint32_t> global;           // local vertex -> assembled id
};

struct Assembly {
    std::vector<Word> words;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Letter> edge_index;
};

// Glues copies of `x` along translates of K following the doubling rule.
AmalgamResult glue(const MedianGraph& x, const std::string& word, const std::string& stable_name, int tree_depth,
                   bool collapsed, const BuildLimits& limits, const BuildOptions& options) {
    if (x.alphabet().find(stable_name)) {
        throw Error(ErrorCode::BAD_INPUT, "stable letter " + stable_name + " clashes with a generator name");
    }
    const EdgeSpace k = axis_hull(x, word);
    std::vector<std::string> names = x.alphabet().names();
    names.push_back(stable_name);
    const Alphabet global_alphabet(names);
    const Letter stable{static_cast<std::uint16_t>(names.size() - 1), false};
    auto local_word = [&](VertexId v) { return x.alphabet().parse(x.word(v)); };  // indices agree: names prefix

    std::vector<Copy> copies(1);
    for (int level = 1; level <= tree_depth; ++level) {
        const std::size_t existing = copies.size();
        for (std::size_t c = 0; c < existing; ++c) {
            // First translate, in vertex order, disjoint from those already glued to this copy.
            std::optional<std::pair<VertexId, std::vector<VertexId>>> pick;
            for (std::uint32_t h = 0; h < x.vertex_count() && !pick; ++h) {
                auto image = translate(x, k, VertexId(h));
                if (!image) continue;
                std::vector<VertexId> sorted(*image);
                std::sort(sorted.begin(), sorted.end());
                const bool clash = std::any_of(copies[c].used.begin(), copies[c].used.end(), [&](const auto& u) {
                    std::vector<VertexId> common;
                    std::set_intersection(u.begin(), u.end(), sorted.begin(), sorted.end(), std::back_inserter(common));
                    return !common.empty();
                });
                if (!clash) pick = std::pair{VertexId(h), std::move(*image)};
            }
            if (!pick) {
                throw Error(ErrorCode::SIZE_LIMIT, "vertex space has no room for another translate of the edge space");
            }
            std::vector<VertexId> sorted(pick->second);
            std::sort(sorted.begin(), sorted.end());
            copies[c].used.push_back(std::move(sorted));
            Copy child;
            child.parent = static_cast<std::uint32_t>(c);
            child.tree_depth = level;
            child.prefix = copies[c].prefix;
            const Word hw = local_word(pick->first);
            child.prefix.insert(child.prefix.end(), hw.begin(), hw.end());
            child.prefix.push_back(stable);
            child.used.push_back(k.members);
            child.attach = std::move(pick->second);
            copies.push_back(std::move(child));
        }
    }
    if (static_cast<double>(copies.size()) * static_cast<double>(x.vertex_count()) >
        static_cast<double>(limits.max_vertices)) {
        throw Error(ErrorCode::SIZE_LIMIT, std::to_string(copies.size()) + " copies of " +
                                               std::to_string(x.vertex_count()) + " vertices exceed the vertex budget");
    }

    // Assemble vertices, copy by copy.
    Assembly a;
    for (std::size_t c = 0; c < copies.size(); ++c) {
        auto& copy = copies[c];
        copy.global.assign(x.vertex_count(), 0);
        std::vector<std::uint32_t> merged(x.vertex_count(), UINT32_MAX);
        if (collapsed && c > 0) {
            const auto& parent = copies[copy.parent];
            for (std::size_t i = 0; i < k.members.size(); ++i)
                merged[k.members[i].value] = parent.global[copy.attach[i].value];
        }
        for (std::uint32_t v = 0; v < x.vertex_count(); ++v) {
            if (merged[v] != UINT32_MAX) {
                copy.global[v] = merged[v];
                continue;
            }
            copy.global[v] = static_cast<std::uint32_t>(a.words.size());
            Word w = copy.prefix;
            const Word lw = local_word(VertexId(v));
            w.insert(w.end(), lw.begin(), lw.end());
            a.words.push_back(std::move(w));
        }
    }
    auto add_edge = [&](std::uint32_t u, std::uint32_t v, Letter l) {
        if (u > v) {
            std::swap(u, v);
            l = l.inverted();
        }
        auto [it, fresh] = a.edge_index.emplace(std::pair{u, v}, l);
        if (!fresh && it->second != l) {
            throw Error(ErrorCode::CONVEXITY_VIOLATION, "glued copies disagree on the edge " + std::to_string(u) +
                                                            "-" + std::to_string(v));
        }
    };
    for (std::size_t c = 0; c < copies.size(); ++c) {
        for (std::uint32_t e = 0; e < x.edge_count(); ++e) {
            const auto& info = x.edge(EdgeId(e));
            add_edge(copies[c].global[info.u.value], copies[c].global[info.v.value], info.letter);
        }
        if (c > 0 && !collapsed) {
            const auto& parent = copies[copies[c].parent];
            for (std::size_t i = 0; i < k.members.size(); ++i)
                add_edge(parent.global[copies[c].attach[i].value], copies[c].global[k.members[i].value], stable);
        }
    }

    // Crop to the ball in which every copy is complete.
    const std::size_t n = a.words.size();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& [ends, l] : a.edge_index) {
        adj[ends.first].push_back(ends.second);
        adj[ends.second].push_back(ends.first);
    }
    std::vector<int> depth(n, -1);
    std::vector<std::uint32_t> queue{0};
    depth[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (auto w : adj[queue[head]])
            if (depth[w] < 0) {
                depth[w] = depth[queue[head]] + 1;
                queue.push_back(w);
            }
    int offset = 0;
    for (const auto& copy : copies) offset = std::max(offset, depth[copy.global[x.base().value]]);
    const int rho = x.radius() - offset;
    if (rho < 1) throw Error(ErrorCode::PARAM_RANGE, "vertex spaces are too small for the glued ball");

    std::vector<std::uint32_t> renumber(n, UINT32_MAX);
    std::vector<VertexRecord> vertices;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (depth[v] < 0 || depth[v] > rho) continue;
        renumber[v] = static_cast<std::uint32_t>(vertices.size());
        vertices.push_back({renumber[v], global_alphabet.format(a.words[v])});
    }
    std::vector<EdgeRecord> edges;
    for (const auto& [ends, l] : a.edge_index) {
        const auto u = renumber[ends.first], v = renumber[ends.second];
        if (u == UINT32_MAX || v == UINT32_MAX) continue;
        edges.push_back({u, v, global_alphabet.format(l)});
    }
    a = {};
    AmalgamResult result{build_median_graph(std::move(vertices), std::move(edges), VertexId(0), rho,
                                            raag_core_radius(rho), options),
                         {},
                         k.members.size(),
                         k.half_length,
                         0};
    for (std::size_t c = 0; c < copies.size(); ++c) {
        AmalgamCopy out;
        out.tree_node = static_cast<std::uint32_t>(c);
        out.parent = copies[c].parent;
        out.depth = copies[c].tree_depth;
        for (auto v : copies[c].global)
            if (renumber[v] != UINT32_MAX) out.vertices.push_back(VertexId(renumber[v]));
        std::sort(out.vertices.begin(), out.vertices.end());
        out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
        result.copies.push_back(std::move(out));
    }
    return result;
}

// Local convexity: no geodesic of length two leaves the copy between two of its core vertices.
std::size_t convexity_violations(const MedianGraph& g, const AmalgamCopy& copy) {
    std::vector<std::uint8_t> inside(g.vertex_count(), 0);
    for (VertexId v : copy.vertices) inside[v.value] = 1;
    std::size_t count = 0;
    for (VertexId x : copy.vertices) {
        if (!g.in_core(x)) continue;
        for (const Neighbor& m : g.neighbors(x)) {
            if (inside[m.vertex.value]) continue;
            for (const Neighbor& y : g.neighbors(m.vertex))
                if (y.vertex != x && inside[y.vertex.value] && g.in_core(y.vertex)) ++count;
        }
    }
    return count;
}

}  // namespace

AmalgamSpec AmalgamSpec::parse(std::istream& in, const std::string& base_dir) {
    AmalgamSpec spec;
    bool have_graph = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::BAD_INPUT, "amalgam spec line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "graph") {
            std::filesystem::path p(value);
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            spec.base = PresentationGraph::load(p.string());
            have_graph = true;
        } else if (key == "rank_one_word") {
            spec.rank_one_word = value;
        } else if (key == "level") {
            spec.level = parse_int(key, value);
        } else if (key == "tree_depth") {
            spec.tree_depth = parse_int(key, value);
        } else if (key == "radius") {
            spec.radius = parse_int(key, value);
        } else if (key == "p_max") {
            spec.p_max = parse_int(key, value);
        } else if (key == "collapsed") {
            if (value != "true" && value != "false") throw Error(ErrorCode::BAD_INPUT, "collapsed expects true or false");
            spec.collapsed = value == "true";
        } else if (key == "max_vertices") {
            spec.limits.max_vertices = static_cast<std::size_t>(parse_int(key, value));
        } else {
            throw Error(ErrorCode::BAD_INPUT, "amalgam spec: unknown key '" + key + "'");
        }
    }
    if (!have_graph) throw Error(ErrorCode::BAD_INPUT, "amalgam spec: missing graph");
    if (spec.rank_one_word.empty()) throw Error(ErrorCode::BAD_INPUT, "amalgam spec: missing rank_one_word");
    return spec;
}

AmalgamResult amalgam_ball(const AmalgamSpec& spec, const BuildOptions& options) {
    if (spec.level < 1) throw Error(ErrorCode::PARAM_RANGE, "level must be at least 1");
    if (spec.tree_depth < 1) throw Error(ErrorCode::PARAM_RANGE, "tree_depth must be at least 1");
    const Word word = spec.base.alphabet().parse(spec.rank_one_word);
    if (word.empty()) throw Error(ErrorCode::BAD_INPUT, "rank_one_word is empty");
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] == word[(i + 1) % word.size()].inverted()) {
            throw Error(ErrorCode::BAD_INPUT, "rank_one_word " + spec.rank_one_word + " is not cyclically reduced");
        }
    }

    MedianGraph base = raag_ball(spec.base, spec.radius, spec.limits, options);
    const auto verdict = rank_one_check(base, ray_from_word(base, spec.rank_one_word, 1 << 20), spec.p_max);
    if (verdict.kind != RankOneKind::RANK_ONE) {
        throw Error(ErrorCode::NOT_RANK_ONE,
                    "axis of " + spec.rank_one_word + " is " + std::string(to_string(verdict.kind)) + " (gap " +
                        std::to_string(verdict.p) + ", strip width " + std::to_string(verdict.strip_width) +
                        ", p_max " + std::to_string(spec.p_max) + ")");
    }
    AmalgamResult result{std::move(base), {}, 0, 0, 0};
    AmalgamCopy root;
    for (std::uint32_t v = 0; v < result.graph.vertex_count(); ++v) root.vertices.push_back(VertexId(v));
    result.copies.push_back(std::move(root));

    for (int level = 2; level <= spec.level; ++level) {
        const std::string stable = "t" + std::to_string(level - 1);
        result = glue(result.graph, spec.rank_one_word, stable, spec.tree_depth, spec.collapsed, spec.limits, options);
        for (const auto& copy : result.copies) result.convexity_violations += convexity_violations(result.graph, copy);
        if (result.convexity_violations > 0) {
            throw Error(ErrorCode::CONVEXITY_VIOLATION,
                        std::to_string(result.convexity_violations) +
                            " length-two geodesics leave a vertex-space copy at level " + std::to_string(level));
        }
    }
    return result;
}

}  // namespace medianforge
