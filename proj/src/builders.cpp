#include "medianforge/builders.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "medianforge/errors.hpp"

namespace medianforge {

// ---- presentation graphs ----

PresentationGraph::PresentationGraph(std::vector<std::string> generators,
                                     const std::vector<std::pair<std::string, std::string>>& commutations)
    : generators_(std::move(generators)), alphabet_(generators_), commute_mask_(generators_.size(), 0) {
    if (generators_.empty()) throw Error(ErrorCode::BAD_INPUT, "presentation graph has no generators");
    if (generators_.size() > 64) throw Error(ErrorCode::BAD_INPUT, "at most 64 generators are supported");
    for (const auto& [x, y] : commutations) {
        const auto a = alphabet_.find(x);
        const auto b = alphabet_.find(y);
        if (!a || !b) throw Error(ErrorCode::BAD_INPUT, "commutation names an unknown generator: " + x + " " + y);
        if (*a == *b) throw Error(ErrorCode::BAD_INPUT, "generator " + x + " cannot commute with itself");
        commute_mask_[*a] |= std::uint64_t{1} << *b;
        commute_mask_[*b] |= std::uint64_t{1} << *a;
    }
}

std::vector<std::pair<std::uint16_t, std::uint16_t>> PresentationGraph::commuting_pairs() const {
    std::vector<std::pair<std::uint16_t, std::uint16_t>> out;
    for (std::uint16_t i = 0; i < size(); ++i) {
        for (std::uint16_t j = i + 1; j < size(); ++j) {
            if (commute(i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

PresentationGraph PresentationGraph::parse(std::istream& in) {
    std::vector<std::string> gens;
    std::vector<std::pair<std::string, std::string>> comms;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        std::vector<std::string> args;
        for (std::string a; ls >> a;) args.push_back(a);
        if (tag == "gen" && args.size() == 1) {
            gens.push_back(args[0]);
        } else if (tag == "comm" && args.size() == 2) {
            comms.emplace_back(args[0], args[1]);
        } else {
            throw Error(ErrorCode::BAD_INPUT, "presentation graph line " + std::to_string(line_no) + ": '" + line + "'");
        }
    }
    return PresentationGraph(std::move(gens), comms);
}

PresentationGraph PresentationGraph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BAD_INPUT, "cannot open " + path);
    return parse(in);
}

void PresentationGraph::write(std::ostream& out) const {
    for (const auto& g : generators_) out << "gen " << g << '\n';
    for (auto [a, b] : commuting_pairs()) out << "comm " << generators_[a] << ' ' << generators_[b] << '\n';
}

// ---- normal forms ----

Word RaagNormalForm::shortlex(Word w) const {
    // Greedy choice of the least letter that can be shuffled to the front.
    Word out;
    out.reserve(w.size());
    while (!w.empty()) {
        std::uint64_t seen = 0;
        std::size_t best = w.size();
        for (std::size_t j = 0; j < w.size(); ++j) {
            const auto g = w[j].generator;
            if ((seen & ~pg_->commute_mask(g)) == 0 && (best == w.size() || w[j].rank() < w[best].rank())) best = j;
            seen |= std::uint64_t{1} << g;
        }
        out.push_back(w[best]);
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

Word RaagNormalForm::multiply(const Word& w, Letter x) const {
    Word out = w;
    for (std::size_t i = out.size(); i-- > 0;) {
        if (out[i] == x.inverted()) {
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
            return shortlex(std::move(out));
        }
        if (!pg_->commute(out[i].generator, x.generator)) break;
    }
    out.push_back(x);
    return shortlex(std::move(out));
}

Word RaagNormalForm::normalize(const Word& w) const {
    Word out;
    for (Letter l : w) out = multiply(out, l);
    return out;
}

// ---- balls ----

namespace {

std::string key_of(const Word& w) {
    std::string k(w.size(), '\0');
    for (std::size_t i = 0; i < w.size(); ++i) k[i] = static_cast<char>(w[i].rank());
    return k;
}

// Breadth-first enumeration of states reachable within `radius` steps; ids follow
// discovery order with letters tried by rank.
template <class Step>
MedianGraph enumerate_ball(const Alphabet& alphabet, int radius, int core_radius, const BuildLimits& limits,
                           const BuildOptions& options, Step&& step) {
    std::vector<Word> words{Word{}};
    std::vector<int> depth{0};
    std::unordered_map<std::string, std::uint32_t> index{{key_of(Word{}), 0}};
    std::vector<EdgeRecord> edges;
    std::vector<Letter> letters;
    for (std::uint16_t g = 0; g < alphabet.size(); ++g) {
        letters.push_back({g, false});
        letters.push_back({g, true});
    }
    for (std::uint32_t v = 0; v < words.size(); ++v) {
        for (Letter x : letters) {
            auto next = step(words[v], x);
            if (!next) continue;
            auto key = key_of(*next);
            auto it = index.find(key);
            std::uint32_t u;
            if (it != index.end()) {
                u = it->second;
            } else {
                if (depth[v] + 1 > radius) continue;
                if (words.size() >= limits.max_vertices) {
                    throw Error(ErrorCode::SIZE_LIMIT,
                                "ball exceeds the vertex budget of " + std::to_string(limits.max_vertices));
                }
                u = static_cast<std::uint32_t>(words.size());
                index.emplace(std::move(key), u);
                words.push_back(std::move(*next));
                depth.push_back(depth[v] + 1);
            }
            if (v < u) edges.push_back({v, u, alphabet.format(x)});
        }
    }
    std::vector<VertexRecord> vertices(words.size());
    for (std::uint32_t v = 0; v < words.size(); ++v) vertices[v] = {v, alphabet.format(words[v])};
    words.clear();
    index.clear();
    return build_median_graph(std::move(vertices), std::move(edges), VertexId(0), radius, core_radius, options);
}

}  // namespace

int raag_core_radius(int R) { return (2 * R) / 3; }

MedianGraph raag_ball(const PresentationGraph& pg, int R, const BuildLimits& limits, const BuildOptions& options) {
    if (R < 0) throw Error(ErrorCode::PARAM_RANGE, "ball radius must be nonnegative");
    const RaagNormalForm nf(pg);
    return enumerate_ball(pg.alphabet(), R, raag_core_radius(R), limits, options,
                          [&](const Word& w, Letter x) -> std::optional<Word> { return nf.multiply(w, x); });
}

MedianGraph grid_box(const std::vector<int>& dims, const BuildLimits& limits, const BuildOptions& options) {
    if (dims.empty()) throw Error(ErrorCode::PARAM_RANGE, "grid box needs at least one dimension");
    if (dims.size() > 26) throw Error(ErrorCode::PARAM_RANGE, "grid box supports at most 26 dimensions");
    std::vector<std::string> names;
    int eccentricity = 0;
    double volume = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1) throw Error(ErrorCode::PARAM_RANGE, "grid dimensions must be at least 1");
        names.emplace_back(1, static_cast<char>('a' + i));
        eccentricity += dims[i];
        volume *= dims[i] + 1;
    }
    if (volume > static_cast<double>(limits.max_vertices)) {
        throw Error(ErrorCode::SIZE_LIMIT, "grid box exceeds the vertex budget of " + std::to_string(limits.max_vertices));
    }
    const Alphabet alphabet(names);
    // States are sorted words a^i b^j ... with 0 <= i <= dims[0], etc.
    auto step = [&](const Word& w, Letter x) -> std::optional<Word> {
        const auto lo = std::lower_bound(w.begin(), w.end(), Letter{x.generator, false});
        const auto hi = std::upper_bound(w.begin(), w.end(), Letter{x.generator, false});
        const auto count = hi - lo;
        Word out = w;
        if (x.inverse) {
            if (count == 0) return std::nullopt;
            out.erase(out.begin() + (lo - w.begin()));
        } else {
            if (count >= dims[x.generator]) return std::nullopt;
            out.insert(out.begin() + (hi - w.begin()), Letter{x.generator, false});
        }
        return out;
    };
    // The box is finite: one step past its eccentricity keeps every vertex off the sphere.
    return enumerate_ball(alphabet, eccentricity + 1, eccentricity + 1, limits, options, step);
}

// ---- hyperoctahedra ----

std::vector<std::size_t> f_vector_of(const std::vector<std::vector<std::uint32_t>>& simplices) {
    std::vector<std::size_t> f;
    for (const auto& s : simplices) {
        if (s.empty()) continue;
        if (f.size() < s.size()) f.resize(s.size(), 0);
        ++f[s.size() - 1];
    }
    return f;
}

Hyperoctahedron hyperoctahedron(int d) {
    if (d < 0) throw Error(ErrorCode::PARAM_RANGE, "hyperoctahedron dimension must be nonnegative");
    Hyperoctahedron o;
    o.dimension = 0;
    o.vertex_pairs = {{0, 1}};
    o.simplices = {{0}, {1}};
    for (int k = 1; k <= d; ++k) {
        const std::uint32_t p = 2 * static_cast<std::uint32_t>(k), q = p + 1;
        auto previous = o.simplices;
        o.simplices.push_back({p});
        o.simplices.push_back({q});
        for (const auto& s : previous) {
            for (auto apex : {p, q}) {
                auto joined = s;
                joined.push_back(apex);
                o.simplices.push_back(std::move(joined));
            }
        }
        o.vertex_pairs.emplace_back(p, q);
        o.dimension = k;
    }
    std::sort(o.simplices.begin(), o.simplices.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    o.f_vector = f_vector_of(o.simplices);
    return o;
}

}  // namespace medianforge
