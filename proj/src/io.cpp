#include "medianforge/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "medianforge/errors.hpp"

namespace medianforge {

namespace {

constexpr std::string_view kMagic = "medianforge-complex";

template <class T>
T parse_number(std::string_view text, std::size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::BAD_INPUT,
                    "line " + std::to_string(line) + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string_view next_token(std::string_view& s) {
    s = trim(s);
    std::size_t end = 0;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    auto tok = s.substr(0, end);
    s.remove_prefix(end);
    return tok;
}

}  // namespace

ComplexRecords parse_complex(std::istream& in) {
    ComplexRecords rec;
    std::string raw;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::string_view rest = line;
        const auto tag = next_token(rest);
        if (!header) {
            if (tag != kMagic) throw Error(ErrorCode::BAD_INPUT, "missing medianforge-complex header");
            if (next_token(rest) != "1") throw Error(ErrorCode::BAD_INPUT, "unsupported complex format version");
            bool seen[3] = {false, false, false};
            for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
                const auto eq = tok.find('=');
                if (eq == std::string_view::npos) throw Error(ErrorCode::BAD_INPUT, "malformed header field");
                const auto key = tok.substr(0, eq);
                const auto val = tok.substr(eq + 1);
                if (key == "base") {
                    rec.base = parse_number<std::uint32_t>(val, line_no);
                    seen[0] = true;
                } else if (key == "radius") {
                    rec.radius = parse_number<int>(val, line_no);
                    seen[1] = true;
                } else if (key == "core") {
                    rec.core_radius = parse_number<int>(val, line_no);
                    seen[2] = true;
                } else {
                    throw Error(ErrorCode::BAD_INPUT, "unknown header field '" + std::string(key) + "'");
                }
            }
            if (!seen[0] || !seen[1] || !seen[2]) throw Error(ErrorCode::BAD_INPUT, "header needs base, radius and core");
            header = true;
        } else if (tag == "v") {
            VertexRecord v;
            v.id = parse_number<std::uint32_t>(next_token(rest), line_no);
            v.word = std::string(trim(rest));
            rec.vertices.push_back(std::move(v));
        } else if (tag == "e") {
            EdgeRecord e;
            e.u = parse_number<std::uint32_t>(next_token(rest), line_no);
            e.v = parse_number<std::uint32_t>(next_token(rest), line_no);
            e.label = std::string(next_token(rest));
            if (e.label.empty() || !trim(rest).empty()) {
                throw Error(ErrorCode::BAD_INPUT, "line " + std::to_string(line_no) + ": expected `e <id1> <id2> <label>`");
            }
            rec.edges.push_back(std::move(e));
        } else {
            throw Error(ErrorCode::BAD_INPUT, "line " + std::to_string(line_no) + ": unknown record '" +
                                                  std::string(tag) + "'");
        }
    }
    if (!header) throw Error(ErrorCode::BAD_INPUT, "empty complex file");
    return rec;
}

MedianGraph read_complex(std::istream& in, const BuildOptions& options) {
    auto rec = parse_complex(in);
    return build_median_graph(std::move(rec.vertices), std::move(rec.edges), VertexId(rec.base), rec.radius,
                              rec.core_radius, options);
}

MedianGraph load_complex(const std::string& path, const BuildOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BAD_INPUT, "cannot open " + path);
    return read_complex(in, options);
}

void write_complex(std::ostream& out, const MedianGraph& g) {
    out << kMagic << " 1 base=" << g.base().value << " radius=" << g.radius() << " core=" << g.core_radius() << '\n';
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        out << "v " << v;
        if (g.has_words()) out << ' ' << g.word(VertexId(v));
        out << '\n';
    }
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        const auto& info = g.edge(EdgeId(e));
        out << "e " << info.u.value << ' ' << info.v.value << ' ' << g.alphabet().format(info.letter) << '\n';
    }
}

void save_complex(const std::string& path, const MedianGraph& g) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::BAD_INPUT, "cannot write " + path);
    write_complex(out, g);
}

}  // namespace medianforge
