#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "medianforge/boundary.hpp"
#include "medianforge/builders.hpp"
#include "medianforge/divergence.hpp"
#include "medianforge/errors.hpp"
#include "medianforge/io.hpp"
#include "medianforge/report.hpp"
#include "medianforge/structure_checks.hpp"

namespace medianforge::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kRayRepetitions = 1 << 16;

struct Options {
    std::string config;
    std::string out_dir;

    std::string complex_path;
    std::string graph_path;
    int radius = 0;
    std::vector<int> grid;
    std::string amalgam_path;
    std::string output;

    std::uint64_t seed = 0;
    std::size_t exhaustive_cap = 2000;
    std::size_t sampled_triples = 100000;
    std::size_t sampled_roots = 64;
    std::size_t max_vertices = 2'000'000;

    std::vector<std::string> rays;
    bool full = false;
    double lambda = 0.5;
    double mu = 0;
    int r_min = 1;
    int r_max = 8;
    int fit_min = 0;
    int fit_max = 0;
    int radius_factor = 3;
    std::size_t full_samples = 5000;

    std::string mode = "decompose";
    int burn_in = -1;
    int k0 = -1;
    int p_max = 1;
    int octahedron_d = 2;

    int threshold = 3;

    std::vector<std::string> peripherals;
    int thickening = 0;
    int cycle_length = 8;
    std::size_t cycle_bound = 64;
    int bigon_mu = 4;
    std::size_t bigon_samples = 10000;

    int limit = 8;
};

// Artifacts go to --out when given, otherwise after the report on stdout.
class Sink {
public:
    Sink(std::ostream& out, std::string dir) : out_(out), dir_(std::move(dir)) {}

    void report(const Report& r) { r.write(out_); }
    void line(const std::string& s) { out_ << s << '\n'; }
    void artifact(const std::string& name, const std::string& content) {
        if (dir_.empty()) {
            out_ << "# " << name << '\n' << content;
            return;
        }
        std::filesystem::create_directories(dir_);
        std::ofstream file(std::filesystem::path(dir_) / name, std::ios::binary);
        if (!file) throw Error(ErrorCode::BAD_INPUT, "cannot write " + (std::filesystem::path(dir_) / name).string());
        file << content;
    }

private:
    std::ostream& out_;
    std::string dir_;
};

BuildOptions build_options(const Options& o) {
    BuildOptions b;
    b.seed = o.seed;
    b.exhaustive_cap = o.exhaustive_cap;
    b.sampled_triples = o.sampled_triples;
    b.sampled_roots = o.sampled_roots;
    return b;
}

BuildLimits build_limits(const Options& o) { return BuildLimits{o.max_vertices}; }

PresentationGraph require_graph(const Options& o) {
    if (o.graph_path.empty()) throw Error(ErrorCode::BAD_INPUT, "--graph is required");
    return PresentationGraph::load(o.graph_path);
}

int require_radius(const Options& o) {
    if (o.radius < 1) throw Error(ErrorCode::BAD_INPUT, "--radius must be a positive integer");
    return o.radius;
}

MedianGraph load_input(const Options& o) {
    const int sources = !o.complex_path.empty() + !o.graph_path.empty() + !o.grid.empty();
    if (sources != 1) throw Error(ErrorCode::BAD_INPUT, "give exactly one of --complex, --graph or --grid");
    if (!o.complex_path.empty()) return load_complex(o.complex_path, build_options(o));
    if (!o.grid.empty()) return grid_box(o.grid, build_limits(o), build_options(o));
    return raag_ball(require_graph(o), require_radius(o), build_limits(o), build_options(o));
}

void add_input_block(Report& r, const Options& o, const MedianGraph& g) {
    r.section("input");
    if (!o.complex_path.empty()) r.add("complex", o.complex_path);
    if (!o.graph_path.empty()) {
        r.add("graph", o.graph_path);
        r.add("radius", g.radius());
    }
    if (!o.grid.empty()) {
        std::string dims;
        for (std::size_t i = 0; i < o.grid.size(); ++i) dims += (i ? "," : "") + std::to_string(o.grid[i]);
        r.add("grid", dims);
    }
    r.add("vertices", g.vertex_count());
    r.add("edges", g.edge_count());
    r.add("hyperplanes", g.hyperplane_count());
    r.add("truncation_radius", g.radius());
    r.add("core_radius", g.core_radius());
    r.add("dimension", g.dimension());
    r.add("median_check", g.validation().exhaustive ? "exhaustive" : "sampled");
    r.add("triples_checked", g.validation().triples_checked);
    r.add("seed", g.validation().seed);
}

// "w" traces w periodically; "p|w" follows p once first.
GeodesicRay parse_ray(const MedianGraph& g, const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos) return ray_from_word(g, text, kRayRepetitions);
    return ray_from_word(g, text.substr(0, bar), text.substr(bar + 1), kRayRepetitions);
}

std::vector<GeodesicRay> parse_rays(const MedianGraph& g, const Options& o) {
    std::vector<GeodesicRay> rays;
    for (const auto& text : o.rays) rays.push_back(parse_ray(g, text));
    return rays;
}

template <class Fn>
std::string render(Fn&& fn) {
    std::ostringstream s;
    fn(s);
    return s.str();
}

int cmd_build(const Options& o, Sink& sink) {
    if (o.output.empty()) throw Error(ErrorCode::BAD_INPUT, "--output is required");
    Report r;
    std::optional<MedianGraph> built;
    if (!o.amalgam_path.empty()) {
        std::ifstream in(o.amalgam_path);
        if (!in) throw Error(ErrorCode::BAD_INPUT, "cannot open " + o.amalgam_path);
        const auto dir = std::filesystem::path(o.amalgam_path).parent_path().string();
        auto res = amalgam_ball(AmalgamSpec::parse(in, dir.empty() ? "." : dir), build_options(o));
        built.emplace(std::move(res.graph));
        r.section("input");
        r.add("amalgam", o.amalgam_path);
    } else {
        built.emplace(load_input(o));
        add_input_block(r, o, *built);
    }
    save_complex(o.output, *built);
    r.section("build");
    r.add("output", o.output);
    r.add("vertices", built->vertex_count());
    r.add("edges", built->edge_count());
    sink.report(r);
    return kOk;
}

int cmd_validate(const Options& o, Sink& sink) {
    if (o.complex_path.empty()) throw Error(ErrorCode::BAD_INPUT, "--complex is required");
    Report r;
    r.section("validate");
    r.add("complex", o.complex_path);
    try {
        auto g = load_complex(o.complex_path, build_options(o));
        r.add("status", "OK");
        r.add("vertices", g.vertex_count());
        r.add("edges", g.edge_count());
        r.add("hyperplanes", g.hyperplane_count());
        r.add("dimension", g.dimension());
        r.add("median_check", g.validation().exhaustive ? "exhaustive" : "sampled");
        r.add("triples_checked", g.validation().triples_checked);
        r.add("seed", g.validation().seed);
        sink.report(r);
        return kOk;
    } catch (const Error& e) {
        r.add("status", std::string(to_string(e.code())));
        r.add("detail", e.detail());
        std::string ids;
        for (std::size_t i = 0; i < e.witness().size(); ++i) ids += (i ? "," : "") + std::to_string(e.witness()[i]);
        r.add("witness", ids);
        sink.report(r);
        throw;
    }
}

int cmd_hyperplanes(const Options& o, Sink& sink) {
    auto g = load_input(o);
    Report r;
    add_input_block(r, o, g);
    std::size_t crossing_pairs = 0, boundary = 0;
    std::ostringstream csv;
    csv << "id,letter,dual_edges,boundary,crossings\n";
    for (const auto& h : g.hyperplanes()) {
        const auto crossings = g.crossing_neighbors(h.id).size();
        crossing_pairs += crossings;
        boundary += h.boundary_flag;
        const auto& e = g.edge(h.dual_edges.front());
        csv << h.id.value << ',' << g.alphabet().name(e.letter.generator) << ',' << h.dual_edges.size() << ','
            << (h.boundary_flag ? 1 : 0) << ',' << crossings << '\n';
    }
    r.section("hyperplanes");
    r.add("count", g.hyperplane_count());
    r.add("boundary", boundary);
    r.add("crossing_pairs", crossing_pairs / 2);
    sink.report(r);
    sink.artifact("hyperplanes.csv", csv.str());
    return kOk;
}

int cmd_divergence(const Options& o, Sink& sink) {
    auto g = load_input(o);
    if (o.r_min < 1 || o.r_max < o.r_min) throw Error(ErrorCode::PARAM_RANGE, "need 1 <= --rmin <= --rmax");
    std::vector<int> radii;
    for (int r = o.r_min; r <= o.r_max; ++r) radii.push_back(r);
    DivergenceProfile profile;
    Report r;
    add_input_block(r, o, g);
    r.section("divergence");
    if (o.full) {
        if (!o.rays.empty()) throw Error(ErrorCode::BAD_INPUT, "--full takes no rays");
        FullDivergenceOptions fo;
        fo.samples = o.full_samples;
        fo.seed = o.seed;
        profile = full_divergence_profile(g, radii, o.lambda, o.mu, fo);
        r.add("mode", "full");
        r.add("seed", o.seed);
    } else {
        if (o.rays.size() != 2) throw Error(ErrorCode::BAD_INPUT, "give exactly two --ray words");
        const auto rays = parse_rays(g, o);
        profile = ray_divergence_profile(g, rays[0], rays[1], radii, RayDivergenceOptions{o.radius_factor});
        r.add("mode", "rays");
        r.add("alpha", o.rays[0]);
        r.add("beta", o.rays[1]);
        r.add("radius_factor", o.radius_factor);
    }
    if (!profile.all_infinite()) {
        auto [lo, hi] = default_window(profile);
        if (o.fit_min > 0) lo = o.fit_min;
        if (o.fit_max > 0) hi = o.fit_max;
        try {
            profile = fit_exponent(profile, lo, hi);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TOO_FEW_SAMPLES) throw;
            r.add("fit_skipped", e.detail());
        }
    }
    add_fit_block(r, profile);
    sink.report(r);
    sink.artifact("divergence.csv", render([&](std::ostream& s) { write_profile_csv(s, profile); }));
    return kOk;
}

int cmd_boundary(const Options& o, Sink& sink) {
    auto g = load_input(o);
    if (o.rays.empty()) throw Error(ErrorCode::BAD_INPUT, "give at least one --ray");
    const auto rays = parse_rays(g, o);
    Report r;
    add_input_block(r, o, g);
    int status = kOk;
    if (o.mode == "decompose") {
        const int k0 = o.k0 >= 0 ? o.k0 : g.dimension();
        for (std::size_t i = 0; i < rays.size(); ++i) {
            const int burn_in = o.burn_in >= 0 ? o.burn_in : rays[i].length() / 4;
            const auto bst = ray_boundary_set(g, rays[i], burn_in);
            const auto dec = minimal_decomposition(g, bst, k0);
            r.section("ray_" + std::to_string(i));
            r.add("word", o.rays[i]);
            r.add("length", rays[i].length());
            r.add("burn_in", burn_in);
            r.add("k0", k0);
            r.add("blocks", dec.blocks.size());
            r.add("simplex_dimension", simplex_dimension(g, bst, k0));
            r.add("exceptions", dec.exceptions);
            r.add("verified", dec.verified_cross_condition);
            sink.artifact("decomposition_" + std::to_string(i) + ".dot",
                          render([&](std::ostream& s) { write_decomposition_dot(s, dec); }));
            sink.artifact("crossing_" + std::to_string(i) + ".csv",
                          render([&](std::ostream& s) { write_crossing_csv(s, g, bst); }));
        }
        sink.report(r);
        return status;
    }
    if (o.mode == "rank-one") {
        for (std::size_t i = 0; i < rays.size(); ++i) {
            const auto v = rank_one_check(g, rays[i], o.p_max);
            r.section("ray_" + std::to_string(i));
            r.add("word", o.rays[i]);
            r.add("verdict", std::string(to_string(v.kind)));
            r.add("p", v.p);
            r.add("p_max", o.p_max);
            r.add("trend_slope", v.trend_slope);
            r.add("strip_width", v.strip_width);
            if (v.kind != RankOneKind::RANK_ONE) status = kNegative;
        }
        sink.report(r);
        return status;
    }
    if (o.mode == "grouping") {
        GroupingOptions go;
        go.radius_factor = o.radius_factor;
        go.r_min = o.fit_min;
        const auto grouping = component_grouping(g, rays, o.r_max, o.rays, go);
        r.section("grouping");
        r.add("r_min", grouping.r_min);
        r.add("r_max", grouping.r_max);
        r.add("groups", grouping.groups.size());
        for (std::size_t k = 0; k < grouping.groups.size(); ++k) {
            std::string members;
            for (std::size_t m = 0; m < grouping.groups[k].size(); ++m)
                members += (m ? "," : "") + grouping.labels[grouping.groups[k][m]];
            r.add("group_" + std::to_string(k), members);
        }
        r.add("indeterminate_pairs", grouping.indeterminate.size());
        sink.report(r);
        sink.artifact("grouping.dot", render([&](std::ostream& s) { write_grouping_dot(s, grouping); }));
        sink.artifact("grouping.csv", render([&](std::ostream& s) { write_grouping_csv(s, grouping); }));
        return status;
    }
    if (o.mode == "octahedron") {
        OctahedronOptions oo;
        oo.burn_in = o.burn_in;
        oo.k0 = o.k0;
        const auto m = octahedron_match(g, o.octahedron_d, rays, oo);
        auto join = [](const std::vector<std::size_t>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        r.section("octahedron");
        r.add("d", o.octahedron_d);
        r.add("classes", *std::max_element(m.classes.begin(), m.classes.end()) + 1);
        r.add("f_vector", join(m.f_vector));
        r.add("expected", join(m.expected));
        r.add("matches", m.matches);
        sink.report(r);
        return m.matches ? kOk : kNegative;
    }
    throw Error(ErrorCode::BAD_INPUT, "unknown boundary mode '" + o.mode + "'");
}

int cmd_join_check(const Options& o, Sink& sink) {
    const auto join = join_check(require_graph(o));
    sink.line(to_string(join));
    Report r;
    add_join_block(r, join);
    sink.report(r);
    return kOk;
}

int cmd_flats(const Options& o, Sink& sink) {
    const auto pg = require_graph(o);
    const auto g = raag_ball(pg, require_radius(o), build_limits(o), build_options(o));
    const auto w = flat_chain_witness(g, pg, o.threshold);
    Report r;
    add_input_block(r, o, g);
    add_flat_block(r, w);
    sink.report(r);
    sink.artifact("flats.dot", render([&](std::ostream& s) { write_chain_dot(s, w); }));
    return w.connected ? kOk : kNegative;
}

int cmd_relhyp_cert(const Options& o, Sink& sink) {
    const auto pg = require_graph(o);
    std::vector<PeripheralSpec> ps;
    for (const auto& p : o.peripherals) ps.push_back(PeripheralSpec::parse(p));
    if (ps.empty()) throw Error(ErrorCode::EMPTY_PERIPHERALS, "give at least one --peripheral");
    const auto g = raag_ball(pg, require_radius(o), build_limits(o), build_options(o));
    const auto doubled = raag_ball(pg, 2 * o.radius, build_limits(o), build_options(o));
    BowditchOptions bo;
    bo.thickening = o.thickening;
    bo.cycle_length = o.cycle_length;
    bo.cycle_bound = o.cycle_bound;
    bo.mu = o.bigon_mu;
    bo.bigon_samples = o.bigon_samples;
    const auto cert = bowditch_certificate(g, doubled, ps, bo);
    Report r;
    add_input_block(r, o, g);
    add_certificate_block(r, cert);
    sink.report(r);
    sink.artifact("gamma.dot", render([&](std::ostream& s) { write_gamma_dot(s, cert); }));
    return cert.pass ? kOk : kNegative;
}

int cmd_amalgam(const Options& o, Sink& sink) {
    if (o.amalgam_path.empty()) throw Error(ErrorCode::BAD_INPUT, "--spec is required");
    std::ifstream in(o.amalgam_path);
    if (!in) throw Error(ErrorCode::BAD_INPUT, "cannot open " + o.amalgam_path);
    const auto dir = std::filesystem::path(o.amalgam_path).parent_path().string();
    const auto spec = AmalgamSpec::parse(in, dir.empty() ? "." : dir);
    const auto res = amalgam_ball(spec, build_options(o));
    Report r;
    r.section("amalgam");
    r.add("spec", o.amalgam_path);
    r.add("rank_one_word", spec.rank_one_word);
    r.add("level", spec.level);
    r.add("tree_depth", spec.tree_depth);
    r.add("collapsed", spec.collapsed);
    r.add("copies", res.copies.size());
    r.add("vertices", res.graph.vertex_count());
    r.add("edges", res.graph.edge_count());
    r.add("truncation_radius", res.graph.radius());
    r.add("core_radius", res.graph.core_radius());
    r.add("edge_space", res.edge_space_size);
    r.add("axis_half_length", res.axis_half_length);
    r.add("convexity_violations", res.convexity_violations);
    r.add("seed", o.seed);
    if (!o.output.empty()) {
        save_complex(o.output, res.graph);
        r.add("output", o.output);
    }
    sink.report(r);
    return kOk;
}

int cmd_probe(const Options& o, Sink& sink) {
    const auto g = load_input(o);
    Report r;
    add_input_block(r, o, g);
    add_probe_block(r, hyperbolicity_probe(g, o.limit));
    sink.report(r);
    return kOk;
}

void add_input_options(CLI::App* sub, Options& o) {
    sub->add_option("--complex", o.complex_path, "Complex file (.mfc)");
    sub->add_option("--graph", o.graph_path, "Presentation graph (.pg) for a RAAG ball");
    sub->add_option("--radius", o.radius, "Ball radius");
    sub->add_option("--grid", o.grid, "Grid box side lengths")->delimiter(',');
}

void add_build_options(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Sampling seed");
    sub->add_option("--exhaustive-cap", o.exhaustive_cap, "Core size up to which medians are checked exhaustively");
    sub->add_option("--sampled-triples", o.sampled_triples, "Median triples sampled above the cap");
    sub->add_option("--sampled-roots", o.sampled_roots, "BFS roots for the sampled distance check");
    sub->add_option("--max-vertices", o.max_vertices, "Vertex budget for builders");
}

// Reads `key = value` lines and turns keys the command does not set itself into
// `--key=value` arguments. Unknown keys are rejected.
std::vector<std::string> merge_config(const CLI::App& sub, const std::string& path,
                                      const std::vector<std::string>& args) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BAD_INPUT, "cannot open config " + path);
    std::vector<std::string> extra;
    std::string line;
    std::size_t line_no = 0;
    auto given = [&](const std::string& key) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
        });
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = line.substr(0, line.find('#'));
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) {
            throw Error(ErrorCode::BAD_INPUT, path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "config" || sub.get_option_no_throw("--" + key) == nullptr) {
            throw Error(ErrorCode::BAD_INPUT, path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (given(key)) continue;
        // Input paths are relative to the config file; output paths stay relative to the working directory.
        const bool input_path = key == "graph" || key == "complex" || key == "amalgam" || key == "spec";
        if (input_path && std::filesystem::path(value).is_relative()) {
            extra.push_back("--" + key + "=" + (std::filesystem::path(path).parent_path() / value).string());
        } else {
            extra.push_back("--" + key + "=" + value);
        }
    }
    return extra;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Median graph and cube complex experiments", "medianforge"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::map<CLI::App*, int (*)(const Options&, Sink&)> commands;

    auto add = [&](const char* name, const char* help, int (*fn)(const Options&, Sink&)) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "Key-value config file; flags take precedence");
        sub->add_option("--out", o.out_dir, "Directory for artifacts");
        commands[sub] = fn;
        return sub;
    };

    auto* build = add("build", "Build a complex and write it as .mfc", cmd_build);
    add_input_options(build, o);
    add_build_options(build, o);
    build->add_option("--amalgam", o.amalgam_path, "Amalgam spec file");
    build->add_option("--output", o.output, "Output .mfc path");

    auto* validate = add("validate", "Load and validate a complex", cmd_validate);
    validate->add_option("--complex", o.complex_path, "Complex file (.mfc)");
    add_build_options(validate, o);

    auto* hyperplanes = add("hyperplanes", "List hyperplanes", cmd_hyperplanes);
    add_input_options(hyperplanes, o);
    add_build_options(hyperplanes, o);

    auto* divergence = add("divergence", "Ray or full divergence profile with a fit", cmd_divergence);
    add_input_options(divergence, o);
    add_build_options(divergence, o);
    divergence->add_option("--ray", o.rays, "Ray word, or prefix|word")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    divergence->add_flag("--full", o.full, "Full divergence instead of a ray pair");
    divergence->add_option("--lambda", o.lambda, "Avoided ball scale (full divergence)");
    divergence->add_option("--mu", o.mu, "Avoided ball offset (full divergence)");
    divergence->add_option("--rmin", o.r_min, "Smallest sampled r or n");
    divergence->add_option("--rmax", o.r_max, "Largest sampled r or n");
    divergence->add_option("--fit-min", o.fit_min, "Fit window start (default from the profile)");
    divergence->add_option("--fit-max", o.fit_max, "Fit window end (default from the profile)");
    divergence->add_option("--radius-factor", o.radius_factor, "Require radius >= factor * r");
    divergence->add_option("--samples", o.full_samples, "Sampled triples for full divergence");

    auto* boundary = add("boundary", "Boundary-set analyses of rays", cmd_boundary);
    add_input_options(boundary, o);
    add_build_options(boundary, o);
    boundary->add_option("--ray", o.rays, "Ray word, or prefix|word")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    boundary->add_option("--mode", o.mode, "Analysis to run")->check(CLI::IsMember({"decompose", "rank-one", "grouping", "octahedron"}));
    boundary->add_option("--burn-in", o.burn_in, "Ray prefix excluded from asymptotic tests");
    boundary->add_option("--k0", o.k0, "Non-crossing exceptions allowed between blocks");
    boundary->add_option("--p-max", o.p_max, "Gap bound for the rank-one check");
    boundary->add_option("--rmax", o.r_max, "Largest r for grouping");
    boundary->add_option("--rmin", o.fit_min, "Grouping window start (default from r_max)");
    boundary->add_option("--radius-factor", o.radius_factor, "Require radius >= factor * r");
    boundary->add_option("--d", o.octahedron_d, "Octahedron dimension");

    auto* join = add("join-check", "Join decomposition of a presentation graph", cmd_join_check);
    join->add_option("--graph", o.graph_path, "Presentation graph (.pg)");

    auto* flats = add("flats", "Flat chain witness in a RAAG ball", cmd_flats);
    flats->add_option("--graph", o.graph_path, "Presentation graph (.pg)");
    flats->add_option("--radius", o.radius, "Ball radius");
    flats->add_option("--threshold", o.threshold, "Shared hyperplanes needed to chain two flats");
    add_build_options(flats, o);

    auto* cert = add("relhyp-cert", "Relative hyperbolicity certificate", cmd_relhyp_cert);
    cert->add_option("--graph", o.graph_path, "Presentation graph (.pg)");
    cert->add_option("--radius", o.radius, "Ball radius; the overlap check also uses twice this");
    cert->add_option("--peripheral", o.peripherals, "Generators a,b or words {w1,w2}")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    cert->add_option("--thickening", o.thickening, "Hull thickening, divided by the dimension");
    cert->add_option("--cycle-length", o.cycle_length, "Longest cycle counted for fineness");
    cert->add_option("--cycle-bound", o.cycle_bound, "Most cycles allowed through one edge");
    cert->add_option("--mu", o.bigon_mu, "Bigon thinness bound");
    cert->add_option("--bigon-samples", o.bigon_samples, "Node pairs sampled for bigons");
    add_build_options(cert, o);

    auto* amalgam = add("amalgam", "Glue copies of a RAAG ball along a rank-one axis", cmd_amalgam);
    amalgam->add_option("--spec", o.amalgam_path, "Amalgam spec file");
    amalgam->add_option("--output", o.output, "Optional .mfc output");
    add_build_options(amalgam, o);

    auto* probe = add("probe", "Largest crossing grid", cmd_probe);
    add_input_options(probe, o);
    probe->add_option("--limit", o.limit, "Largest grid side searched");
    add_build_options(probe, o);

    auto fail = [&](const std::string& code, const std::string& detail) {
        err << "error: " << code << ": " << detail << '\n';
        return kInputError;
    };

    try {
        std::vector<std::string> argv = args;
        if (!argv.empty()) {
            const auto it = std::find(argv.begin(), argv.end(), "--config");
            auto* sub = app.get_subcommand_no_throw(argv.front());
            if (sub && it != argv.end() && it + 1 != argv.end()) {
                const auto extra = merge_config(*sub, *(it + 1), argv);
                argv.insert(argv.begin() + 1, extra.begin(), extra.end());
            }
        }
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        auto* sub = args.empty() ? nullptr : app.get_subcommand_no_throw(args.front());
        out << (sub ? sub->help() : app.help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        return fail("BAD_INPUT", e.what());
    } catch (const Error& e) {
        return fail(std::string(to_string(e.code())), e.detail());
    }

    for (auto& [sub, fn] : commands) {
        if (!sub->parsed()) continue;
        Sink sink(out, o.out_dir);
        try {
            return fn(o, sink);
        } catch (const Error& e) {
            return fail(std::string(to_string(e.code())), e.detail());
        } catch (const std::exception& e) {
            return fail("BAD_INPUT", e.what());
        }
    }
    return fail("BAD_INPUT", "no command given");
}

}  // namespace medianforge::cli
