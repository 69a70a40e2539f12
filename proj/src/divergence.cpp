#include "medianforge/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include "medianforge/errors.hpp"
#include "medianforge/report.hpp"
#include "medianforge/traversal.hpp"

namespace medianforge {

namespace {

// Least distance from any reached vertex on the sphere, or kUnreached.
std::int32_t to_sphere(const MedianGraph& g, const std::vector<std::int32_t>& dist) {
    std::int32_t best = kUnreached;
    for (std::uint32_t v = 0; v < dist.size(); ++v) {
        if (dist[v] == kUnreached || !g.on_sphere(VertexId(v))) continue;
        if (best == kUnreached || dist[v] < best) best = dist[v];
    }
    return best;
}

// A hyperplane separating x from y, lying wholly inside the truncation, whose
// every dual edge has an endpoint outside the allowed region.
template <class Allowed>
bool has_blocked_wall(const MedianGraph& g, VertexId x, VertexId y, Allowed&& allowed) {
    for (HyperplaneId h : g.separating_hyperplanes(x, y)) {
        const auto& hp = g.hyperplane(h);
        if (hp.boundary_flag) continue;
        const bool blocked = std::all_of(hp.dual_edges.begin(), hp.dual_edges.end(), [&](EdgeId e) {
            return !allowed(g.edge(e).u) || !allowed(g.edge(e).v);
        });
        if (blocked) return true;
    }
    return false;
}

}  // namespace

DivergenceValue ray_divergence(const MedianGraph& g, const GeodesicRay& alpha, const GeodesicRay& beta, int r,
                               const RayDivergenceOptions& options) {
    if (alpha.base() != g.base() || beta.base() != g.base()) {
        throw Error(ErrorCode::BASE_MISMATCH, "rays must start at the base vertex");
    }
    if (r < 0) throw Error(ErrorCode::PARAM_RANGE, "r must be nonnegative");
    if (alpha.length() < r || beta.length() < r) {
        throw Error(ErrorCode::PARAM_RANGE, "rays of length " + std::to_string(alpha.length()) + " and " +
                                                std::to_string(beta.length()) + " do not reach r = " + std::to_string(r));
    }
    if (g.radius() < options.radius_factor * r) {
        throw Error(ErrorCode::RADIUS_INSUFFICIENT, "radius " + std::to_string(g.radius()) + " is below " +
                                                        std::to_string(options.radius_factor) + "r = " +
                                                        std::to_string(options.radius_factor * r));
    }
    const VertexId src = alpha.at(r), tgt = beta.at(r);
    auto outside = [&](VertexId v) { return g.depth(v) >= r; };
    const VertexId s1[] = {src}, s2[] = {tgt};
    const auto from_src = bfs_distances(g, s1, outside);
    const auto from_tgt = bfs_distances(g, s2, outside);
    const auto src_sphere = to_sphere(g, from_src);
    const auto tgt_sphere = to_sphere(g, from_tgt);

    if (from_src[tgt.value] != kUnreached) {
        const std::int64_t length = from_src[tgt.value];
        // A route through the missing region enters and leaves through the sphere.
        const bool exact = src_sphere == kUnreached || tgt_sphere == kUnreached ||
                           length <= static_cast<std::int64_t>(src_sphere) + tgt_sphere + 2;
        return DivergenceValue::finite(length, !exact);
    }
    // A bounded component of the punctured truncation is a component of the whole space.
    if (src_sphere == kUnreached || tgt_sphere == kUnreached) return DivergenceValue::unbounded(false);
    // So does a separating hyperplane lying wholly inside the truncation with every dual edge removed.
    return DivergenceValue::unbounded(!has_blocked_wall(g, src, tgt, outside));
}

FullDivergenceResult full_divergence(const MedianGraph& g, int n, double lambda, double mu,
                                     const FullDivergenceOptions& options) {
    if (!(lambda > 0 && lambda < 1)) throw Error(ErrorCode::PARAM_RANGE, "lambda must lie in (0,1)");
    if (!(mu >= 0)) throw Error(ErrorCode::PARAM_RANGE, "mu must be nonnegative");
    if (n < 0 || n > g.core_radius()) {
        throw Error(ErrorCode::PARAM_RANGE, "n must lie in [0, core radius " + std::to_string(g.core_radius()) + "]");
    }
    FullDivergenceResult result;
    result.seed = options.seed;
    result.value = DivergenceValue::finite(0);
    result.witness = {g.base(), g.base(), g.base()};
    if (n == 0) return result;

    std::vector<VertexId> core;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (g.in_core(VertexId(v))) core.push_back(VertexId(v));
    result.exhaustive = core.size() <= options.exhaustive_cap;

    bool any_caveat = false;
    bool saw_infinite = false;
    bool certain_infinite = false;
    std::int64_t best = 0;
    auto consider = [&](VertexId a, VertexId b, VertexId c, const DivergenceValue& v) {
        ++result.triples;
        any_caveat = any_caveat || v.caveat;
        if (v.infinite()) {
            if (!saw_infinite || (!v.caveat && !certain_infinite)) result.witness = {a, b, c};
            saw_infinite = true;
            certain_infinite = certain_infinite || !v.caveat;
        } else if (!saw_infinite && *v.length > best) {
            best = *v.length;
            result.witness = {a, b, c};
        }
    };

    // Detours from a to every target, grouped by avoidance threshold.
    auto scan = [&](VertexId a, VertexId c, const std::vector<std::int32_t>& dc,
                    const std::vector<VertexId>& targets) {
        std::map<double, std::vector<VertexId>> by_threshold;
        for (VertexId b : targets) {
            const int rho = std::min(dc[a.value], dc[b.value]);
            if (rho <= 0) continue;
            by_threshold[lambda * rho - mu].push_back(b);
        }
        for (const auto& [t, bs] : by_threshold) {
            auto allowed = [&](VertexId p) { return static_cast<double>(dc[p.value]) >= t; };
            const VertexId src[] = {a};
            const auto da = bfs_distances(g, src, allowed);
            const auto sphere = to_sphere(g, da);
            for (VertexId b : bs) {
                if (da[b.value] == kUnreached) {
                    const bool certain = sphere == kUnreached || has_blocked_wall(g, a, b, allowed);
                    consider(a, b, c, DivergenceValue::unbounded(!certain));
                } else {
                    const std::int64_t len = da[b.value];
                    const bool exact = sphere == kUnreached ||
                                       len <= static_cast<std::int64_t>(sphere) + (g.radius() - g.depth(b)) + 2;
                    consider(a, b, c, DivergenceValue::finite(len, !exact));
                }
            }
        }
    };

    if (result.exhaustive) {
        std::vector<std::vector<VertexId>> near(core.size());
        for (std::size_t i = 0; i < core.size(); ++i) {
            const VertexId src[] = {core[i]};
            const auto d = bfs_distances(g, src, [](VertexId) { return true; }, n);
            for (VertexId b : core)
                if (b != core[i] && d[b.value] != kUnreached && d[b.value] <= n) near[i].push_back(b);
        }
        for (VertexId c : core) {
            const auto dc = bfs_distances(g, c);
            for (std::size_t i = 0; i < core.size(); ++i) scan(core[i], c, dc, near[i]);
        }
    } else {
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::size_t> pick(0, core.size() - 1);
        for (std::size_t s = 0; s < options.samples; ++s) {
            const VertexId c = core[pick(rng)], a = core[pick(rng)];
            const VertexId src[] = {a};
            const auto d = bfs_distances(g, src, [](VertexId) { return true; }, n);
            std::vector<VertexId> near;
            for (VertexId b : core)
                if (b != a && d[b.value] != kUnreached && d[b.value] <= n) near.push_back(b);
            if (near.empty()) continue;
            std::uniform_int_distribution<std::size_t> pick_b(0, near.size() - 1);
            const std::vector<VertexId> target = {near[pick_b(rng)]};
            scan(a, c, bfs_distances(g, c), target);
        }
    }
    result.value = saw_infinite ? DivergenceValue::unbounded(!certain_infinite)
                                : DivergenceValue::finite(best, any_caveat);
    return result;
}

bool DivergenceProfile::all_infinite() const {
    return !samples.empty() &&
           std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.value.infinite(); });
}

bool DivergenceProfile::any_caveat() const {
    return std::any_of(samples.begin(), samples.end(), [](const auto& s) { return s.value.caveat; });
}

DivergenceProfile ray_divergence_profile(const MedianGraph& g, const GeodesicRay& alpha, const GeodesicRay& beta,
                                         std::span<const int> radii, const RayDivergenceOptions& options) {
    DivergenceProfile p;
    p.kind = ProfileKind::RAY_PAIR;
    for (int r : radii) {
        if (!p.samples.empty() && r <= p.samples.back().r) {
            throw Error(ErrorCode::PARAM_RANGE, "sample radii must be strictly increasing");
        }
        p.samples.push_back({r, ray_divergence(g, alpha, beta, r, options)});
    }
    return p;
}

DivergenceProfile full_divergence_profile(const MedianGraph& g, std::span<const int> ns, double lambda, double mu,
                                          const FullDivergenceOptions& options) {
    DivergenceProfile p;
    p.kind = ProfileKind::FULL;
    p.lambda = lambda;
    p.mu = mu;
    for (int n : ns) {
        if (!p.samples.empty() && n <= p.samples.back().r) {
            throw Error(ErrorCode::PARAM_RANGE, "sample radii must be strictly increasing");
        }
        p.samples.push_back({n, full_divergence(g, n, lambda, mu, options).value});
    }
    return p;
}

std::pair<int, int> default_window(const DivergenceProfile& profile) {
    int r_max = 0;
    for (const auto& s : profile.samples) r_max = std::max(r_max, s.r);
    return {std::max(4, r_max / 8), r_max};
}

DivergenceProfile fit_exponent(const DivergenceProfile& profile, int r_min, int r_max) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : profile.samples) {
        if (s.r < r_min || s.r > r_max || s.r <= 0 || s.value.infinite() || *s.value.length <= 0) continue;
        pts.emplace_back(std::log(static_cast<double>(s.r)), std::log(static_cast<double>(*s.value.length)));
    }
    if (pts.size() < 4) {
        throw Error(ErrorCode::TOO_FEW_SAMPLES, std::to_string(pts.size()) + " finite samples in [" +
                                                    std::to_string(r_min) + ", " + std::to_string(r_max) +
                                                    "], need 4");
    }
    const double k = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw Error(ErrorCode::TOO_FEW_SAMPLES, "samples share a single radius");
    GrowthFit fit;
    fit.exponent = sxy / sxx;
    fit.log_constant = my - fit.exponent * mx;
    double ss = 0;
    for (auto [x, y] : pts) {
        const double e = y - (fit.log_constant + fit.exponent * x);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / k);
    fit.r_min = r_min;
    fit.r_max = r_max;
    fit.samples = pts.size();
    DivergenceProfile out = profile;
    out.fit = fit;
    return out;
}

DivergenceProfile fit_exponent(const DivergenceProfile& profile) {
    const auto [lo, hi] = default_window(profile);
    return fit_exponent(profile, lo, hi);
}

Growth classify_growth(const DivergenceProfile& fitted, const GrowthThresholds& thresholds) {
    if (!fitted.fit) return fitted.all_infinite() ? Growth::INFINITE : Growth::INDETERMINATE;
    if (fitted.fit->exponent <= thresholds.linear_max) return Growth::LINEAR;
    if (fitted.fit->exponent >= thresholds.superlinear_min) return Growth::SUPERLINEAR;
    return Growth::INDETERMINATE;
}

std::string_view to_string(Growth growth) {
    switch (growth) {
        case Growth::LINEAR: return "LINEAR";
        case Growth::SUPERLINEAR: return "SUPERLINEAR";
        case Growth::INDETERMINATE: return "INDETERMINATE";
        case Growth::INFINITE: return "INFINITE";
    }
    return "INDETERMINATE";
}

void write_profile_csv(std::ostream& out, const DivergenceProfile& profile) {
    out << "r,value,flag\n";
    for (const auto& s : profile.samples) {
        out << s.r << ',';
        if (s.value.infinite()) out << "inf";
        else out << *s.value.length;
        out << ',' << (s.value.caveat ? 1 : 0) << '\n';
    }
}

void add_fit_block(Report& report, const DivergenceProfile& profile, const GrowthThresholds& thresholds) {
    report.section("fit");
    report.add("kind", profile.kind == ProfileKind::RAY_PAIR ? "RAY_PAIR" : "FULL");
    if (profile.kind == ProfileKind::FULL) {
        report.add("lambda", profile.lambda);
        report.add("mu", profile.mu);
    }
    report.add("samples", profile.samples.size());
    report.add("caveats", profile.any_caveat());
    if (profile.fit) {
        report.add("exponent", profile.fit->exponent);
        report.add("r_min", profile.fit->r_min);
        report.add("r_max", profile.fit->r_max);
        report.add("residual", profile.fit->residual);
        report.add("fitted_samples", profile.fit->samples);
    } else {
        report.add("exponent", "none");
    }
    report.add("growth", std::string(to_string(classify_growth(profile, thresholds))));
}

}  // namespace medianforge
