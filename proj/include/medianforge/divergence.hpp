#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "medianforge/median_graph.hpp"

namespace medianforge {

class Report;

// A detour length or INFINITE. `caveat` marks values the truncation cannot
// certify: a finite value that a path through the missing region might
// shorten, or an INFINITE value whose disconnection may be an artefact.
struct DivergenceValue {
    std::optional<std::int64_t> length;
    bool caveat = false;

    bool infinite() const { return !length.has_value(); }
    static DivergenceValue finite(std::int64_t v, bool caveat = false) { return {v, caveat}; }
    static DivergenceValue unbounded(bool caveat = false) { return {std::nullopt, caveat}; }
};

struct RayDivergenceOptions {
    int radius_factor = 3;  // require g.radius >= radius_factor * r
};

// Shortest path from alpha(r) to beta(r) through vertices at distance >= r from the base.
DivergenceValue ray_divergence(const MedianGraph& g, const GeodesicRay& alpha, const GeodesicRay& beta, int r,
                               const RayDivergenceOptions& options = {});

struct FullDivergenceOptions {
    std::size_t exhaustive_cap = 800;  // core vertex count up to which all triples are scanned
    std::size_t samples = 5000;
    std::uint64_t seed = 0;
};

struct FullDivergenceResult {
    DivergenceValue value;
    std::array<VertexId, 3> witness{};  // (a, b, c) attaining the supremum
    std::size_t triples = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
};

// Supremum over core triples with d(a,b) <= n and rho = d(c,{a,b}) > 0 of the
// shortest a-b path avoiding the open ball of radius lambda*rho - mu about c.
FullDivergenceResult full_divergence(const MedianGraph& g, int n, double lambda, double mu,
                                     const FullDivergenceOptions& options = {});

enum class ProfileKind { RAY_PAIR, FULL };

struct DivergenceSample {
    int r = 0;
    DivergenceValue value;
};

struct GrowthFit {
    double exponent = 0;
    double log_constant = 0;
    int r_min = 0;
    int r_max = 0;
    double residual = 0;  // RMS of log residuals
    std::size_t samples = 0;
};

struct DivergenceProfile {
    ProfileKind kind = ProfileKind::RAY_PAIR;
    std::vector<DivergenceSample> samples;  // strictly increasing r
    double lambda = 0;
    double mu = 0;
    std::optional<GrowthFit> fit;

    bool all_infinite() const;
    bool any_caveat() const;
};

DivergenceProfile ray_divergence_profile(const MedianGraph& g, const GeodesicRay& alpha, const GeodesicRay& beta,
                                         std::span<const int> radii, const RayDivergenceOptions& options = {});
DivergenceProfile full_divergence_profile(const MedianGraph& g, std::span<const int> ns, double lambda, double mu,
                                          const FullDivergenceOptions& options = {});

// Window [max(4, r_max/8), r_max] over the sampled radii.
std::pair<int, int> default_window(const DivergenceProfile& profile);

// Least squares of log(value) on log(r) over finite positive samples in the window.
DivergenceProfile fit_exponent(const DivergenceProfile& profile, int r_min, int r_max);
DivergenceProfile fit_exponent(const DivergenceProfile& profile);

enum class Growth { LINEAR, SUPERLINEAR, INDETERMINATE, INFINITE };

struct GrowthThresholds {
    double linear_max = 1.25;
    double superlinear_min = 1.6;
};

// LINEAR / SUPERLINEAR / INDETERMINATE from the fitted exponent.
Growth classify_growth(const DivergenceProfile& fitted, const GrowthThresholds& thresholds = {});
std::string_view to_string(Growth growth);

// CSV with header `r,value,flag`; value `inf` for INFINITE, flag 1 for caveats.
void write_profile_csv(std::ostream& out, const DivergenceProfile& profile);
void add_fit_block(Report& report, const DivergenceProfile& profile, const GrowthThresholds& thresholds = {});

}  // namespace medianforge
