#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medianforge {

enum class ErrorCode {
    BAD_INPUT,
    NOT_CONNECTED,
    NOT_BIPARTITE,
    MEDIAN_VIOLATION,
    BAD_RADIUS,
    INCONSISTENT_SIDES,
    OUT_OF_CORE,
    HULL_TRUNCATED,
    TRUNCATION_AMBIGUOUS,
    SIZE_LIMIT,
    NOT_RANK_ONE,
    CONVEXITY_VIOLATION,
    RADIUS_INSUFFICIENT,
    BASE_MISMATCH,
    PARAM_RANGE,
    TOO_FEW_SAMPLES,
    INVARIANT_FAIL,
    CROSS_CONDITION_FAIL,
    AXIS_TOO_SHORT,
    FAMILY_MISMATCH,
    NO_FLATS,
    EMPTY_PERIPHERALS,
    NOT_GEODESIC,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail, std::vector<std::uint32_t> witness = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }
    // Vertex, edge or hyperplane ids backing the failure; meaning depends on the code.
    const std::vector<std::uint32_t>& witness() const noexcept { return witness_; }

private:
    ErrorCode code_;
    std::string detail_;
    std::vector<std::uint32_t> witness_;
};

}  // namespace medianforge
