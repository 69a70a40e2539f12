#include "medianforge/errors.hpp"

namespace medianforge {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::BAD_INPUT: return "BAD_INPUT";
    case ErrorCode::NOT_CONNECTED: return "NOT_CONNECTED";
    case ErrorCode::NOT_BIPARTITE: return "NOT_BIPARTITE";
    case ErrorCode::MEDIAN_VIOLATION: return "MEDIAN_VIOLATION";
    case ErrorCode::BAD_RADIUS: return "BAD_RADIUS";
    case ErrorCode::INCONSISTENT_SIDES: return "INCONSISTENT_SIDES";
    case ErrorCode::OUT_OF_CORE: return "OUT_OF_CORE";
    case ErrorCode::HULL_TRUNCATED: return "HULL_TRUNCATED";
    case ErrorCode::TRUNCATION_AMBIGUOUS: return "TRUNCATION_AMBIGUOUS";
    case ErrorCode::SIZE_LIMIT: return "SIZE_LIMIT";
    case ErrorCode::NOT_RANK_ONE: return "NOT_RANK_ONE";
    case ErrorCode::CONVEXITY_VIOLATION: return "CONVEXITY_VIOLATION";
    case ErrorCode::RADIUS_INSUFFICIENT: return "RADIUS_INSUFFICIENT";
    case ErrorCode::BASE_MISMATCH: return "BASE_MISMATCH";
    case ErrorCode::PARAM_RANGE: return "PARAM_RANGE";
    case ErrorCode::TOO_FEW_SAMPLES: return "TOO_FEW_SAMPLES";
    case ErrorCode::INVARIANT_FAIL: return "INVARIANT_FAIL";
    case ErrorCode::CROSS_CONDITION_FAIL: return "CROSS_CONDITION_FAIL";
    case ErrorCode::AXIS_TOO_SHORT: return "AXIS_TOO_SHORT";
    case ErrorCode::FAMILY_MISMATCH: return "FAMILY_MISMATCH";
    case ErrorCode::NO_FLATS: return "NO_FLATS";
    case ErrorCode::EMPTY_PERIPHERALS: return "EMPTY_PERIPHERALS";
    case ErrorCode::NOT_GEODESIC: return "NOT_GEODESIC";
    }
    return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& detail, std::vector<std::uint32_t> witness)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail),
      witness_(std::move(witness)) {}

}  // namespace medianforge
