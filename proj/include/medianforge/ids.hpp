#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>

namespace medianforge {

template <class Tag>
struct Id {
    std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

    constexpr Id() = default;
    constexpr explicit Id(std::uint32_t v) : value(v) {}

    constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
    constexpr auto operator<=>(const Id&) const = default;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;
using HyperplaneId = Id<struct HyperplaneTag>;

// LEFT is always the halfspace containing the base vertex.
enum class Side : std::uint8_t { LEFT, RIGHT };

}  // namespace medianforge

template <class Tag>
struct std::hash<medianforge::Id<Tag>> {
    std::size_t operator()(const medianforge::Id<Tag>& id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
