#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace medianforge {

struct Letter {
    std::uint16_t generator = 0;
    bool inverse = false;

    Letter inverted() const { return {generator, !inverse}; }
    // Shortlex order: a < a^-1 < b < b^-1 < ...
    std::uint32_t rank() const { return 2u * generator + (inverse ? 1u : 0u); }
    auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Generator names plus the text syntax for words.
// Syntax: generator names concatenated (longest match), optional inverse
// marker "^-1", "'" or "⁻¹" after a name, optional separators ' ', '.', '*'.
// The empty word is written "1".
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::uint16_t generator) const { return names_.at(generator); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::uint16_t> find(std::string_view name) const;

    // Throws Error(BAD_INPUT) on unknown generators.
    Word parse(std::string_view text) const;
    Letter parse_letter(std::string_view text) const;
    std::string format(const Word& word) const;
    std::string format(Letter letter) const;

private:
    std::vector<std::string> names_;
    bool needs_separator_ = false;
};

Word inverse(const Word& word);
Word power(const Word& word, int exponent);
bool is_valid_generator_name(std::string_view name);

}  // namespace medianforge
