#include "medianforge/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "medianforge/errors.hpp"

namespace medianforge {

bool is_valid_generator_name(std::string_view name) {
    if (name.empty()) return false;
    auto head = static_cast<unsigned char>(name.front());
    if (!std::isalpha(head) && head != '_') return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!is_valid_generator_name(n)) throw Error(ErrorCode::BAD_INPUT, "invalid generator name '" + n + "'");
        if (!seen.insert(n).second) throw Error(ErrorCode::BAD_INPUT, "duplicate generator '" + n + "'");
        if (n.size() > 1) needs_separator_ = true;
    }
}

std::optional<std::uint16_t> Alphabet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<std::uint16_t>(i);
    }
    return std::nullopt;
}

namespace {

constexpr std::string_view kSuperscriptInverse = "⁻¹";  // ⁻¹

bool is_separator(char c) { return c == ' ' || c == '.' || c == '*' || c == '\t'; }

}  // namespace

Word Alphabet::parse(std::string_view text) const {
    Word out;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && is_separator(text[pos])) ++pos;
    };
    skip();
    if (text.substr(pos) == "1") return out;
    while (pos < text.size()) {
        std::size_t best_len = 0;
        std::uint16_t best = 0;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const auto& n = names_[i];
            if (n.size() > best_len && text.substr(pos, n.size()) == n) {
                best_len = n.size();
                best = static_cast<std::uint16_t>(i);
            }
        }
        if (best_len == 0) {
            throw Error(ErrorCode::BAD_INPUT,
                        "cannot parse word '" + std::string(text) + "' at offset " + std::to_string(pos));
        }
        pos += best_len;
        bool inv = false;
        if (text.substr(pos, 3) == "^-1") {
            inv = true;
            pos += 3;
        } else if (text.substr(pos, 1) == "'") {
            inv = true;
            pos += 1;
        } else if (text.substr(pos, kSuperscriptInverse.size()) == kSuperscriptInverse) {
            inv = true;
            pos += kSuperscriptInverse.size();
        }
        out.push_back({best, inv});
        skip();
    }
    return out;
}

Letter Alphabet::parse_letter(std::string_view text) const {
    Word w = parse(text);
    if (w.size() != 1) throw Error(ErrorCode::BAD_INPUT, "expected a single letter, got '" + std::string(text) + "'");
    return w.front();
}

std::string Alphabet::format(Letter letter) const {
    std::string s = name(letter.generator);
    if (letter.inverse) s += "^-1";
    return s;
}

std::string Alphabet::format(const Word& word) const {
    if (word.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0 && needs_separator_) s += '.';
        s += format(word[i]);
    }
    return s;
}

Word inverse(const Word& word) {
    Word out(word.rbegin(), word.rend());
    for (auto& l : out) l = l.inverted();
    return out;
}

Word power(const Word& word, int exponent) {
    const Word base = exponent >= 0 ? word : inverse(word);
    Word out;
    for (int i = 0; i < std::abs(exponent); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

}  // namespace medianforge
