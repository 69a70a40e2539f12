#pragma once

#include <iosfwd>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace medianforge {

// Key-value text block: `[section]` headers followed by `key = value` lines.
class Report {
public:
    Report& section(std::string name);
    Report& add(std::string key, std::string value);
    Report& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
    Report& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "true" : "false")); }
    Report& add(std::string key, double value);
    template <class Int>
        requires std::is_integral_v<Int>
    Report& add(std::string key, Int value) {
        return add(std::move(key), std::to_string(value));
    }

    void write(std::ostream& out) const;
    std::string str() const;

private:
    struct Section {
        std::string name;
        std::vector<std::pair<std::string, std::string>> entries;
    };
    std::vector<Section> sections_;
};

std::string format_real(double value);

}  // namespace medianforge
