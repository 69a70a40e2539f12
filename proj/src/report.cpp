#include "medianforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace medianforge {

std::string format_real(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

Report& Report::section(std::string name) {
    sections_.push_back({std::move(name), {}});
    return *this;
}

Report& Report::add(std::string key, std::string value) {
    if (sections_.empty()) sections_.push_back({"", {}});
    sections_.back().entries.emplace_back(std::move(key), std::move(value));
    return *this;
}

Report& Report::add(std::string key, double value) { return add(std::move(key), format_real(value)); }

void Report::write(std::ostream& out) const {
    bool first = true;
    for (const auto& s : sections_) {
        if (!first) out << '\n';
        first = false;
        if (!s.name.empty()) out << '[' << s.name << "]\n";
        for (const auto& [k, v] : s.entries) out << k << " = " << v << '\n';
    }
}

std::string Report::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace medianforge
