#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "medianforge/median_graph.hpp"

namespace medianforge {

// Raw contents of a .mfc file, before validation.
struct ComplexRecords {
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
    std::uint32_t base = 0;
    int radius = 0;
    int core_radius = 0;
};

// Header: `medianforge-complex 1 base=<id> radius=<r> core=<c>`; then
// `v <id> [word]` and `e <id1> <id2> <label>` lines, ascending ids.
ComplexRecords parse_complex(std::istream& in);
MedianGraph read_complex(std::istream& in, const BuildOptions& options = {});
MedianGraph load_complex(const std::string& path, const BuildOptions& options = {});

void write_complex(std::ostream& out, const MedianGraph& g);
void save_complex(const std::string& path, const MedianGraph& g);

}  // namespace medianforge
