#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dress/graph.hpp"

namespace dress {

class Graph6Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One line of graph6 text (trailing newline / ">>graph6<<" header tolerated).
Graph decode_graph6(std::string_view line);

std::string encode_graph6(const Graph& g);

// Reads a whole file, one graph per line; blank lines skipped.  With
// skip_bad, undecodable lines are dropped (count reported via bad_lines),
// otherwise the first bad line throws.
std::vector<Graph> load_family(const std::string& path, bool skip_bad = false,
                               std::size_t* bad_lines = nullptr);

void save_family(const std::string& path, const std::vector<Graph>& graphs);

}  // namespace dress
