#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dress/graph.hpp"

namespace dress {

enum class Family {
    Cycle,
    Path,
    Complete,
    CompleteBipartite,
    Prism,
    Kneser,
    Johnson,
    Hamming,
    Paley,
    Rook,
    Shrikhande,
    Petersen,
    RandomRegular,
    DisjointUnion,  // parts holds sub-specs
    ComplementOf,   // parts holds one sub-spec
    CfiPair,        // parts holds the base spec; twisted selects the member
};

struct GeneratorSpec {
    Family family;
    std::vector<int> params;           // family-specific, see generate()
    std::uint64_t seed = 0;            // random_regular only
    std::vector<GeneratorSpec> parts;  // union / complement / cfi
    bool twisted = false;              // cfi member selector
};

Graph generate(const GeneratorSpec& spec);

// Untwisted and twisted CFI companions over the same base graph.  The base
// must be connected with minimum degree >= 2.
std::pair<Graph, Graph> generate_cfi_pair(const Graph& base);

// "gen:" expression syntax used by the CLI and tests, e.g.
//   gen:cycle:6  gen:kneser:5:2  gen:union:C3:C3
//   gen:complement:petersen  gen:cfi:K5:twisted
//   gen:random_regular:3:10:7
GeneratorSpec parse_generator_expr(const std::string& expr);

// Degree-d graph on v vertices via the pairing model; throws if no simple
// graph materializes within the retry budget.  Deterministic per seed across
// platforms.
Graph random_regular(int d, int v, std::uint64_t seed);

}  // namespace dress
