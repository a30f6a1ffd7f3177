#pragma once

#include <string>

#include "dress/graph.hpp"

namespace dress {

// Weisfeiler-Leman style oracles, used to cross-check separations claimed by
// the fingerprint pipeline.
struct WlMethod {
    enum class Kind { ColorRefinement, Oblivious, Folklore };
    Kind kind = Kind::ColorRefinement;
    int k = 1;  // tuple arity for Oblivious / Folklore
};

// "1wl", "owl2", "owl3", "fwl2", "fwl3", ...
WlMethod parse_wl_method(const std::string& name);
std::string wl_method_name(const WlMethod& m);

struct WlResult {
    bool distinguished = false;
    int rounds = 0;
};

// Joint refinement on both graphs with a shared color dictionary; reports
// whether the stable color multisets differ.  Throws std::length_error when
// the tuple table would exceed the memory guard.
WlResult wl_distinguish(const Graph& a, const Graph& b, const WlMethod& m);

// True iff g is strongly regular and color refinement leaves it
// monochromatic (the classic 1-WL blind spot).
bool srg_1wl_check(const Graph& g);

}  // namespace dress
