#include "dress/wl.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace dress {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return std::size_t(h);
    }
};

using ColorDict = std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash>;

std::uint32_t intern(ColorDict& dict, const std::vector<std::uint32_t>& sig) {
    auto [it, fresh] = dict.emplace(sig, std::uint32_t(dict.size()));
    (void)fresh;
    return it->second;
}

bool same_multiset(const std::vector<std::uint32_t>& a,
                   const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return false;
    auto sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
}

// Shared-dictionary refinement loop: both graphs' signatures feed one
// dictionary, so equal colors mean equal refinement histories.  Stops as
// soon as the color multisets split, or when a sweep stops growing the
// dictionary.
template <typename Refine>
WlResult joint_refine(std::vector<std::uint32_t>& c1, std::vector<std::uint32_t>& c2,
                      std::size_t initial_colors, Refine refine) {
    WlResult res;
    std::size_t ncols = initial_colors;
    for (;;) {
        if (!same_multiset(c1, c2)) {
            res.distinguished = true;
            return res;
        }
        ColorDict dict;
        std::vector<std::uint32_t> n1(c1.size()), n2(c2.size());
        refine(0, c1, c2, dict, n1);
        refine(1, c2, c1, dict, n2);
        c1.swap(n1);
        c2.swap(n2);
        ++res.rounds;
        if (dict.size() == ncols) {
            res.distinguished = !same_multiset(c1, c2);
            return res;
        }
        ncols = dict.size();
    }
}

WlResult color_refinement(const Graph& a, const Graph& b) {
    auto adj1 = a.adjacency_lists();
    auto adj2 = b.adjacency_lists();
    std::vector<std::uint32_t> c1(a.num_vertices(), 0), c2(b.num_vertices(), 0);

    auto refine = [&](int which, const std::vector<std::uint32_t>& colors,
                      const std::vector<std::uint32_t>&, ColorDict& dict,
                      std::vector<std::uint32_t>& out) {
        const auto& adj = which == 0 ? adj1 : adj2;
        std::vector<std::uint32_t> sig;
        for (std::size_t v = 0; v < colors.size(); ++v) {
            sig.clear();
            sig.push_back(colors[v]);
            std::size_t mark = sig.size();
            for (int w : adj[v]) sig.push_back(colors[w]);
            std::sort(sig.begin() + mark, sig.end());
            out[v] = intern(dict, sig);
        }
    };
    return joint_refine(c1, c2, 1, refine);
}

struct TupleSpace {
    int n = 0;
    int k = 0;
    std::size_t count = 1;            // n^k
    std::array<std::size_t, 3> stride{};  // substitution strides per position
    std::vector<std::uint8_t> adj;    // n*n matrix

    explicit TupleSpace(const Graph& g, int k_) : n(g.num_vertices()), k(k_) {
        for (int i = 0; i < k; ++i) count *= std::size_t(n);
        std::size_t s = 1;
        for (int p = k - 1; p >= 0; --p) {
            stride[p] = s;
            s *= std::size_t(n);
        }
        adj.assign(std::size_t(n) * n, 0);
        for (auto [u, v] : g.edges()) {
            adj[std::size_t(u) * n + v] = 1;
            adj[std::size_t(v) * n + u] = 1;
        }
    }

    void decode(std::size_t idx, int* digits) const {
        for (int p = k - 1; p >= 0; --p) {
            digits[p] = int(idx % n);
            idx /= n;
        }
    }

    // index of the tuple with position p replaced by w; unsigned wraparound
    // cancels because the true offset always lands back in [0, count)
    std::size_t subst(std::size_t idx, const int* t, int p, int w) const {
        return idx + (std::size_t(w) - std::size_t(t[p])) * stride[p];
    }

    // equality/adjacency pattern over ordered pairs of positions
    std::uint32_t atomic_type(const int* t) const {
        std::uint32_t code = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                code <<= 2;
                code |= std::uint32_t(t[i] == t[j]) << 1;
                code |= adj[std::size_t(t[i]) * n + t[j]];
            }
        return code;
    }
};

WlResult tuple_refinement(const Graph& a, const Graph& b, int k, bool folklore) {
    TupleSpace ta(a, k), tb(b, k);
    if (ta.count + tb.count > 100000000ull)
        throw std::length_error("tuple table would exceed the 1e8-entry memory guard");

    // initial coloring by atomic type, shared dictionary
    ColorDict init_dict;
    std::vector<std::uint32_t> c1(ta.count), c2(tb.count);
    std::vector<std::uint32_t> key(1);
    int digits[3];
    for (std::size_t i = 0; i < ta.count; ++i) {
        ta.decode(i, digits);
        key[0] = ta.atomic_type(digits);
        c1[i] = intern(init_dict, key);
    }
    for (std::size_t i = 0; i < tb.count; ++i) {
        tb.decode(i, digits);
        key[0] = tb.atomic_type(digits);
        c2[i] = intern(init_dict, key);
    }

    auto refine = [&](int which, const std::vector<std::uint32_t>& colors,
                      const std::vector<std::uint32_t>&, ColorDict& dict,
                      std::vector<std::uint32_t>& out) {
        const TupleSpace& ts = which == 0 ? ta : tb;
        const int n = ts.n;
        std::vector<std::uint32_t> sig;
        std::vector<std::array<std::uint32_t, 3>> rows(static_cast<std::size_t>(n));
        int t[3];
        for (std::size_t i = 0; i < ts.count; ++i) {
            ts.decode(i, t);
            sig.clear();
            sig.push_back(colors[i]);
            if (folklore) {
                // one multiset of per-substitution color vectors
                for (int w = 0; w < n; ++w) {
                    auto& row = rows[std::size_t(w)];
                    row.fill(0);
                    for (int p = 0; p < k; ++p)
                        row[std::size_t(p)] = colors[ts.subst(i, t, p, w)];
                }
                std::sort(rows.begin(), rows.end());
                for (const auto& row : rows)
                    for (int p = 0; p < k; ++p) sig.push_back(row[std::size_t(p)]);
            } else {
                // one sorted multiset per position
                for (int p = 0; p < k; ++p) {
                    std::size_t mark = sig.size();
                    for (int w = 0; w < n; ++w)
                        sig.push_back(colors[ts.subst(i, t, p, w)]);
                    std::sort(sig.begin() + mark, sig.end());
                }
            }
            out[i] = intern(dict, sig);
        }
    };
    return joint_refine(c1, c2, init_dict.size(), refine);
}

}  // namespace

WlMethod parse_wl_method(const std::string& name) {
    if (name == "1wl" || name == "cr") return {WlMethod::Kind::ColorRefinement, 1};
    if (name.size() == 4 && (name.substr(0, 3) == "owl" || name.substr(0, 3) == "fwl")) {
        int k = name[3] - '0';
        if (k >= 1 && k <= 3)
            return {name[0] == 'o' ? WlMethod::Kind::Oblivious : WlMethod::Kind::Folklore, k};
    }
    throw std::invalid_argument("unknown WL method '" + name +
                                "' (expected 1wl, owl2, owl3, fwl2, fwl3)");
}

std::string wl_method_name(const WlMethod& m) {
    switch (m.kind) {
        case WlMethod::Kind::ColorRefinement: return "1wl";
        case WlMethod::Kind::Oblivious: return "owl" + std::to_string(m.k);
        case WlMethod::Kind::Folklore: return "fwl" + std::to_string(m.k);
    }
    return "?";
}

WlResult wl_distinguish(const Graph& a, const Graph& b, const WlMethod& m) {
    if (m.k < 1 || m.k > 3)
        throw std::invalid_argument("tuple arity supported up to 3");
    if (m.kind == WlMethod::Kind::ColorRefinement || m.k == 1)
        return color_refinement(a, b);
    return tuple_refinement(a, b, m.k, m.kind == WlMethod::Kind::Folklore);
}

bool srg_1wl_check(const Graph& g) {
    if (!srg_parameters(g)) return false;
    // single-graph color refinement from a uniform start
    auto adj = g.adjacency_lists();
    std::vector<std::uint32_t> c(g.num_vertices(), 0);
    std::size_t ncols = 1;
    for (;;) {
        ColorDict dict;
        std::vector<std::uint32_t> next(c.size());
        std::vector<std::uint32_t> sig;
        for (std::size_t v = 0; v < c.size(); ++v) {
            sig.clear();
            sig.push_back(c[v]);
            std::size_t mark = sig.size();
            for (int w : adj[v]) sig.push_back(c[w]);
            std::sort(sig.begin() + mark, sig.end());
            next[v] = intern(dict, sig);
        }
        c.swap(next);
        if (dict.size() == ncols) break;
        ncols = dict.size();
    }
    return ncols == 1;
}

}  // namespace dress
