#include "dress/generators.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <stdexcept>

#include "combinations.hpp"

namespace dress {

namespace {

using detail::lex_subsets;

int intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    int cnt = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++cnt; ++i; ++j; }
    }
    return cnt;
}

Graph cycle_graph(int k) {
    if (k < 3) throw std::invalid_argument("cycle needs k >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
    return Graph(k, std::move(e), "cycle(" + std::to_string(k) + ")");
}

Graph path_graph(int k) {
    if (k < 1) throw std::invalid_argument("path needs k >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
    return Graph(k, std::move(e), "path(" + std::to_string(k) + ")");
}

Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete needs n >= 1");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e), "complete(" + std::to_string(n) + ")");
}

Graph complete_bipartite(int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("complete_bipartite needs positive parts");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return Graph(a + b, std::move(e),
                 "complete_bipartite(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

Graph prism_graph(int k) {
    if (k < 3) throw std::invalid_argument("prism needs k >= 3");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) {
        e.emplace_back(i, (i + 1) % k);
        e.emplace_back(k + i, k + (i + 1) % k);
        e.emplace_back(i, k + i);
    }
    return Graph(2 * k, std::move(e), "prism(" + std::to_string(k) + ")");
}

Graph kneser_graph(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("kneser needs 1 <= k <= n");
    auto vs = lex_subsets(n, k);
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (intersection_size(vs[i], vs[j]) == 0) e.emplace_back(int(i), int(j));
    return Graph(int(vs.size()), std::move(e),
                 "kneser(" + std::to_string(n) + "," + std::to_string(k) + ")");
}

Graph johnson_graph(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("johnson needs 1 <= k <= n");
    auto vs = lex_subsets(n, k);
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (intersection_size(vs[i], vs[j]) == k - 1) e.emplace_back(int(i), int(j));
    return Graph(int(vs.size()), std::move(e),
                 "johnson(" + std::to_string(n) + "," + std::to_string(k) + ")");
}

Graph hamming_graph(int d, int q) {
    if (d < 1 || q < 2) throw std::invalid_argument("hamming needs d >= 1, q >= 2");
    long n = 1;
    for (int i = 0; i < d; ++i) {
        n *= q;
        if (n > 1000000) throw std::invalid_argument("hamming graph too large");
    }
    // vertex index = big-endian base-q word; adjacency = Hamming distance 1
    auto digit = [&](long v, int pos) {
        for (int i = d - 1; i > pos; --i) v /= q;
        return int(v % q);
    };
    std::vector<std::pair<int, int>> e;
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) {
            int diff = 0;
            for (int p = 0; p < d && diff < 2; ++p)
                if (digit(i, p) != digit(j, p)) ++diff;
            if (diff == 1) e.emplace_back(int(i), int(j));
        }
    return Graph(int(n), std::move(e),
                 "hamming(" + std::to_string(d) + "," + std::to_string(q) + ")");
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int f = 2; long(f) * f <= q; ++f)
        if (q % f == 0) return false;
    return true;
}

Graph paley_graph(int q) {
    if (!is_prime(q) || q % 4 != 1)
        throw std::invalid_argument("paley needs a prime q with q = 1 (mod 4)");
    std::vector<bool> qr(q, false);
    for (long x = 1; x < q; ++x) qr[x * x % q] = true;
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            if (qr[(j - i) % q]) e.emplace_back(i, j);
    return Graph(q, std::move(e), "paley(" + std::to_string(q) + ")");
}

Graph rook_graph(int k) {
    if (k < 2) throw std::invalid_argument("rook needs k >= 2");
    int n = k * k;  // vertex i sits at row i/k, column i%k
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (i / k == j / k || i % k == j % k) e.emplace_back(i, j);
    return Graph(n, std::move(e), "rook(" + std::to_string(k) + ")");
}

Graph shrikhande_graph() {
    // Cayley graph on Z4 x Z4, connection set +-(1,0), +-(0,1), +-(1,1)
    static const int con[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
    std::set<std::pair<int, int>> e;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (const auto& d : con) {
                int u = 4 * a + b;
                int v = 4 * ((a + d[0]) % 4) + (b + d[1]) % 4;
                e.insert({std::min(u, v), std::max(u, v)});
            }
    return Graph(16, std::vector<std::pair<int, int>>(e.begin(), e.end()), "shrikhande");
}

bool is_connected(const Graph& g) {
    int n = g.num_vertices();
    if (n == 0) return false;
    auto adj = g.adjacency_lists();
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

Graph cfi_member(const Graph& base, bool twisted) {
    int bn = base.num_vertices();
    const auto& be = base.edges();  // already sorted: edge 0 is lexicographically first
    std::vector<std::vector<int>> inc(bn);
    for (std::size_t ei = 0; ei < be.size(); ++ei) {
        inc[be[ei].first].push_back(int(ei));
        inc[be[ei].second].push_back(int(ei));
    }

    // gadget vertex = (base vertex u, even-size subset of u's incident edges),
    // subsets as masks over inc[u] positions, ascending mask order
    struct GadgetVertex {
        int u;
        unsigned mask;
    };
    std::vector<GadgetVertex> verts;
    std::vector<std::vector<int>> by_base(bn);
    for (int u = 0; u < bn; ++u) {
        unsigned deg = unsigned(inc[u].size());
        for (unsigned mask = 0; mask < (1u << deg); ++mask)
            if (std::popcount(mask) % 2 == 0) {
                by_base[u].push_back(int(verts.size()));
                verts.push_back({u, mask});
            }
    }

    auto local_pos = [&](int u, int ei) {
        const auto& lst = inc[u];
        return int(std::lower_bound(lst.begin(), lst.end(), ei) - lst.begin());
    };

    std::vector<std::pair<int, int>> edges;
    for (std::size_t ei = 0; ei < be.size(); ++ei) {
        auto [u, v] = be[ei];
        bool flip = twisted && ei == 0;  // twist on the lexicographically first edge
        int pu = local_pos(u, int(ei));
        int pv = local_pos(v, int(ei));
        for (int a : by_base[u])
            for (int b : by_base[v]) {
                bool in_s = (verts[a].mask >> pu) & 1;
                bool in_t = (verts[b].mask >> pv) & 1;
                if ((in_s == in_t) != flip) edges.emplace_back(a, b);
            }
    }
    Graph out(int(verts.size()), std::move(edges));
    out.set_name("cfi(" + (base.name().empty() ? "base" : base.name()) +
                 (twisted ? ",twisted)" : ")"));
    return out;
}

std::uint64_t draw_below(std::mt19937_64& gen, std::uint64_t bound) {
    // unbiased bounded draw; avoids distribution objects, which the standard
    // leaves unspecified across implementations
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = gen();
        if (r >= threshold) return r % bound;
    }
}

void require_params(const GeneratorSpec& s, std::size_t want) {
    if (s.params.size() != want)
        throw std::invalid_argument("generator expects " + std::to_string(want) +
                                    " parameter(s), got " + std::to_string(s.params.size()));
}

}  // namespace

Graph random_regular(int d, int v, std::uint64_t seed) {
    if (d < 0 || v < 1 || d >= v || (long(d) * v) % 2 != 0)
        throw std::invalid_argument("random_regular needs d < v and d*v even");
    std::mt19937_64 gen(seed);
    const int stubs = d * v;
    std::vector<int> perm(stubs);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (int i = 0; i < stubs; ++i) perm[i] = i;
        for (int i = stubs - 1; i > 0; --i) {
            int j = int(draw_below(gen, std::uint64_t(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (int t = 0; t < stubs / 2 && ok; ++t) {
            int a = perm[2 * t] / d, b = perm[2 * t + 1] / d;
            if (a == b) ok = false;  // self-loop: reject the pairing
            else ok = edges.insert({std::min(a, b), std::max(a, b)}).second;
        }
        if (ok) {
            Graph g(v, std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
            g.set_name("random_regular(" + std::to_string(d) + "," + std::to_string(v) +
                       ",seed=" + std::to_string(seed) + ")");
            return g;
        }
    }
    throw std::runtime_error("random_regular: no simple pairing within 10000 attempts");
}

std::pair<Graph, Graph> generate_cfi_pair(const Graph& base) {
    if (!is_connected(base)) throw std::invalid_argument("cfi base must be connected");
    auto deg = base.degrees();
    if (*std::min_element(deg.begin(), deg.end()) < 2)
        throw std::invalid_argument("cfi base needs minimum degree 2");
    return {cfi_member(base, false), cfi_member(base, true)};
}

Graph generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::Cycle:
            require_params(spec, 1);
            return cycle_graph(spec.params[0]);
        case Family::Path:
            require_params(spec, 1);
            return path_graph(spec.params[0]);
        case Family::Complete:
            require_params(spec, 1);
            return complete_graph(spec.params[0]);
        case Family::CompleteBipartite:
            require_params(spec, 2);
            return complete_bipartite(spec.params[0], spec.params[1]);
        case Family::Prism:
            if (spec.params.empty()) return prism_graph(3);
            require_params(spec, 1);
            return prism_graph(spec.params[0]);
        case Family::Kneser:
            require_params(spec, 2);
            return kneser_graph(spec.params[0], spec.params[1]);
        case Family::Johnson:
            require_params(spec, 2);
            return johnson_graph(spec.params[0], spec.params[1]);
        case Family::Hamming:
            require_params(spec, 2);
            return hamming_graph(spec.params[0], spec.params[1]);
        case Family::Paley:
            require_params(spec, 1);
            return paley_graph(spec.params[0]);
        case Family::Rook:
            require_params(spec, 1);
            return rook_graph(spec.params[0]);
        case Family::Shrikhande:
            require_params(spec, 0);
            return shrikhande_graph();
        case Family::Petersen:
            require_params(spec, 0);
            {
                Graph g = kneser_graph(5, 2);
                g.set_name("petersen");
                return g;
            }
        case Family::RandomRegular:
            require_params(spec, 2);
            return random_regular(spec.params[0], spec.params[1], spec.seed);
        case Family::DisjointUnion: {
            if (spec.parts.size() < 2)
                throw std::invalid_argument("disjoint_union needs at least two parts");
            Graph acc = generate(spec.parts[0]);
            std::string name = "union(" + acc.name();
            for (std::size_t i = 1; i < spec.parts.size(); ++i) {
                Graph next = generate(spec.parts[i]);
                name += "," + next.name();
                acc = disjoint_union(acc, next);
            }
            acc.set_name(name + ")");
            return acc;
        }
        case Family::ComplementOf: {
            if (spec.parts.size() != 1)
                throw std::invalid_argument("complement_of needs exactly one part");
            return complement(generate(spec.parts[0]));
        }
        case Family::CfiPair: {
            if (spec.parts.size() != 1)
                throw std::invalid_argument("cfi_pair needs exactly one base part");
            Graph base = generate(spec.parts[0]);
            auto [plain, twisted] = generate_cfi_pair(base);
            return spec.twisted ? twisted : plain;
        }
    }
    throw std::invalid_argument("unknown generator family");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

int to_int(const std::string& s) {
    std::size_t used = 0;
    int v;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer '" + s + "' in generator expression");
    }
    if (used != s.size())
        throw std::invalid_argument("bad integer '" + s + "' in generator expression");
    return v;
}

// compact sub-graph tokens used by cfi/union/complement: K5, C8, P4,
// prism5, rook4, paley13, petersen, shrikhande
GeneratorSpec parse_token(const std::string& tok) {
    if (tok.empty()) throw std::invalid_argument("empty generator token");
    if (tok == "petersen") return {Family::Petersen, {}};
    if (tok == "shrikhande") return {Family::Shrikhande, {}};
    std::size_t d = tok.find_first_of("0123456789");
    std::string head = tok.substr(0, d);
    if (d == std::string::npos || head.empty())
        throw std::invalid_argument("bad generator token '" + tok + "'");
    int num = to_int(tok.substr(d));
    if (head == "K") return {Family::Complete, {num}};
    if (head == "C") return {Family::Cycle, {num}};
    if (head == "P") return {Family::Path, {num}};
    if (head == "prism") return {Family::Prism, {num}};
    if (head == "rook") return {Family::Rook, {num}};
    if (head == "paley") return {Family::Paley, {num}};
    throw std::invalid_argument("bad generator token '" + tok + "'");
}

}  // namespace

GeneratorSpec parse_generator_expr(const std::string& expr) {
    if (expr.substr(0, 4) != "gen:")
        throw std::invalid_argument("generator expression must start with 'gen:'");
    auto fields = split(expr.substr(4), ':');
    if (fields.empty() || fields[0].empty())
        throw std::invalid_argument("missing generator family in '" + expr + "'");
    const std::string& fam = fields[0];
    std::vector<std::string> args(fields.begin() + 1, fields.end());

    auto numeric = [&](Family f) {
        GeneratorSpec s{f, {}};
        for (const auto& a : args) s.params.push_back(to_int(a));
        return s;
    };

    if (fam == "cycle") return numeric(Family::Cycle);
    if (fam == "path") return numeric(Family::Path);
    if (fam == "complete") return numeric(Family::Complete);
    if (fam == "complete_bipartite" || fam == "kbip") return numeric(Family::CompleteBipartite);
    if (fam == "prism") return numeric(Family::Prism);
    if (fam == "kneser") return numeric(Family::Kneser);
    if (fam == "johnson") return numeric(Family::Johnson);
    if (fam == "hamming") return numeric(Family::Hamming);
    if (fam == "paley") return numeric(Family::Paley);
    if (fam == "rook") return numeric(Family::Rook);
    if (fam == "shrikhande") return numeric(Family::Shrikhande);
    if (fam == "petersen") return numeric(Family::Petersen);
    if (fam == "random_regular") {
        if (args.size() != 3)
            throw std::invalid_argument("random_regular expects d:v:seed");
        GeneratorSpec s{Family::RandomRegular, {to_int(args[0]), to_int(args[1])}};
        s.seed = std::stoull(args[2]);
        return s;
    }
    if (fam == "cfi" || fam == "cfi_pair") {
        bool twisted = !args.empty() && args.back() == "twisted";
        if (twisted) args.pop_back();
        if (args.size() != 1)
            throw std::invalid_argument("cfi expects a base token, e.g. gen:cfi:K5[:twisted]");
        GeneratorSpec s{Family::CfiPair, {}};
        s.parts.push_back(parse_token(args[0]));
        s.twisted = twisted;
        return s;
    }
    if (fam == "union" || fam == "disjoint_union") {
        if (args.size() < 2) throw std::invalid_argument("union expects at least two tokens");
        GeneratorSpec s{Family::DisjointUnion, {}};
        for (const auto& a : args) s.parts.push_back(parse_token(a));
        return s;
    }
    if (fam == "complement" || fam == "complement_of") {
        if (args.size() != 1) throw std::invalid_argument("complement expects one token");
        GeneratorSpec s{Family::ComplementOf, {}};
        s.parts.push_back(parse_token(args[0]));
        return s;
    }
    throw std::invalid_argument("unknown generator family '" + fam + "'");
}

}  // namespace dress
