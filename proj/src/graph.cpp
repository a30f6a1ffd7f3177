#include "dress/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dress {

Graph::Graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list, std::string name)
    : n_(n), name_(std::move(name)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    edges_.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
        if (u > v) std::swap(u, v);
        check_endpoints(u, v);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) throw std::invalid_argument("duplicate edge");
}

void Graph::check_endpoints(int u, int v) const {
    if (u < 0 || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop not allowed");
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

void Graph::add_edge(int u, int v) {
    if (u > v) std::swap(u, v);
    check_endpoints(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
    if (it != edges_.end() && *it == std::make_pair(u, v))
        throw std::invalid_argument("duplicate edge");
    edges_.insert(it, {u, v});
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
    std::vector<std::vector<int>> adj(n_);
    for (auto [u, v] : edges_) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (auto [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

int Graph::max_degree() const {
    auto deg = degrees();
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

Graph induced_delete(const Graph& g, const std::vector<int>& drop) {
    std::vector<bool> gone(g.num_vertices(), false);
    for (int v : drop) {
        if (v < 0 || v >= g.num_vertices())
            throw std::invalid_argument("deleted vertex out of range");
        if (gone[v]) throw std::invalid_argument("deleted vertex listed twice");
        gone[v] = true;
    }
    std::vector<int> remap(g.num_vertices(), -1);
    int next = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!gone[v]) remap[v] = next++;

    std::vector<std::pair<int, int>> kept;
    for (auto [u, v] : g.edges())
        if (!gone[u] && !gone[v]) kept.emplace_back(remap[u], remap[v]);
    return Graph(next, std::move(kept));
}

Graph complement(const Graph& g) {
    std::vector<std::pair<int, int>> inv;
    for (int u = 0; u < g.num_vertices(); ++u)
        for (int v = u + 1; v < g.num_vertices(); ++v)
            if (!g.has_edge(u, v)) inv.emplace_back(u, v);
    Graph c(g.num_vertices(), std::move(inv));
    if (!g.name().empty()) c.set_name("complement(" + g.name() + ")");
    return c;
}

Graph permute(const Graph& g, const std::vector<int>& perm) {
    if (perm.size() != static_cast<std::size_t>(g.num_vertices()))
        throw std::invalid_argument("permutation size mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= g.num_vertices() || seen[p])
            throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }
    std::vector<std::pair<int, int>> mapped;
    mapped.reserve(g.num_edges());
    for (auto [u, v] : g.edges()) mapped.emplace_back(perm[u], perm[v]);
    return Graph(g.num_vertices(), std::move(mapped), g.name());
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> edges(a.edges());
    int off = a.num_vertices();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + off, v + off);
    return Graph(a.num_vertices() + b.num_vertices(), std::move(edges));
}

std::optional<SrgParams> srg_parameters(const Graph& g) {
    int n = g.num_vertices();
    if (n < 2) return std::nullopt;
    auto deg = g.degrees();
    int d = deg[0];
    for (int x : deg)
        if (x != d) return std::nullopt;

    auto adj = g.adjacency_lists();
    auto common = [&](int u, int v) {
        const auto& a = adj[u];
        const auto& b = adj[v];
        int cnt = 0;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) ++i;
            else if (a[i] > b[j]) ++j;
            else { ++cnt; ++i; ++j; }
        }
        return cnt;
    };

    int lambda = -1, mu = -1;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int c = common(u, v);
            if (g.has_edge(u, v)) {
                if (lambda < 0) lambda = c;
                else if (lambda != c) return std::nullopt;
            } else {
                if (mu < 0) mu = c;
                else if (mu != c) return std::nullopt;
            }
        }
    }
    if (lambda < 0 || mu < 0) return std::nullopt;  // need both pair kinds
    return SrgParams{n, d, lambda, mu};
}

}  // namespace dress
