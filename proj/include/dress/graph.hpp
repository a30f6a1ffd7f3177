#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dress {

// Simple undirected graph. Edges are stored as sorted (u, v) pairs with
// u < v; self-loops and duplicates are rejected at construction.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, std::vector<std::pair<int, int>> edge_list, std::string name = "");

    int num_vertices() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);

    std::vector<std::vector<int>> adjacency_lists() const;  // neighbors sorted ascending
    std::vector<int> degrees() const;
    int max_degree() const;

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    bool operator==(const Graph& other) const noexcept {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    void check_endpoints(int u, int v) const;

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::string name_;
};

// Induced subgraph on V \ drop, vertices re-indexed contiguously in
// ascending original order.
Graph induced_delete(const Graph& g, const std::vector<int>& drop);

Graph complement(const Graph& g);

// perm must be a bijection on 0..n-1; edge {u,v} maps to {perm[u], perm[v]}.
Graph permute(const Graph& g, const std::vector<int>& perm);

Graph disjoint_union(const Graph& a, const Graph& b);

struct SrgParams {
    int n, d, lambda, mu;
    bool operator==(const SrgParams&) const = default;
};

// Present iff g is strongly regular: uniform degree, uniform common-neighbor
// counts over adjacent and over non-adjacent pairs, with at least one pair of
// each kind.
std::optional<SrgParams> srg_parameters(const Graph& g);

}  // namespace dress
