#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace locirr {

struct Edge {
    int u = 0;
    int v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1. Edges are stored with u < v
// in lexicographic order; that order defines the edge indices 0..m-1 used by
// every file format and every tie-break in the library. Immutable after
// construction.
class Graph {
public:
    Graph() = default;

    // Throws input_error on self-loops, duplicate edges or out-of-range
    // endpoints. Endpoint order within a pair is irrelevant.
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }

    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

    // Sorted neighbour list of v.
    std::span<const int> neighbors(int v) const
    {
        return {neighbors_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
    }

    // Edge indices incident to v, aligned with neighbors(v).
    std::span<const int> incident_edges(int v) const
    {
        return {incident_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
    }

    std::optional<int> edge_index(int u, int v) const;

    int other_end(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

    int min_degree() const;
    int max_degree() const;

    // The common degree if the graph is regular (0 for edgeless graphs);
    // nullopt otherwise.
    std::optional<int> regular_degree() const;

    // Vertices at distance <= radius from v, ascending.
    std::vector<int> ball(int v, int radius) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> offsets_{0};
    std::vector<int> neighbors_;
    std::vector<int> incident_;
};

// Membership mask over the edge indices of a host graph.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(int host_edges) : mask_(static_cast<std::size_t>(host_edges), 0) {}

    static EdgeSet all(int host_edges);
    static EdgeSet from_indices(int host_edges, std::span<const int> indices);

    int host_size() const { return static_cast<int>(mask_.size()); }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(int e) const { return mask_[e] != 0; }
    void insert(int e);
    void erase(int e);
    void toggle(int e) { contains(e) ? erase(e) : insert(e); }

    // Members in ascending index order.
    std::vector<int> members() const;

    EdgeSet& operator|=(const EdgeSet& other);
    EdgeSet& operator&=(const EdgeSet& other);
    EdgeSet& operator-=(const EdgeSet& other);

    friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
    friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
    friend EdgeSet operator-(EdgeSet a, const EdgeSet& b) { return a -= b; }
    friend bool operator==(const EdgeSet& a, const EdgeSet& b) { return a.mask_ == b.mask_; }

private:
    void check_host(const EdgeSet& other) const;

    std::vector<std::uint8_t> mask_;
    int count_ = 0;
};

// x[v] = number of edges of es incident to v.
std::vector<int> subgraph_degrees(const Graph& g, const EdgeSet& es);

// Number of edges of es incident to v.
int degree_in(const Graph& g, const EdgeSet& es, int v);

bool is_locally_irregular(const Graph& g);

// Local irregularity of the spanning subgraph (V, es).
bool is_locally_irregular(const Graph& g, const EdgeSet& es);

// Edges of es whose endpoints have equal degree in (V, es), ascending.
std::vector<int> conflicting_edges(const Graph& g, const EdgeSet& es);

// The spanning subgraph (V, es) as a standalone Graph, plus the host index of
// each of its edges (ascending, since both graphs use lexicographic order).
struct EdgeSubgraph {
    Graph graph;
    std::vector<int> to_host;
};

EdgeSubgraph edge_subgraph(const Graph& g, const EdgeSet& es);

} // namespace locirr
