#include "locirr/graph.hpp"

#include <algorithm>
#include <string>

#include "locirr/errors.hpp"

namespace locirr {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
    if (n < 0)
        throw input_error("negative vertex count");
    for (auto& e : edges_) {
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n)
            throw input_error("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range for n=" +
                              std::to_string(n));
        if (e.u == e.v)
            throw input_error("self-loop at vertex " + std::to_string(e.u));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw input_error("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");

    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (int v = 0; v < n; ++v)
        offsets_[v + 1] += offsets_[v];
    neighbors_.resize(2 * edges_.size());
    incident_.resize(2 * edges_.size());
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    // Scanning edges lexicographically fills every list in ascending
    // neighbour order: for vertex x, neighbours w < x arrive (as e.u = w)
    // before neighbours w > x (as e.u = x), each group sorted.
    for (int idx = 0; idx < num_edges(); ++idx) {
        const auto& e = edges_[idx];
        neighbors_[fill[e.u]] = e.v;
        incident_[fill[e.u]++] = idx;
        neighbors_[fill[e.v]] = e.u;
        incident_[fill[e.v]++] = idx;
    }
}

std::optional<int> Graph::edge_index(int u, int v) const
{
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        return std::nullopt;
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v)
        return std::nullopt;
    return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

int Graph::min_degree() const
{
    int best = n_ == 0 ? 0 : degree(0);
    for (int v = 1; v < n_; ++v)
        best = std::min(best, degree(v));
    return best;
}

int Graph::max_degree() const
{
    int best = 0;
    for (int v = 0; v < n_; ++v)
        best = std::max(best, degree(v));
    return best;
}

std::optional<int> Graph::regular_degree() const
{
    if (n_ == 0)
        return 0;
    int d = degree(0);
    for (int v = 1; v < n_; ++v)
        if (degree(v) != d)
            return std::nullopt;
    return d;
}

std::vector<int> Graph::ball(int v, int radius) const
{
    std::vector<int> dist(static_cast<std::size_t>(n_), -1);
    std::vector<int> order{v};
    dist[v] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        int x = order[head];
        if (dist[x] == radius)
            continue;
        for (int w : neighbors(x)) {
            if (dist[w] < 0) {
                dist[w] = dist[x] + 1;
                order.push_back(w);
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

EdgeSet EdgeSet::all(int host_edges)
{
    EdgeSet s(host_edges);
    std::fill(s.mask_.begin(), s.mask_.end(), 1);
    s.count_ = host_edges;
    return s;
}

EdgeSet EdgeSet::from_indices(int host_edges, std::span<const int> indices)
{
    EdgeSet s(host_edges);
    for (int e : indices) {
        if (e < 0 || e >= host_edges)
            throw input_error("edge index " + std::to_string(e) + " out of range");
        s.insert(e);
    }
    return s;
}

void EdgeSet::insert(int e)
{
    if (!mask_[e]) {
        mask_[e] = 1;
        ++count_;
    }
}

void EdgeSet::erase(int e)
{
    if (mask_[e]) {
        mask_[e] = 0;
        --count_;
    }
}

std::vector<int> EdgeSet::members() const
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (int e = 0; e < host_size(); ++e)
        if (mask_[e])
            out.push_back(e);
    return out;
}

void EdgeSet::check_host(const EdgeSet& other) const
{
    if (other.host_size() != host_size())
        throw input_error("edge sets over different hosts");
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& other)
{
    check_host(other);
    for (int e = 0; e < host_size(); ++e)
        if (other.mask_[e])
            insert(e);
    return *this;
}

EdgeSet& EdgeSet::operator&=(const EdgeSet& other)
{
    check_host(other);
    for (int e = 0; e < host_size(); ++e)
        if (!other.mask_[e])
            erase(e);
    return *this;
}

EdgeSet& EdgeSet::operator-=(const EdgeSet& other)
{
    check_host(other);
    for (int e = 0; e < host_size(); ++e)
        if (other.mask_[e])
            erase(e);
    return *this;
}

std::vector<int> subgraph_degrees(const Graph& g, const EdgeSet& es)
{
    if (es.host_size() != g.num_edges())
        throw input_error("edge set does not belong to graph");
    std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (es.contains(e)) {
            ++deg[g.edge(e).u];
            ++deg[g.edge(e).v];
        }
    }
    return deg;
}

int degree_in(const Graph& g, const EdgeSet& es, int v)
{
    int c = 0;
    for (int e : g.incident_edges(v))
        c += es.contains(e) ? 1 : 0;
    return c;
}

bool is_locally_irregular(const Graph& g)
{
    for (const auto& e : g.edges())
        if (g.degree(e.u) == g.degree(e.v))
            return false;
    return true;
}

bool is_locally_irregular(const Graph& g, const EdgeSet& es)
{
    return conflicting_edges(g, es).empty();
}

std::vector<int> conflicting_edges(const Graph& g, const EdgeSet& es)
{
    auto deg = subgraph_degrees(g, es);
    std::vector<int> bad;
    for (int e = 0; e < g.num_edges(); ++e)
        if (es.contains(e) && deg[g.edge(e).u] == deg[g.edge(e).v])
            bad.push_back(e);
    return bad;
}

EdgeSubgraph edge_subgraph(const Graph& g, const EdgeSet& es)
{
    EdgeSubgraph sub;
    std::vector<Edge> edges;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (es.contains(e)) {
            edges.push_back(g.edge(e));
            sub.to_host.push_back(e);
        }
    }
    sub.graph = Graph(g.num_vertices(), std::move(edges));
    return sub;
}

} // namespace locirr
