#include "locirr/exact.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "locirr/errors.hpp"

namespace locirr {

namespace {

class Search {
public:
    Search(const Graph& g, int k, const SearchConfig& cfg)
        : g_(g), k_(k), cfg_(cfg), label_(static_cast<std::size_t>(g.num_edges()), 0),
          deg_(static_cast<std::size_t>(g.num_vertices()) * static_cast<std::size_t>(k), 0),
          remaining_(static_cast<std::size_t>(g.num_vertices()), 0)
    {
        order_.resize(static_cast<std::size_t>(g.num_edges()));
        std::iota(order_.begin(), order_.end(), 0);
        auto weight = [&](int e) { return g.degree(g.edge(e).u) + g.degree(g.edge(e).v); };
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return weight(a) > weight(b); });
        for (int v = 0; v < g.num_vertices(); ++v)
            remaining_[v] = g.degree(v);
    }

    bool run() { return place(0, 0); }
    std::uint64_t nodes() const { return nodes_; }
    const std::vector<int>& labels() const { return label_; }

private:
    int& deg(int v, int c) { return deg_[static_cast<std::size_t>(v) * k_ + (c - 1)]; }

    // Once x has all its edges labelled, compare it with every complete
    // neighbour in the shared class.
    bool consistent_at(int x)
    {
        if (remaining_[x] != 0)
            return true;
        for (int e : g_.incident_edges(x)) {
            int y = g_.other_end(e, x);
            if (remaining_[y] == 0 && deg(x, label_[e]) == deg(y, label_[e]))
                return false;
        }
        return true;
    }

    bool place(std::size_t pos, int used)
    {
        if (++nodes_ > cfg_.node_budget)
            throw inconclusive("exact search exceeded its node budget of " + std::to_string(cfg_.node_budget));
        if (pos == order_.size())
            return true;
        const int e = order_[pos];
        const auto [u, v] = g_.edge(e);
        const int top = cfg_.symmetry_pruning ? std::min(k_, used + 1) : k_;
        for (int c = 1; c <= top; ++c) {
            label_[e] = c;
            ++deg(u, c);
            ++deg(v, c);
            --remaining_[u];
            --remaining_[v];
            bool ok = consistent_at(u) && consistent_at(v);
            if (ok && place(pos + 1, std::max(used, c)))
                return true;
            ++remaining_[u];
            ++remaining_[v];
            --deg(u, c);
            --deg(v, c);
            label_[e] = 0;
        }
        return false;
    }

    const Graph& g_;
    int k_;
    SearchConfig cfg_;
    std::vector<int> order_;
    std::vector<int> label_;
    std::vector<int> deg_;
    std::vector<int> remaining_;
    std::uint64_t nodes_ = 0;
};

bool exceeds(int k, int m, std::uint64_t budget)
{
    unsigned __int128 total = 1;
    for (int i = 0; i < m; ++i) {
        total *= static_cast<unsigned>(k);
        if (total > budget)
            return true;
    }
    return false;
}

} // namespace

ExactResult is_decomposable(const Graph& g, int k, const SearchConfig& config)
{
    if (k < 1)
        throw input_error("part count must be at least 1");
    const int m = g.num_edges();
    if (!config.force) {
        if (m > config.edge_cap)
            throw input_error("exact search is capped at " + std::to_string(config.edge_cap) + " edges, graph has " +
                              std::to_string(m));
        if (exceeds(k, m, config.node_budget))
            throw inconclusive("k^m exceeds the node budget; rerun with force to search anyway");
    }
    Search search(g, k, config);
    ExactResult res;
    res.decomposable = search.run();
    res.nodes = search.nodes();
    if (res.decomposable)
        res.witness = search.labels();
    return res;
}

MinPartsResult min_parts(const Graph& g, int k_max, const SearchConfig& config)
{
    if (k_max < 1)
        throw input_error("k_max must be at least 1");
    for (int k = 1; k <= k_max; ++k) {
        ExactResult r = is_decomposable(g, k, config);
        if (r.decomposable)
            return {k, std::move(r.witness)};
    }
    return {};
}

std::vector<EdgeSet> classes_of(const Graph& g, const std::vector<int>& labels, int k)
{
    if (static_cast<int>(labels.size()) != g.num_edges())
        throw input_error("labelling must have one entry per edge");
    std::vector<EdgeSet> parts(static_cast<std::size_t>(k), EdgeSet(g.num_edges()));
    for (int e = 0; e < g.num_edges(); ++e) {
        if (labels[e] < 1 || labels[e] > k)
            throw input_error("edge label out of range");
        parts[labels[e] - 1].insert(e);
    }
    return parts;
}

} // namespace locirr
