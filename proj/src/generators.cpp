#include "locirr/generators.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "locirr/errors.hpp"
#include "locirr/rng.hpp"

namespace locirr {

namespace {

std::uint64_t pair_key(int u, int v)
{
    if (u > v)
        std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

// One pairing attempt. Returns false on a dead end.
bool try_pairing(int n, int d, Rng& rng, std::vector<Edge>& out)
{
    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i)
            points.push_back(v);
    std::unordered_set<std::uint64_t> present;
    present.reserve(points.size());
    out.clear();

    while (!points.empty()) {
        std::size_t remaining = points.size();
        std::uniform_int_distribution<std::size_t> pick(0, remaining - 1);
        bool paired = false;
        // Rejection sampling first; fall back to an exhaustive scan to tell
        // a dead end apart from bad luck.
        for (std::size_t attempt = 0; attempt < 16 * remaining && !paired; ++attempt) {
            std::size_t i = pick(rng), j = pick(rng);
            int a = points[i], b = points[j];
            if (i == j || a == b || present.count(pair_key(a, b)))
                continue;
            present.insert(pair_key(a, b));
            out.push_back({std::min(a, b), std::max(a, b)});
            if (i < j)
                std::swap(i, j);
            points[i] = points.back();
            points.pop_back();
            points[j] = points.back();
            points.pop_back();
            paired = true;
        }
        if (paired)
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> valid;
        for (std::size_t i = 0; i < remaining; ++i)
            for (std::size_t j = i + 1; j < remaining; ++j)
                if (points[i] != points[j] && !present.count(pair_key(points[i], points[j])))
                    valid.emplace_back(i, j);
        if (valid.empty())
            return false;
        auto [i, j] = valid[std::uniform_int_distribution<std::size_t>(0, valid.size() - 1)(rng)];
        int a = points[i], b = points[j];
        present.insert(pair_key(a, b));
        out.push_back({std::min(a, b), std::max(a, b)});
        points[j] = points.back();
        points.pop_back();
        points[i] = points.back();
        points.pop_back();
    }
    return true;
}

Graph complement(const Graph& g)
{
    std::vector<Edge> edges;
    int n = g.num_vertices();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.edge_index(u, v))
                edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

} // namespace

Graph generate_regular(int n, int d, std::uint64_t seed, int max_restarts)
{
    if (d < 1 || n <= d)
        throw input_error("regular graph needs n > d >= 1 (got n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                          ")");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw input_error("n*d must be even (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    if (d == n - 1)
        return complete_graph(n);
    if (2 * d > n - 1)
        return complement(generate_regular(n, n - 1 - d, seed, max_restarts));

    Rng rng = make_rng(seed, "generate_regular");
    std::vector<Edge> edges;
    for (int attempt = 0; attempt < max_restarts; ++attempt)
        if (try_pairing(n, d, rng, edges))
            return Graph(n, std::move(edges));
    throw generation_failure("pairing model dead-ended " + std::to_string(max_restarts) + " times");
}

Graph generate_circulant(int n, const std::vector<int>& offsets)
{
    if (n < 1)
        throw input_error("circulant needs n >= 1");
    std::vector<int> sorted = offsets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error("circulant offsets must be distinct");
    std::vector<Edge> edges;
    for (int o : sorted) {
        if (o < 1 || o > n / 2)
            throw input_error("circulant offset " + std::to_string(o) + " outside 1.." + std::to_string(n / 2));
        for (int i = 0; i < n; ++i) {
            int j = (i + o) % n;
            if (2 * o == n && j < i)
                continue;
            edges.push_back({std::min(i, j), std::max(i, j)});
        }
    }
    return Graph(n, std::move(edges));
}

Graph complete_graph(int n)
{
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

Graph path_graph(int n)
{
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v)
        edges.push_back({v, v + 1});
    return Graph(n, std::move(edges));
}

Graph cycle_graph(int n)
{
    if (n < 3)
        throw input_error("cycle needs n >= 3");
    std::vector<Edge> edges = path_graph(n).edges();
    edges.push_back({0, n - 1});
    return Graph(n, std::move(edges));
}

} // namespace locirr
