#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "locirr/dcs.hpp"
#include "locirr/errors.hpp"
#include "locirr/generators.hpp"
#include "locirr/rng.hpp"

using namespace locirr;

namespace {

// The predicate written directly from its definition.
bool brute_predicate(const Graph& g, const std::vector<int>& lambda, const std::vector<int>& t,
                     const std::vector<std::uint8_t>& active, const EdgeSet& H)
{
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!active.empty() && !active[v])
            continue;
        int h = 0;
        for (int e = 0; e < g.num_edges(); ++e)
            if (H.contains(e) && (g.edge(e).u == v || g.edge(e).v == v))
                ++h;
        const double deg = g.degree(v);
        bool window = 3 * h >= deg && 3 * h <= 2 * deg;
        bool residue = false;
        for (int r : {t[v], t[v] + 1})
            if (((h - r) % lambda[v] + lambda[v]) % lambda[v] == 0)
                residue = true;
        if (!window || !residue)
            return false;
    }
    return true;
}

Graph random_graph(int n, int max_edges, Rng& rng)
{
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            all.push_back({u, v});
    std::shuffle(all.begin(), all.end(), rng);
    int m = std::uniform_int_distribution<int>(0, std::min<int>(max_edges, static_cast<int>(all.size())))(rng);
    all.resize(static_cast<std::size_t>(m));
    return Graph(n, all);
}

} // namespace

TEST_CASE("K13 with lambda 2")
{
    Graph g = complete_graph(13);
    DcsInstance inst = DcsInstance::uniform(g, 2, {});
    DcsCertificate cert = solve(inst, 1);
    CHECK(cert.pass);
    CHECK(verify(inst, cert.H).pass);
    for (const auto& v : cert.vertices) {
        CHECK(v.deg_H >= 4);
        CHECK(v.deg_H <= 8);
    }
    CHECK_FALSE(verify(inst, EdgeSet(g.num_edges())).pass);
    CHECK_FALSE(verify(inst, EdgeSet::all(g.num_edges())).pass);
}

TEST_CASE("preconditions")
{
    Graph g11 = complete_graph(12);  // degree 11
    DcsInstance low = DcsInstance::uniform(g11, 2, {});
    CHECK_THROWS_AS(solve(low, 1), input_error);
    DcsOptions relaxed;
    relaxed.enforce_preconditions = false;
    CHECK(solve(low, 1, relaxed).pass);

    Graph g = complete_graph(13);  // 6 * 3 > 12
    CHECK_THROWS_AS(solve(DcsInstance::uniform(g, 3, {}), 1), input_error);
    DcsInstance bad = DcsInstance::uniform(g, 2, {});
    bad.lambda[0] = 1;
    CHECK_THROWS_AS(solve(bad, 1, relaxed), input_error);
    bad = DcsInstance::uniform(g, 2, {});
    bad.t.pop_back();
    CHECK_THROWS_AS(solve(bad, 1), input_error);
}

TEST_CASE("window bounds are exact at degrees 12, 13, 14")
{
    // A star centre of degree d: H takes h of its edges.
    for (int d : {12, 13, 14}) {
        std::vector<Edge> edges;
        for (int j = 1; j <= d; ++j)
            edges.push_back({0, j});
        Graph star(d + 1, edges);
        DcsInstance inst;
        inst.host = &star;
        inst.lambda.assign(static_cast<std::size_t>(d + 1), 2);
        inst.t.assign(static_cast<std::size_t>(d + 1), 0);
        inst.active.assign(static_cast<std::size_t>(d + 1), 0);
        inst.active[0] = 1;
        for (int h = 0; h <= d; ++h) {
            EdgeSet H(d);
            for (int j = 0; j < h; ++j)
                H.insert(j);
            bool expect = 3 * h >= d && 3 * h <= 2 * d;
            CHECK_MESSAGE(verify(inst, H).pass == expect, "d=" << d << " h=" << h);
        }
    }
    // d = 12: [4, 8]; d = 13: [5, 8]; d = 14: [5, 9].
}

TEST_CASE("half of a 4-regular circulant")
{
    Graph g = generate_circulant(10, {1, 2});
    DcsInstance inst = DcsInstance::uniform(g, 2, {});
    // Offset-1 edges form a Hamiltonian cycle: every degree 2.
    EdgeSet cycle(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edge(e);
        if ((v - u) % 10 == 1 || (u - v + 10) % 10 == 1)
            cycle.insert(e);
    }
    CHECK(verify(inst, cycle).pass);
    // 4/3 <= h <= 8/3 allows only h = 2.
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Rng rng(seed);
        EdgeSet H(g.num_edges());
        for (int e = 0; e < g.num_edges(); ++e)
            if (rng() & 1U)
                H.insert(e);
        auto deg = subgraph_degrees(g, H);
        bool all_two = std::all_of(deg.begin(), deg.end(), [](int x) { return x == 2; });
        CHECK(verify(inst, H).pass == all_two);
    }
}

TEST_CASE("verifier matches the brute-force predicate")
{
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_graph(7, 20, rng);
        std::vector<int> lambda, t;
        std::vector<std::uint8_t> active;
        for (int v = 0; v < 7; ++v) {
            lambda.push_back(std::uniform_int_distribution<int>(2, 4)(rng));
            t.push_back(std::uniform_int_distribution<int>(0, lambda.back() - 1)(rng));
            active.push_back(trial % 3 == 0 ? static_cast<std::uint8_t>(rng() & 1U) : 1);
        }
        DcsInstance inst{&g, lambda, t, trial % 3 == 0 ? active : std::vector<std::uint8_t>{}};
        for (int rep = 0; rep < 10; ++rep) {
            EdgeSet H(g.num_edges());
            for (int e = 0; e < g.num_edges(); ++e)
                if (rng() & 1U)
                    H.insert(e);
            CHECK(verify(inst, H).pass == brute_predicate(g, lambda, t, inst.active, H));
        }
    }
}

TEST_CASE("solver and exhaustive search agree on small relaxed instances")
{
    Rng rng(7);
    DcsOptions relaxed;
    relaxed.enforce_preconditions = false;
    relaxed.exact_fallback = false;
    int feasible = 0;
    for (int trial = 0; trial < 120; ++trial) {
        Graph g = random_graph(8, 20, rng);
        std::vector<int> lambda(8), t(8);
        for (int v = 0; v < 8; ++v) {
            lambda[v] = std::uniform_int_distribution<int>(2, 3)(rng);
            t[v] = std::uniform_int_distribution<int>(0, lambda[v] - 1)(rng);
        }
        DcsInstance inst{&g, lambda, t, {}};
        auto exact = solve_exhaustive(inst);
        if (exact) {
            CHECK(verify(inst, *exact).pass);
            CHECK(brute_predicate(g, lambda, t, {}, *exact));
            ++feasible;
        }
        DcsSolveResult res = solve_best_effort(inst, static_cast<std::uint64_t>(trial), relaxed);
        if (res.certified)
            CHECK(exact.has_value());
        CHECK(res.certificate.pass == res.certified);
        // With the fallback both answers coincide.
        DcsOptions with_fallback = relaxed;
        with_fallback.exact_fallback = true;
        DcsSolveResult full = solve_best_effort(inst, static_cast<std::uint64_t>(trial), with_fallback);
        CHECK(full.certified == exact.has_value());
        if (exact)
            CHECK_NOTHROW(solve(inst, static_cast<std::uint64_t>(trial), with_fallback));
        else
            CHECK_THROWS_AS(solve(inst, static_cast<std::uint64_t>(trial), with_fallback), solver_failure);
    }
    CHECK(feasible > 10);
}

TEST_CASE("random 24-regular host with lambda 4")
{
    Graph g = generate_regular(60, 24, 3);
    Rng rng(3);
    std::vector<int> t(60);
    for (int& x : t)
        x = std::uniform_int_distribution<int>(0, 3)(rng);
    DcsInstance inst = DcsInstance::uniform(g, 4, t);
    DcsCertificate cert = solve(inst, 11);
    CHECK(cert.pass);
    CHECK(brute_predicate(g, inst.lambda, inst.t, {}, cert.H));
}

TEST_CASE("targets are reduced modulo lambda")
{
    Graph g = complete_graph(13);
    DcsInstance inst = DcsInstance::uniform(g, 2, std::vector<int>(13, -3));
    for (int x : inst.t)
        CHECK(x == 1);
}

TEST_CASE("determinism and exhaustive limit")
{
    Graph g = generate_regular(40, 24, 1);
    DcsInstance inst = DcsInstance::uniform(g, 3, std::vector<int>(40, 1));
    CHECK(solve(inst, 5).H == solve(inst, 5).H);
    CHECK_THROWS_AS(solve_exhaustive(inst), input_error);
}
