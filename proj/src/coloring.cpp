#include "locirr/coloring.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "locirr/errors.hpp"
#include "locirr/rng.hpp"

namespace locirr {

std::int64_t mod_distance(std::int64_t m, std::int64_t n, std::int64_t K)
{
    if (K < 1)
        throw input_error("mod_distance needs K >= 1");
    std::int64_t a = ((m - n) % K + K) % K;
    return std::min(a, (K - a) % K);
}

void VertexColoring::validate(int n) const
{
    if (K < 1)
        throw input_error("colouring needs K >= 1");
    if (static_cast<int>(O.size()) != n || static_cast<int>(I.size()) != n)
        throw input_error("colouring does not cover all " + std::to_string(n) + " vertices");
    for (int v = 0; v < n; ++v)
        if (O[v] < 1 || O[v] > K || I[v] < 1 || I[v] > K)
            throw input_error("colour of vertex " + std::to_string(v) + " outside 1..K");
}

VertexColoring assign_random(const Graph& g, int K, std::uint64_t seed)
{
    if (K < 1)
        throw input_error("assign_random needs K >= 1");
    VertexColoring c;
    c.K = K;
    c.O.resize(static_cast<std::size_t>(g.num_vertices()));
    c.I.resize(static_cast<std::size_t>(g.num_vertices()));
    Rng rng = make_rng(seed, "assign_random");
    std::vector<int> all(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v)
        all[v] = v;
    redraw(c, all, rng);
    return c;
}

void redraw(VertexColoring& c, const std::vector<int>& vertices, Rng& rng)
{
    std::uniform_int_distribution<int> colour(1, c.K);
    for (int v : vertices) {
        c.O[v] = colour(rng);
        c.I[v] = colour(rng);
    }
}

int DistinguishedSets::U_size() const
{
    return static_cast<int>(std::count(U.begin(), U.end(), std::uint8_t{1}));
}

std::int64_t risky_limit(const ConstantProfile& p, std::int64_t d)
{
    // 2 delta <= s d + 7 with delta an integer is 2 delta <= floor(s d) + 7.
    std::int64_t sd = floor_mul(Rational::approximate(p.s), d);
    return (sd + 7) / 2;
}

DistinguishedSets distinguish(const Graph& g, const VertexColoring& c, const ConstantProfile& p, std::int64_t d)
{
    const int n = g.num_vertices(), m = g.num_edges();
    c.validate(n);
    const std::int64_t limit = risky_limit(p, d);

    DistinguishedSets ds;
    ds.U.assign(static_cast<std::size_t>(n), 0);
    for (const auto& e : g.edges()) {
        if (c.same_colour(e.u, e.v)) {
            ds.U[e.u] = 1;
            ds.U[e.v] = 1;
        }
    }
    for (EdgeSet* s : {&ds.U_e, &ds.T, &ds.S, &ds.R, &ds.R_prime, &ds.E_prime, &ds.E_dblprime})
        *s = EdgeSet(m);

    auto risky = [&](int a, int b) {
        std::int64_t dist = mod_distance(a, b, c.K);
        return dist >= 1 && dist <= limit;
    };
    for (int e = 0; e < m; ++e) {
        const auto [v, w] = g.edge(e);
        bool in_v = ds.U[v] != 0, in_w = ds.U[w] != 0;
        if (in_v && in_w)
            ds.U_e.insert(e);
        if (in_v || in_w) {
            ds.T.insert(e);
            continue;
        }
        bool special = c.O[v] == c.O[w] || c.I[v] == c.I[w];
        bool is_risky = risky(c.O[v], c.O[w]) || risky(c.I[v], c.I[w]);
        if (special)
            ds.S.insert(e);
        if (is_risky)
            ds.R.insert(e);
        if (is_risky && !special)
            ds.R_prime.insert(e);
        if (!is_risky)
            ds.E_prime.insert(e);
        if (!is_risky && !special)
            ds.E_dblprime.insert(e);
    }
    return ds;
}

namespace {

ColoringAudit audit_impl(const Graph& g, const VertexColoring* c, const DistinguishedSets& ds,
                         const ConstantProfile& p, std::int64_t d)
{
    const int n = g.num_vertices();
    const Rational s = Rational::approximate(p.s), r = Rational::approximate(p.r), u = Rational::approximate(p.u);
    ColoringAudit a;
    a.diagnostics = c != nullptr;
    a.vertices.resize(static_cast<std::size_t>(n));
    const std::int64_t limit = c ? risky_limit(p, d) : 0;

    for (int v = 0; v < n; ++v) {
        VertexAudit& va = a.vertices[v];
        auto nb = g.neighbors(v);
        auto inc = g.incident_edges(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            va.d_S += ds.S.contains(inc[i]) ? 1 : 0;
            va.d_R += ds.R.contains(inc[i]) ? 1 : 0;
            va.d_U += ds.in_U(nb[i]) ? 1 : 0;
        }
        va.pass_S = less_than_mul(va.d_S, s, d);
        va.pass_R = less_than_mul(va.d_R, r, d);
        va.pass_U = less_than_mul(va.d_U, u, d);
        if (!va.pass())
            a.violating.push_back(v);

        if (!c)
            continue;
        va.d_Sstar = 0;
        va.d_Rstar = 0;
        va.Ustar_size = 0;
        // Colour multiplicities within N(v).
        std::unordered_map<std::int64_t, int> in_nbhd;
        auto key = [&](int x) { return static_cast<std::int64_t>(c->O[x]) * (c->K + 1) + c->I[x]; };
        for (int w : nb)
            ++in_nbhd[key(w)];
        for (int w : nb) {
            if (c->O[v] == c->O[w] || c->I[v] == c->I[w])
                ++va.d_Sstar;
            std::int64_t dO = mod_distance(c->O[v], c->O[w], c->K), dI = mod_distance(c->I[v], c->I[w], c->K);
            if ((dO >= 1 && dO <= limit) || (dI >= 1 && dI <= limit))
                ++va.d_Rstar;
            // w counts when its colour repeats in (N(w) u N(v)) \ {w}.
            bool repeated = in_nbhd[key(w)] >= 2;
            for (std::size_t j = 0; !repeated && j < g.neighbors(w).size(); ++j)
                repeated = c->same_colour(g.neighbors(w)[j], w);
            va.Ustar_size += repeated ? 1 : 0;
        }
    }
    return a;
}

} // namespace

ColoringAudit audit(const Graph& g, const DistinguishedSets& ds, const ConstantProfile& p, std::int64_t d)
{
    return audit_impl(g, nullptr, ds, p, d);
}

ColoringAudit audit_with_diagnostics(const Graph& g, const VertexColoring& c, const DistinguishedSets& ds,
                                     const ConstantProfile& p, std::int64_t d)
{
    return audit_impl(g, &c, ds, p, d);
}

ResampleResult resample_until_good(const Graph& g, const ConstantProfile& p, std::int64_t d, std::uint64_t seed,
                                   int max_rounds)
{
    if (max_rounds < 1)
        throw input_error("resample_until_good needs max_rounds >= 1");
    ResampleResult res;
    const int K = static_cast<int>(palette_size(p.k, d));
    res.coloring = assign_random(g, K, derive_seed(seed, "initial"));
    Rng rng = make_rng(seed, "resample");
    for (;;) {
        res.sets = distinguish(g, res.coloring, p, d);
        res.audit = audit(g, res.sets, p, d);
        if (res.audit.pass()) {
            res.success = true;
            return res;
        }
        if (res.rounds >= max_rounds) {
            res.exhausted = true;
            return res;
        }
        redraw(res.coloring, g.ball(res.audit.violating.front(), 2), rng);
        ++res.rounds;
    }
}

} // namespace locirr
