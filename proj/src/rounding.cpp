#include "locirr/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "locirr/errors.hpp"
#include "locirr/rational.hpp"
#include "locirr/rng.hpp"

namespace locirr {

namespace {

constexpr double kSnap = 1e-12;
constexpr double kTolerance = 1e-9;
constexpr std::int64_t kMaxExactDen = 4096;

// Alternating 0/1 labels along Euler circuits. Odd-degree vertices are tied
// to an auxiliary vertex so every circuit passes evenly through each real
// vertex; a dummy-free circuit of odd length gives its start one extra 1.
std::vector<std::uint8_t> round_half_euler(const Graph& g, Rng& rng)
{
    const int n = g.num_vertices(), m = g.num_edges();
    const int dummy = n;
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n) + 1);
    int next_edge = m;
    for (int e = 0; e < m; ++e) {
        adj[g.edge(e).u].emplace_back(e, g.edge(e).v);
        adj[g.edge(e).v].emplace_back(e, g.edge(e).u);
    }
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) % 2 == 1) {
            adj[v].emplace_back(next_edge, dummy);
            adj[dummy].emplace_back(next_edge, v);
            ++next_edge;
        }
    }
    for (auto& list : adj)
        std::sort(list.begin(), list.end());

    std::vector<std::uint8_t> used(static_cast<std::size_t>(next_edge), 0);
    std::vector<std::size_t> ptr(adj.size(), 0);
    std::vector<std::uint8_t> x(static_cast<std::size_t>(m), 0);
    std::bernoulli_distribution coin(0.5);

    auto run_circuit = [&](int start) {
        std::vector<std::pair<int, int>> stack{{start, -1}};
        std::vector<int> circuit;
        while (!stack.empty()) {
            auto [v, e_in] = stack.back();
            auto& p = ptr[v];
            while (p < adj[v].size() && used[adj[v][p].first])
                ++p;
            if (p < adj[v].size()) {
                auto [f, w] = adj[v][p];
                used[f] = 1;
                stack.emplace_back(w, f);
            } else {
                stack.pop_back();
                if (e_in >= 0)
                    circuit.push_back(e_in);
            }
        }
        bool odd = circuit.size() % 2 == 1;
        std::uint8_t label = (start != dummy && odd) ? 1 : static_cast<std::uint8_t>(coin(rng));
        for (int e : circuit) {
            if (e < m)
                x[e] = label;
            label ^= 1;
        }
    };

    if (!adj[dummy].empty())
        run_circuit(dummy);
    for (int v = 0; v < n; ++v) {
        while (ptr[v] < adj[v].size() && used[adj[v][ptr[v]].first])
            ++ptr[v];
        if (ptr[v] < adj[v].size())
            run_circuit(v);
    }
    return x;
}

// Cycle/path cancelling on the fractional support. Each step moves along a
// signed edge combination whose net change is zero at every vertex with two
// or more fractional edges, by the largest step keeping y in [0, 1]. A
// vertex's sum therefore stays exact until at most one fractional edge is
// left at it, which bounds its final sum strictly inside (target-1, target+1).
class CancellingRounder {
public:
    CancellingRounder(const Graph& g, std::vector<double> y, Rng& rng) : g_(g), y_(std::move(y)), rng_(rng)
    {
        for (double& v : y_)
            snap(v);
    }

    std::vector<std::uint8_t> run()
    {
        for (;;) {
            std::vector<std::pair<int, double>> moves;
            if (!find_structure(moves))
                break;
            if (!moves.empty())
                apply(moves);
        }
        std::vector<std::uint8_t> x(y_.size());
        for (std::size_t e = 0; e < y_.size(); ++e)
            x[e] = y_[e] > 0.5 ? 1 : 0;
        return x;
    }

private:
    static void snap(double& v)
    {
        if (v < kSnap)
            v = 0.0;
        else if (v > 1.0 - kSnap)
            v = 1.0;
    }

    bool frac(int e) const { return y_[e] > 0.0 && y_[e] < 1.0; }

    int fdeg(int v) const
    {
        int c = 0;
        for (int e : g_.incident_edges(v))
            c += frac(e) ? 1 : 0;
        return c;
    }

    // Lowest-index fractional edge at v accepted by pred, or -1.
    template <class Pred>
    int first_edge(int v, Pred&& pred) const
    {
        int best = -1;
        for (int e : g_.incident_edges(v))
            if (frac(e) && pred(e) && (best < 0 || e < best))
                best = e;
        return best;
    }

    void apply(const std::vector<std::pair<int, double>>& moves)
    {
        double sign = std::bernoulli_distribution(0.5)(rng_) ? 1.0 : -1.0;
        double eps = std::numeric_limits<double>::infinity();
        int arg = -1;
        for (auto [e, c] : moves) {
            double cc = sign * c;
            double room = cc > 0 ? (1.0 - y_[e]) / cc : y_[e] / -cc;
            if (room < eps) {
                eps = room;
                arg = e;
            }
        }
        for (auto [e, c] : moves) {
            y_[e] += eps * sign * c;
            snap(y_[e]);
        }
        // The binding edge lands exactly on its bound.
        double cc = 0.0;
        for (auto [e, c] : moves)
            if (e == arg)
                cc = sign * c;
        y_[arg] = cc > 0 ? 1.0 : 0.0;
    }

    static void alternate(const std::vector<int>& edges, double first, std::vector<std::pair<int, double>>& out)
    {
        double c = first;
        for (int e : edges) {
            out.emplace_back(e, c);
            c = -c;
        }
    }

    // Greedy maximal path from start: repeatedly take the lowest-index
    // fractional edge to an unvisited vertex.
    void grow_path(int start, std::vector<int>& verts, std::vector<int>& edges, std::vector<int>& pos) const
    {
        verts = {start};
        edges.clear();
        pos[start] = 0;
        for (;;) {
            int x = verts.back();
            int e = first_edge(x, [&](int f) { return pos[g_.other_end(f, x)] < 0; });
            if (e < 0)
                return;
            int w = g_.other_end(e, x);
            pos[w] = static_cast<int>(verts.size());
            verts.push_back(w);
            edges.push_back(e);
        }
    }

    // Closed cycle as vertex list cv and edges ce, ce[i] = (cv[i], cv[i+1]).
    struct Cycle {
        std::vector<int> cv;
        std::vector<int> ce;
        int index_of(int v) const
        {
            return static_cast<int>(std::find(cv.begin(), cv.end(), v) - cv.begin());
        }
        // Edges walking forward from cv[a] to cv[b].
        std::vector<int> forward(int a, int b) const
        {
            std::vector<int> out;
            int L = static_cast<int>(ce.size());
            for (int i = a; i != b; i = (i + 1) % L)
                out.push_back(ce[i]);
            return out;
        }
    };

    bool find_structure(std::vector<std::pair<int, double>>& out)
    {
        const int n = g_.num_vertices();
        int first_frac = -1;
        for (int e = 0; e < g_.num_edges() && first_frac < 0; ++e)
            if (frac(e))
                first_frac = e;
        if (first_frac < 0)
            return false;

        int leaf = -1;
        for (int v = 0; v < n && leaf < 0; ++v)
            if (fdeg(v) == 1)
                leaf = v;

        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        std::vector<int> pv, pe;
        grow_path(leaf >= 0 ? leaf : g_.edge(first_frac).u, pv, pe, pos);
        const int end = pv.back();

        if (leaf >= 0 && fdeg(end) == 1) {
            alternate(pe, 1.0, out);
            return true;
        }
        // end has a fractional edge back into the path.
        int chord = first_edge(end, [&](int f) { return f != pe.back() && pos[g_.other_end(f, end)] >= 0; });
        int j = pos[g_.other_end(chord, end)];
        Cycle cyc;
        cyc.cv.assign(pv.begin() + j, pv.end());
        cyc.ce.assign(pe.begin() + j, pe.end());
        cyc.ce.push_back(chord);
        if (cyc.ce.size() % 2 == 0) {
            alternate(cyc.ce, 1.0, out);
            return true;
        }
        if (leaf >= 0) {
            // Lollipop: doubled alternating stem, odd cycle hanging at pv[j].
            for (int i = 0; i < j; ++i)
                out.emplace_back(pe[i], ((j - 1 - i) % 2 == 0) ? 2.0 : -2.0);
            alternate(cyc.ce, -1.0, out);
            return true;
        }
        return odd_cycle_without_leaves(cyc, out);
    }

    // Every fractional vertex has two or more fractional edges and cyc is an
    // odd cycle among them.
    bool odd_cycle_without_leaves(const Cycle& cyc, std::vector<std::pair<int, double>>& out)
    {
        const int n = g_.num_vertices();
        const int L = static_cast<int>(cyc.ce.size());
        std::vector<std::uint8_t> on_cycle(static_cast<std::size_t>(n), 0), cycle_edge(y_.size(), 0);
        for (int v : cyc.cv)
            on_cycle[v] = 1;
        for (int e : cyc.ce)
            cycle_edge[e] = 1;

        int c = -1, f = -1;
        for (int v : cyc.cv) {
            int e = first_edge(v, [&](int x) { return !cycle_edge[x]; });
            if (e >= 0 && (f < 0 || e < f)) {
                f = e;
                c = v;
            }
        }
        if (f < 0) {
            round_isolated_odd_cycle(cyc);
            return true;
        }

        const int ci = cyc.index_of(c);
        int w = g_.other_end(f, c);
        auto rotated = [&](int start) {
            std::vector<int> out_edges;
            for (int i = 0; i < L; ++i)
                out_edges.push_back(cyc.ce[(start + i) % L]);
            return out_edges;
        };
        // Closes an ear (edges from c to y along the ear) with whichever arc
        // of the cycle makes the total length even.
        auto theta = [&](std::vector<int> ear, int y) {
            int yi = cyc.index_of(y);
            std::vector<int> back = cyc.forward(yi, ci);  // y -> c forward
            if ((ear.size() + back.size()) % 2 != 0) {
                back = cyc.forward(ci, yi);  // c -> y forward, walked in reverse
                std::reverse(back.begin(), back.end());
            }
            ear.insert(ear.end(), back.begin(), back.end());
            alternate(ear, 1.0, out);
        };

        if (on_cycle[w]) {
            theta({f}, w);
            return true;
        }

        std::vector<int> qv{c, w}, qe{f};
        std::vector<int> qpos(static_cast<std::size_t>(n), -1);
        qpos[c] = 0;
        qpos[w] = 1;
        for (;;) {
            int x = qv.back();
            int e = first_edge(x, [&](int h) {
                int z = g_.other_end(h, x);
                return !on_cycle[z] && qpos[z] < 0;
            });
            if (e < 0)
                break;
            int z = g_.other_end(e, x);
            qpos[z] = static_cast<int>(qv.size());
            qv.push_back(z);
            qe.push_back(e);
        }
        const int x = qv.back();
        const int close = first_edge(x, [&](int h) { return h != qe.back(); });
        const int y = g_.other_end(close, x);

        if (on_cycle[y] && y != c) {
            std::vector<int> ear = qe;
            ear.push_back(close);
            theta(ear, y);
            return true;
        }

        // Second cycle through the ear: from qv[jj] back to itself.
        const int jj = on_cycle[y] ? 0 : qpos[y];
        std::vector<int> second(qe.begin() + jj, qe.end());
        second.push_back(close);
        if (second.size() % 2 == 0) {
            alternate(second, 1.0, out);
            return true;
        }
        // Two odd cycles joined by the stem qe[0 .. jj-1] (possibly empty):
        // cycle at c contributes +2 at c, the stem alternates -2/+2, and the
        // second cycle cancels the stem's last coefficient at qv[jj].
        alternate(rotated(ci), 1.0, out);
        double coef = -2.0;
        for (int i = 0; i < jj; ++i) {
            out.emplace_back(qe[i], coef);
            coef = -coef;
        }
        double last = jj == 0 ? 2.0 : -coef;
        alternate(second, -last / 2.0, out);
        return true;
    }

    // An odd cycle forming a whole component of the fractional support. Vertex
    // pair-sums below 1 must not receive two 1s, sums of at least 1 must not
    // receive two 0s; alternating from a suitable vertex satisfies both.
    void round_isolated_odd_cycle(const Cycle& cyc)
    {
        const int L = static_cast<int>(cyc.ce.size());
        int high = -1;
        for (int i = 0; i < L && high < 0; ++i) {
            double s = y_[cyc.ce[(i + L - 1) % L]] + y_[cyc.ce[i]];
            if (s >= 1.0 - kSnap)
                high = i;
        }
        int start = high >= 0 ? high : 0;
        std::uint8_t label = high >= 0 ? 1 : 0;
        for (int i = 0; i < L; ++i) {
            y_[cyc.ce[(start + i) % L]] = label;
            label ^= 1;
        }
    }

    const Graph& g_;
    std::vector<double> y_;
    Rng& rng_;
};

struct ExactWeights {
    std::int64_t scale = 1;
    std::vector<std::int64_t> scaled;  // z(e) * scale
};

std::optional<ExactWeights> exact_weights(const std::vector<double>& z)
{
    ExactWeights ew;
    std::vector<Rational> rs;
    rs.reserve(z.size());
    for (double v : z) {
        Rational r = Rational::approximate(v, kMaxExactDen);
        if (std::fabs(r.value() - v) > 1e-15)
            return std::nullopt;
        rs.push_back(r);
        ew.scale = std::lcm(ew.scale, r.den);
        if (ew.scale > (std::int64_t{1} << 40))
            return std::nullopt;
    }
    for (const auto& r : rs)
        ew.scaled.push_back(r.num * (ew.scale / r.den));
    return ew;
}

void repair(const Graph& g, const std::vector<double>& z, std::vector<std::uint8_t>& x)
{
    const int n = g.num_vertices();
    auto target = [&](int v) {
        double t = 0.0;
        for (int e : g.incident_edges(v))
            t += z[e];
        return t;
    };
    auto sum = [&](int v) {
        int s = 0;
        for (int e : g.incident_edges(v))
            s += x[e];
        return s;
    };
    for (int pass = 0; pass < 4 * n + 4; ++pass) {
        bool changed = false;
        for (int v = 0; v < n; ++v) {
            double t = target(v);
            int s = sum(v);
            bool low = !(s > t - 1.0 + kTolerance), high = s > t + 1.0 + kTolerance;
            if (!low && !high)
                continue;
            for (int e : g.incident_edges(v)) {
                if (x[e] != (low ? 0 : 1))
                    continue;
                int w = g.other_end(e, v);
                double tw = target(w);
                int sw = sum(w) + (low ? 1 : -1);
                if (sw > tw - 1.0 + kTolerance && sw <= tw + 1.0 + kTolerance) {
                    x[e] ^= 1;
                    changed = true;
                    break;
                }
            }
        }
        if (!changed)
            return;
    }
}

} // namespace

FractionalEdgeWeights FractionalEdgeWeights::uniform(const Graph& g, double value)
{
    return {&g, std::vector<double>(static_cast<std::size_t>(g.num_edges()), value)};
}

void FractionalEdgeWeights::validate() const
{
    if (!host)
        throw input_error("edge weights without a host graph");
    if (static_cast<int>(z.size()) != host->num_edges())
        throw input_error("expected " + std::to_string(host->num_edges()) + " edge weights, got " +
                          std::to_string(z.size()));
    for (std::size_t e = 0; e < z.size(); ++e)
        if (!(z[e] >= 0.0 && z[e] <= 1.0))
            throw input_error("weight of edge " + std::to_string(e) + " outside [0, 1]");
}

BinaryEdgeLabels balanced_round(const FractionalEdgeWeights& w, std::uint64_t seed)
{
    w.validate();
    const Graph& g = *w.host;
    Rng rng = make_rng(seed, "balanced_round");
    BinaryEdgeLabels out{&g, {}};
    bool all_half = std::all_of(w.z.begin(), w.z.end(), [](double v) { return v == 0.5; });
    if (all_half)
        out.x = round_half_euler(g, rng);
    else
        out.x = CancellingRounder(g, w.z, rng).run();

    if (!verify_rounding(w, out).ok) {
        repair(g, w.z, out.x);
        auto check = verify_rounding(w, out);
        if (!check.ok)
            throw rounding_failure("rounding violates the +-1 window at vertex " + std::to_string(check.failing.front()));
    }
    return out;
}

RoundingCheck verify_rounding(const FractionalEdgeWeights& w, const BinaryEdgeLabels& x)
{
    if (w.host == nullptr || w.host != x.host)
        throw input_error("weights and labels belong to different graphs");
    const Graph& g = *w.host;
    if (static_cast<int>(w.z.size()) != g.num_edges() || static_cast<int>(x.x.size()) != g.num_edges())
        throw input_error("weights or labels do not cover every edge");

    RoundingCheck check;
    const auto exact = exact_weights(w.z);
    check.exact = exact.has_value();
    check.vertices.resize(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) {
        VertexSlack& s = check.vertices[v];
        std::int64_t scaled_target = 0;
        for (int e : g.incident_edges(v)) {
            s.target += w.z[e];
            s.sum += x.x[e] ? 1 : 0;
            if (exact)
                scaled_target += exact->scaled[e];
        }
        s.lower_slack = s.sum - (s.target - 1.0);
        s.upper_slack = (s.target + 1.0) - s.sum;
        if (exact) {
            std::int64_t scaled_sum = static_cast<std::int64_t>(s.sum) * exact->scale;
            s.ok = scaled_sum > scaled_target - exact->scale && scaled_sum <= scaled_target + exact->scale;
        } else {
            s.ok = s.lower_slack > -kTolerance && s.upper_slack >= -kTolerance;
        }
        if (!s.ok) {
            check.ok = false;
            check.failing.push_back(v);
        }
    }
    return check;
}

} // namespace locirr
