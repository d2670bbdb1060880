#include "locirr/dcs.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <string>

#include "locirr/errors.hpp"
#include "locirr/rng.hpp"

namespace locirr {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

struct VertexRule {
    int lo = 0;  // ceil(deg/3)
    int hi = 0;  // floor(2 deg/3)
    int lambda = 2;
    int t = 0;
    bool active = true;
    std::vector<int> table;  // potential at h = 0..deg

    bool window(int h) const { return h >= lo && h <= hi; }
    bool residue(int h) const
    {
        int r = mod(h - t, lambda);
        return r == 0 || r == 1;
    }
    int sum_form(int h) const
    {
        int deficit = std::max(0, lo - h) + std::max(0, h - hi);
        int r0 = mod(h - t, lambda), r1 = mod(h - t - 1, lambda);
        return deficit + std::min({r0, lambda - r0, r1, lambda - r1});
    }
    // Distance to the nearest admissible degree; the window deficit plus
    // residue distance when the window holds no admissible degree.
    void build(int deg)
    {
        table.assign(static_cast<std::size_t>(deg + 1), 0);
        if (!active)
            return;
        std::vector<int> ok;
        for (int h = lo; h <= hi; ++h)
            if (residue(h))
                ok.push_back(h);
        for (int h = 0; h <= deg; ++h) {
            if (ok.empty()) {
                table[h] = sum_form(h);
                continue;
            }
            auto it = std::lower_bound(ok.begin(), ok.end(), h);
            int best = INT_MAX;
            if (it != ok.end())
                best = *it - h;
            if (it != ok.begin())
                best = std::min(best, h - *(it - 1));
            table[h] = best;
        }
    }
    int potential(int h) const
    {
        if (!active)
            return 0;
        const int top = static_cast<int>(table.size()) - 1;
        if (h < 0)
            return table[0] - h;
        if (h > top)
            return table[top] + (h - top);
        return table[h];
    }
};

std::vector<VertexRule> rules_of(const DcsInstance& inst)
{
    const Graph& g = *inst.host;
    std::vector<VertexRule> rules(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) {
        int deg = g.degree(v);
        rules[v] = {(deg + 2) / 3, (2 * deg) / 3, inst.lambda[v], mod(inst.t[v], inst.lambda[v]), inst.constrained(v), {}};
        rules[v].build(deg);
    }
    return rules;
}

constexpr std::size_t kAugmentStates = 256;

class LocalSearch {
public:
    LocalSearch(const DcsInstance& inst, const DcsOptions& opt)
        : g_(*inst.host), rules_(rules_of(inst)), h_(static_cast<std::size_t>(g_.num_vertices()), 0),
          pos_(static_cast<std::size_t>(g_.num_vertices()), -1)
    {
        const std::int64_t m = g_.num_edges();
        const std::int64_t n = g_.num_vertices();
        steps_ = opt.steps_per_restart > 0 ? opt.steps_per_restart : 50 * m + 1000;
        plateau_ = opt.plateau_budget > 0 ? opt.plateau_budget : 4 * n + 200;
    }

    // One restart. Returns true when the potential reaches zero.
    bool run(Rng& rng)
    {
        const int m = g_.num_edges();
        in_h_.assign(static_cast<std::size_t>(m), 0);
        std::fill(h_.begin(), h_.end(), 0);
        std::bernoulli_distribution half(0.5);
        for (int e = 0; e < m; ++e) {
            if (half(rng)) {
                in_h_[e] = 1;
                ++h_[g_.edge(e).u];
                ++h_[g_.edge(e).v];
            }
        }
        unsat_.clear();
        std::fill(pos_.begin(), pos_.end(), -1);
        potential_ = 0;
        for (int v = 0; v < g_.num_vertices(); ++v) {
            int p = rules_[v].potential(h_[v]);
            potential_ += p;
            if (p > 0)
                mark(v, true);
        }
        snapshot_if_better();

        std::int64_t since_best = 0;
        std::int64_t run_best = potential_;
        for (std::int64_t step = 0; step < steps_ && !unsat_.empty(); ++step) {
            int v = unsat_[std::uniform_int_distribution<std::size_t>(0, unsat_.size() - 1)(rng)];
            auto inc = g_.incident_edges(v);
            if (inc.empty()) {
                // Isolated constrained vertex: nothing to toggle.
                if (++since_best > plateau_)
                    break;
                continue;
            }
            int best_delta = 0, best_edge = -1, ties = 0;
            for (int e : inc) {
                int d = delta(e);
                if (best_edge < 0 || d < best_delta) {
                    best_delta = d;
                    best_edge = e;
                    ties = 1;
                } else if (d == best_delta && std::uniform_int_distribution<int>(0, ties++)(rng) == 0) {
                    best_edge = e;
                }
            }
            if (best_delta >= 0 && augment(v)) {
                if (potential_ < run_best) {
                    run_best = potential_;
                    since_best = 0;
                    snapshot_if_better();
                }
                continue;
            }
            if (best_delta > 0) {
                // Stuck at v: a random toggle keeps the walk moving.
                if (std::uniform_int_distribution<int>(0, 19)(rng) != 0) {
                    if (++since_best > plateau_)
                        break;
                    continue;
                }
                best_edge = inc[std::uniform_int_distribution<std::size_t>(0, inc.size() - 1)(rng)];
            }
            toggle(best_edge);
            if (potential_ < run_best) {
                run_best = potential_;
                since_best = 0;
                snapshot_if_better();
            } else if (++since_best > plateau_) {
                break;
            }
        }
        return potential_ == 0;
    }

    const std::vector<std::uint8_t>& best() const { return best_h_; }
    std::int64_t best_potential() const { return best_potential_; }

private:
    // Alternating walk from v: edges added and removed in turn, so only v
    // and the far end change degree. Applies the first walk (breadth-first)
    // that lowers the potential.
    bool augment(int v)
    {
        const int n = g_.num_vertices();
        if (parent_.empty()) {
            parent_.assign(static_cast<std::size_t>(2 * n), -2);
            via_.assign(static_cast<std::size_t>(2 * n), -1);
        }
        const int base_v = rules_[v].potential(h_[v]);
        for (int dir : {+1, -1}) {
            const int gain_v = rules_[v].potential(h_[v] + dir) - base_v;
            if (gain_v >= 1)
                continue;
            std::vector<int> touched, queue;
            auto state = [](int x, int sign) { return 2 * x + (sign > 0 ? 1 : 0); };
            int found = -1;
            // From v the first edge changes by dir at both ends.
            for (int e : g_.incident_edges(v)) {
                if ((dir > 0) == (in_h_[e] != 0))
                    continue;
                int w = g_.other_end(e, v);
                int st = state(w, dir);
                if (w == v || parent_[st] != -2)
                    continue;
                parent_[st] = -1;
                via_[st] = e;
                touched.push_back(st);
                queue.push_back(st);
            }
            for (std::size_t head = 0; head < queue.size() && head < kAugmentStates && found < 0; ++head) {
                const int st = queue[head];
                const int x = st / 2, sign = st % 2 ? 1 : -1;
                if (gain_v + rules_[x].potential(h_[x] + sign) - rules_[x].potential(h_[x]) < 0) {
                    found = st;
                    break;
                }
                // Cancel the change at x with an edge of the opposite kind.
                for (int f : g_.incident_edges(x)) {
                    if (f == via_[st] || (sign > 0) != (in_h_[f] != 0))
                        continue;
                    int y = g_.other_end(f, x);
                    int nst = state(y, -sign);
                    if (y == v || parent_[nst] != -2)
                        continue;
                    parent_[nst] = st;
                    via_[nst] = f;
                    touched.push_back(nst);
                    queue.push_back(nst);
                }
            }
            std::vector<int> path;
            for (int st = found; st >= 0; st = parent_[st])
                path.push_back(via_[st]);
            for (int st : touched) {
                parent_[st] = -2;
                via_[st] = -1;
            }
            if (found < 0)
                continue;
            std::sort(path.begin(), path.end());
            if (std::adjacent_find(path.begin(), path.end()) != path.end())
                continue;
            const std::int64_t before = potential_;
            for (int e : path)
                toggle(e);
            if (potential_ < before)
                return true;
            for (int e : path)
                toggle(e);
        }
        return false;
    }

    int delta(int e) const
    {
        int step = in_h_[e] ? -1 : 1;
        int u = g_.edge(e).u, v = g_.edge(e).v;
        return rules_[u].potential(h_[u] + step) - rules_[u].potential(h_[u]) + rules_[v].potential(h_[v] + step) -
               rules_[v].potential(h_[v]);
    }

    void mark(int v, bool violated)
    {
        if (violated && pos_[v] < 0) {
            pos_[v] = static_cast<int>(unsat_.size());
            unsat_.push_back(v);
        } else if (!violated && pos_[v] >= 0) {
            int last = unsat_.back();
            unsat_[pos_[v]] = last;
            pos_[last] = pos_[v];
            unsat_.pop_back();
            pos_[v] = -1;
        }
    }

    void toggle(int e)
    {
        int step = in_h_[e] ? -1 : 1;
        in_h_[e] ^= 1;
        for (int x : {g_.edge(e).u, g_.edge(e).v}) {
            potential_ -= rules_[x].potential(h_[x]);
            h_[x] += step;
            int p = rules_[x].potential(h_[x]);
            potential_ += p;
            mark(x, p > 0);
        }
    }

    void snapshot_if_better()
    {
        if (best_h_.empty() || potential_ < best_potential_) {
            best_h_ = in_h_;
            best_potential_ = potential_;
        }
    }

    const Graph& g_;
    std::vector<VertexRule> rules_;
    std::vector<int> h_;
    std::vector<std::uint8_t> in_h_;
    std::vector<int> unsat_;
    std::vector<int> pos_;
    std::int64_t potential_ = 0;
    std::int64_t steps_ = 0;
    std::int64_t plateau_ = 0;
    std::vector<std::uint8_t> best_h_;
    std::int64_t best_potential_ = 0;
    std::vector<int> parent_;
    std::vector<int> via_;
};

EdgeSet to_edge_set(const std::vector<std::uint8_t>& mask)
{
    EdgeSet s(static_cast<int>(mask.size()));
    for (std::size_t e = 0; e < mask.size(); ++e)
        if (mask[e])
            s.insert(static_cast<int>(e));
    return s;
}

std::int64_t potential_of(const DcsInstance& inst, const EdgeSet& H)
{
    auto rules = rules_of(inst);
    auto deg = subgraph_degrees(*inst.host, H);
    std::int64_t total = 0;
    for (std::size_t v = 0; v < rules.size(); ++v)
        total += rules[v].potential(deg[v]);
    return total;
}

} // namespace

DcsInstance DcsInstance::uniform(const Graph& g, int lambda, std::vector<int> t)
{
    DcsInstance inst;
    inst.host = &g;
    inst.lambda.assign(static_cast<std::size_t>(g.num_vertices()), lambda);
    inst.t = std::move(t);
    if (inst.t.empty())
        inst.t.assign(static_cast<std::size_t>(g.num_vertices()), 0);
    inst.validate(false);
    inst.normalize();
    return inst;
}

void DcsInstance::normalize()
{
    for (std::size_t v = 0; v < t.size(); ++v)
        t[v] = mod(t[v], lambda[v]);
}

void DcsInstance::validate(bool enforce_preconditions) const
{
    if (!host)
        throw input_error("DCS instance without a host graph");
    const Graph& g = *host;
    const auto n = static_cast<std::size_t>(g.num_vertices());
    if (lambda.size() != n || t.size() != n || (!active.empty() && active.size() != n))
        throw input_error("DCS instance arrays must have one entry per vertex");
    for (std::size_t v = 0; v < n; ++v)
        if (lambda[v] < 2)
            throw input_error("lambda at vertex " + std::to_string(v) + " must be >= 2");
    if (!enforce_preconditions)
        return;
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!constrained(v))
            continue;
        if (g.degree(v) < 12)
            throw input_error("vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) +
                              " < 12");
        if (6 * lambda[v] > g.degree(v))
            throw input_error("vertex " + std::to_string(v) + " violates 6*lambda <= degree");
    }
}

DcsCertificate verify(const DcsInstance& inst, const EdgeSet& H)
{
    const Graph& g = *inst.host;
    if (H.host_size() != g.num_edges())
        throw input_error("subgraph is not over the instance host");
    DcsCertificate cert;
    cert.H = H;
    cert.pass = true;
    auto deg = subgraph_degrees(g, H);
    cert.vertices.resize(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) {
        auto& rec = cert.vertices[v];
        rec.deg_H = deg[v];
        if (!inst.constrained(v))
            continue;
        // deg/3 <= h <= 2 deg/3 by cross-multiplication.
        rec.window = 3 * deg[v] >= g.degree(v) && 3 * deg[v] <= 2 * g.degree(v);
        int r = mod(deg[v] - inst.t[v], inst.lambda[v]);
        rec.residue = r == 0 || r == 1;
        if (!rec.window || !rec.residue) {
            cert.pass = false;
            cert.failing.push_back(v);
        }
    }
    return cert;
}

std::optional<EdgeSet> solve_exhaustive(const DcsInstance& inst)
{
    const Graph& g = *inst.host;
    const int m = g.num_edges();
    if (m > kExhaustiveEdgeLimit)
        throw input_error("exhaustive DCS search limited to " + std::to_string(kExhaustiveEdgeLimit) + " edges");
    auto rules = rules_of(inst);
    std::vector<int> h(static_cast<std::size_t>(g.num_vertices()), 0);
    auto ok = [&](int v) { return !rules[v].active || (rules[v].window(h[v]) && rules[v].residue(h[v])); };
    int bad = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        bad += ok(v) ? 0 : 1;
    std::uint64_t mask = 0;
    // Gray-code walk: each step toggles exactly one edge.
    for (std::uint64_t i = 0;; ++i) {
        if (bad == 0)
            return to_edge_set([&] {
                std::vector<std::uint8_t> bits(static_cast<std::size_t>(m));
                for (int e = 0; e < m; ++e)
                    bits[e] = (mask >> e) & 1U;
                return bits;
            }());
        if (i + 1 >= (std::uint64_t{1} << m))
            return std::nullopt;
        int e = __builtin_ctzll(i + 1);
        int step = ((mask >> e) & 1U) ? -1 : 1;
        mask ^= std::uint64_t{1} << e;
        for (int x : {g.edge(e).u, g.edge(e).v}) {
            bad -= ok(x) ? 0 : 1;
            h[x] += step;
            bad += ok(x) ? 0 : 1;
        }
    }
}

DcsSolveResult solve_best_effort(const DcsInstance& inst_in, std::uint64_t seed, const DcsOptions& options)
{
    DcsInstance inst = inst_in;
    inst.validate(options.enforce_preconditions);
    inst.normalize();

    DcsSolveResult res;
    LocalSearch search(inst, options);
    for (int r = 0; r < std::max(1, options.restarts); ++r) {
        Rng rng = make_rng(seed, "dcs_restart", static_cast<std::uint64_t>(r));
        res.restarts_used = r + 1;
        if (search.run(rng))
            break;
    }
    EdgeSet best = to_edge_set(search.best());
    res.certificate = verify(inst, best);
    res.certified = res.certificate.pass;
    if (!res.certified && options.exact_fallback && inst.host->num_edges() <= kExhaustiveEdgeLimit) {
        if (auto exact = solve_exhaustive(inst)) {
            res.certificate = verify(inst, *exact);
            res.certified = res.certificate.pass;
            res.via_exhaustive = true;
        }
    }
    if (res.certified != (search.best_potential() == 0 || res.via_exhaustive))
        throw std::logic_error("DCS potential and verifier disagree");
    res.best_potential = res.certified ? 0 : potential_of(inst, res.certificate.H);
    return res;
}

DcsCertificate solve(const DcsInstance& inst, std::uint64_t seed, const DcsOptions& options)
{
    auto res = solve_best_effort(inst, seed, options);
    if (!res.certified)
        throw solver_failure("DCS solver found no certificate after " + std::to_string(res.restarts_used) +
                             " restarts (best potential " + std::to_string(res.best_potential) + ")");
    if (!verify(inst, res.certificate.H).pass)
        throw std::logic_error("DCS solver returned an uncertified subgraph");
    return res.certificate;
}

} // namespace locirr
