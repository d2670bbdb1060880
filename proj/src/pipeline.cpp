#include "locirr/pipeline.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "locirr/dcs.hpp"
#include "locirr/errors.hpp"
#include "locirr/rng.hpp"
#include "locirr/rounding.hpp"

namespace locirr {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

void round_class(const Graph& g, const EdgeSet& X, std::uint64_t seed, std::vector<std::uint8_t>& label)
{
    if (X.empty())
        return;
    EdgeSubgraph sub = edge_subgraph(g, X);
    BinaryEdgeLabels x = balanced_round(FractionalEdgeWeights::uniform(sub.graph, 0.5), seed);
    for (std::size_t j = 0; j < sub.to_host.size(); ++j)
        label[sub.to_host[j]] = x.x[j];
}

std::array<EdgeSet, 4> rounded_classes(const DistinguishedSets& sets)
{
    return {sets.R_prime, sets.U_e, sets.T - sets.U_e, sets.E_dblprime};
}

class DiagnosticSink {
public:
    void check(const std::string& name, bool ok)
    {
        auto it = std::find_if(list_.begin(), list_.end(), [&](const Diagnostic& x) { return x.name == name; });
        if (it == list_.end()) {
            list_.push_back({name, 0, 0});
            it = list_.end() - 1;
        }
        ++it->checked;
        it->violations += ok ? 0 : 1;
    }
    void declare(const std::string& name)
    {
        if (std::none_of(list_.begin(), list_.end(), [&](const Diagnostic& x) { return x.name == name; }))
            list_.push_back({name, 0, 0});
    }
    std::vector<Diagnostic> take() { return std::move(list_); }

private:
    std::vector<Diagnostic> list_;
};

} // namespace

HalfSplit split_edges(const Graph& g, const VertexColoring& c, const DistinguishedSets& sets, std::uint64_t seed)
{
    const int m = g.num_edges();
    HalfSplit split;
    split.label.assign(static_cast<std::size_t>(m), 0);
    split.rule.assign(static_cast<std::size_t>(m), SplitRule::remaining);
    for (int e = 0; e < m; ++e) {
        auto [v, w] = g.edge(e);
        if (sets.S.contains(e)) {
            bool same_I = c.I[v] == c.I[w];
            split.rule[e] = same_I ? SplitRule::special_equal_I : SplitRule::special_equal_O;
            split.label[e] = same_I ? 0 : 1;
        } else if (sets.R_prime.contains(e) || sets.U_e.contains(e)) {
            split.rule[e] = SplitRule::risky_or_inner;
        } else if (sets.T.contains(e)) {
            split.rule[e] = SplitRule::touching;
        }
    }
    round_class(g, sets.R_prime | sets.U_e, derive_seed(seed, "split_round", 2), split.label);
    round_class(g, sets.T - sets.U_e, derive_seed(seed, "split_round", 3), split.label);
    round_class(g, sets.E_dblprime, derive_seed(seed, "split_round", 4), split.label);

    for (int i = 0; i < 2; ++i) {
        EdgeSet Ei(m);
        for (int e = 0; e < m; ++e)
            if (split.label[e] == i)
                Ei.insert(e);
        HalfSets& h = split.half[i];
        h.E = Ei;
        h.U_e = sets.U_e & Ei;
        h.T = sets.T & Ei;
        h.S = sets.S & Ei;
        h.R = sets.R & Ei;
        h.R_prime = sets.R_prime & Ei;
        h.E_prime = sets.E_prime & Ei;
        h.E_dblprime = sets.E_dblprime & Ei;
    }
    return split;
}

BalanceReport check_balance(const Graph& g, const DistinguishedSets& sets, const HalfSplit& split)
{
    BalanceReport rep;
    auto classes = rounded_classes(sets);
    for (std::size_t j = 0; j < classes.size(); ++j) {
        auto dX = subgraph_degrees(g, classes[j]);
        auto dX0 = subgraph_degrees(g, classes[j] & split.half[0].E);
        int worst = 0;
        for (int v = 0; v < g.num_vertices(); ++v)
            worst = std::max(worst, std::abs(2 * dX0[v] - dX[v]));
        rep.max_twice_deviation[j] = worst;
        rep.ok = rep.ok && worst <= 2;
    }
    return rep;
}

bool check_rule_partition(const Graph& g, const VertexColoring& c, const DistinguishedSets& sets,
                          const HalfSplit& split)
{
    const EdgeSet touching = sets.T - sets.U_e;
    for (int e = 0; e < g.num_edges(); ++e) {
        int domains = int{sets.S.contains(e)} + int{sets.R_prime.contains(e)} + int{sets.U_e.contains(e)} +
                      int{touching.contains(e)} + int{sets.E_dblprime.contains(e)};
        if (domains != 1)
            return false;
        auto [v, w] = g.edge(e);
        SplitRule expected = SplitRule::remaining;
        if (sets.S.contains(e)) {
            // Exactly one coordinate agrees on a special edge.
            if ((c.I[v] == c.I[w]) == (c.O[v] == c.O[w]))
                return false;
            expected = c.I[v] == c.I[w] ? SplitRule::special_equal_I : SplitRule::special_equal_O;
            if (split.label[e] != (c.I[v] == c.I[w] ? 0 : 1))
                return false;
        } else if (sets.R_prime.contains(e) || sets.U_e.contains(e)) {
            expected = SplitRule::risky_or_inner;
        } else if (touching.contains(e)) {
            expected = SplitRule::touching;
        }
        if (split.rule[e] != expected || split.label[e] > 1)
            return false;
    }
    return true;
}

TvSelection choose_Tv(const Graph& g, const DistinguishedSets& sets, const HalfSplit& split, int i,
                      std::int64_t D_size, bool strict)
{
    const int n = g.num_vertices();
    const HalfSets& hs = split.half[i];
    auto deg = subgraph_degrees(g, hs.E);
    TvSelection sel;
    sel.T_v.resize(static_cast<std::size_t>(n));
    sel.T_U = EdgeSet(g.num_edges());
    std::vector<std::int64_t> f2(static_cast<std::size_t>(n), 0);

    for (int v = 0; v < n; ++v) {
        if (!sets.in_U(v))
            continue;
        std::vector<int> eligible;
        std::set<std::int64_t> forbidden;
        int inner = 0;
        for (int e : g.incident_edges(v)) {
            if (hs.U_e.contains(e)) {
                ++inner;
                int w = g.other_end(e, v);
                if (w < v)
                    forbidden.insert(f2[w]);
            } else if (hs.T.contains(e)) {
                eligible.push_back(e);
            }
        }
        std::sort(eligible.begin(), eligible.end());
        const auto avail = static_cast<std::int64_t>(eligible.size());
        if (avail < D_size - 1 || inner >= D_size) {
            if (strict)
                throw construction_error("vertex " + std::to_string(v) + " in U violates the T_v size bounds");
            sel.precondition_failures.push_back(v);
        }
        std::int64_t chosen = -1;
        for (std::int64_t s = 0; s < D_size && s <= avail && chosen < 0; ++s)
            if (!forbidden.count(deg[v] - s))
                chosen = s;
        if (chosen < 0) {
            if (strict)
                throw construction_error("no admissible |T_v| at vertex " + std::to_string(v));
            sel.fallback.push_back(v);
            for (std::int64_t s = 0; s <= avail && chosen < 0; ++s)
                if (!forbidden.count(deg[v] - s))
                    chosen = s;
            if (chosen < 0)
                chosen = 0;
        }
        for (std::int64_t j = 0; j < chosen; ++j) {
            sel.T_v[v].push_back(eligible[j]);
            sel.T_U.insert(eligible[j]);
        }
        f2[v] = deg[v] - chosen;
    }
    return sel;
}

HalfDecomposition decompose_half(const Graph& g, const VertexColoring& c, const DistinguishedSets& sets,
                                 const HalfSplit& split, int i, const ConstantProfile& p, std::int64_t d,
                                 std::uint64_t seed, Mode mode, const PipelineBudgets& budgets)
{
    const bool strict = mode == Mode::strict;
    const int n = g.num_vertices();
    const HalfSets& hs = split.half[i];
    const DerivedQuantities q = derive(p, d);
    const std::int64_t lambda = q.lambda;
    const std::vector<int>& coord = i == 0 ? c.O : c.I;

    HalfDecomposition out;
    out.half = i;
    out.tv = choose_Tv(g, sets, split, i, q.D_size, strict);

    auto base = subgraph_degrees(g, out.tv.T_U | hs.R);
    out.t.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (!sets.in_U(v))
            out.t[v] = static_cast<int>(mod(2 * std::int64_t{coord[v]} - base[v], lambda));

    EdgeSubgraph sub = edge_subgraph(g, hs.E_prime);
    DcsInstance inst;
    inst.host = &sub.graph;
    inst.lambda.assign(static_cast<std::size_t>(n), static_cast<int>(lambda));
    inst.t.resize(static_cast<std::size_t>(n));
    inst.active.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        inst.t[v] = std::max(out.t[v], 0);
        if (sets.in_U(v))
            continue;
        if (!strict && sub.graph.degree(v) < 12) {
            out.dcs_excluded.push_back(v);
            continue;
        }
        inst.active[v] = 1;
    }

    DcsOptions opt;
    opt.restarts = budgets.restarts;
    opt.enforce_preconditions = strict;
    EdgeSet H_sub(sub.graph.num_edges());
    if (strict) {
        H_sub = solve(inst, derive_seed(seed, "dcs"), opt).H;
        out.dcs_certified = true;
    } else {
        DcsSolveResult res = solve_best_effort(inst, derive_seed(seed, "dcs"), opt);
        H_sub = res.certificate.H;
        out.dcs_certified = res.certified;
        out.dcs_restarts = res.restarts_used;
    }
    out.H = EdgeSet(g.num_edges());
    for (int j : H_sub.members())
        out.H.insert(sub.to_host[j]);

    out.F1 = out.tv.T_U | hs.R | out.H;
    out.F2 = hs.E - out.F1;

    // Proof-chain diagnostics; only the final verdicts gate success.
    const double dd = static_cast<double>(d), sd = p.s * dd, ud = p.u * dd;
    const double f2_split = dd / 3.0 + sd / 3.0 + ud / 6.0 + 7.0 / 3.0;
    auto dH = subgraph_degrees(g, hs.E);
    auto dHp = subgraph_degrees(g, hs.E_prime);
    auto dDcs = subgraph_degrees(g, out.H);
    auto dF1 = subgraph_degrees(g, out.F1);
    auto dF2 = subgraph_degrees(g, out.F2);
    DiagnosticSink diag;
    for (const char* name :
         {"dcs_host_degree", "degree_in_U", "degree_outside_U", "tv_preconditions", "tv_distinct", "dcs_window",
          "dcs_residue", "f1_residue", "f1_outside_U_above_d1", "f1_in_U_below_d1", "f2_outside_U_upper",
          "f2_in_U_lower"})
        diag.declare(name);
    for (int v = 0; v < n; ++v) {
        if (sets.in_U(v)) {
            diag.check("degree_in_U", std::abs(2.0 * dH[v] - dd) <= 4.0);
            diag.check("tv_preconditions", !std::binary_search(out.tv.precondition_failures.begin(),
                                                                out.tv.precondition_failures.end(), v));
            diag.check("f1_in_U_below_d1", dF1[v] < q.d1);
            diag.check("f2_in_U_lower", dF2[v] > f2_split);
        } else {
            diag.check("dcs_host_degree", dHp[v] > 6 * lambda);
            diag.check("degree_outside_U", dH[v] > (dd - sd) / 2.0 - 3.0 && dH[v] < (dd + sd) / 2.0 + 3.0);
            diag.check("dcs_window", 3 * dDcs[v] >= dHp[v] && 3 * dDcs[v] <= 2 * dHp[v]);
            auto r = mod(dDcs[v] - out.t[v], lambda);
            diag.check("dcs_residue", r == 0 || r == 1);
            auto r1 = mod(dF1[v] - 2 * std::int64_t{coord[v]}, lambda);
            diag.check("f1_residue", r1 == 0 || r1 == 1);
            diag.check("f1_outside_U_above_d1", dF1[v] > q.d1);
            diag.check("f2_outside_U_upper", dF2[v] < f2_split);
        }
    }
    for (int e : hs.U_e.members()) {
        auto [v, w] = g.edge(e);
        auto a = dH[v] - static_cast<int>(out.tv.T_v[v].size());
        auto b = dH[w] - static_cast<int>(out.tv.T_v[w].size());
        diag.check("tv_distinct", a != b);
    }
    out.diagnostics = diag.take();
    return out;
}

bool Decomposition::success() const
{
    return !verdicts.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; });
}

Decomposition verify_decomposition(const Graph& g, std::vector<EdgeSet> parts)
{
    Decomposition dec;
    for (const EdgeSet& part : parts) {
        if (part.host_size() != g.num_edges())
            throw input_error("decomposition part is not over the graph's edges");
        auto bad = conflicting_edges(g, part);
        dec.verdicts.push_back(bad.empty());
        dec.conflicts.push_back(std::move(bad));
    }
    dec.parts = std::move(parts);
    return dec;
}

bool is_exact_cover(const Graph& g, const std::vector<EdgeSet>& parts)
{
    std::vector<int> count(static_cast<std::size_t>(g.num_edges()), 0);
    for (const EdgeSet& part : parts) {
        if (part.host_size() != g.num_edges())
            return false;
        for (int e : part.members())
            ++count[e];
    }
    return std::all_of(count.begin(), count.end(), [](int x) { return x == 1; });
}

namespace {

PipelineResult run_once(const Graph& g, const ConstantProfile& p, std::int64_t d, Mode mode, std::uint64_t seed,
                        const PipelineBudgets& budgets)
{
    const bool strict = mode == Mode::strict;
    PipelineResult out;
    RunReport& rep = out.report;
    rep.attempt_seed = seed;

    ResampleResult rr = resample_until_good(g, p, d, derive_seed(seed, "coloring"), budgets.max_rounds);
    if (strict && !rr.success)
        throw budget_exhausted("colouring audit still failing after " + std::to_string(rr.rounds) + " rounds");
    rep.resample_rounds = rr.rounds;
    rep.coloring_audit_pass = rr.success;
    rep.U_size = rr.sets.U_size();

    out.split = split_edges(g, rr.coloring, rr.sets, derive_seed(seed, "split"));
    rep.balance = check_balance(g, rr.sets, out.split);
    rep.rule_partition = check_rule_partition(g, rr.coloring, rr.sets, out.split);
    auto dES = subgraph_degrees(g, EdgeSet::all(g.num_edges()) - rr.sets.S);
    auto dE0S = subgraph_degrees(g, out.split.half[0].E - out.split.half[0].S);
    for (int v = 0; v < g.num_vertices(); ++v)
        rep.composite_balance = rep.composite_balance && std::abs(2 * dE0S[v] - dES[v]) <= 6;

    for (int i = 0; i < 2; ++i)
        rep.halves[i] = decompose_half(g, rr.coloring, rr.sets, out.split, i, p, d,
                                       derive_seed(seed, "half", static_cast<std::uint64_t>(i)), mode, budgets);

    std::vector<EdgeSet> parts{rep.halves[0].F1, rep.halves[0].F2, rep.halves[1].F1, rep.halves[1].F2};
    rep.exact_cover = is_exact_cover(g, parts);
    out.decomposition = verify_decomposition(g, std::move(parts));
    rep.success = out.decomposition.success() && rep.exact_cover;
    rep.implementation_fault = strict && !rep.success;
    return out;
}

} // namespace

PipelineResult decompose_to_four(const Graph& g, const ConstantProfile& p, Mode mode, std::uint64_t seed,
                                 const PipelineBudgets& budgets)
{
    p.validate();
    auto reg = g.regular_degree();
    if (!reg)
        throw input_error("decomposition needs a regular graph");
    const std::int64_t d = *reg;
    if (d < 1)
        throw input_error("decomposition needs a graph with at least one edge");
    if (budgets.max_rounds < 1 || budgets.restarts < 1 || budgets.attempts < 1)
        throw input_error("budgets must be positive");

    bool profile_ok = false;
    std::vector<std::string> failures;
    if (d >= kMinDegree) {
        FeasibilityReport fr = check_profile(p, d);
        profile_ok = fr.pass;
        failures = fr.failures();
    } else {
        failures.push_back("degree below " + std::to_string(kMinDegree));
    }
    if (mode == Mode::strict && !profile_ok)
        throw input_error("profile is not feasible at d = " + std::to_string(d));

    const int attempts = mode == Mode::strict ? 1 : budgets.attempts;
    PipelineResult out;
    for (int a = 0; a < attempts; ++a) {
        std::uint64_t s = a == 0 ? seed : derive_seed(seed, "attempt", static_cast<std::uint64_t>(a));
        out = run_once(g, p, d, mode, s, budgets);
        out.report.attempts_used = a + 1;
        if (out.report.success)
            break;
    }
    out.report.mode = mode;
    out.report.d = d;
    out.report.derived = derive(p, d);
    out.report.profile_check = profile_ok;
    out.report.profile_failures = std::move(failures);
    return out;
}

ConstantProfile scaled_profile()
{
    const ConstantProfile paper = ConstantProfile::paper();
    ConstantProfile p;
    p.k = 0.1;
    p.s = 0.05;
    p.r = 0.3;
    p.u = 0.2;
    p.s1 = p.s * paper.s1 / paper.s;
    p.r1 = p.r * paper.r1 / paper.r;
    p.u1 = p.u * paper.u1 / paper.u;
    return p;
}

} // namespace locirr
