#include "locirr/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "locirr/constants.hpp"
#include "locirr/dcs.hpp"
#include "locirr/errors.hpp"
#include "locirr/exact.hpp"
#include "locirr/generators.hpp"
#include "locirr/graph_io.hpp"
#include "locirr/json_io.hpp"
#include "locirr/pipeline.hpp"
#include "locirr/rounding.hpp"

namespace locirr {

namespace {

struct Options {
    std::string in, graph, decomp, out, profile = "paper", mode = "best-effort", z_file, t_file, offsets;
    int n = 0, d_int = 0, k = 4, max_rounds = 10'000, restarts = 50, attempts = 1, budget = 200, edge_cap = 20;
    std::int64_t d = 0;
    int lambda = 0;
    std::uint64_t seed = 0;
    std::uint64_t node_budget = std::uint64_t{1} << 32;
    double z = -1.0;
    bool min_parts = false, force = false, no_symmetry = false, relaxed = false;
};

ConstantProfile load_profile(const std::string& spec)
{
    if (spec == "paper")
        return ConstantProfile::paper();
    if (spec == "scaled")
        return scaled_profile();
    return profile_from_json(read_json_file(spec));
}

void emit(const json& j, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw input_error("cannot write " + path);
    f << j.dump(2) << '\n';
}

json envelope(const json& manifest)
{
    return {{"manifest", manifest}, {"tool_version", kToolVersion}};
}

int cmd_gen_regular(const Options& o, std::ostream& out)
{
    Graph g = generate_regular(o.n, o.d_int, o.seed);
    std::ostringstream text;
    text << "# gen-regular n=" << o.n << " d=" << o.d_int << " seed=" << o.seed << " tool_version=" << kToolVersion
         << '\n';
    write_graph(text, g);
    if (o.out.empty()) {
        out << text.str();
    } else {
        std::ofstream f(o.out);
        if (!f)
            throw input_error("cannot write " + o.out);
        f << text.str();
    }
    return exit_ok;
}

std::vector<int> parse_offsets(const std::string& s)
{
    std::vector<int> offsets;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            offsets.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw input_error("bad offset '" + item + "'");
        }
    }
    if (offsets.empty())
        throw input_error("--offsets needs at least one value");
    return offsets;
}

int cmd_gen_circulant(const Options& o, std::ostream& out)
{
    Graph g = generate_circulant(o.n, parse_offsets(o.offsets));
    std::ostringstream text;
    text << "# gen-circulant n=" << o.n << " offsets=" << o.offsets << " tool_version=" << kToolVersion << '\n';
    write_graph(text, g);
    if (o.out.empty()) {
        out << text.str();
    } else {
        std::ofstream f(o.out);
        if (!f)
            throw input_error("cannot write " + o.out);
        f << text.str();
    }
    return exit_ok;
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err)
{
    Graph g = read_graph_file(o.in);
    ConstantProfile p = load_profile(o.profile);
    Mode mode;
    if (o.mode == "strict")
        mode = Mode::strict;
    else if (o.mode == "best-effort")
        mode = Mode::best_effort;
    else
        throw input_error("--mode must be strict or best-effort");
    PipelineBudgets b{o.max_rounds, o.restarts, o.attempts};
    PipelineResult res = decompose_to_four(g, p, mode, o.seed, b);

    json j = envelope({{"subcommand", "decompose"},
                       {"in", o.in},
                       {"profile", to_json(p)},
                       {"seed", o.seed},
                       {"mode", o.mode},
                       {"budgets", {{"max_rounds", b.max_rounds}, {"restarts", b.restarts}, {"attempts", b.attempts}}},
                       {"out", o.out}});
    j.update(decomposition_json(res.decomposition));
    j["report"] = to_json(res.report);
    emit(j, o.out, out);
    if (res.report.implementation_fault)
        err << "strict run failed verification despite a feasible profile: implementation fault\n";
    if (!res.report.success) {
        for (std::size_t i = 0; i < res.decomposition.conflicts.size(); ++i)
            if (!res.decomposition.conflicts[i].empty())
                err << "part " << i << ": " << res.decomposition.conflicts[i].size() << " conflicting edges\n";
        return exit_false;
    }
    return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    Graph g = read_graph_file(o.graph);
    json dj = read_json_file(o.decomp);
    std::vector<EdgeSet> parts = parts_from_json(g, dj);
    bool cover = is_exact_cover(g, parts);
    Decomposition dec = verify_decomposition(g, parts);
    bool pass = cover && dec.success();

    json j = envelope({{"subcommand", "verify"}, {"graph", o.graph}, {"decomp", o.decomp}, {"out", o.out}});
    j["exact_cover"] = cover;
    j["verdicts"] = dec.verdicts;
    j["conflicts"] = dec.conflicts;
    j["pass"] = pass;
    emit(j, o.out, out);
    if (!cover)
        err << "parts do not partition the edge set\n";
    for (std::size_t i = 0; i < dec.conflicts.size(); ++i)
        for (int e : dec.conflicts[i])
            err << "part " << i << ": conflicting edge " << e << " (" << g.edge(e).u << ", " << g.edge(e).v << ")\n";
    return pass ? exit_ok : exit_false;
}

int cmd_exact(const Options& o, std::ostream& out)
{
    Graph g = read_graph_file(o.in);
    SearchConfig cfg{o.edge_cap, o.node_budget, !o.no_symmetry, o.force};
    json j = envelope({{"subcommand", "exact"},
                       {"in", o.in},
                       {"k", o.k},
                       {"min_parts", o.min_parts},
                       {"budgets", {{"edge_cap", cfg.edge_cap}, {"node_budget", cfg.node_budget}}},
                       {"symmetry_pruning", cfg.symmetry_pruning},
                       {"force", cfg.force},
                       {"out", o.out}});
    bool found;
    std::vector<int> witness;
    int k = o.k;
    if (o.min_parts) {
        MinPartsResult r = min_parts(g, o.k, cfg);
        found = r.k.has_value();
        j["min_parts"] = found ? json(*r.k) : json(nullptr);
        if (found) {
            k = *r.k;
            witness = r.witness;
        }
    } else {
        ExactResult r = is_decomposable(g, o.k, cfg);
        found = r.decomposable;
        j["decomposable"] = found;
        j["nodes"] = r.nodes;
        witness = r.witness;
    }
    if (found) {
        Decomposition dec = verify_decomposition(g, classes_of(g, witness, k));
        j["witness"] = witness;
        j.update(decomposition_json(dec));
    }
    emit(j, o.out, out);
    return found ? exit_ok : exit_false;
}

std::vector<double> read_z_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t first = text.find_first_not_of(" \t\r\n");
    std::vector<double> z;
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw input_error(path + ": " + e.what());
        }
        if (j.is_object())
            j = j.value("z", json());
        if (!j.is_array())
            throw input_error(path + ": expected an array of weights");
        for (const auto& x : j) {
            if (!x.is_number())
                throw input_error(path + ": weights must be numbers");
            z.push_back(x.get<double>());
        }
        return z;
    }
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            z.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw input_error(path + ": bad weight '" + tok + "'");
        }
    }
    return z;
}

int cmd_round(const Options& o, std::ostream& out)
{
    Graph g = read_graph_file(o.in);
    FractionalEdgeWeights w;
    if (!o.z_file.empty()) {
        w.host = &g;
        w.z = read_z_file(o.z_file);
    } else if (o.z >= 0.0) {
        w = FractionalEdgeWeights::uniform(g, o.z);
    } else {
        throw input_error("round needs --z or --z-file");
    }
    w.validate();
    BinaryEdgeLabels x = balanced_round(w, o.seed);
    RoundingCheck check = verify_rounding(w, x);
    json j = envelope({{"subcommand", "round"},
                       {"in", o.in},
                       {"z", o.z_file.empty() ? json(o.z) : json(o.z_file)},
                       {"seed", o.seed},
                       {"out", o.out}});
    j["x"] = x.x;
    j["check"] = to_json(check);
    emit(j, o.out, out);
    return check.ok ? exit_ok : exit_false;
}

int cmd_dcs(const Options& o, std::ostream& out)
{
    Graph g = read_graph_file(o.in);
    DcsInstance inst;
    if (!o.t_file.empty()) {
        inst = dcs_instance_from_json(g, read_json_file(o.t_file));
    } else {
        inst.host = &g;
        inst.t.assign(static_cast<std::size_t>(g.num_vertices()), 0);
    }
    if (inst.lambda.empty()) {
        if (o.lambda < 2)
            throw input_error("dcs needs --lambda >= 2 or a lambda field in the instance file");
        inst.lambda.assign(static_cast<std::size_t>(g.num_vertices()), o.lambda);
    }
    DcsOptions opt;
    opt.restarts = o.restarts;
    opt.enforce_preconditions = !o.relaxed;
    DcsCertificate cert = solve(inst, o.seed, opt);
    json j = envelope({{"subcommand", "dcs"},
                       {"in", o.in},
                       {"t_file", o.t_file},
                       {"lambda", o.lambda},
                       {"seed", o.seed},
                       {"budgets", {{"restarts", o.restarts}}},
                       {"relaxed", o.relaxed},
                       {"out", o.out}});
    j["certificate"] = to_json(cert);
    emit(j, o.out, out);
    return exit_ok;
}

int cmd_constants_check(const Options& o, std::ostream& out)
{
    ConstantProfile p = load_profile(o.profile);
    FeasibilityReport rep = check_profile(p, o.d);
    BoundValues f = bound_functions(p, o.d);
    Thresholds th = monotonicity_thresholds(p);
    json j = envelope({{"subcommand", "constants check"}, {"d", o.d}, {"profile", to_json(p)}, {"out", o.out}});
    j["derived"] = to_json(derive(p, o.d));
    j["bounds"] = {{"f_s", f.f_s}, {"f_r", f.f_r}, {"f_u", f.f_u}};
    j["thresholds"] = {{"d_s", th.d_s}, {"d_r", th.d_r}, {"d_u", th.d_u}};
    j["report"] = to_json(rep);
    emit(j, o.out, out);
    return rep.pass ? exit_ok : exit_false;
}

int cmd_constants_min_d(const Options& o, std::ostream& out)
{
    ConstantProfile p = load_profile(o.profile);
    json j = envelope({{"subcommand", "constants min-d"}, {"profile", to_json(p)}, {"out", o.out}});
    try {
        j["min_d"] = min_feasible_d(p);
    } catch (const infeasible_error&) {
        j["min_d"] = nullptr;
        emit(j, o.out, out);
        return exit_false;
    }
    emit(j, o.out, out);
    return exit_ok;
}

int cmd_constants_optimize(const Options& o, std::ostream& out)
{
    OptimizeResult r = optimize_profile(o.seed, o.budget);
    json j = envelope({{"subcommand", "constants optimize"},
                       {"seed", o.seed},
                       {"budgets", {{"budget", o.budget}}},
                       {"out", o.out}});
    j["profile"] = to_json(r.profile);
    j["min_d"] = r.min_d;
    j["evaluations"] = r.evaluations;
    emit(j, o.out, out);
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Decompositions of regular graphs into locally irregular subgraphs", "locirr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Options o;
    std::function<int()> action;

    auto* gen = app.add_subcommand("gen-regular", "Random d-regular graph");
    gen->add_option("--n", o.n, "Vertices")->required();
    gen->add_option("--d", o.d_int, "Degree")->required();
    gen->add_option("--seed", o.seed);
    gen->add_option("--out", o.out);
    gen->callback([&] { action = [&] { return cmd_gen_regular(o, out); }; });

    auto* circ = app.add_subcommand("gen-circulant", "Circulant graph");
    circ->add_option("--n", o.n)->required();
    circ->add_option("--offsets", o.offsets, "Comma-separated offsets")->required();
    circ->add_option("--out", o.out);
    circ->callback([&] { action = [&] { return cmd_gen_circulant(o, out); }; });

    auto* dec = app.add_subcommand("decompose", "Split a regular graph into four locally irregular parts");
    dec->add_option("--in", o.in)->required();
    dec->add_option("--profile", o.profile, "paper, scaled, or a profile JSON file");
    dec->add_option("--mode", o.mode, "strict or best-effort");
    dec->add_option("--seed", o.seed);
    dec->add_option("--max-rounds", o.max_rounds);
    dec->add_option("--restarts", o.restarts);
    dec->add_option("--attempts", o.attempts);
    dec->add_option("--out", o.out);
    dec->callback([&] { action = [&] { return cmd_decompose(o, out, err); }; });

    auto* ver = app.add_subcommand("verify", "Check a decomposition");
    ver->add_option("--graph", o.graph)->required();
    ver->add_option("--decomp", o.decomp)->required();
    ver->add_option("--out", o.out);
    ver->callback([&] { action = [&] { return cmd_verify(o, out, err); }; });

    auto* ex = app.add_subcommand("exact", "Exhaustive decomposability test");
    ex->add_option("--in", o.in)->required();
    ex->add_option("--k", o.k, "Part count (largest tried with --min-parts)");
    ex->add_flag("--min-parts", o.min_parts);
    ex->add_flag("--force", o.force);
    ex->add_flag("--no-symmetry", o.no_symmetry);
    ex->add_option("--edge-cap", o.edge_cap);
    ex->add_option("--node-budget", o.node_budget);
    ex->add_option("--out", o.out);
    ex->callback([&] { action = [&] { return cmd_exact(o, out); }; });

    auto* rnd = app.add_subcommand("round", "Round fractional edge weights to 0/1");
    rnd->add_option("--in", o.in)->required();
    auto* zc = rnd->add_option("--z", o.z, "Constant weight");
    auto* zf = rnd->add_option("--z-file", o.z_file, "Per-edge weights");
    zc->excludes(zf);
    rnd->add_option("--seed", o.seed);
    rnd->add_option("--out", o.out);
    rnd->callback([&] { action = [&] { return cmd_round(o, out); }; });

    auto* dcs = app.add_subcommand("dcs", "Degree-constrained subgraph");
    dcs->add_option("--in", o.in)->required();
    dcs->add_option("--lambda", o.lambda);
    dcs->add_option("--t-file", o.t_file);
    dcs->add_option("--seed", o.seed);
    dcs->add_option("--restarts", o.restarts);
    dcs->add_flag("--relaxed", o.relaxed, "Skip the degree preconditions");
    dcs->add_option("--out", o.out);
    dcs->callback([&] { action = [&] { return cmd_dcs(o, out); }; });

    auto* con = app.add_subcommand("constants", "Constant profile feasibility");
    con->require_subcommand(1);
    auto* chk = con->add_subcommand("check");
    chk->add_option("--d", o.d)->required();
    chk->add_option("--profile", o.profile);
    chk->add_option("--out", o.out);
    chk->callback([&] { action = [&] { return cmd_constants_check(o, out); }; });
    auto* mind = con->add_subcommand("min-d");
    mind->add_option("--profile", o.profile);
    mind->add_option("--out", o.out);
    mind->callback([&] { action = [&] { return cmd_constants_min_d(o, out); }; });
    auto* opt = con->add_subcommand("optimize");
    opt->add_option("--seed", o.seed);
    opt->add_option("--budget", o.budget);
    opt->add_option("--out", o.out);
    opt->callback([&] { action = [&] { return cmd_constants_optimize(o, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }
    try {
        return action();
    } catch (const input_error& e) {
        err << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const budget_exhausted& e) {
        err << "budget exhausted: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_false;
    }
}

} // namespace locirr
