#include "locirr/json_io.hpp"

#include <fstream>

#include "locirr/errors.hpp"

namespace locirr {

json to_json(const ConstantProfile& p)
{
    return {{"k", p.k}, {"s", p.s}, {"r", p.r}, {"u", p.u}, {"s1", p.s1}, {"r1", p.r1}, {"u1", p.u1}};
}

ConstantProfile profile_from_json(const json& j)
{
    if (!j.is_object())
        throw input_error("profile must be a JSON object");
    ConstantProfile p;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number())
            throw input_error("profile field '" + key + "' must be a number");
        double x = value.get<double>();
        if (key == "k") p.k = x;
        else if (key == "s") p.s = x;
        else if (key == "r") p.r = x;
        else if (key == "u") p.u = x;
        else if (key == "s1") p.s1 = x;
        else if (key == "r1") p.r1 = x;
        else if (key == "u1") p.u1 = x;
        else throw input_error("unknown profile field '" + key + "'");
    }
    p.validate();
    return p;
}

json to_json(const DerivedQuantities& q)
{
    return {{"d", q.d}, {"K", q.K}, {"lambda", q.lambda}, {"d1", q.d1}, {"D_size", q.D_size}};
}

json to_json(const FeasibilityReport& r)
{
    json records = json::array();
    for (const auto& rec : r.records)
        records.push_back({{"name", rec.name}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"pass", rec.pass}});
    return {{"d", r.d}, {"pass", r.pass}, {"constraints", records}};
}

namespace {

json to_json(const HalfDecomposition& h)
{
    json diag = json::array();
    for (const auto& x : h.diagnostics)
        diag.push_back({{"name", x.name}, {"checked", x.checked}, {"violations", x.violations}});
    return {{"half", h.half},
            {"T_U_size", h.tv.T_U.size()},
            {"tv_precondition_failures", h.tv.precondition_failures},
            {"tv_fallback", h.tv.fallback},
            {"dcs_certified", h.dcs_certified},
            {"dcs_restarts", h.dcs_restarts},
            {"dcs_excluded", h.dcs_excluded},
            {"H_size", h.H.size()},
            {"F1_size", h.F1.size()},
            {"F2_size", h.F2.size()},
            {"diagnostics", diag}};
}

} // namespace

json to_json(const RunReport& r)
{
    return {{"mode", r.mode == Mode::strict ? "strict" : "best-effort"},
            {"d", r.d},
            {"derived", to_json(r.derived)},
            {"profile_check", r.profile_check},
            {"profile_failures", r.profile_failures},
            {"attempts_used", r.attempts_used},
            {"attempt_seed", r.attempt_seed},
            {"resample_rounds", r.resample_rounds},
            {"coloring_audit_pass", r.coloring_audit_pass},
            {"U_size", r.U_size},
            {"balance", {{"max_twice_deviation", r.balance.max_twice_deviation}, {"ok", r.balance.ok}}},
            {"composite_balance", r.composite_balance},
            {"rule_partition", r.rule_partition},
            {"exact_cover", r.exact_cover},
            {"halves", {to_json(r.halves[0]), to_json(r.halves[1])}},
            {"success", r.success},
            {"implementation_fault", r.implementation_fault}};
}

json to_json(const RoundingCheck& c)
{
    return {{"ok", c.ok}, {"exact", c.exact}, {"failing", c.failing}};
}

json to_json(const DcsCertificate& c)
{
    json deg = json::array();
    for (const auto& v : c.vertices)
        deg.push_back(v.deg_H);
    return {{"pass", c.pass}, {"H", c.H.members()}, {"deg_H", deg}, {"failing", c.failing}};
}

json decomposition_json(const Decomposition& d)
{
    json parts = json::array();
    for (const auto& p : d.parts)
        parts.push_back(p.members());
    return {{"parts", parts}, {"verdicts", d.verdicts}, {"conflicts", d.conflicts}};
}

std::vector<EdgeSet> parts_from_json(const Graph& g, const json& j)
{
    if (!j.is_object() || !j.contains("parts") || !j["parts"].is_array())
        throw input_error("decomposition JSON needs a \"parts\" array");
    std::vector<EdgeSet> parts;
    for (const auto& part : j["parts"]) {
        if (!part.is_array())
            throw input_error("each part must be an array of edge indices");
        EdgeSet es(g.num_edges());
        for (const auto& x : part) {
            if (!x.is_number_integer())
                throw input_error("edge index must be an integer");
            auto e = x.get<long long>();
            if (e < 0 || e >= g.num_edges())
                throw input_error("edge index " + std::to_string(e) + " out of range");
            if (es.contains(static_cast<int>(e)))
                throw input_error("edge index " + std::to_string(e) + " repeated within a part");
            es.insert(static_cast<int>(e));
        }
        parts.push_back(std::move(es));
    }
    return parts;
}

DcsInstance dcs_instance_from_json(const Graph& g, const json& j)
{
    const auto n = static_cast<std::size_t>(g.num_vertices());
    auto int_array = [&](const char* key) {
        std::vector<int> out;
        if (!j[key].is_array())
            throw input_error(std::string("\"") + key + "\" must be an array");
        for (const auto& x : j[key]) {
            if (!x.is_number_integer())
                throw input_error(std::string("\"") + key + "\" entries must be integers");
            out.push_back(x.get<int>());
        }
        if (out.size() != n)
            throw input_error(std::string("\"") + key + "\" must have one entry per vertex");
        return out;
    };
    if (!j.is_object() || !j.contains("t"))
        throw input_error("DCS instance JSON needs \"t\"");
    DcsInstance inst;
    inst.host = &g;
    inst.t = int_array("t");
    if (j.contains("lambda")) {
        if (j["lambda"].is_number_integer())
            inst.lambda.assign(n, j["lambda"].get<int>());
        else
            inst.lambda = int_array("lambda");
    }
    return inst;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

} // namespace locirr
