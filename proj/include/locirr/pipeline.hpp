#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "locirr/coloring.hpp"
#include "locirr/constants.hpp"
#include "locirr/graph.hpp"

namespace locirr {

// Which labelling rule colours an edge.
enum class SplitRule : std::uint8_t {
    special_equal_I = 0,  // S edge with I_v = I_w, coloured 0
    special_equal_O = 1,  // S edge with O_v = O_w, coloured 1
    risky_or_inner = 2,   // R' u U_e, rounded
    touching = 3,         // T minus U_e, rounded
    remaining = 4,        // E'', rounded
};

struct HalfSets {
    EdgeSet E, U_e, T, S, R, R_prime, E_prime, E_dblprime;
};

struct HalfSplit {
    std::vector<std::uint8_t> label;  // 0 or 1 per edge
    std::vector<SplitRule> rule;
    std::array<HalfSets, 2> half;
};

// Largest |d_{X_0}(v) - d_X(v)/2| over v for each rounded class
// X in {R', U_e, T minus U_e, E''}, scaled by 2 to stay integral.
struct BalanceReport {
    std::array<int, 4> max_twice_deviation{};
    bool ok = true;  // every deviation <= 1
};

HalfSplit split_edges(const Graph& g, const VertexColoring& c, const DistinguishedSets& sets, std::uint64_t seed);

BalanceReport check_balance(const Graph& g, const DistinguishedSets& sets, const HalfSplit& split);

// Every edge lies in exactly one rule domain and carries its rule's label.
bool check_rule_partition(const Graph& g, const VertexColoring& c, const DistinguishedSets& sets,
                          const HalfSplit& split);

struct TvSelection {
    std::vector<std::vector<int>> T_v;  // per vertex, empty outside U
    EdgeSet T_U;
    std::vector<int> precondition_failures;  // U vertices failing the size bounds
    std::vector<int> fallback;                // U vertices with no admissible size in D
};

// Greedy over U in ascending order; the smallest size in D = {0, ...,
// D_size - 1} keeping d_{E_i}(v) - |T_v| distinct from every processed U_e_i
// neighbour, using the lowest-indexed eligible edges. strict: precondition
// failures raise construction_error.
TvSelection choose_Tv(const Graph& g, const DistinguishedSets& sets, const HalfSplit& split, int i,
                      std::int64_t D_size, bool strict);

struct Diagnostic {
    std::string name;
    int checked = 0;
    int violations = 0;
};

struct HalfDecomposition {
    int half = 0;
    TvSelection tv;
    std::vector<int> t;  // -1 on U
    EdgeSet H;
    EdgeSet F1, F2;
    bool dcs_certified = false;
    int dcs_restarts = 0;
    std::vector<int> dcs_excluded;  // best-effort: vertices left out of the DCS instance
    std::vector<Diagnostic> diagnostics;
};

enum class Mode { strict, best_effort };

struct PipelineBudgets {
    int max_rounds = 10'000;
    int restarts = 50;
    int attempts = 1;  // best-effort only: independent reruns until success
};

HalfDecomposition decompose_half(const Graph& g, const VertexColoring& c, const DistinguishedSets& sets,
                                 const HalfSplit& split, int i, const ConstantProfile& p, std::int64_t d,
                                 std::uint64_t seed, Mode mode, const PipelineBudgets& budgets);

struct Decomposition {
    std::vector<EdgeSet> parts;
    std::vector<bool> verdicts;
    std::vector<std::vector<int>> conflicts;

    bool success() const;
};

// Recomputes verdicts and conflicts from the parts alone.
Decomposition verify_decomposition(const Graph& g, std::vector<EdgeSet> parts);

// Parts pairwise disjoint with union E.
bool is_exact_cover(const Graph& g, const std::vector<EdgeSet>& parts);

struct RunReport {
    Mode mode = Mode::best_effort;
    std::int64_t d = 0;
    DerivedQuantities derived;
    bool profile_check = false;
    std::vector<std::string> profile_failures;
    int attempts_used = 0;
    std::uint64_t attempt_seed = 0;
    int resample_rounds = 0;
    bool coloring_audit_pass = false;
    int U_size = 0;
    BalanceReport balance;
    // |d_{E_0 - S_0}(v) - d_{E - S}(v)/2| <= 3 everywhere.
    bool composite_balance = true;
    bool rule_partition = true;
    bool exact_cover = true;
    std::array<HalfDecomposition, 2> halves;
    bool success = false;
    bool implementation_fault = false;
};

struct PipelineResult {
    Decomposition decomposition;  // parts (F1 of H_0, F2 of H_0, F1 of H_1, F2 of H_1)
    HalfSplit split;
    RunReport report;
};

// Throws input_error for non-regular input or, in strict mode, a profile
// failing check_profile at the inferred degree.
PipelineResult decompose_to_four(const Graph& g, const ConstantProfile& p, Mode mode, std::uint64_t seed,
                                 const PipelineBudgets& budgets = {});

// Demo profile for small degrees; the split points are the paper's ratios.
ConstantProfile scaled_profile();

} // namespace locirr
