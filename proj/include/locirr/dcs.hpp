#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "locirr/graph.hpp"

namespace locirr {

// Find a spanning subgraph H with, for every constrained vertex v,
//   deg(v)/3 <= deg_H(v) <= 2 deg(v)/3   and   deg_H(v) = t(v) or t(v)+1 (mod lambda_v).
// Such an H exists when the host has minimum degree >= 12 and
// 6 lambda_v <= deg(v) everywhere.
struct DcsInstance {
    const Graph* host = nullptr;
    std::vector<int> lambda;
    std::vector<int> t;              // reduced into 0..lambda_v-1
    std::vector<std::uint8_t> active;  // empty: every vertex constrained

    static DcsInstance uniform(const Graph& g, int lambda, std::vector<int> t);

    bool constrained(int v) const { return active.empty() || active[v] != 0; }

    // Shape checks always; the degree preconditions only when
    // enforce_preconditions is set. Throws input_error.
    void validate(bool enforce_preconditions) const;

    // Reduces every t(v) into 0..lambda_v-1.
    void normalize();
};

struct DcsVertexRecord {
    int deg_H = 0;
    bool window = true;
    bool residue = true;
};

struct DcsCertificate {
    EdgeSet H;
    std::vector<DcsVertexRecord> vertices;
    std::vector<int> failing;
    bool pass = false;
};

// Exact integer check of the window and residue conditions.
DcsCertificate verify(const DcsInstance& inst, const EdgeSet& H);

struct DcsOptions {
    int restarts = 50;
    bool enforce_preconditions = true;
    // Exhaustive search over all edge subsets once the restarts fail;
    // only attempted for hosts with at most kExhaustiveEdgeLimit edges.
    bool exact_fallback = true;
    std::int64_t steps_per_restart = 0;  // 0: scaled to the instance
    std::int64_t plateau_budget = 0;     // 0: scaled to the instance
};

inline constexpr int kExhaustiveEdgeLimit = 25;

struct DcsSolveResult {
    DcsCertificate certificate;  // best subgraph found; pass iff certified
    bool certified = false;
    bool via_exhaustive = false;
    int restarts_used = 0;
    std::int64_t best_potential = 0;  // 0 when certified
};

// Randomised local search; never throws on failure, returns the lowest
// potential subgraph seen instead.
DcsSolveResult solve_best_effort(const DcsInstance& inst, std::uint64_t seed, const DcsOptions& options = {});

// Certificate that passes verify, or solver_failure after the restarts (and
// the exhaustive fallback, where permitted) fail. Throws input_error on
// precondition violations unless options relax them.
DcsCertificate solve(const DcsInstance& inst, std::uint64_t seed, const DcsOptions& options = {});

// Exhaustive search; input_error above kExhaustiveEdgeLimit edges.
std::optional<EdgeSet> solve_exhaustive(const DcsInstance& inst);

} // namespace locirr
