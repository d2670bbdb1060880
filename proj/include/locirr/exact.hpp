#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "locirr/graph.hpp"

namespace locirr {

struct SearchConfig {
    int edge_cap = 20;
    std::uint64_t node_budget = std::uint64_t{1} << 32;
    bool symmetry_pruning = true;
    // Skip the up-front edge cap and k^m checks; the node budget still holds.
    bool force = false;
};

struct ExactResult {
    bool decomposable = false;
    std::vector<int> witness;  // label in 1..k per edge when decomposable
    std::uint64_t nodes = 0;
};

// Whether the edges admit labels 1..k whose classes are all locally
// irregular (empty classes allowed). Throws input_error for k < 1 or m above
// the cap, inconclusive when k^m exceeds the node budget or the search runs
// out of nodes.
ExactResult is_decomposable(const Graph& g, int k, const SearchConfig& config = {});

struct MinPartsResult {
    std::optional<int> k;  // empty: none up to k_max
    std::vector<int> witness;
};

MinPartsResult min_parts(const Graph& g, int k_max, const SearchConfig& config = {});

// Partition of the edges into k classes from a 1..k labelling.
std::vector<EdgeSet> classes_of(const Graph& g, const std::vector<int>& labels, int k);

} // namespace locirr
