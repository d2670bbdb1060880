#pragma once

#include <cstdint>
#include <vector>

#include "locirr/graph.hpp"

namespace locirr {

// Simple d-regular graph on n vertices from the pairing model: half-edges
// are matched at random, pairs that would form a loop or a repeated edge are
// rejected, and a dead end restarts the pairing. Dense requests (d > (n-1)/2)
// sample the complement instead. Deterministic in (n, d, seed).
//
// Throws input_error unless n > d >= 1 and n*d is even; generation_failure
// if max_restarts pairings all dead-end.
Graph generate_regular(int n, int d, std::uint64_t seed, int max_restarts = 1000);

// Vertex i adjacent to i +- o (mod n) for every offset o. Offsets must be
// distinct and lie in 1..n/2; the offset n/2 (n even) contributes degree 1.
Graph generate_circulant(int n, const std::vector<int>& offsets);

Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);

} // namespace locirr
