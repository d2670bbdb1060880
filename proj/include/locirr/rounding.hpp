#pragma once

#include <cstdint>
#include <vector>

#include "locirr/graph.hpp"

namespace locirr {

// Real edge weights z(e) in [0, 1] over a host graph.
struct FractionalEdgeWeights {
    const Graph* host = nullptr;
    std::vector<double> z;

    static FractionalEdgeWeights uniform(const Graph& g, double value);
    void validate() const;
};

// 0/1 edge labels over a host graph.
struct BinaryEdgeLabels {
    const Graph* host = nullptr;
    std::vector<std::uint8_t> x;
};

// Labels x with  sum_{e at v} z(e) - 1 < sum_{e at v} x(e) <= sum_{e at v} z(e) + 1
// at every vertex. Deterministic in (w, seed). Throws input_error for weights
// outside [0, 1]; rounding_failure if the result cannot be certified.
BinaryEdgeLabels balanced_round(const FractionalEdgeWeights& w, std::uint64_t seed);

struct VertexSlack {
    double target = 0.0;       // sum of z at v
    int sum = 0;               // sum of x at v
    double lower_slack = 0.0;  // sum - (target - 1), must be > 0
    double upper_slack = 0.0;  // (target + 1) - sum, must be >= 0
    bool ok = true;
};

struct RoundingCheck {
    bool ok = true;
    bool exact = false;  // comparisons done over exact rationals
    std::vector<VertexSlack> vertices;
    std::vector<int> failing;
};

// Checks the two-sided bound at every vertex. Weights that are all rationals
// with small denominators are compared exactly; otherwise with a 1e-9
// tolerance. Throws input_error when w and x have different hosts.
RoundingCheck verify_rounding(const FractionalEdgeWeights& w, const BinaryEdgeLabels& x);

} // namespace locirr
