#pragma once

#include <cstdint>
#include <vector>

#include "locirr/constants.hpp"
#include "locirr/graph.hpp"
#include "locirr/rational.hpp"
#include "locirr/rng.hpp"

namespace locirr {

// Cyclic distance min((m-n) mod K, (n-m) mod K), in [0, K/2].
std::int64_t mod_distance(std::int64_t m, std::int64_t n, std::int64_t K);

// Per-vertex colour pairs (O_v, I_v), each in 1..K.
struct VertexColoring {
    int K = 1;
    std::vector<int> O;
    std::vector<int> I;

    int size() const { return static_cast<int>(O.size()); }
    bool same_colour(int v, int w) const { return O[v] == O[w] && I[v] == I[w]; }
    void validate(int n) const;
};

VertexColoring assign_random(const Graph& g, int K, std::uint64_t seed);

// Redraw O and I for the listed vertices only.
void redraw(VertexColoring& c, const std::vector<int>& vertices, Rng& rng);

// The vertex and edge sets induced by a colouring.
//   U          vertices sharing their full colour with a neighbour
//   U_e        edges inside U;  T  edges touching U
//   S          non-T edges agreeing in O or in I
//   R          non-T edges with a coordinate at cyclic distance in
//              [1, (s d + 7)/2]
//   R_prime    R minus S;  E_prime  E minus (T u R);  E_dblprime  E minus (T u R u S)
struct DistinguishedSets {
    std::vector<std::uint8_t> U;
    EdgeSet U_e, T, S, R, R_prime, E_prime, E_dblprime;

    bool in_U(int v) const { return U[v] != 0; }
    int U_size() const;
};

// Largest cyclic distance counted as risky: floor((s d + 7) / 2), with s
// taken as an exact rational.
std::int64_t risky_limit(const ConstantProfile& p, std::int64_t d);

DistinguishedSets distinguish(const Graph& g, const VertexColoring& c, const ConstantProfile& p, std::int64_t d);

struct VertexAudit {
    int d_S = 0;
    int d_R = 0;
    int d_U = 0;
    bool pass_S = true;
    bool pass_R = true;
    bool pass_U = true;
    // Diagnostic supersets, -1 when not computed.
    int d_Sstar = -1;
    int d_Rstar = -1;
    int Ustar_size = -1;

    bool pass() const { return pass_S && pass_R && pass_U; }
};

struct ColoringAudit {
    std::vector<VertexAudit> vertices;
    std::vector<int> violating;  // ascending
    bool diagnostics = false;

    bool pass() const { return violating.empty(); }
};

// Per-vertex strict checks d_S(v) < s d, d_R(v) < r d, d_U(v) < u d, where
// d_U(v) counts neighbours of v lying in U.
ColoringAudit audit(const Graph& g, const DistinguishedSets& ds, const ConstantProfile& p, std::int64_t d);

// The same audit, also filling the superset counts |S*(v)|, |R*(v)| and
// |U*(v)|.
ColoringAudit audit_with_diagnostics(const Graph& g, const VertexColoring& c, const DistinguishedSets& ds,
                                     const ConstantProfile& p, std::int64_t d);

struct ResampleResult {
    VertexColoring coloring;
    DistinguishedSets sets;
    ColoringAudit audit;
    bool success = false;
    bool exhausted = false;
    int rounds = 0;  // resampling steps performed
};

// Draws a colouring with K = ceil(k d) and, while some vertex fails the
// audit, redraws every vertex within distance 2 of the lowest-indexed
// violating vertex. Stops on a passing audit or after max_rounds redraws.
ResampleResult resample_until_good(const Graph& g, const ConstantProfile& p, std::int64_t d, std::uint64_t seed,
                                   int max_rounds);

} // namespace locirr
