#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace locirr {

// Constant profile of the construction: the fractions k, s, r, u of d and the
// split points s1, r1, u1 used by the tail bounds (s2 = s - s1 etc.).
struct ConstantProfile {
    double k = 0.025;
    double s = 0.0031;
    double r = 0.26;
    double u = 0.131;
    double s1 = 0.0015;
    double r1 = 0.242;
    double u1 = 0.059;

    static ConstantProfile paper() { return {}; }

    double s2() const { return s - s1; }
    double r2() const { return r - r1; }
    double u2() const { return u - u1; }

    // Logarithms of the per-degree tail bases s3 = e^{s2}/(s/s1)^s,
    // r3 = e^{r2}/(r/r1)^r and u3 = e^{-u2^2/8}.
    double log_s3() const;
    double log_r3() const;
    double log_u3() const;

    // Throws input_error when a field is out of range or a tail base is not
    // in (0, 1).
    void validate() const;
    bool is_valid() const;

    friend bool operator==(const ConstantProfile&, const ConstantProfile&) = default;
    friend auto operator<=>(const ConstantProfile&, const ConstantProfile&) = default;
};

struct DerivedQuantities {
    std::int64_t d = 0;
    std::int64_t K = 1;       // ceil(k d), at least 1
    std::int64_t lambda = 2;  // 2K
    double d1 = 0.0;          // d/6 - s d/3 - u d/6 - 13/3
    std::int64_t D_size = 0;  // ceil(d1); the window is {0, ..., D_size - 1}
};

DerivedQuantities derive(const ConstantProfile& p, std::int64_t d);

// ceil(k d) without float noise on exact products such as 0.1 * 70.
std::int64_t palette_size(double k, std::int64_t d);

struct BoundValues {
    double f_s = 0.0;
    double f_r = 0.0;
    double f_u = 0.0;
};

// d^3 s3^d, d^3 r3^d, d^3 u3^d evaluated in log space.
BoundValues bound_functions(const ConstantProfile& p, std::int64_t d);

// The same three values through the raw Chernoff form
// (e^delta / (1+delta)^(1+delta))^mu with mu = s1 d, delta = s2/s1 (and the
// analogue for r), and the McDiarmid form exp(-(u2 d)^2 / (8 d)) for u.
BoundValues bound_functions_raw(const ConstantProfile& p, std::int64_t d);

struct Thresholds {
    double d_s = 0.0;
    double d_r = 0.0;
    double d_u = 0.0;
    double max() const;
};

// Degrees past which f_s, f_r, f_u decrease: 3/ln(1/s3), 3/ln(1/r3), 24/u2^2.
Thresholds monotonicity_thresholds(const ConstantProfile& p);

struct ConstraintRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct FeasibilityReport {
    std::int64_t d = 0;
    std::vector<ConstraintRecord> records;
    bool pass = false;

    const ConstraintRecord& at(const std::string& name) const;
    std::vector<std::string> failures() const;
};

// Evaluates every closed-form condition the construction needs at degree d.
// Throws input_error for an invalid profile or d < 13.
FeasibilityReport check_profile(const ConstantProfile& p, std::int64_t d);

// Same verdict as check_profile(p, d).pass without building the report.
bool profile_passes(const ConstantProfile& p, std::int64_t d);

inline constexpr std::int64_t kMinDegree = 13;
inline constexpr std::int64_t kScanLimit = 10'000'000;

// Smallest d in [13, 10^7] passing check_profile; infeasible_error if none.
std::int64_t min_feasible_d(const ConstantProfile& p);

// Same scan limited to [13, upper]; returns -1 if no d there passes.
std::int64_t min_feasible_d_below(const ConstantProfile& p, std::int64_t upper);

struct OptimizeResult {
    ConstantProfile profile;
    std::int64_t min_d = 0;
    int evaluations = 0;
};

// Coordinate descent with shrinking relative steps over (k, s, r, u, s1, r1,
// u1), minimising min_feasible_d. The default profile is always evaluated
// first, so the result is never worse than it. Deterministic in
// (seed, budget).
OptimizeResult optimize_profile(std::uint64_t seed, int budget);

} // namespace locirr
