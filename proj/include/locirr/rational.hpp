#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

namespace locirr {

// Non-negative rational num/den with den >= 1.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    // Best rational approximation of x >= 0 with denominator <= max_den,
    // via continued fractions. Decimal literals such as 0.0031 come back as
    // 31/10000 exactly.
    static Rational approximate(double x, std::int64_t max_den = 1'000'000'000)
    {
        if (!(x > 0.0))
            return {0, 1};
        std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double rem = x;
        for (int iter = 0; iter < 64; ++iter) {
            double a_f = std::floor(rem);
            if (a_f > 9.0e15)
                break;
            auto a = static_cast<std::int64_t>(a_f);
            std::int64_t q2 = q0 + a * q1;
            if (q2 > max_den)
                break;
            std::int64_t p2 = p0 + a * p1;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            double frac = rem - a_f;
            if (frac < 1e-15 || std::fabs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= 1e-15 * x)
                break;
            rem = 1.0 / frac;
        }
        if (q1 == 0)
            return {p0, q0};
        return {p1, q1};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// floor(r * d) computed exactly.
inline std::int64_t floor_mul(const Rational& r, std::int64_t d)
{
    __int128 p = static_cast<__int128>(r.num) * d;
    __int128 q = p / r.den;
    if (p % r.den != 0 && p < 0)
        --q;
    return static_cast<std::int64_t>(q);
}

// count < r * d, exactly.
inline bool less_than_mul(std::int64_t count, const Rational& r, std::int64_t d)
{
    return static_cast<__int128>(count) * r.den < static_cast<__int128>(r.num) * d;
}

} // namespace locirr
