#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locirr/constants.hpp"
#include "locirr/errors.hpp"

using namespace locirr;

namespace {

const ConstantProfile P = ConstantProfile::paper();

// Independent evaluation of every inequality, written out from the proof.
bool oracle_pass(const ConstantProfile& p, long double d)
{
    const long double k = p.k, s = p.s, r = p.r, u = p.u;
    const long double s2 = p.s - p.s1, r2 = p.r - p.r1, u2 = p.u - p.u1;
    const long double s3 = std::exp(s2) / std::pow(s / p.s1, s);
    const long double r3 = std::exp(r2) / std::pow(r / p.r1, r);
    const long double u3 = std::exp(-u2 * u2 / 8);
    const long double bound = 1 / (3 * std::exp(1.0L));
    auto f = [&](long double b) { return d * d * d * std::pow(b, d); };
    const long double q = s / k + 7 / (k * d);
    const long double d1 = d / 6 - s * d / 3 - u * d / 6 - 13.0L / 3;
    bool ok = 3 * (d * d * d - d * d + d) + 2 < 3 * d * d * d - 1;
    ok = ok && 2 / k < p.s1 * d;
    ok = ok && f(s3) < bound && d >= 3 / std::log(1 / s3);
    ok = ok && q < 1 && 2 * q - q * q < p.r1;
    ok = ok && f(r3) < bound && d >= 3 / std::log(1 / r3);
    ok = ok && 2 / (k * k) - 1 / (k * k * k * k * d) < p.u1 * d;
    ok = ok && f(u3) < bound && d >= 24 / (u2 * u2);
    ok = ok && u * d / 2 + 1 <= d1 && d1 <= (d - u * d) / 2 - 1;
    ok = ok && (d - s * d - u * d - r * d) / 2 - 1 >= 12 * k * d + 12;
    ok = ok && d / 6 - s * d / 6 - u * d / 6 - 2.0L / 3 > d1;
    return ok;
}

} // namespace

TEST_CASE("paper profile at d = 54000")
{
    FeasibilityReport rep = check_profile(P, 54000);
    CHECK(rep.pass);
    CHECK(rep.failures().empty());
    BoundValues f = bound_functions(P, 54000);
    CHECK(f.f_s < 0.1);
    CHECK(f.f_r < 0.1);
    CHECK(f.f_u < 0.11);
    CHECK(f.f_u > 0.1);  // the bound quoted for f_u is the looser one
    CHECK(rep.at("C1_special_mean").lhs == doctest::Approx(80.0).epsilon(1e-12));
    const double q = P.s / P.k + 7.0 / (P.k * 54000);
    CHECK(q < 0.1292);
    CHECK(rep.at("C3_risky_ratio").lhs == doctest::Approx(q).epsilon(1e-9));
    CHECK(rep.at("C3_risky_mean").lhs == doctest::Approx(2 * q - q * q).epsilon(1e-9));
    CHECK(rep.at("C3_risky_mean").lhs < 0.242);
}

TEST_CASE("monotonicity thresholds")
{
    Thresholds t = monotonicity_thresholds(P);
    CHECK(t.d_s < 4613);
    CHECK(t.d_r < 4592);
    CHECK(t.d_u < 4630);
    CHECK(t.d_s > 4612);
    CHECK(t.d_r > 4591);
    CHECK(t.d_u == doctest::Approx(24.0 / (0.072 * 0.072)).epsilon(1e-12));
    CHECK(t.d_u == doctest::Approx(4629.6).epsilon(1e-4));

    ConstantProfile wider = P;
    wider.u = P.u1 + 2 * P.u2();
    CHECK(monotonicity_thresholds(wider).d_u == doctest::Approx(t.d_u / 4).epsilon(1e-12));
}

TEST_CASE("bound functions")
{
    for (const ConstantProfile& p : {P, ConstantProfile{0.05, 0.01, 0.3, 0.2, 0.004, 0.25, 0.1}}) {
        BoundValues one = bound_functions(p, 1);
        CHECK(one.f_s == doctest::Approx(std::exp(p.log_s3())).epsilon(1e-12));
        CHECK(one.f_r == doctest::Approx(std::exp(p.log_r3())).epsilon(1e-12));
        CHECK(one.f_u == doctest::Approx(std::exp(p.log_u3())).epsilon(1e-12));
        for (std::int64_t d : {100, 5000, 54000, 200000}) {
            BoundValues a = bound_functions(p, d), b = bound_functions_raw(p, d);
            CHECK(a.f_s == doctest::Approx(b.f_s).epsilon(1e-9));
            CHECK(a.f_r == doctest::Approx(b.f_r).epsilon(1e-9));
            CHECK(a.f_u == doctest::Approx(b.f_u).epsilon(1e-9));
        }
    }
    BoundValues big = bound_functions(P, 1'000'000);
    CHECK(big.f_s < 1e-100);
    CHECK(big.f_r < 1e-100);
    CHECK(big.f_u < 1e-100);
    // Strictly decreasing past the thresholds.
    const auto th = monotonicity_thresholds(P);
    for (std::int64_t d = static_cast<std::int64_t>(th.max()) + 1; d < th.max() + 400; d += 37) {
        BoundValues a = bound_functions(P, d), b = bound_functions(P, d + 1);
        CHECK(b.f_s < a.f_s);
        CHECK(b.f_r < a.f_r);
        CHECK(b.f_u < a.f_u);
    }
}

TEST_CASE("failing degrees list their constraints")
{
    FeasibilityReport low = check_profile(P, 4000);
    CHECK_FALSE(low.pass);
    auto fails = low.failures();
    for (auto name : {"C2_special_monotone", "C4_risky_monotone", "C6_uncoloured_monotone"})
        CHECK(std::find(fails.begin(), fails.end(), name) != fails.end());

    FeasibilityReport tiny = check_profile(P, 13);
    CHECK_FALSE(tiny.pass);
    CHECK(tiny.failures().size() >= 5);
    CHECK(tiny.at("C0_lll_degree").pass);
    CHECK_THROWS_AS(check_profile(P, 12), input_error);
}

TEST_CASE("feasibility matches the independent oracle")
{
    for (std::int64_t d : {13, 100, 4000, 20000, 53000, 53400, 53500, 53656, 53657, 53658, 54000, 60000, 200000})
        CHECK_MESSAGE(check_profile(P, d).pass == oracle_pass(P, static_cast<long double>(d)), "d = " << d);
    ConstantProfile alt{0.03, 0.004, 0.27, 0.14, 0.002, 0.25, 0.06};
    for (std::int64_t d = 30000; d <= 80000; d += 2500)
        CHECK_MESSAGE(check_profile(alt, d).pass == oracle_pass(alt, static_cast<long double>(d)), "d = " << d);
}

TEST_CASE("lhs and rhs are reported for every record")
{
    FeasibilityReport rep = check_profile(P, 54000);
    CHECK(rep.records.size() == 15);
    for (const auto& rec : rep.records) {
        CHECK(std::isfinite(rec.lhs));
        CHECK(std::isfinite(rec.rhs));
    }
    CHECK(profile_passes(P, 54000));
    CHECK_FALSE(profile_passes(P, 4000));
}

TEST_CASE("minimal feasible degree")
{
    std::int64_t d = min_feasible_d(P);
    CHECK(d <= 54000);
    CHECK(check_profile(P, d).pass);
    CHECK_FALSE(check_profile(P, d - 1).pass);
    CHECK(oracle_pass(P, static_cast<long double>(d)));
    CHECK_FALSE(oracle_pass(P, static_cast<long double>(d - 1)));
    for (std::int64_t x = d; x < d + 2000; x += 97)
        CHECK(check_profile(P, x).pass);
    CHECK(min_feasible_d_below(P, d - 1) == -1);
    CHECK(min_feasible_d_below(P, d) == d);
}

TEST_CASE("infeasible and invalid profiles")
{
    ConstantProfile big_k = P;
    big_k.k = 0.5;
    CHECK_THROWS_AS(min_feasible_d(big_k), infeasible_error);

    ConstantProfile bad = P;
    bad.s1 = bad.s;  // s2 = 0
    CHECK_THROWS_AS(bad.validate(), input_error);
    CHECK_THROWS_AS(check_profile(bad, 54000), input_error);
    CHECK_THROWS_AS(min_feasible_d(bad), input_error);
    bad = P;
    bad.k = 1.5;
    CHECK_FALSE(bad.is_valid());
}

TEST_CASE("derived quantities")
{
    DerivedQuantities q = derive(P, 54000);
    CHECK(q.K == 1350);
    CHECK(q.lambda == 2700);
    CHECK(q.d1 == doctest::Approx(54000.0 / 6 - 0.0031 * 54000 / 3 - 0.131 * 54000 / 6 - 13.0 / 3));
    CHECK(q.D_size == static_cast<std::int64_t>(std::ceil(q.d1)));
    CHECK(palette_size(0.1, 70) == 7);
    CHECK(palette_size(0.1, 64) == 7);
    CHECK(palette_size(0.001, 3) == 1);
    CHECK(derive(P, 13).K == 1);
    CHECK(derive(P, 13).D_size == 0);
}

TEST_CASE("optimizer")
{
    const std::int64_t base = min_feasible_d(P);
    OptimizeResult one = optimize_profile(5, 1);
    CHECK(one.profile == P);
    CHECK(one.min_d == base);

    OptimizeResult a = optimize_profile(11, 1000);
    OptimizeResult b = optimize_profile(11, 1000);
    CHECK(a.min_d <= base);
    CHECK(a.profile == b.profile);
    CHECK(a.min_d == b.min_d);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.evaluations <= 1000);
    CHECK(check_profile(a.profile, a.min_d).pass);
    CHECK(a.min_d == min_feasible_d(a.profile));
}
