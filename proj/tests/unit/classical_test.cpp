#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ebbi/classical.hpp"
#include "ebbi/error.hpp"

using namespace ebbi;

namespace {

constexpr double kPi = std::numbers::pi;

// (1/2) * integral over r in [-1,1] of sign(x - r) * sign(y + q r), piecewise exact.
double inner(double x, double y, int q) {
    std::vector<double> pts{-1.0, 1.0, std::clamp(x, -1.0, 1.0), std::clamp(q * y, -1.0, 1.0)};
    std::sort(pts.begin(), pts.end());
    double s = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double m = 0.5 * (pts[k] + pts[k + 1]);
        const double a = x - m > 0 ? 1 : -1;
        const double b = (q > 0 ? y - m : y + m) > 0 ? 1 : -1;
        s += a * b * (pts[k + 1] - pts[k]);
    }
    return s / 2;
}

// Quadrature oracle over the hidden angle.
double oracle(MuKind kind, double a, double b) {
    const int n = 20000;
    double s = 0;
    for (int k = 0; k < n; ++k) {
        const double phi = 2 * kPi * (k + 0.5) / n;
        const double x = std::cos(phi - a), y = std::cos(phi - b);
        switch (kind) {
            case MuKind::uniform: s += x * y; break;
            case MuKind::delta_equal: s += inner(x, y, 1); break;
            case MuKind::delta_opposite: s += inner(x, y, -1); break;
        }
    }
    return s / n;
}

}  // namespace

TEST_CASE("allergy table") {
    CHECK(allergy_outcome(Birthplace::a, 1, 2) == 1);
    CHECK(allergy_outcome(Birthplace::a, 1, 1) == -1);
    CHECK(allergy_outcome(Birthplace::b, 2, 2) == -1);
    CHECK(allergy_outcome(Birthplace::c, 3, 3) == 1);
    CHECK_THROWS_AS(allergy_outcome(Birthplace::a, 4, 1), InvalidInput);
    CHECK_THROWS_AS(parse_birthplace("d"), InvalidInput);
    CHECK(parse_birthplace("c") == Birthplace::c);
}

TEST_CASE("allergy gammas are exact for every N and schedule") {
    for (long N : {1L, 2L, 3L, 10L, 101L, 1000L}) {
        CHECK(allergy_gamma_triples(N) == -1.0);
        CHECK(allergy_gamma_pairs(N) == -3.0);
        DaySchedule r{DaySchedule::Kind::random, static_cast<std::uint64_t>(N)};
        CHECK(allergy_gamma_triples(N, {}, r) == -1.0);
        CHECK(allergy_gamma_pairs(N, {}, r) == -3.0);
    }
    CHECK_THROWS_AS(allergy_gamma_pairs(0), InvalidInput);
    // Any fixed triple gives at least -1.
    for (int m = 0; m < 8; ++m) {
        const auto s = AllergyScenario::city_independent(
            {{{(m & 1) ? 1 : -1, 1}, {(m & 2) ? 1 : -1, 1}, {(m & 4) ? 1 : -1, 1}}});
        CHECK(allergy_gamma_triples(2, s) >= -1.0);
        CHECK(allergy_gamma_pairs(2, s) >= -1.0);
    }
    CHECK(allergy_gamma_pairs(5, AllergyScenario::constant(1)) == 3.0);
    CHECK_THROWS_AS(AllergyScenario::constant(0), InvalidInput);
}

TEST_CASE("single-city averages vanish on even N") {
    for (auto o : {Birthplace::a, Birthplace::b, Birthplace::c})
        for (int l = 1; l <= 3; ++l) CHECK(allergy_single_average(o, l, 100) == 0.0);
}

TEST_CASE("schedules") {
    auto d = schedule_days(5, {});
    CHECK(d == std::vector<long>{1, 2, 3, 4, 5});
    DaySchedule r{DaySchedule::Kind::random, 3};
    CHECK(schedule_days(50, r) == schedule_days(50, r));
}

TEST_CASE("analytic correlations against quadrature") {
    for (auto kind : {MuKind::uniform, MuKind::delta_equal, MuKind::delta_opposite})
        for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{0.3, 1.7}, std::pair{-2.0, 2.5},
                            std::pair{0.0, 2 * kPi}, std::pair{1.0, 1.0 + 3 * kPi}}) {
            INFO(mu_kind_name(kind) << " a=" << a << " b=" << b);
            CHECK(analytic_correlation({kind}, a, b) == doctest::Approx(oracle(kind, a, b)).epsilon(1e-6));
        }
}

TEST_CASE("delta kinds are 2 pi periodic in the angle difference") {
    // |sin(x/2)| and |cos(x/2)| repeat after 2 pi, as does the sampling rule.
    const FactorizableModel opp{MuKind::delta_opposite}, eq{MuKind::delta_equal};
    CHECK(analytic_correlation(opp, 0.4, 0.4) == doctest::Approx(4 / kPi - 1));
    CHECK(analytic_correlation(opp, 0.4, 0.4 + 2 * kPi) == doctest::Approx(4 / kPi - 1));
    CHECK(analytic_correlation(opp, 0.4, 0.4 + kPi) == doctest::Approx(-1));
    CHECK(analytic_correlation(eq, 0.0, 2 * kPi) == doctest::Approx(1));
    CHECK(analytic_correlation(eq, 0.0, kPi) == doctest::Approx(1 - 4 / kPi));
    CHECK_THROWS_AS(analytic_correlation(opp, NAN, 0), InvalidInput);
}

TEST_CASE("monte carlo agrees with the analytic values") {
    const std::size_t M = 200000;
    for (auto kind : {MuKind::uniform, MuKind::delta_equal, MuKind::delta_opposite}) {
        const double a = 0.3, b = 1.9;
        const auto ds = sample_pair({kind}, a, b, 5, M);
        const double e = analytic_correlation({kind}, a, b);
        CHECK(std::abs(correlation(ds, 1, 2).value() - e) <= 4 * std::sqrt((1 - e * e) / M));
        CHECK(ds.run_label() == mu_kind_name(kind));
    }
    CHECK(sample_pair({}, 0, 1, 9, 1000).raw() == sample_pair({}, 0, 1, 9, 1000).raw());
    CHECK_THROWS_AS(sample_pair({}, 0, 1, 9, 0), InvalidInput);
}

TEST_CASE("sweeps") {
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(k * kPi / 4);
    const auto eq = model_inequality_sweep({MuKind::delta_equal}, grid);
    CHECK(eq.bell_checked == 2 * 9 * 9 * 9);
    CHECK(eq.bell_violations == 0);
    const auto opp = model_inequality_sweep({MuKind::delta_opposite}, grid);
    CHECK(opp.bell_violations > 0);
    CHECK(opp.chsh_violations == 0);
    REQUIRE(opp.worst_bell);
    CHECK(opp.worst_bell->lhs > opp.worst_bell->rhs);
    const auto uni = model_inequality_sweep({MuKind::uniform}, grid);
    CHECK(uni.bell_violations == 0);
    CHECK(uni.chsh_violations == 0);
}

TEST_CASE("factorizability search at the opposite witness") {
    const auto s = factorizability_search({MuKind::delta_opposite}, 0.0, 2 * kPi, kPi, 8);
    CHECK(s.target[0] == doctest::Approx(4 / kPi - 1));
    CHECK(s.target[1] == doctest::Approx(-1));
    CHECK(s.distance > 0.1);
    // Reachable targets are found exactly.
    const auto t = factorizability_search({MuKind::delta_equal}, 0.0, 0.0, 0.0, 4);
    CHECK(t.distance == doctest::Approx(0).epsilon(1e-15));
    CHECK_THROWS_AS(factorizability_search({}, 0, 0, 0, 0), InvalidInput);
    CHECK(parse_mu_kind("delta_opposite") == MuKind::delta_opposite);
    CHECK_THROWS_AS(parse_mu_kind("x"), InvalidInput);
}
