#include <doctest.h>

#include <cmath>
#include <map>

#include "ebbi/error.hpp"
#include "ebbi/inequality.hpp"

using namespace ebbi;

namespace {

bool has_failed(const InequalityReport& r, const std::string& desc) {
    for (const auto& c : r.clauses)
        if (c.description == desc) return !c.satisfied;
    FAIL("no clause " << desc);
    return false;
}

}  // namespace

TEST_CASE("boole triple has six clauses") {
    auto r = check_boole_triple(0.1, 0.2, 0.3);
    CHECK(r.family == Family::boole_triple);
    REQUIRE(r.clauses.size() == 6);
    CHECK(r.all_satisfied());
    CHECK(r.clauses[0].description == "|F12 + F13| <= 1 + F23");
    CHECK(r.clauses[0].lhs == doctest::Approx(0.3));
    CHECK(r.clauses[0].rhs == doctest::Approx(1.3));
    CHECK(r.clauses[0].slack == doctest::Approx(1.0));
}

TEST_CASE("boole triple violation") {
    auto r = check_boole_triple(-0.5, 0.5, 0.5);
    CHECK_FALSE(r.all_satisfied());
    CHECK(has_failed(r, "|F12 - F13| <= 1 - F23"));
    CHECK(r.tightest().slack == doctest::Approx(-0.5));
    CHECK(check_boole_triple(-0.5, 0.5, -0.5).all_satisfied());
}

TEST_CASE("tolerance at the boundary") {
    CHECK(check_boole_triple(1, 1, 1).all_satisfied());
    CHECK(check_boole_triple(1, -1, -1).all_satisfied());
    CHECK_FALSE(check_boole_triple(1, -1, 1).all_satisfied());
}

TEST_CASE("inputs outside [-1,1] are rejected") {
    CHECK_THROWS_AS(check_boole_triple(1.5, 0, 0), InvalidInput);
    CHECK_THROWS_AS(check_pair_bound(0, NAN, 0), InvalidInput);
    CHECK_THROWS_AS(check_chsh(0, 0, 0, -1.01), InvalidInput);
}

TEST_CASE("pair bound holds for all unit-range inputs") {
    for (double a = -1; a <= 1; a += 0.25)
        for (double b = -1; b <= 1; b += 0.25)
            for (double c = -1; c <= 1; c += 0.25) CHECK(check_pair_bound(a, b, c).all_satisfied());
    CHECK(check_pair_bound(0.1, 0.2, 0.3).clauses.size() == 6);
}

TEST_CASE("chsh reports eight sign variants") {
    auto r = check_chsh(0.5, 0.5, 0.5, 0.5);
    CHECK(r.family == Family::chsh);
    REQUIRE(r.clauses.size() == 8);
    CHECK(r.clauses[0].description == "|F13 - F23 + F14 + F24| <= 2");
    CHECK(r.all_satisfied());
    // Variants come in pairs differing by an overall sign.
    std::map<double, int> seen;
    for (const auto& c : check_chsh(0.1, 0.2, 0.3, 0.4).clauses) ++seen[c.lhs];
    CHECK(seen.size() == 4);
    for (auto [v, n] : seen) CHECK(n == 2);
    const double t = 1 / std::sqrt(2.0);
    auto q = check_chsh(t, -t, t, t);
    CHECK_FALSE(q.all_satisfied());
    CHECK(q.tightest().lhs == doctest::Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("anticorrelated frame flips the third correlation") {
    auto [a, b, c] = anticorrelated_frame(-0.5, 0.5, -0.5);
    CHECK(a == -0.5);
    CHECK(b == 0.5);
    CHECK(c == 0.5);
    CHECK(family_name(Family::leggett_garg) == "leggett_garg");
}
