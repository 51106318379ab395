#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ebbi/dataset.hpp"
#include "ebbi/inequality.hpp"
#include "ebbi/nonneg.hpp"
#include "ebbi/quantum.hpp"
#include "ebbi/rng.hpp"

using namespace ebbi;

namespace {

DichotomicDataset random_dataset(Rng& r, int n, std::size_t M) {
    std::vector<std::int8_t> v(M * std::size_t(n));
    for (auto& x : v) x = r.uniform() < 0.5 ? 1 : -1;
    return DichotomicDataset(n, std::move(v));
}

double F(const DichotomicDataset& d, int i, int j) { return correlation(d, i, j).value(); }

UnitVector3 random_dir(Rng& r) {
    const double z = 2 * r.uniform() - 1, phi = 2 * std::numbers::pi * r.uniform();
    const double s = std::sqrt(1 - z * z);
    return UnitVector3::normalized(Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z));
}

}  // namespace

TEST_CASE("property: sign covariance of the boole family") {
    Rng rng(100);
    for (int t = 0; t < 300; ++t) {
        const auto d = random_dataset(rng, 3, 1 + std::size_t(rng.uniform() * 9));
        const int k = 1 + int(rng.uniform() * 3);
        const auto n = d.negate_column(k);
        for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
            const int s = (i == k || j == k) ? -1 : 1;
            CHECK(correlation(n, i, j).sum == s * correlation(d, i, j).sum);
        }
        CHECK(check_boole_triple(F(n, 1, 2), F(n, 1, 3), F(n, 2, 3)).all_satisfied());
    }
}

TEST_CASE("property: correlation commutes with reduce") {
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + int(rng.uniform() * 3);
        const auto d = random_dataset(rng, n, 1 + std::size_t(rng.uniform() * 20));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const auto a = correlation(d, i, j), b = correlation(reduce(d, {i, j}), 1, 2);
                CHECK(a.sum == b.sum);
                CHECK(a.count == b.count);
            }
    }
}

TEST_CASE("property: independent pair datasets obey the pair bound but not always boole") {
    Rng rng(102);
    bool boole_failed = false;
    for (int t = 0; t < 2000; ++t) {
        const std::size_t M = 1 + std::size_t(rng.uniform() * 4);
        const auto x = random_dataset(rng, 2, M), y = random_dataset(rng, 2, M), z = random_dataset(rng, 2, M);
        const double a = F(x, 1, 2), b = F(y, 1, 2), c = F(z, 1, 2);
        CHECK(check_pair_bound(a, b, c).all_satisfied());
        boole_failed |= !check_boole_triple(a, b, c).all_satisfied();
    }
    CHECK(boole_failed);
}

TEST_CASE("property: expansion round trips") {
    Rng rng(103);
    for (int t = 0; t < 1000; ++t) {
        FuncTable2 f;
        for (auto& v : f.v) v = 4 * rng.uniform() - 2;
        const auto g = synth2(expand2(f));
        for (std::size_t k = 0; k < 4; ++k) REQUIRE(std::abs(g.v[k] - f.v[k]) <= 1e-14);
        const ExpansionCoeffs2 c{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
        const auto d = expand2(synth2(c));
        REQUIRE(std::abs(d.e12 - c.e12) <= 1e-14);
        REQUIRE(std::abs(d.e1 - c.e1) <= 1e-14);

        FuncTable3 h;
        for (auto& v : h.v) v = 4 * rng.uniform() - 2;
        const auto h2 = synth3(expand3(h));
        for (std::size_t k = 0; k < 8; ++k) REQUIRE(std::abs(h2.v[k] - h.v[k]) <= 1e-14);
        ExpansionCoeffs3 e{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform(),
                           rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()};
        const auto e2 = expand3(synth3(e));
        REQUIRE(std::abs(e2.e123 - e.e123) <= 1e-14);
        REQUIRE(std::abs(e2.e23 - e.e23) <= 1e-14);
    }
}

TEST_CASE("property: diag_prob of random states is a valid table") {
    Rng rng(104);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + int(rng.uniform() * 3);
        const int dim = 1 << n;
        Eigen::MatrixXcd A(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) A(i, j) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        Eigen::MatrixXcd rho = A * A.adjoint();
        rho /= rho.trace();
        rho = 0.5 * (rho + rho.adjoint()).eval();
        const DensityMatrix dm{ComplexSquareMatrix(rho)};
        CHECK_NOTHROW(diag_prob(dm));
    }
}

TEST_CASE("property: single-particle triples never violate ebbi") {
    Rng rng(105);
    for (int t = 0; t < 500; ++t) {
        Eigen::Vector3d x(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5);
        const auto p = filter_prob3(DensityMatrix::from_bloch(x), random_dir(rng), random_dir(rng),
                                    random_dir(rng));
        const auto c = expand3(p.to_func3());
        CHECK(ebbi_check(c.e0, c.e12, c.e13, c.e23).all_satisfied());
    }
}

TEST_CASE("property: extended experiment keeps the pair statistics") {
    Rng rng(106);
    for (int t = 0; t < 300; ++t) {
        const double ta = 6 * rng.uniform(), tb = 6 * rng.uniform(), tc = 6 * rng.uniform();
        const auto r = extended_eprb_prob3(ta, tb, tc);
        const auto pair = eprb_pair_tables(UnitVector3::from_xz_angle(ta), UnitVector3::from_xz_angle(tb),
                                           UnitVector3::from_xz_angle(tc))[0];
        const auto m = r.table.to_func3().marginal12();
        for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(m.v[k] - pair.p()[k]) < 1e-12);
    }
}

TEST_CASE("property: random admissible coefficients build non-negative tables") {
    Rng rng(107);
    int built = 0;
    for (int t = 0; t < 5000; ++t) {
        const double a0 = rng.uniform();
        const double a12 = a0 * (2 * rng.uniform() - 1), a13 = a0 * (2 * rng.uniform() - 1),
                     a23 = a0 * (2 * rng.uniform() - 1);
        if (!ebbi_check(a0, a12, a13, a23).all_satisfied()) continue;
        ++built;
        CHECK(construct_g3(a0, a12, a13, a23).nonnegative());
    }
    CHECK(built > 1000);
}
