#include <doctest.h>

#include <sstream>

#include "ebbi/dataset.hpp"
#include "ebbi/error.hpp"
#include "ebbi/rng.hpp"

using namespace ebbi;

TEST_CASE("dataset construction rejects bad input") {
    CHECK_THROWS_AS(DichotomicDataset(1, {1}), InvalidInput);
    CHECK_THROWS_AS(DichotomicDataset(5, {1, 1, 1, 1, 1}), InvalidInput);
    CHECK_THROWS_AS(DichotomicDataset(3, {}), InvalidInput);
    CHECK_THROWS_AS(DichotomicDataset(3, {1, 1}), InvalidInput);
    CHECK_THROWS_AS(DichotomicDataset(2, {1, 0}), InvalidInput);
    CHECK_THROWS_AS(DichotomicDataset::from_rows({{1, 1}, {1, 1, 1}}), InvalidInput);
}

TEST_CASE("correlation is the exact mean of products") {
    auto ds = DichotomicDataset::from_rows({{1, -1, 1}, {1, 1, -1}, {-1, -1, -1}, {1, 1, 1}}, "r");
    CHECK(ds.arity() == 3);
    CHECK(ds.size() == 4);
    CHECK(ds.run_label() == "r");
    auto c12 = correlation(ds, 1, 2);
    CHECK(c12.sum == 2);
    CHECK(c12.count == 4);
    CHECK(c12.value() == 0.5);
    CHECK(correlation(ds, 1, 3).sum == 2);
    CHECK(correlation(ds, 2, 3).sum == 0);
    CHECK_THROWS_AS(correlation(ds, 2, 1), InvalidInput);
    CHECK_THROWS_AS(correlation(ds, 1, 4), InvalidInput);
}

TEST_CASE("reduce keeps the selected columns") {
    auto ds = DichotomicDataset::from_rows({{1, -1, 1, -1}, {-1, 1, 1, 1}});
    auto rd = reduce(ds, {2, 4});
    CHECK(rd.width() == 2);
    CHECK(rd.parent_arity() == 4);
    CHECK(rd.value(0, 1) == -1);
    CHECK(rd.value(1, 2) == 1);
    CHECK(correlation(rd, 1, 2).sum == correlation(ds, 2, 4).sum);
    CHECK_THROWS_AS(reduce(ds, {3, 2}), InvalidInput);
    CHECK_THROWS_AS(reduce(ds, {}), InvalidInput);
    CHECK_THROWS_AS(reduce(ds, {0}), InvalidInput);
}

TEST_CASE("negate_column flips the sign of correlations with that column") {
    auto ds = DichotomicDataset::from_rows({{1, -1, 1}, {1, 1, -1}, {-1, -1, -1}});
    auto nd = ds.negate_column(2);
    CHECK(correlation(nd, 1, 2).sum == -correlation(ds, 1, 2).sum);
    CHECK(correlation(nd, 2, 3).sum == -correlation(ds, 2, 3).sum);
    CHECK(correlation(nd, 1, 3).sum == correlation(ds, 1, 3).sum);
    CHECK_THROWS_AS(ds.negate_column(4), InvalidInput);
}

TEST_CASE("csv round trip") {
    std::istringstream in("s1,s2,s3\n+1,-1,1\n1,1,-1\n-1,-1,-1\n");
    auto ds = read_csv(in);
    CHECK(ds.size() == 3);
    CHECK(ds.value(0, 1) == 1);
    CHECK(ds.value(0, 2) == -1);
    std::ostringstream out;
    write_csv(out, ds);
    std::istringstream back(out.str());
    auto again = read_csv(back);
    CHECK(again.raw() == ds.raw());

    std::istringstream bad_header("a,b\n1,1\n");
    CHECK_THROWS_AS(read_csv(bad_header), InvalidInput);
    std::istringstream bad_value("s1,s2\n1,0\n");
    CHECK_THROWS_AS(read_csv(bad_value), InvalidInput);
    std::istringstream short_row("s1,s2\n1\n");
    CHECK_THROWS_AS(read_csv(short_row), InvalidInput);
    CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv"), InvalidInput);
    CHECK(read_csv_file(EBBI_TEST_DATA "/triples.csv").size() == 4);
}

TEST_CASE("rng streams are reproducible and thread-count independent") {
    Rng a(42), b(42);
    for (int k = 0; k < 100; ++k) CHECK(a.uniform() == b.uniform());
    Rng c(7);
    for (int k = 0; k < 10000; ++k) {
        double u = c.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));

    // Shard contents depend only on the shard index.
    const std::size_t n = 3 * kShardSize + 17;
    std::vector<double> x(n), y(n);
    for_each_shard(n, 9, [&](Rng& r, std::size_t b0, std::size_t e0) {
        for (std::size_t i = b0; i < e0; ++i) x[i] = r.uniform();
    });
    for (std::size_t k = 0; k * kShardSize < n; ++k) {
        Rng r(derive_seed(9, k));
        for (std::size_t i = k * kShardSize; i < std::min(n, (k + 1) * kShardSize); ++i) y[i] = r.uniform();
    }
    CHECK(x == y);
}
