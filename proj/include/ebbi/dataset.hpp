#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ebbi {

// M rows of n values in {+1,-1}. Column indices are 1-based throughout.
class DichotomicDataset {
public:
    // `values` is row-major, M*n entries.
    DichotomicDataset(int n, std::vector<std::int8_t> values, std::string run_label = {});

    static DichotomicDataset from_rows(const std::vector<std::vector<int>>& rows,
                                       std::string run_label = {});

    int arity() const { return n_; }
    std::size_t size() const { return values_.size() / static_cast<std::size_t>(n_); }
    int value(std::size_t alpha, int i) const {
        return values_[alpha * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i - 1)];
    }
    std::vector<int> row(std::size_t alpha) const;
    const std::vector<std::int8_t>& raw() const { return values_; }
    const std::string& run_label() const { return label_; }

    // Same data with column k negated.
    DichotomicDataset negate_column(int k) const;

private:
    int n_;
    std::vector<std::int8_t> values_;
    std::string label_;
};

// Projection of a dataset onto a strictly increasing index subset.
class ReducedDataset {
public:
    ReducedDataset(int parent_arity, std::vector<int> indices, std::vector<std::int8_t> values);

    int parent_arity() const { return parent_arity_; }
    const std::vector<int>& indices() const { return indices_; }
    int width() const { return static_cast<int>(indices_.size()); }
    std::size_t size() const { return values_.size() / indices_.size(); }
    // k is 1-based position within `indices`.
    int value(std::size_t alpha, int k) const {
        return values_[alpha * indices_.size() + static_cast<std::size_t>(k - 1)];
    }

private:
    int parent_arity_;
    std::vector<int> indices_;
    std::vector<std::int8_t> values_;
};

// Exact rational sum/M kept alongside the double value.
struct PairCorrelation {
    std::int64_t sum = 0;
    std::int64_t count = 1;
    int i = 1;
    int j = 2;
    int source_arity = 2;

    double value() const { return static_cast<double>(sum) / static_cast<double>(count); }
};

ReducedDataset reduce(const DichotomicDataset& ds, const std::vector<int>& indices);

PairCorrelation correlation(const DichotomicDataset& ds, int i, int j);
PairCorrelation correlation(const ReducedDataset& rd, int i, int j);

// CSV with header s1..sn and values +1/-1.
DichotomicDataset read_csv(std::istream& in, std::string run_label = {});
DichotomicDataset read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const DichotomicDataset& ds);

}  // namespace ebbi
