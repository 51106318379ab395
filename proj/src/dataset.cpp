#include "ebbi/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ebbi/error.hpp"

namespace ebbi {

namespace {

void check_arity(int n) {
    if (n < 2 || n > 4) throw InvalidInput("dataset arity must be 2, 3 or 4");
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

}  // namespace

DichotomicDataset::DichotomicDataset(int n, std::vector<std::int8_t> values, std::string run_label)
    : n_(n), values_(std::move(values)), label_(std::move(run_label)) {
    check_arity(n_);
    if (values_.empty()) throw InvalidInput("dataset must contain at least one row");
    if (values_.size() % static_cast<std::size_t>(n_) != 0)
        throw InvalidInput("value count is not a multiple of the arity");
    for (auto v : values_)
        if (v != 1 && v != -1) throw InvalidInput("dataset values must be +1 or -1");
}

DichotomicDataset DichotomicDataset::from_rows(const std::vector<std::vector<int>>& rows,
                                               std::string run_label) {
    if (rows.empty()) throw InvalidInput("dataset must contain at least one row");
    const auto n = rows.front().size();
    std::vector<std::int8_t> values;
    values.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw InvalidInput("rows have different arity");
        for (int v : r) {
            if (v != 1 && v != -1) throw InvalidInput("dataset values must be +1 or -1");
            values.push_back(static_cast<std::int8_t>(v));
        }
    }
    return DichotomicDataset(static_cast<int>(n), std::move(values), std::move(run_label));
}

std::vector<int> DichotomicDataset::row(std::size_t alpha) const {
    std::vector<int> r(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) r[static_cast<std::size_t>(i - 1)] = value(alpha, i);
    return r;
}

DichotomicDataset DichotomicDataset::negate_column(int k) const {
    if (k < 1 || k > n_) throw InvalidInput("column index out of range");
    auto v = values_;
    for (std::size_t a = 0; a < size(); ++a) {
        auto& x = v[a * static_cast<std::size_t>(n_) + static_cast<std::size_t>(k - 1)];
        x = static_cast<std::int8_t>(-x);
    }
    return DichotomicDataset(n_, std::move(v), label_);
}

ReducedDataset::ReducedDataset(int parent_arity, std::vector<int> indices,
                               std::vector<std::int8_t> values)
    : parent_arity_(parent_arity), indices_(std::move(indices)), values_(std::move(values)) {
    if (indices_.empty()) throw InvalidInput("empty index list");
    if (values_.empty() || values_.size() % indices_.size() != 0)
        throw InvalidInput("reduced data has inconsistent size");
}

ReducedDataset reduce(const DichotomicDataset& ds, const std::vector<int>& indices) {
    if (indices.empty()) throw InvalidInput("empty index list");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 1 || indices[k] > ds.arity()) throw InvalidInput("index out of range");
        if (k > 0 && indices[k] <= indices[k - 1])
            throw InvalidInput("indices must be strictly increasing");
    }
    std::vector<std::int8_t> out;
    out.reserve(ds.size() * indices.size());
    for (std::size_t a = 0; a < ds.size(); ++a)
        for (int i : indices) out.push_back(static_cast<std::int8_t>(ds.value(a, i)));
    return ReducedDataset(ds.arity(), indices, std::move(out));
}

PairCorrelation correlation(const DichotomicDataset& ds, int i, int j) {
    if (i < 1 || j > ds.arity() || i >= j) throw InvalidInput("need 1 <= i < j <= n");
    std::int64_t sum = 0;
    for (std::size_t a = 0; a < ds.size(); ++a) sum += ds.value(a, i) * ds.value(a, j);
    return {sum, static_cast<std::int64_t>(ds.size()), i, j, ds.arity()};
}

PairCorrelation correlation(const ReducedDataset& rd, int i, int j) {
    if (i < 1 || j > rd.width() || i >= j) throw InvalidInput("need 1 <= i < j <= width");
    std::int64_t sum = 0;
    for (std::size_t a = 0; a < rd.size(); ++a) sum += rd.value(a, i) * rd.value(a, j);
    return {sum, static_cast<std::int64_t>(rd.size()), i, j, rd.width()};
}

DichotomicDataset read_csv(std::istream& in, std::string run_label) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("csv: missing header");
    auto header = split(line);
    const int n = static_cast<int>(header.size());
    check_arity(n);
    for (int i = 0; i < n; ++i)
        if (header[static_cast<std::size_t>(i)] != "s" + std::to_string(i + 1))
            throw InvalidInput("csv: header must be s1..sn");
    std::vector<std::int8_t> values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (static_cast<int>(cells.size()) != n)
            throw InvalidInput("csv: wrong column count on line " + std::to_string(lineno));
        for (const auto& c : cells) {
            if (c == "+1" || c == "1") values.push_back(1);
            else if (c == "-1") values.push_back(-1);
            else throw InvalidInput("csv: bad value '" + c + "' on line " + std::to_string(lineno));
        }
    }
    return DichotomicDataset(n, std::move(values), std::move(run_label));
}

DichotomicDataset read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return read_csv(in, path);
}

void write_csv(std::ostream& out, const DichotomicDataset& ds) {
    for (int i = 1; i <= ds.arity(); ++i) out << (i > 1 ? "," : "") << 's' << i;
    out << '\n';
    for (std::size_t a = 0; a < ds.size(); ++a) {
        for (int i = 1; i <= ds.arity(); ++i)
            out << (i > 1 ? "," : "") << (ds.value(a, i) > 0 ? "+1" : "-1");
        out << '\n';
    }
}

}  // namespace ebbi
