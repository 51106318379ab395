#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ebbi/inequality.hpp"

namespace ebbi {

// Sign patterns are ordered with S1 slowest and +1 before -1:
// index = sum_k [S_k == -1] * 2^(n-k).
int sign_index(std::initializer_list<int> signs);
std::string sign_label(int index, int n);  // e.g. "+-+"
int sign_at(int index, int n, int k);      // S_k of pattern `index`, k 1-based

struct FuncTable2 {
    std::array<double, 4> v{};

    double operator()(int s1, int s2) const { return v[static_cast<std::size_t>(sign_index({s1, s2}))]; }
    double& operator()(int s1, int s2) { return v[static_cast<std::size_t>(sign_index({s1, s2}))]; }
    bool nonnegative(double tol = kTol) const;
};

struct FuncTable3 {
    std::array<double, 8> v{};

    double operator()(int s1, int s2, int s3) const {
        return v[static_cast<std::size_t>(sign_index({s1, s2, s3}))];
    }
    double& operator()(int s1, int s2, int s3) {
        return v[static_cast<std::size_t>(sign_index({s1, s2, s3}))];
    }
    bool nonnegative(double tol = kTol) const;

    FuncTable2 marginal12() const;  // sum over S3
    FuncTable2 marginal13() const;  // sum over S2
    FuncTable2 marginal23() const;  // sum over S1
};

struct ExpansionCoeffs2 {
    double e0 = 0, e1 = 0, e2 = 0, e12 = 0;
};

struct ExpansionCoeffs3 {
    double e0 = 0, e1 = 0, e2 = 0, e3 = 0, e12 = 0, e13 = 0, e23 = 0, e123 = 0;
};

ExpansionCoeffs2 expand2(const FuncTable2& f);
FuncTable2 synth2(const ExpansionCoeffs2& c);
ExpansionCoeffs3 expand3(const FuncTable3& f);
FuncTable3 synth3(const ExpansionCoeffs3& c);

InequalityReport theorem1_check(const ExpansionCoeffs2& c);

// Precondition clauses |e_ij| <= e0, the six EBBI clauses and the
// eight lower-bound clauses. Throws if e0 < 0.
InequalityReport ebbi_check(double e0, double e12, double e13, double e23);

// Table (a0 + S1S2 a12 + S1S3 a13 + S2S3 a23)/8; throws naming the failed clause.
FuncTable3 construct_g3(double a0, double a12, double a13, double a23);

// |e ± e^| <= 3 e0 - |e~| and interchanges. Throws if some |x| > e0.
InequalityReport theorem3_check(double e, double ehat, double etilde, double e0);

struct Compatibility {
    bool compatible = false;
    std::vector<std::string> failures;
};

// f over (S1,S2), fhat over (S1,S3), ftilde over (S2,S3).
Compatibility marginals_compatible(const FuncTable2& f, const FuncTable2& fhat,
                                   const FuncTable2& ftilde);

struct Reconstruction {
    std::optional<FuncTable3> table;
    Compatibility diagnosis;
    // Admissible range of the free three-point coefficient; empty when refused.
    double e123_lo = 0, e123_hi = 0;
    double e123 = 0;
};

Reconstruction reconstruct_f3(const FuncTable2& f, const FuncTable2& fhat, const FuncTable2& ftilde);

// Swaps the sign of the first variable: g(S1,S2) = f(-S1,S2).
FuncTable2 flip_first(const FuncTable2& f);

struct LambdaModel {
    std::vector<double> weights;
    std::vector<double> ea, eb, ec;

    // Throws on size mismatch, negative weights, sum != 1 or |e| > 1.
    void validate() const;
};

std::tuple<FuncTable2, FuncTable2, FuncTable2> bell_pair_tables(const LambdaModel& m);
FuncTable3 bell_triple_table(const LambdaModel& m);

}  // namespace ebbi
