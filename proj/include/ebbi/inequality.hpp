#pragma once

#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace ebbi {

inline constexpr double kTol = 1e-12;

enum class Family { boole_triple, pair_bound, chsh, ebbi, theorem3, leggett_garg };

std::string_view family_name(Family f);

struct Clause {
    std::string description;
    double lhs = 0;
    double rhs = 0;
    bool satisfied = true;
    double slack = 0;  // rhs - lhs
};

struct InequalityReport {
    Family family = Family::boole_triple;
    std::vector<Clause> clauses;

    // Appends "lhs <= rhs".
    void add(std::string description, double lhs, double rhs);
    bool all_satisfied() const;
    // Clause with the smallest slack; clauses must be non-empty.
    const Clause& tightest() const;
};

// Six same-sign clauses |F_ij ± F_ik| <= 1 ± F_jk over (1,2,3), (3,1,2), (2,3,1).
InequalityReport check_boole_triple(double F12, double F13, double F23);

// |F ± F^| <= 3 - |F~| and its two interchanges.
InequalityReport check_pair_bound(double F, double Fhat, double Ftilde);

// |F13 - F23 + F14 + F24| <= 2 and its 8 sign variants from column negations
// (variants related by an overall sign share the same absolute value).
InequalityReport check_chsh(double F13, double F23, double F14, double F24);

// Triple-frame correlations for pair experiments whose station 1 outcome at a
// setting is read as minus station 2's outcome there: (F_ab, F_ac, -F_bc).
std::tuple<double, double, double> anticorrelated_frame(double Fab, double Fac, double Fbc);

}  // namespace ebbi
