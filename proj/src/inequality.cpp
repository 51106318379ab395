#include "ebbi/inequality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "ebbi/error.hpp"

namespace ebbi {

namespace {

void check_unit_range(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!std::isfinite(x) || x < -1.0 || x > 1.0)
            throw InvalidInput("correlation outside [-1,1]");
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::boole_triple: return "boole_triple";
        case Family::pair_bound: return "pair_bound";
        case Family::chsh: return "chsh";
        case Family::ebbi: return "ebbi";
        case Family::theorem3: return "theorem3";
        case Family::leggett_garg: return "leggett_garg";
    }
    return "unknown";
}

void InequalityReport::add(std::string description, double lhs, double rhs) {
    Clause c;
    c.description = std::move(description);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.satisfied = c.slack >= -kTol;
    clauses.push_back(std::move(c));
}

bool InequalityReport::all_satisfied() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.satisfied; });
}

const Clause& InequalityReport::tightest() const {
    return *std::min_element(clauses.begin(), clauses.end(),
                             [](const Clause& a, const Clause& b) { return a.slack < b.slack; });
}

InequalityReport check_boole_triple(double F12, double F13, double F23) {
    check_unit_range({F12, F13, F23});
    InequalityReport r;
    r.family = Family::boole_triple;
    struct Cyc { const char* ij; const char* ik; const char* jk; double a, b, c; };
    const std::array<Cyc, 3> cycles{{{"F12", "F13", "F23", F12, F13, F23},
                                     {"F13", "F23", "F12", F13, F23, F12},
                                     {"F23", "F12", "F13", F23, F12, F13}}};
    // (3,1,2): F31 = F13, F32 = F23, F12; (2,3,1): F23, F21 = F12, F31 = F13.
    for (const auto& c : cycles) {
        r.add("|" + std::string(c.ij) + " + " + c.ik + "| <= 1 + " + c.jk, std::abs(c.a + c.b),
              1.0 + c.c);
        r.add("|" + std::string(c.ij) + " - " + c.ik + "| <= 1 - " + c.jk, std::abs(c.a - c.b),
              1.0 - c.c);
    }
    return r;
}

InequalityReport check_pair_bound(double F, double Fhat, double Ftilde) {
    check_unit_range({F, Fhat, Ftilde});
    InequalityReport r;
    r.family = Family::pair_bound;
    struct P { const char* x; const char* y; const char* z; double a, b, c; };
    const std::array<P, 3> perms{{{"F", "F^", "F~", F, Fhat, Ftilde},
                                  {"F^", "F~", "F", Fhat, Ftilde, F},
                                  {"F~", "F", "F^", Ftilde, F, Fhat}}};
    for (const auto& p : perms) {
        r.add("|" + std::string(p.x) + " + " + p.y + "| <= 3 - |" + p.z + "|",
              std::abs(p.a + p.b), 3.0 - std::abs(p.c));
        r.add("|" + std::string(p.x) + " - " + p.y + "| <= 3 - |" + p.z + "|",
              std::abs(p.a - p.b), 3.0 - std::abs(p.c));
    }
    return r;
}

InequalityReport check_chsh(double F13, double F23, double F14, double F24) {
    check_unit_range({F13, F23, F14, F24});
    InequalityReport r;
    r.family = Family::chsh;
    // Negating S_k multiplies every F involving k by -1. The expression is
    // s1 s3 F13 - s2 s3 F23 + s1 s4 F14 + s2 s4 F24. Flipping all four
    // columns gives the same signs, so 16 negations yield 8 variants.
    std::set<std::array<int, 4>> seen;
    for (int mask = 0; mask < 16; ++mask) {
        std::array<int, 5> s{0, 1, 1, 1, 1};
        for (int k = 0; k < 4; ++k)
            if (mask & (1 << k)) s[static_cast<std::size_t>(k + 1)] = -1;
        std::array<int, 4> c{s[1] * s[3], -s[2] * s[3], s[1] * s[4], s[2] * s[4]};
        if (seen.count(c)) continue;
        seen.insert(c);
        auto term = [](int sign, const char* name, bool first) {
            std::string t = sign > 0 ? (first ? "" : " + ") : (first ? "-" : " - ");
            return t + name;
        };
        std::string d = "|" + term(c[0], "F13", true) + term(c[1], "F23", false) +
                        term(c[2], "F14", false) + term(c[3], "F24", false) + "| <= 2";
        r.add(d, std::abs(c[0] * F13 + c[1] * F23 + c[2] * F14 + c[3] * F24), 2.0);
    }
    return r;
}

std::tuple<double, double, double> anticorrelated_frame(double Fab, double Fac, double Fbc) {
    return {Fab, Fac, -Fbc};
}

}  // namespace ebbi
