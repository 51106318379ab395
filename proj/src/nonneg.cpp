#include "ebbi/nonneg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ebbi/error.hpp"

namespace ebbi {

int sign_index(std::initializer_list<int> signs) {
    int idx = 0;
    for (int s : signs) idx = 2 * idx + (s < 0 ? 1 : 0);
    return idx;
}

std::string sign_label(int index, int n) {
    std::string out;
    for (int k = 1; k <= n; ++k) out += sign_at(index, n, k) > 0 ? '+' : '-';
    return out;
}

int sign_at(int index, int n, int k) {
    return ((index >> (n - k)) & 1) ? -1 : 1;
}

bool FuncTable2::nonnegative(double tol) const {
    return std::all_of(v.begin(), v.end(), [tol](double x) { return x >= -tol; });
}

bool FuncTable3::nonnegative(double tol) const {
    return std::all_of(v.begin(), v.end(), [tol](double x) { return x >= -tol; });
}

FuncTable2 FuncTable3::marginal12() const {
    FuncTable2 g;
    for (int a : {1, -1})
        for (int b : {1, -1}) g(a, b) = (*this)(a, b, 1) + (*this)(a, b, -1);
    return g;
}

FuncTable2 FuncTable3::marginal13() const {
    FuncTable2 g;
    for (int a : {1, -1})
        for (int c : {1, -1}) g(a, c) = (*this)(a, 1, c) + (*this)(a, -1, c);
    return g;
}

FuncTable2 FuncTable3::marginal23() const {
    FuncTable2 g;
    for (int b : {1, -1})
        for (int c : {1, -1}) g(b, c) = (*this)(1, b, c) + (*this)(-1, b, c);
    return g;
}

ExpansionCoeffs2 expand2(const FuncTable2& f) {
    ExpansionCoeffs2 c;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            double x = f(s1, s2);
            c.e0 += x;
            c.e1 += s1 * x;
            c.e2 += s2 * x;
            c.e12 += s1 * s2 * x;
        }
    return c;
}

FuncTable2 synth2(const ExpansionCoeffs2& c) {
    FuncTable2 f;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) f(s1, s2) = (c.e0 + s1 * c.e1 + s2 * c.e2 + s1 * s2 * c.e12) / 4.0;
    return f;
}

ExpansionCoeffs3 expand3(const FuncTable3& f) {
    ExpansionCoeffs3 c;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1}) {
                double x = f(s1, s2, s3);
                c.e0 += x;
                c.e1 += s1 * x;
                c.e2 += s2 * x;
                c.e3 += s3 * x;
                c.e12 += s1 * s2 * x;
                c.e13 += s1 * s3 * x;
                c.e23 += s2 * s3 * x;
                c.e123 += s1 * s2 * s3 * x;
            }
    return c;
}

FuncTable3 synth3(const ExpansionCoeffs3& c) {
    FuncTable3 f;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1})
                f(s1, s2, s3) = (c.e0 + s1 * c.e1 + s2 * c.e2 + s3 * c.e3 + s1 * s2 * c.e12 +
                                 s1 * s3 * c.e13 + s2 * s3 * c.e23 + s1 * s2 * s3 * c.e123) /
                                8.0;
    return f;
}

InequalityReport theorem1_check(const ExpansionCoeffs2& c) {
    InequalityReport r;
    r.family = Family::ebbi;
    r.add("0 <= e0", 0.0, c.e0);
    r.add("|e1 + e2| <= e0 + e12", std::abs(c.e1 + c.e2), c.e0 + c.e12);
    r.add("|e1 - e2| <= e0 - e12", std::abs(c.e1 - c.e2), c.e0 - c.e12);
    return r;
}

InequalityReport ebbi_check(double e0, double e12, double e13, double e23) {
    if (!(e0 >= 0)) throw InvalidInput("ebbi_check: e0 must be non-negative");
    InequalityReport r;
    r.family = Family::ebbi;
    r.add("|e12| <= e0", std::abs(e12), e0);
    r.add("|e13| <= e0", std::abs(e13), e0);
    r.add("|e23| <= e0", std::abs(e23), e0);
    struct Cyc { const char* ij; const char* ik; const char* jk; double a, b, c; };
    const Cyc cycles[] = {{"e12", "e13", "e23", e12, e13, e23},
                          {"e13", "e23", "e12", e13, e23, e12},
                          {"e23", "e12", "e13", e23, e12, e13}};
    for (const auto& c : cycles) {
        r.add("|" + std::string(c.ij) + " + " + c.ik + "| <= e0 + " + c.jk, std::abs(c.a + c.b),
              e0 + c.c);
        r.add("|" + std::string(c.ij) + " - " + c.ik + "| <= e0 - " + c.jk, std::abs(c.a - c.b),
              e0 - c.c);
    }
    for (int idx = 0; idx < 8; ++idx) {
        int s1 = sign_at(idx, 3, 1), s2 = sign_at(idx, 3, 2), s3 = sign_at(idx, 3, 3);
        r.add("S1S2 e12 + S1S3 e13 + S2S3 e23 <= 3 e0 at S=" + sign_label(idx, 3),
              s1 * s2 * e12 + s1 * s3 * e13 + s2 * s3 * e23, 3.0 * e0);
    }
    return r;
}

FuncTable3 construct_g3(double a0, double a12, double a13, double a23) {
    auto rep = ebbi_check(a0, a12, a13, a23);
    for (const auto& c : rep.clauses)
        if (!c.satisfied) throw InvalidInput("construct_g3: clause fails: " + c.description);
    ExpansionCoeffs3 c;
    c.e0 = a0;
    c.e12 = a12;
    c.e13 = a13;
    c.e23 = a23;
    return synth3(c);
}

InequalityReport theorem3_check(double e, double ehat, double etilde, double e0) {
    for (double x : {e, ehat, etilde})
        if (!(std::abs(x) <= e0 + kTol)) throw InvalidInput("theorem3_check: need |e| <= e0");
    InequalityReport r;
    r.family = Family::theorem3;
    struct P { const char* x; const char* y; const char* z; double a, b, c; };
    const P perms[] = {{"e", "e^", "e~", e, ehat, etilde},
                       {"e^", "e~", "e", ehat, etilde, e},
                       {"e~", "e", "e^", etilde, e, ehat}};
    for (const auto& p : perms) {
        r.add("|" + std::string(p.x) + " + " + p.y + "| <= 3 e0 - |" + p.z + "|",
              std::abs(p.a + p.b), 3.0 * e0 - std::abs(p.c));
        r.add("|" + std::string(p.x) + " - " + p.y + "| <= 3 e0 - |" + p.z + "|",
              std::abs(p.a - p.b), 3.0 * e0 - std::abs(p.c));
    }
    return r;
}

Compatibility marginals_compatible(const FuncTable2& f, const FuncTable2& fhat,
                                   const FuncTable2& ftilde) {
    Compatibility out;
    auto& fail = out.failures;
    if (!f.nonnegative()) fail.push_back("f has a negative entry");
    if (!fhat.nonnegative()) fail.push_back("f^ has a negative entry");
    if (!ftilde.nonnegative()) fail.push_back("f~ has a negative entry");

    const auto c = expand2(f), ch = expand2(fhat), ct = expand2(ftilde);
    auto same = [](double x, double y) { return std::abs(x - y) <= kTol; };
    if (!same(c.e0, ch.e0) || !same(c.e0, ct.e0)) fail.push_back("e0 = e0^ = e0~ fails");
    if (!same(c.e1, ch.e1)) fail.push_back("e1 = e1^ fails");
    if (!same(c.e2, ct.e1)) fail.push_back("e2 = e1~ fails");
    if (!same(ch.e2, ct.e2)) fail.push_back("e2^ = e2~ fails");

    if (c.e0 < 0) {
        fail.push_back("e0 is negative");
    } else {
        auto rep = ebbi_check(c.e0, c.e12, ch.e12, ct.e12);
        for (const auto& cl : rep.clauses)
            if (!cl.satisfied) fail.push_back("clause fails: " + cl.description);
    }
    out.compatible = fail.empty();
    return out;
}

Reconstruction reconstruct_f3(const FuncTable2& f, const FuncTable2& fhat, const FuncTable2& ftilde) {
    Reconstruction out;
    out.diagnosis = marginals_compatible(f, fhat, ftilde);
    if (!out.diagnosis.compatible) return out;

    const auto c = expand2(f), ch = expand2(fhat), ct = expand2(ftilde);
    ExpansionCoeffs3 k;
    k.e0 = c.e0;
    k.e1 = c.e1;
    k.e2 = c.e2;
    k.e3 = ch.e2;
    k.e12 = c.e12;
    k.e13 = ch.e12;
    k.e23 = ct.e12;

    // Each entry is (base(S) + S1S2S3 e123)/8 >= 0.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int idx = 0; idx < 8; ++idx) {
        int s1 = sign_at(idx, 3, 1), s2 = sign_at(idx, 3, 2), s3 = sign_at(idx, 3, 3);
        double base = k.e0 + s1 * k.e1 + s2 * k.e2 + s3 * k.e3 + s1 * s2 * k.e12 +
                      s1 * s3 * k.e13 + s2 * s3 * k.e23;
        if (s1 * s2 * s3 > 0) lo = std::max(lo, -base);
        else hi = std::min(hi, base);
    }
    if (lo > hi + 8 * kTol) {
        out.diagnosis.compatible = false;
        out.diagnosis.failures.push_back("no admissible three-point coefficient");
        return out;
    }
    out.e123_lo = lo;
    out.e123_hi = hi;
    k.e123 = (lo <= 0.0 && 0.0 <= hi) ? 0.0 : 0.5 * (lo + hi);
    out.e123 = k.e123;
    out.table = synth3(k);
    return out;
}

FuncTable2 flip_first(const FuncTable2& f) {
    FuncTable2 g;
    for (int a : {1, -1})
        for (int b : {1, -1}) g(a, b) = f(-a, b);
    return g;
}

void LambdaModel::validate() const {
    const auto k = weights.size();
    if (k == 0) throw InvalidInput("LambdaModel: empty support");
    if (ea.size() != k || eb.size() != k || ec.size() != k)
        throw InvalidInput("LambdaModel: size mismatch");
    for (double w : weights)
        if (!(w >= 0)) throw InvalidInput("LambdaModel: negative weight");
    double s = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(s - 1.0) > kTol) throw InvalidInput("LambdaModel: weights must sum to 1");
    for (const auto* e : {&ea, &eb, &ec})
        for (double x : *e)
            if (!(std::abs(x) <= 1.0)) throw InvalidInput("LambdaModel: |e| > 1");
}

std::tuple<FuncTable2, FuncTable2, FuncTable2> bell_pair_tables(const LambdaModel& m) {
    m.validate();
    FuncTable2 f, fh, ft;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        const double w = m.weights[l];
        for (int s : {1, -1})
            for (int t : {1, -1}) {
                f(s, t) += w * (1 + s * m.ea[l]) * (1 + t * m.eb[l]) / 4.0;
                fh(s, t) += w * (1 + s * m.ea[l]) * (1 + t * m.ec[l]) / 4.0;
                ft(s, t) += w * (1 + s * m.eb[l]) * (1 + t * m.ec[l]) / 4.0;
            }
    }
    return {f, fh, ft};
}

FuncTable3 bell_triple_table(const LambdaModel& m) {
    m.validate();
    FuncTable3 g;
    for (std::size_t l = 0; l < m.weights.size(); ++l)
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1})
                    g(s1, s2, s3) += m.weights[l] * (1 + s1 * m.ea[l]) * (1 + s2 * m.eb[l]) *
                                     (1 + s3 * m.ec[l]) / 8.0;
    return g;
}

}  // namespace ebbi
