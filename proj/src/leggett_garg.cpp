#include "ebbi/leggett_garg.hpp"

#include <cmath>

#include "ebbi/error.hpp"
#include "ebbi/nonneg.hpp"
#include "ebbi/quantum.hpp"
#include "ebbi/rng.hpp"

namespace ebbi {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int index16(int q, int n1, int n2, int n3) {
    auto bit = [](int up) { return up ? 0 : 1; };
    return bit(q) * 8 + bit(n1) * 4 + bit(n2) * 2 + bit(n3);
}

}  // namespace

const std::array<int, 8> LGAmplitudes::basis{
    index16(1, 1, 1, 1), index16(0, 0, 0, 0), index16(0, 1, 0, 0), index16(1, 0, 1, 1),
    index16(0, 1, 1, 0), index16(1, 0, 0, 1), index16(1, 1, 0, 1), index16(0, 0, 1, 0)};

void LGParams::validate() const {
    for (double x : {omega, dt1, dt2, dt3})
        if (!std::isfinite(x)) throw InvalidInput("parameters must be finite");
    if (dt1 < 0 || dt2 < 0 || dt3 < 0) throw InvalidInput("time intervals must be non-negative");
}

Eigen::VectorXcd LGAmplitudes::state_vector() const {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    for (std::size_t k = 0; k < 8; ++k) psi(basis[k]) = amp[k];
    return psi;
}

double LGAmplitudes::norm2() const {
    double s = 0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

std::string lg_basis_label(int k) {
    const int idx = LGAmplitudes::basis.at(static_cast<std::size_t>(k));
    std::string out = "|";
    for (int b = 3; b >= 0; --b) out += ((idx >> b) & 1) ? 'd' : 'u';
    return out + ">";
}

LGAmplitudes evolve_triple(const LGParams& p) {
    p.validate();
    const double c1 = std::cos(p.omega * p.dt1), s1 = std::sin(p.omega * p.dt1);
    const double c2 = std::cos(p.omega * p.dt2), s2 = std::sin(p.omega * p.dt2);
    const double c3 = std::cos(p.omega * p.dt3), s3 = std::sin(p.omega * p.dt3);
    LGAmplitudes a;
    a.amp = {c3 * c2 * c1,       -c3 * c2 * s1,      kI * c3 * s2 * c1,  -kI * c3 * s2 * s1,
             s3 * c2 * c1,       s3 * c2 * s1,       -kI * s3 * s2 * c1, -kI * s3 * s2 * s1};
    return a;
}

std::tuple<double, double, double> lg_triple_correlations(const LGParams& p) {
    p.validate();
    const double x2 = std::cos(2 * p.omega * p.dt2), x3 = std::cos(2 * p.omega * p.dt3);
    return {x2, x3 * x2, x3};
}

std::tuple<double, double, double> lg_triple_correlations_from_state(const LGAmplitudes& a) {
    const auto rho = DensityMatrix::pure(a.state_vector());
    auto zz = [&](int i, int j) {
        return rho.expectation(embed(pauli_z(), i + 1, 4) * embed(pauli_z(), j + 1, 4));
    };
    return {zz(1, 2), zz(1, 3), zz(2, 3)};
}

std::tuple<double, double, double> lg_pair_correlations(const LGParams& p) {
    p.validate();
    const double t1 = p.dt1, t2 = t1 + p.dt2, t3 = t2 + p.dt3;
    return {std::cos(2 * p.omega * (t2 - t1)), std::cos(2 * p.omega * (t3 - t1)),
            std::cos(2 * p.omega * (t3 - t2))};
}

InequalityReport lg_inequality_check(double K12, double K13, double K23) {
    for (double k : {K12, K13, K23})
        if (!(std::abs(k) <= 1.0)) throw InvalidInput("correlation outside [-1,1]");
    auto r = ebbi_check(1.0, K12, K13, K23);
    r.family = Family::leggett_garg;
    return r;
}

std::array<double, 8> lg_triple_probabilities(const LGParams& p) {
    const auto psi = evolve_triple(p).state_vector();
    std::array<double, 8> prob{};
    for (int idx = 0; idx < 16; ++idx) prob[std::size_t(idx & 7)] += std::norm(psi(idx));
    return prob;
}

DichotomicDataset sample_triples(const LGParams& p, std::size_t M, std::uint64_t seed) {
    if (M == 0) throw InvalidInput("M must be at least 1");
    const auto prob = lg_triple_probabilities(p);
    std::array<double, 8> cdf{};
    double acc = 0;
    for (std::size_t k = 0; k < 8; ++k) cdf[k] = (acc += prob[k]);
    std::vector<std::int8_t> values(3 * M);
    for_each_shard(M, seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const double u = rng.uniform() * acc;
            int k = 0;
            while (k < 7 && u >= cdf[std::size_t(k)]) ++k;
            for (int i = 1; i <= 3; ++i) values[3 * a + std::size_t(i - 1)] = std::int8_t(sign_at(k, 3, i));
        }
    });
    return DichotomicDataset(3, std::move(values), "leggett-garg");
}

}  // namespace ebbi
