#include "ebbi/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ebbi/error.hpp"
#include "ebbi/inequality.hpp"

namespace ebbi {

namespace {

using Row = std::array<std::array<int, 2>, 3>;

AllergyScenario::Table published_table() {
    AllergyScenario::Table t{};
    // [o][l-1] = {even, odd}
    const Row a{{{+1, -1}, {+1, -1}, {+1, -1}}};
    const Row b{{{+1, -1}, {-1, +1}, {+1, -1}}};
    const Row c{{{-1, +1}, {-1, +1}, {-1, +1}}};
    t[0] = a;
    t[1] = b;
    t[2] = c;
    return t;
}

void check_table(const AllergyScenario::Table& t) {
    for (const auto& o : t)
        for (const auto& l : o)
            for (int v : l)
                if (v != 1 && v != -1) throw InvalidInput("allergy outcomes must be +1 or -1");
}

void check_days(long N) {
    if (N < 1) throw InvalidInput("N must be at least 1");
}

}  // namespace

Birthplace parse_birthplace(const std::string& s) {
    if (s == "a") return Birthplace::a;
    if (s == "b") return Birthplace::b;
    if (s == "c") return Birthplace::c;
    throw InvalidInput("birthplace must be a, b or c");
}

AllergyScenario::AllergyScenario() : t_(published_table()) {}

AllergyScenario::AllergyScenario(const Table& t) : t_(t) { check_table(t_); }

AllergyScenario AllergyScenario::constant(int value) {
    Table t{};
    for (auto& o : t)
        for (auto& l : o) l = {value, value};
    return AllergyScenario(t);
}

AllergyScenario AllergyScenario::city_independent(const std::array<std::array<int, 2>, 3>& t) {
    Table full{};
    for (std::size_t o = 0; o < 3; ++o)
        for (std::size_t l = 0; l < 3; ++l) full[o][l] = t[o];
    return AllergyScenario(full);
}

int AllergyScenario::outcome(Birthplace o, int city, long day) const {
    const int oi = static_cast<int>(o);
    if (oi < 0 || oi > 2) throw InvalidInput("invalid birthplace");
    if (city < 1 || city > 3) throw InvalidInput("city must be 1, 2 or 3");
    const std::size_t parity = (day % 2 == 0) ? 0 : 1;
    return t_[std::size_t(oi)][std::size_t(city - 1)][parity];
}

int allergy_outcome(Birthplace o, int city, long day) {
    static const AllergyScenario published;
    return published.outcome(o, city, day);
}

std::vector<long> schedule_days(long N, const DaySchedule& sched) {
    check_days(N);
    std::vector<long> days(static_cast<std::size_t>(N));
    if (sched.kind == DaySchedule::Kind::alternating) {
        for (long n = 1; n <= N; ++n) days[std::size_t(n - 1)] = n;
    } else {
        Rng rng(sched.seed);
        for (auto& d : days) d = 1 + static_cast<long>(rng.bits() % 1000000);
    }
    return days;
}

double allergy_gamma_triples(long N, const AllergyScenario& s, const DaySchedule& sched) {
    long total = 0;
    for (long n : schedule_days(N, sched)) {
        const int a1 = s.outcome(Birthplace::a, 1, n);
        const int b2 = s.outcome(Birthplace::b, 2, n);
        const int c3 = s.outcome(Birthplace::c, 3, n);
        total += a1 * b2 + a1 * c3 + b2 * c3;
    }
    return static_cast<double>(total) / static_cast<double>(N);
}

double allergy_gamma_pairs(long N, const AllergyScenario& s, const DaySchedule& sched) {
    long total = 0;
    for (long n : schedule_days(N, sched)) {
        total += s.outcome(Birthplace::a, 1, n) * s.outcome(Birthplace::b, 2, n);
        total += s.outcome(Birthplace::a, 1, n) * s.outcome(Birthplace::c, 2, n);
        total += s.outcome(Birthplace::b, 1, n) * s.outcome(Birthplace::c, 2, n);
    }
    return static_cast<double>(total) / static_cast<double>(N);
}

double allergy_single_average(Birthplace o, int city, long N, const AllergyScenario& s,
                              const DaySchedule& sched) {
    long total = 0;
    for (long n : schedule_days(N, sched)) total += s.outcome(o, city, n);
    return static_cast<double>(total) / static_cast<double>(N);
}

MuKind parse_mu_kind(const std::string& s) {
    if (s == "uniform") return MuKind::uniform;
    if (s == "equal" || s == "delta_equal") return MuKind::delta_equal;
    if (s == "opposite" || s == "delta_opposite") return MuKind::delta_opposite;
    throw InvalidInput("mu kind must be uniform, equal or opposite");
}

std::string mu_kind_name(MuKind k) {
    switch (k) {
        case MuKind::uniform: return "uniform";
        case MuKind::delta_equal: return "delta_equal";
        case MuKind::delta_opposite: return "delta_opposite";
    }
    return "unknown";
}

PairDraw draw_pair(const FactorizableModel& m, double a, double b, Rng& rng) {
    PairDraw d;
    d.phi = 2.0 * std::numbers::pi * rng.uniform();
    const double r = 2.0 * rng.uniform() - 1.0;
    double rp = r;
    switch (m.mu_kind) {
        case MuKind::uniform: rp = 2.0 * rng.uniform() - 1.0; break;
        case MuKind::delta_equal: rp = r; break;
        case MuKind::delta_opposite: rp = -r; break;
    }
    d.s = std::cos(d.phi - a) - r > 0 ? 1 : -1;
    d.s_prime = std::cos(d.phi - b) - rp > 0 ? 1 : -1;
    return d;
}

std::vector<PairDraw> sample_pair_draws(const FactorizableModel& m, double a, double b,
                                        std::uint64_t seed, std::size_t count) {
    if (count == 0) throw InvalidInput("count must be at least 1");
    std::vector<PairDraw> out(count);
    for_each_shard(count, seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) out[k] = draw_pair(m, a, b, rng);
    });
    return out;
}

DichotomicDataset sample_pair(const FactorizableModel& m, double a, double b, std::uint64_t seed,
                              std::size_t count) {
    const auto draws = sample_pair_draws(m, a, b, seed, count);
    std::vector<std::int8_t> values;
    values.reserve(2 * count);
    for (const auto& d : draws) {
        values.push_back(std::int8_t(d.s));
        values.push_back(std::int8_t(d.s_prime));
    }
    return DichotomicDataset(2, std::move(values), mu_kind_name(m.mu_kind));
}

double analytic_correlation(const FactorizableModel& m, double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("angles must be finite");
    const double k = 4.0 / std::numbers::pi;
    switch (m.mu_kind) {
        // (1/2pi) * integral of cos(phi-a) cos(phi-b)
        case MuKind::uniform: return 0.5 * std::cos(a - b);
        case MuKind::delta_equal: return 1.0 - k * std::abs(std::sin((a - b) / 2));
        case MuKind::delta_opposite: return k * std::abs(std::cos((a - b) / 2)) - 1.0;
    }
    return 0;
}

SweepSummary model_inequality_sweep(const FactorizableModel& m, const std::vector<double>& grid) {
    SweepSummary out;
    const std::size_t G = grid.size();
    std::vector<double> E(G * G);
    for (std::size_t i = 0; i < G; ++i)
        for (std::size_t j = 0; j < G; ++j) E[i * G + j] = analytic_correlation(m, grid[i], grid[j]);
    auto e = [&](std::size_t i, std::size_t j) { return E[i * G + j]; };

    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < G; ++i)
        for (std::size_t j = 0; j < G; ++j)
            for (std::size_t k = 0; k < G; ++k)
                for (int sign : {1, -1}) {
                    const double lhs = std::abs(e(i, j) + sign * e(i, k));
                    const double rhs = 1.0 + sign * e(j, k);
                    ++out.bell_checked;
                    if (rhs - lhs < -kTol) ++out.bell_violations;
                    if (rhs - lhs < worst) {
                        worst = rhs - lhs;
                        out.worst_bell = SweepWitness{
                            {grid[i], grid[j], grid[k]},
                            sign > 0 ? "|E(a,b) + E(a,c)| <= 1 + E(b,c)"
                                     : "|E(a,b) - E(a,c)| <= 1 - E(b,c)",
                            lhs, rhs};
                    }
                }

    worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < G; ++i)
        for (std::size_t j = 0; j < G; ++j)
            for (std::size_t k = 0; k < G; ++k)
                for (std::size_t l = 0; l < G; ++l) {
                    const double lhs = std::abs(e(i, j) - e(i, k) + e(l, j) + e(l, k));
                    ++out.chsh_checked;
                    if (2.0 - lhs < -kTol) ++out.chsh_violations;
                    if (2.0 - lhs < worst) {
                        worst = 2.0 - lhs;
                        out.worst_chsh = SweepWitness{{grid[i], grid[j], grid[k], grid[l]},
                                                      "|E(a,b) - E(a,c) + E(d,b) + E(d,c)| <= 2",
                                                      lhs, 2.0};
                    }
                }
    return out;
}

FactorizabilitySearch factorizability_search(const FactorizableModel& m, double a, double b,
                                             double c, int steps) {
    if (steps < 1) throw InvalidInput("steps must be at least 1");
    FactorizabilitySearch out;
    out.target = {analytic_correlation(m, a, b), analytic_correlation(m, a, c),
                  analytic_correlation(m, b, c)};
    std::array<std::array<double, 3>, 8> vert{};
    for (int k = 0; k < 8; ++k) {
        const int x = (k & 4) ? -1 : 1, y = (k & 2) ? -1 : 1, z = (k & 1) ? -1 : 1;
        vert[std::size_t(k)] = {double(x * y), double(x * z), double(y * z)};
    }
    out.distance = std::numeric_limits<double>::infinity();
    std::array<int, 8> n{};
    // Enumerate compositions of `steps` into 8 non-negative parts.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == 7) {
            n[7] = left;
            std::array<double, 3> p{};
            for (int k = 0; k < 8; ++k)
                for (int q = 0; q < 3; ++q)
                    p[std::size_t(q)] += n[std::size_t(k)] * vert[std::size_t(k)][std::size_t(q)] / steps;
            double d = 0;
            for (int q = 0; q < 3; ++q) d = std::max(d, std::abs(p[std::size_t(q)] - out.target[std::size_t(q)]));
            ++out.candidates;
            if (d < out.distance) {
                out.distance = d;
                out.best = p;
                for (int k = 0; k < 8; ++k) out.best_weights[std::size_t(k)] = double(n[std::size_t(k)]) / steps;
            }
            return;
        }
        for (int v = 0; v <= left; ++v) {
            n[std::size_t(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, steps);
    return out;
}

}  // namespace ebbi
