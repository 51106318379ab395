#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebbi/dataset.hpp"
#include "ebbi/rng.hpp"

namespace ebbi {

// ---- allergy tests -------------------------------------------------------

enum class Birthplace { a = 0, b = 1, c = 2 };

Birthplace parse_birthplace(const std::string& s);

class AllergyScenario {
public:
    // table[o][l-1][parity], parity 0 = even day, 1 = odd day.
    using Table = std::array<std::array<std::array<int, 2>, 3>, 3>;

    AllergyScenario();  // the published table
    explicit AllergyScenario(const Table& t);

    static AllergyScenario constant(int value);
    // Outcome depends only on birthplace and parity, not on the city.
    static AllergyScenario city_independent(const std::array<std::array<int, 2>, 3>& t);

    int outcome(Birthplace o, int city, long day) const;
    const Table& table() const { return t_; }

private:
    Table t_;
};

int allergy_outcome(Birthplace o, int city, long day);

struct DaySchedule {
    enum class Kind { alternating, random } kind = Kind::alternating;
    std::uint64_t seed = 0;  // used by the random schedule
};

std::vector<long> schedule_days(long N, const DaySchedule& sched);

// Mean of A_a^1 A_b^2 + A_a^1 A_c^3 + A_b^2 A_c^3 over days 1..N.
double allergy_gamma_triples(long N, const AllergyScenario& s = {}, const DaySchedule& sched = {});
// Lille examines {a,b}, Lyon {b,c}: mean of A_a^1 A_b^2 + A_a^1 A_c^2 + A_b^1 A_c^2.
double allergy_gamma_pairs(long N, const AllergyScenario& s = {}, const DaySchedule& sched = {});
// Mean single outcome of birthplace o in city l.
double allergy_single_average(Birthplace o, int city, long N, const AllergyScenario& s = {},
                              const DaySchedule& sched = {});

// ---- factorizable threshold model ---------------------------------------

enum class MuKind { uniform, delta_equal, delta_opposite };

struct FactorizableModel {
    MuKind mu_kind = MuKind::uniform;
};

MuKind parse_mu_kind(const std::string& s);  // uniform | equal | opposite (or full names)
std::string mu_kind_name(MuKind k);

struct PairDraw {
    double phi = 0;
    int s = 1;
    int s_prime = 1;
};

// One emission: phi uniform on [0, 2pi), thresholds per kind.
PairDraw draw_pair(const FactorizableModel& m, double a, double b, Rng& rng);

DichotomicDataset sample_pair(const FactorizableModel& m, double a, double b, std::uint64_t seed,
                              std::size_t count);
// Same draws with the hidden angle kept.
std::vector<PairDraw> sample_pair_draws(const FactorizableModel& m, double a, double b,
                                        std::uint64_t seed, std::size_t count);

// Angles are not reduced modulo 2 pi.
double analytic_correlation(const FactorizableModel& m, double a, double b);

struct SweepWitness {
    std::vector<double> angles;
    std::string clause;
    double lhs = 0, rhs = 0;
};

struct SweepSummary {
    std::size_t bell_checked = 0;
    std::size_t bell_violations = 0;
    std::optional<SweepWitness> worst_bell;  // smallest slack seen
    std::size_t chsh_checked = 0;
    std::size_t chsh_violations = 0;
    std::optional<SweepWitness> worst_chsh;
};

// |E(a,b) ± E(a,c)| <= 1 ± E(b,c) over ordered grid triples and
// |E(a,b) - E(a,c) + E(d,b) + E(d,c)| <= 2 over ordered grid quadruples.
SweepSummary model_inequality_sweep(const FactorizableModel& m, const std::vector<double>& grid);

// Heuristic search: does some mixture of deterministic response triples
// (A(a), A(b), A(c)) shared by both stations reproduce the model's
// correlations at settings a, b, c? Weights run over a simplex grid with
// `steps` divisions; reports the closest L-infinity distance found.
struct FactorizabilitySearch {
    std::array<double, 3> target{};  // E(a,b), E(a,c), E(b,c)
    std::array<double, 3> best{};
    std::array<double, 8> best_weights{};
    double distance = 0;
    std::size_t candidates = 0;
};

FactorizabilitySearch factorizability_search(const FactorizableModel& m, double a, double b,
                                             double c, int steps);

}  // namespace ebbi
