#include "ebbi/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "ebbi/error.hpp"
#include "ebbi/rng.hpp"

namespace ebbi {

namespace {

double delay(const TimingModel& tm, Rng& rng, double phi, double angle) {
    if (tm.jitter == 0) return 0.0;
    const double u = rng.uniform();
    const double shape = tm.exponent == 0 ? 1.0 : std::pow(std::abs(std::sin(phi - angle)), tm.exponent);
    return tm.jitter * u * shape;
}

struct TripleSampler {
    std::array<double, 8> cdf{};

    explicit TripleSampler(const FuncTable3& t) {
        if (!t.nonnegative()) throw InvalidInput("triple table has negative entries");
        double acc = 0;
        for (std::size_t k = 0; k < 8; ++k) cdf[k] = (acc += t.v[k]);
        if (std::abs(acc - 1.0) > 1e-10) throw InvalidInput("triple table must sum to 1");
    }

    int draw(Rng& rng) const {
        const double u = rng.uniform() * cdf[7];
        int k = 0;
        while (k < 7 && u >= cdf[std::size_t(k)]) ++k;
        return k;
    }
};

void check_schedule(const Schedule& s) {
    if (s.pairs.empty()) throw InvalidInput("schedule has no setting pairs");
    const int n = static_cast<int>(s.angles.size());
    for (const auto& p : s.pairs)
        if (p.left < 0 || p.left >= n || p.right < 0 || p.right >= n)
            throw InvalidInput("schedule refers to an unknown setting id");
    for (double a : s.angles)
        if (!std::isfinite(a)) throw InvalidInput("setting angles must be finite");
}

}  // namespace

RawDataset::RawDataset(std::vector<EventPair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw InvalidInput("raw dataset must contain at least one pair");
    for (const auto& p : pairs_)
        for (const auto* r : {&p.left, &p.right})
            if ((r->s != 1 && r->s != -1) || !std::isfinite(r->t))
                throw InvalidInput("event record has invalid outcome or time");
}

void CoincidenceConfig::validate() const {
    if (!(window > 0)) throw InvalidInput("coincidence window must be positive");
}

RawDataset generate_events(const Source& source, const Schedule& schedule, std::size_t M,
                           const TimingModel& timing, std::uint64_t seed) {
    if (M == 0) throw InvalidInput("M must be at least 1");
    check_schedule(schedule);
    if (!(timing.jitter >= 0) || !(timing.exponent >= 0)) throw InvalidInput("bad timing model");
    const auto& angles = schedule.angles;
    const std::size_t K = schedule.pairs.size();

    if (const auto* tp = std::get_if<TripleProcess>(&source)) {
        for (const auto& p : schedule.pairs)
            if (p.left > 2 || p.right > 2) throw InvalidInput("triple process uses setting ids 0..2");
        const TripleSampler sampler(tp->table);
        std::vector<EventPair> out(M * K);
        for_each_shard(M, seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
            for (std::size_t a = begin; a < end; ++a) {
                const int k = sampler.draw(rng);
                const std::array<int, 3> Y{-sign_at(k, 3, 1), sign_at(k, 3, 2), sign_at(k, 3, 3)};
                const double t0 = static_cast<double>(a) * kEventPeriod;
                const double dl = timing.jitter * rng.uniform();
                const double dr = timing.jitter * rng.uniform();
                for (std::size_t q = 0; q < K; ++q) {
                    const auto& sp = schedule.pairs[q];
                    auto& ev = out[a * K + q];
                    ev.alpha = a;
                    ev.left = {-Y[std::size_t(sp.left)], t0 + dl, sp.left, angles[std::size_t(sp.left)]};
                    ev.right = {Y[std::size_t(sp.right)], t0 + dr, sp.right, angles[std::size_t(sp.right)]};
                }
            }
        });
        return RawDataset(std::move(out));
    }

    std::vector<EventPair> out(M);
    for_each_shard(M, seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        for (std::size_t a = begin; a < end; ++a) {
            const SettingPair sp = schedule.mode == Schedule::Mode::round_robin
                                       ? schedule.pairs[a % K]
                                       : schedule.pairs[rng.bits() % K];
            const double tl = angles[std::size_t(sp.left)], tr = angles[std::size_t(sp.right)];
            int sl = 1, sr = 1;
            double phi = 0;
            if (const auto* pp = std::get_if<PairProcess>(&source)) {
                const auto d = draw_pair(pp->model, tl, tr, rng);
                sl = d.s;
                sr = d.s_prime;
                phi = d.phi;
            } else {
                sl = rng.uniform() < 0.5 ? 1 : -1;
                const double p_anti = (1.0 + std::cos(tl - tr)) / 2.0;
                sr = rng.uniform() < p_anti ? -sl : sl;
                phi = 2.0 * std::numbers::pi * rng.uniform();
            }
            const double t0 = static_cast<double>(a) * kEventPeriod;
            auto& ev = out[a];
            ev.alpha = a;
            ev.left = {sl, t0 + delay(timing, rng, phi, tl), sp.left, tl};
            ev.right = {sr, t0 + delay(timing, rng, phi, tr), sp.right, tr};
        }
    });
    return RawDataset(std::move(out));
}

FilterResult coincidence_filter(const RawDataset& raw, const CoincidenceConfig& cfg) {
    cfg.validate();
    FilterResult r;
    std::vector<std::int8_t> values;
    const auto& pairs = raw.pairs();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& p = pairs[k];
        if (p.left.setting_id != cfg.left_setting || p.right.setting_id != cfg.right_setting) continue;
        ++r.setting_matched;
        if (!(std::abs(p.left.t - p.right.t) <= cfg.window)) continue;
        r.kept.push_back(k);
        values.push_back(std::int8_t(p.left.s));
        values.push_back(std::int8_t(p.right.s));
    }
    if (!values.empty()) r.data = DichotomicDataset(2, std::move(values));
    return r;
}

ThreeSettingReport run_three_settings(double a, double b, double c, const Source& source,
                                      const TimingModel& timing, std::size_t M, double W,
                                      std::uint64_t seed) {
    Schedule sched;
    sched.angles = {a, b, c};
    sched.pairs = {{0, 1}, {0, 2}, {1, 2}};
    const auto raw = generate_events(source, sched, M, timing, seed);

    ThreeSettingReport rep;
    rep.angles = {a, b, c};
    for (std::size_t q = 0; q < 3; ++q) {
        CoincidenceConfig cfg{W, sched.pairs[q].left, sched.pairs[q].right};
        const auto fr = coincidence_filter(raw, cfg);
        if (!fr.data)
            throw EmptySelection("no pairs retained for settings (" + std::to_string(cfg.left_setting) +
                                 "," + std::to_string(cfg.right_setting) + ")");
        rep.pair[q] = correlation(*fr.data, 1, 2);
        rep.retained[q] = fr.data->size();
    }
    const auto [f12, f13, f23] =
        anticorrelated_frame(rep.pair[0].value(), rep.pair[1].value(), rep.pair[2].value());
    rep.triple_frame = {f12, f13, f23};
    rep.boole = check_boole_triple(f12, f13, f23);
    rep.pair_bound = check_pair_bound(rep.pair[0].value(), rep.pair[1].value(), rep.pair[2].value());
    rep.verdict = rep.boole.all_satisfied() ? "consistent with a triples hypothesis"
                                            : "triples hypothesis rejected";
    return rep;
}

void write_event_log(std::ostream& out, const RawDataset& raw) {
    out << "alpha,station,s,t,setting_id,angle\n";
    char buf[160];
    for (const auto& p : raw.pairs()) {
        int station = 1;
        for (const auto* r : {&p.left, &p.right}) {
            std::snprintf(buf, sizeof buf, "%llu,%d,%d,%.17g,%d,%.17g\n",
                          static_cast<unsigned long long>(p.alpha), station++, r->s, r->t,
                          r->setting_id, r->angle);
            out << buf;
        }
    }
}

}  // namespace ebbi
