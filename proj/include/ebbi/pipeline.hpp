#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ebbi/classical.hpp"
#include "ebbi/dataset.hpp"
#include "ebbi/inequality.hpp"
#include "ebbi/nonneg.hpp"

namespace ebbi {

struct EventRecord {
    int s = 1;
    double t = 0;
    int setting_id = 0;
    double angle = 0;  // xz-plane angle of the setting, radians
};

struct EventPair {
    std::uint64_t alpha = 0;  // emission index
    EventRecord left, right;
};

class RawDataset {
public:
    explicit RawDataset(std::vector<EventPair> pairs);

    const std::vector<EventPair>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }

private:
    std::vector<EventPair> pairs_;
};

struct CoincidenceConfig {
    double window = std::numeric_limits<double>::infinity();
    int left_setting = 0;
    int right_setting = 1;

    void validate() const;
};

// Triples (S1,S2,S3) = (station 1 at setting 0, station 2 at setting 1,
// station 2 at setting 2) drawn from a normalized table. Station 2 at
// setting k reports Y_k with Y = (-S1, S2, S3); station 1 reports -Y_k.
struct TripleProcess {
    FuncTable3 table;
};

struct PairProcess {
    FactorizableModel model;
};

// Singlet statistics P(S1,S2) = (1 - S1 S2 cos(t1 - t2))/4 for coplanar settings.
struct SingletSampler {};

using Source = std::variant<TripleProcess, PairProcess, SingletSampler>;

struct SettingPair {
    int left = 0;
    int right = 1;
};

struct Schedule {
    std::vector<double> angles;  // indexed by setting id
    std::vector<SettingPair> pairs;
    enum class Mode { round_robin, random } mode = Mode::round_robin;
};

// delay = jitter * u * |sin(phi - angle)|^exponent, u ~ U[0,1). The
// triple process has no hidden orientation and uses jitter * u.
struct TimingModel {
    double jitter = 0;
    double exponent = 0;
};

inline constexpr double kEventPeriod = 1.0;

// Triple process: M counts triples and every triple yields one pair record
// per scheduled setting pair, all sharing the triple's station delays.
// Other sources: M pair records with settings from the schedule.
RawDataset generate_events(const Source& source, const Schedule& schedule, std::size_t M,
                           const TimingModel& timing, std::uint64_t seed);

struct FilterResult {
    std::optional<DichotomicDataset> data;  // empty when nothing is retained
    std::size_t setting_matched = 0;
    std::vector<std::size_t> kept;  // positions in the raw dataset
};

FilterResult coincidence_filter(const RawDataset& raw, const CoincidenceConfig& cfg);

struct ThreeSettingReport {
    std::array<double, 3> angles{};
    std::array<PairCorrelation, 3> pair;  // (a,b), (a,c), (b,c)
    std::array<std::size_t, 3> retained{};
    std::array<double, 3> triple_frame{};  // (F_ab, F_ac, -F_bc)
    InequalityReport boole;
    InequalityReport pair_bound;
    std::string verdict;
};

// Throws EmptySelection if a setting pair keeps no records.
ThreeSettingReport run_three_settings(double a, double b, double c, const Source& source,
                                      const TimingModel& timing, std::size_t M, double W,
                                      std::uint64_t seed);

void write_event_log(std::ostream& out, const RawDataset& raw);

}  // namespace ebbi
