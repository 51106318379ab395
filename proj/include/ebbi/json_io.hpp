#pragma once

#include <json.hpp>

#include "ebbi/classical.hpp"
#include "ebbi/inequality.hpp"
#include "ebbi/nonneg.hpp"
#include "ebbi/pipeline.hpp"
#include "ebbi/quantum.hpp"

namespace ebbi {

using Json = nlohmann::ordered_json;

Json to_json(const InequalityReport& r);
Json to_json(const FuncTable2& f);  // keyed by sign patterns, e.g. "+-"
Json to_json(const FuncTable3& f);
Json to_json(const ExpansionCoeffs2& c);
Json to_json(const ExpansionCoeffs3& c);
Json to_json(const ProbabilityTable& t);
Json to_json(const Compatibility& c);
Json to_json(const SchwartzReport& r);
Json to_json(const CommutatorReport& r);
Json to_json(const SweepSummary& s);
Json to_json(const ThreeSettingReport& r);
Json to_json(const PairCorrelation& c);

}  // namespace ebbi
