#include "ebbi/json_io.hpp"

namespace ebbi {

namespace {

template <std::size_t N>
Json table_json(const std::array<double, N>& v, int n) {
    Json j = Json::object();
    for (std::size_t k = 0; k < N; ++k) j[sign_label(int(k), n)] = v[k];
    return j;
}

Json witness_json(const std::optional<SweepWitness>& w) {
    if (!w) return nullptr;
    return {{"angles", w->angles}, {"clause", w->clause}, {"lhs", w->lhs}, {"rhs", w->rhs},
            {"slack", w->rhs - w->lhs}};
}

}  // namespace

Json to_json(const InequalityReport& r) {
    Json clauses = Json::array();
    for (const auto& c : r.clauses)
        clauses.push_back({{"description", c.description},
                           {"lhs", c.lhs},
                           {"rhs", c.rhs},
                           {"satisfied", c.satisfied},
                           {"slack", c.slack}});
    return {{"family", std::string(family_name(r.family))},
            {"clauses", std::move(clauses)},
            {"all_satisfied", r.all_satisfied()}};
}

Json to_json(const FuncTable2& f) { return table_json(f.v, 2); }
Json to_json(const FuncTable3& f) { return table_json(f.v, 3); }

Json to_json(const ExpansionCoeffs2& c) {
    return {{"e0", c.e0}, {"e1", c.e1}, {"e2", c.e2}, {"e12", c.e12}};
}

Json to_json(const ExpansionCoeffs3& c) {
    return {{"e0", c.e0},   {"e1", c.e1},   {"e2", c.e2},   {"e3", c.e3},
            {"e12", c.e12}, {"e13", c.e13}, {"e23", c.e23}, {"e123", c.e123}};
}

Json to_json(const ProbabilityTable& t) {
    Json j = Json::object();
    for (std::size_t k = 0; k < t.p().size(); ++k) j[sign_label(int(k), t.arity())] = t.p()[k];
    return j;
}

Json to_json(const Compatibility& c) {
    return {{"compatible", c.compatible}, {"failures", c.failures}};
}

Json to_json(const SchwartzReport& r) {
    auto side = [](const SchwartzSide& s) {
        return Json{{"lhs", s.lhs}, {"rhs", s.rhs}, {"cos2", s.cos2}, {"holds", s.holds},
                    {"equality", s.equality}};
    };
    return {{"E", r.E},
            {"E_hat", r.Ehat},
            {"E_tilde", r.Etilde},
            {"plus", side(r.plus)},
            {"minus", side(r.minus)},
            {"cos2_sum", r.cos2_sum},
            {"a_in_span", r.a_in_span},
            {"combined_equality", r.combined_equality}};
}

Json to_json(const CommutatorReport& r) {
    static const char* names[] = {"[X_ab, X_ac]", "[X_ab, X_bc]", "[X_ac, X_bc]"};
    Json comm = Json::array(), unc = Json::array();
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& c = r.commutators[k];
        comm.push_back({{"pair", names[k]},
                        {"max_entry_norm", c.max_entry_norm},
                        {"spectral_norm", c.spectral_norm},
                        {"closed_form_error", c.closed_form_error}});
        const auto& u = r.uncertainty[k];
        unc.push_back({{"pair", names[k]},
                       {"lhs", u.lhs},
                       {"rhs", u.rhs},
                       {"rhs_closed", u.rhs_closed},
                       {"holds", u.holds}});
    }
    return {{"commutators", std::move(comm)}, {"uncertainty", std::move(unc)}};
}

Json to_json(const SweepSummary& s) {
    return {{"bell_checked", s.bell_checked},   {"bell_violations", s.bell_violations},
            {"worst_bell", witness_json(s.worst_bell)}, {"chsh_checked", s.chsh_checked},
            {"chsh_violations", s.chsh_violations}, {"worst_chsh", witness_json(s.worst_chsh)}};
}

Json to_json(const PairCorrelation& c) {
    return {{"value", c.value()}, {"sum", c.sum}, {"count", c.count}};
}

Json to_json(const ThreeSettingReport& r) {
    static const char* names[] = {"ab", "ac", "bc"};
    Json pairs = Json::object();
    for (std::size_t q = 0; q < 3; ++q) {
        auto j = to_json(r.pair[q]);
        j["retained"] = r.retained[q];
        pairs[names[q]] = std::move(j);
    }
    return {{"angles", r.angles},
            {"pairs", std::move(pairs)},
            {"triple_frame", r.triple_frame},
            {"boole_triple", to_json(r.boole)},
            {"pair_bound", to_json(r.pair_bound)},
            {"verdict", r.verdict}};
}

}  // namespace ebbi
