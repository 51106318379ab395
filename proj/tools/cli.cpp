#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "ebbi/classical.hpp"
#include "ebbi/dataset.hpp"
#include "ebbi/error.hpp"
#include "ebbi/json_io.hpp"
#include "ebbi/leggett_garg.hpp"
#include "ebbi/nonneg.hpp"
#include "ebbi/pipeline.hpp"
#include "ebbi/quantum.hpp"

namespace ebbi::cli {

namespace {

struct Globals {
    std::string format = "json";
    std::string out;
    std::optional<std::uint64_t> seed;
    bool radians = false;
};

struct Result {
    Json json;
    // Optional tabular payload used by --format csv instead of the clause table.
    std::function<void(std::ostream&)> csv;
};

double angle(double x, const Globals& g) { return g.radians ? x : x * std::numbers::pi / 180.0; }

std::uint64_t need_seed(const Globals& g) {
    if (!g.seed) throw InvalidInput("--seed is required for randomized scenarios");
    return *g.seed;
}

UnitVector3 direction(const std::vector<double>& v) {
    if (v.size() != 3) throw InvalidInput("directions take three components");
    return UnitVector3::normalized(Eigen::Vector3d(v[0], v[1], v[2]));
}

Json vec_json(const UnitVector3& u) { return Json::array({u.x(), u.y(), u.z()}); }

FuncTable2 table2(const std::vector<double>& v) {
    if (v.size() != 4) throw InvalidInput("two-variable tables take 4 values (++ +- -+ --)");
    FuncTable2 f;
    std::copy(v.begin(), v.end(), f.v.begin());
    return f;
}

FuncTable3 table3(const std::vector<double>& v) {
    if (v.size() != 8) throw InvalidInput("three-variable tables take 8 values (+++ ... ---)");
    FuncTable3 f;
    std::copy(v.begin(), v.end(), f.v.begin());
    return f;
}

std::string fmt_num(double x) {
    std::ostringstream s;
    s << std::setprecision(10) << x;
    return s.str();
}

bool is_report(const Json& j) {
    return j.is_object() && j.contains("family") && j.contains("clauses") && j.contains("all_satisfied");
}

std::string scalar_text(const Json& j) {
    if (j.is_number_float()) return fmt_num(j.get<double>());
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void render_table(std::ostream& os, const Json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (is_report(v)) {
            os << pad << it.key() << ": " << v["family"].get<std::string>()
               << (v["all_satisfied"].get<bool>() ? " (all satisfied)" : " (VIOLATED)") << '\n';
            for (const auto& c : v["clauses"]) {
                os << pad << "  " << (c["satisfied"].get<bool>() ? "ok   " : "FAIL ")
                   << std::left << std::setw(52) << c["description"].get<std::string>()
                   << " lhs=" << std::setw(14) << fmt_num(c["lhs"].get<double>())
                   << " rhs=" << std::setw(14) << fmt_num(c["rhs"].get<double>())
                   << " slack=" << fmt_num(c["slack"].get<double>()) << std::right << '\n';
            }
        } else if (v.is_object()) {
            os << pad << it.key() << ":\n";
            render_table(os, v, indent + 2);
        } else if (v.is_array() && !v.empty() && (v[0].is_object())) {
            os << pad << it.key() << ":\n";
            for (const auto& e : v) {
                os << pad << "  -\n";
                render_table(os, e, indent + 4);
            }
        } else if (v.is_array()) {
            os << pad << it.key() << ": [";
            for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << scalar_text(v[k]);
            os << "]\n";
        } else {
            os << pad << it.key() << ": " << scalar_text(v) << '\n';
        }
    }
}

void collect_reports(const Json& j, const std::string& path, std::vector<std::pair<std::string, Json>>& out) {
    if (is_report(j)) {
        out.emplace_back(path, j);
        return;
    }
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it)
            collect_reports(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    else if (j.is_array())
        for (std::size_t k = 0; k < j.size(); ++k)
            collect_reports(j[k], path + "[" + std::to_string(k) + "]", out);
}

void flatten(const Json& j, const std::string& path, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    } else if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], path + "[" + std::to_string(k) + "]", os);
    } else {
        os << path << ',' << scalar_text(j) << '\n';
    }
}

void render_csv(std::ostream& os, const Json& j) {
    std::vector<std::pair<std::string, Json>> reports;
    collect_reports(j, "", reports);
    if (reports.empty()) {
        os << "key,value\n";
        flatten(j, "", os);
        return;
    }
    os << "report,family,description,lhs,rhs,satisfied,slack\n";
    for (const auto& [name, r] : reports)
        for (const auto& c : r["clauses"])
            os << name << ',' << r["family"].get<std::string>() << ",\"" << c["description"].get<std::string>()
               << "\"," << fmt_num(c["lhs"].get<double>()) << ',' << fmt_num(c["rhs"].get<double>()) << ','
               << (c["satisfied"].get<bool>() ? "true" : "false") << ',' << fmt_num(c["slack"].get<double>())
               << '\n';
}

// ---- scenarios -------------------------------------------------------------

Result run_dataset(const std::string& path) {
    const auto ds = read_csv_file(path);
    Json corr = Json::object();
    const int n = ds.arity();
    std::vector<std::vector<double>> F(5, std::vector<double>(5, 0.0));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const auto c = correlation(ds, i, j);
            F[std::size_t(i)][std::size_t(j)] = c.value();
            corr[std::to_string(i) + std::to_string(j)] = to_json(c);
        }
    Json reports = Json::object();
    if (n == 3) {
        reports["boole_triple"] = to_json(check_boole_triple(F[1][2], F[1][3], F[2][3]));
        reports["pair_bound"] = to_json(check_pair_bound(F[1][2], F[1][3], F[2][3]));
    } else if (n == 4) {
        reports["chsh"] = to_json(check_chsh(F[1][3], F[2][3], F[1][4], F[2][4]));
    }
    return {{{"scenario", "dataset"},
             {"source", path},
             {"n", n},
             {"M", ds.size()},
             {"correlations", std::move(corr)},
             {"reports", std::move(reports)}},
            {}};
}

Result run_ebbi_check(const std::vector<double>& e) {
    const auto rep = ebbi_check(e[0], e[1], e[2], e[3]);
    Json j{{"scenario", "ebbi"},
           {"inputs", {{"e0", e[0]}, {"e12", e[1]}, {"e13", e[2]}, {"e23", e[3]}}},
           {"reports", {{"ebbi", to_json(rep)}}}};
    Json violated = Json::array();
    for (const auto& c : rep.clauses)
        if (!c.satisfied) violated.push_back(c.description);
    j["violated_clauses"] = std::move(violated);
    return {std::move(j), {}};
}

Result run_ebbi_construct(const std::vector<double>& a) {
    const auto g = construct_g3(a[0], a[1], a[2], a[3]);
    return {{{"scenario", "ebbi"},
             {"inputs", {{"a0", a[0]}, {"a12", a[1]}, {"a13", a[2]}, {"a23", a[3]}}},
             {"table", to_json(g)},
             {"coefficients", to_json(expand3(g))},
             {"reports", {{"ebbi", to_json(ebbi_check(a[0], a[1], a[2], a[3]))}}}},
            {}};
}

Result run_ebbi_expand(const std::vector<double>& v) {
    const auto f = table3(v);
    const auto c = expand3(f);
    return {{{"scenario", "ebbi"},
             {"table", to_json(f)},
             {"nonnegative", f.nonnegative()},
             {"coefficients", to_json(c)},
             {"reports", {{"ebbi", to_json(ebbi_check(c.e0, c.e12, c.e13, c.e23))}}}},
            {}};
}

Result run_theorem1(const std::vector<double>& c) {
    const ExpansionCoeffs2 k{c[0], c[1], c[2], c[3]};
    const auto f = synth2(k);
    return {{{"scenario", "theorem"},
             {"theorem", "I"},
             {"coefficients", to_json(k)},
             {"table", to_json(f)},
             {"nonnegative", f.nonnegative()},
             {"reports", {{"theorem1", to_json(theorem1_check(k))}}}},
            {}};
}

Result run_theorem3(const std::vector<double>& e) {
    return {{{"scenario", "theorem"},
             {"theorem", "III"},
             {"inputs", {{"e", e[0]}, {"e_hat", e[1]}, {"e_tilde", e[2]}, {"e0", e[3]}}},
             {"reports", {{"theorem3", to_json(theorem3_check(e[0], e[1], e[2], e[3]))}}}},
            {}};
}

Result run_theorem4(const std::vector<double>& f, const std::vector<double>& fh, const std::vector<double>& ft) {
    const auto r = reconstruct_f3(table2(f), table2(fh), table2(ft));
    Json j{{"scenario", "theorem"},
           {"theorem", "IV"},
           {"compatibility", to_json(r.diagnosis)},
           {"reconstructed", r.table.has_value()}};
    if (r.table) {
        j["table"] = to_json(*r.table);
        j["e123"] = r.e123;
        j["e123_interval"] = {r.e123_lo, r.e123_hi};
    }
    return {std::move(j), {}};
}

Result run_theorem_bell(const std::vector<double>& w, const std::vector<double>& ea,
                        const std::vector<double>& eb, const std::vector<double>& ec) {
    const LambdaModel m{w, ea, eb, ec};
    const auto [f, fh, ft] = bell_pair_tables(m);
    const auto g = bell_triple_table(m);
    const auto c = expand3(g);
    return {{{"scenario", "theorem"},
             {"theorem", "bell-lambda"},
             {"pair_tables", {{"f", to_json(f)}, {"f_hat", to_json(fh)}, {"f_tilde", to_json(ft)}}},
             {"triple_table", to_json(g)},
             {"compatibility", to_json(marginals_compatible(f, fh, ft))},
             {"reports", {{"ebbi", to_json(ebbi_check(c.e0, c.e12, c.e13, c.e23))}}}},
            {}};
}

Result run_quantum_eprb(const std::vector<double>& ang, const Globals& g) {
    const auto a = UnitVector3::from_xz_angle(angle(ang[0], g));
    const auto b = UnitVector3::from_xz_angle(angle(ang[1], g));
    const auto c = UnitVector3::from_xz_angle(angle(ang[2], g));
    const auto t = eprb_pair_tables(a, b, c);
    const double E = t[0].correlation(1, 2), Eh = t[1].correlation(1, 2), Et = t[2].correlation(1, 2);
    const auto [f12, f13, f23] = anticorrelated_frame(E, Eh, Et);
    const auto direct = marginals_compatible(t[0].to_func2(), t[1].to_func2(), t[2].to_func2());
    const auto relabeled =
        marginals_compatible(t[0].to_func2(), t[1].to_func2(), flip_first(t[2].to_func2()));
    return {{{"scenario", "quantum"},
             {"case", "eprb"},
             {"correlations", {{"E", E}, {"E_hat", Eh}, {"E_tilde", Et}}},
             {"tables", {{"ab", to_json(t[0])}, {"ac", to_json(t[1])}, {"bc", to_json(t[2])}}},
             {"compatibility_direct", to_json(direct)},
             {"compatibility_anticorrelated", to_json(relabeled)},
             {"reports",
              {{"boole_direct", to_json(check_boole_triple(E, Eh, Et))},
               {"boole_anticorrelated", to_json(check_boole_triple(f12, f13, f23))},
               {"pair_bound", to_json(check_pair_bound(E, Eh, Et))}}}},
            {}};
}

Result run_quantum_filter(const std::vector<double>& x, const std::vector<double>& av,
                          const std::vector<double>& bv, const std::vector<double>& cv) {
    if (x.size() != 3) throw InvalidInput("--bloch takes three components");
    const Eigen::Vector3d xb(x[0], x[1], x[2]);
    const auto rho = DensityMatrix::from_bloch(xb);
    const auto a = direction(av), b = direction(bv);
    Json j{{"scenario", "quantum"}, {"case", "filter"}};
    if (cv.empty()) {
        const auto p = filter_prob2(rho, a, b);
        const auto q = filter_prob2_closed(xb, a, b);
        double err = 0;
        for (std::size_t k = 0; k < 4; ++k) err = std::max(err, std::abs(p.p()[k] - q.p()[k]));
        j["table"] = to_json(p);
        j["closed_form_error"] = err;
    } else {
        const auto c = direction(cv);
        const auto p = filter_prob3(rho, a, b, c);
        const auto q = filter_prob3_closed(xb, a, b, c);
        double err = 0;
        for (std::size_t k = 0; k < 8; ++k) err = std::max(err, std::abs(p.p()[k] - q.p()[k]));
        const auto k3 = expand3(p.to_func3());
        j["table"] = to_json(p);
        j["closed_form_error"] = err;
        j["coefficients"] = to_json(k3);
        j["reports"] = {{"ebbi", to_json(ebbi_check(k3.e0, k3.e12, k3.e13, k3.e23))}};
    }
    return {std::move(j), {}};
}

Result run_quantum_schwartz(const std::vector<double>& av, const std::vector<double>& bv,
                            const std::vector<double>& cv) {
    return {{{"scenario", "quantum"},
             {"case", "schwartz"},
             {"schwartz", to_json(schwartz_bound(direction(av), direction(bv), direction(cv)))}},
            {}};
}

Result run_quantum_commutators(const std::vector<double>& av, const std::vector<double>& bv,
                               const std::vector<double>& cv) {
    return {{{"scenario", "quantum"},
             {"case", "commutators"},
             {"state", "singlet"},
             {"diagnostics",
              to_json(commutator_diagnostics(direction(av), direction(bv), direction(cv), singlet()))}},
            {}};
}

Result run_quantum_separable(const std::vector<double>& Av, const std::vector<double>& Bv,
                             const std::vector<double>& Cv, int K, const Globals& g) {
    if (K < 1 || K > 64) throw InvalidInput("--components must be in 1..64");
    const auto A = direction(Av), B = direction(Bv), C = direction(Cv);
    Rng rng(need_seed(g));
    std::vector<SeparableComponent> comps;
    std::vector<double> w(static_cast<std::size_t>(K));
    double total = 0;
    for (auto& x : w) total += (x = rng.uniform() + 1e-3);
    for (int k = 0; k < K; ++k) {
        Eigen::Vector3d x(2 * rng.uniform() - 1, 2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        if (x.norm() > 1) x /= x.norm();
        const auto rho = DensityMatrix::from_bloch(x);
        comps.push_back({w[std::size_t(k)] / total, rho, rho});
    }
    // Renormalize so the weights sum to 1 to the last bit.
    double s = 0;
    for (std::size_t k = 0; k + 1 < comps.size(); ++k) s += comps[k].weight;
    comps.back().weight = 1.0 - s;
    return {{{"scenario", "quantum"},
             {"case", "separable"},
             {"components", K},
             {"reports",
              {{"separable_mixture", to_json(separable_bound_check(comps, A, B, C))},
               {"singlet", to_json(separable_clauses(singlet(), A, B, C))}}}},
            {}};
}

Result run_leggett_garg(double omega, const std::vector<double>& dt, std::size_t samples, const Globals& g) {
    if (dt.size() != 3) throw InvalidInput("--dt takes three intervals");
    const LGParams p{omega, dt[0], dt[1], dt[2]};
    p.validate();
    const auto [k12, k13, k23] = lg_triple_correlations(p);
    const auto [s12, s13, s23] = lg_triple_correlations_from_state(evolve_triple(p));
    const auto [e, eh, et] = lg_pair_correlations(p);
    Json j{{"scenario", "leggett-garg"},
           {"params", {{"omega", omega}, {"dt", dt}}},
           {"closed_form", {{"E12", k12}, {"E13", k13}, {"E23", k23}}},
           {"from_state", {{"E12", s12}, {"E13", s13}, {"E23", s23}}},
           {"pair_formulas", {{"E", e}, {"E_hat", eh}, {"E_tilde", et}}}};
    Json reports{{"triple", to_json(lg_inequality_check(k12, k13, k23))},
                 {"pairs_substituted", to_json(lg_inequality_check(e, eh, et))}};
    std::function<void(std::ostream&)> csv;
    if (samples > 0) {
        const auto ds = sample_triples(p, samples, need_seed(g));
        const auto c12 = correlation(ds, 1, 2), c13 = correlation(ds, 1, 3), c23 = correlation(ds, 2, 3);
        j["samples"] = samples;
        j["seed"] = *g.seed;
        j["empirical"] = {{"E12", c12.value()}, {"E13", c13.value()}, {"E23", c23.value()}};
        reports["empirical_boole"] = to_json(check_boole_triple(c12.value(), c13.value(), c23.value()));
        csv = [ds](std::ostream& os) { write_csv(os, ds); };
    }
    j["reports"] = std::move(reports);
    return {std::move(j), std::move(csv)};
}

Result run_extended_eprb(const std::vector<double>& ang, const Globals& g) {
    if (ang.size() == 3) {
        const double ta = angle(ang[0], g), tb = angle(ang[1], g), tc = angle(ang[2], g);
        const auto r = extended_eprb_prob3(ta, tb, tc);
        const auto chain = extended_eprb_prob3_chain(UnitVector3::from_xz_angle(ta),
                                                     UnitVector3::from_xz_angle(tb),
                                                     UnitVector3::from_xz_angle(tc));
        double err = 0;
        for (std::size_t k = 0; k < 8; ++k) err = std::max(err, std::abs(r.table.p()[k] - chain.p()[k]));
        return {{{"scenario", "extended-eprb"},
                 {"settings", 3},
                 {"table", to_json(r.table)},
                 {"coefficients", to_json(r.coeffs)},
                 {"amplitude_norm", r.norm},
                 {"chain_difference", err},
                 {"reports", {{"ebbi", to_json(ebbi_check(r.coeffs.e0, r.coeffs.e12, r.coeffs.e13, r.coeffs.e23))}}}},
                {}};
    }
    if (ang.size() == 4) {
        const auto a = UnitVector3::from_xz_angle(angle(ang[0], g));
        const auto b = UnitVector3::from_xz_angle(angle(ang[1], g));
        const auto c = UnitVector3::from_xz_angle(angle(ang[2], g));
        const auto d = UnitVector3::from_xz_angle(angle(ang[3], g));
        const auto r = extended_eprb_prob4(a, b, c, d);
        const auto& e = r.corr;
        return {{{"scenario", "extended-eprb"},
                 {"settings", 4},
                 {"table", to_json(r.table)},
                 {"correlations",
                  {{"E12", e.e12}, {"E13", e.e13}, {"E14", e.e14}, {"E23", e.e23}, {"E24", e.e24}, {"E34", e.e34}}},
                 {"chsh_combination", e.e12 - e.e13 + e.e24 + e.e34},
                 // {1,4} against {2,3}: the combination is one of the column-negation variants.
                 {"reports", {{"chsh", to_json(check_chsh(e.e12, e.e24, e.e13, e.e34))}}}},
                {}};
    }
    throw InvalidInput("--angles takes three or four values");
}

Result run_allergy(const std::string& variant, long days, const std::string& schedule, const Globals& g) {
    DaySchedule sched;
    if (schedule == "random") {
        sched.kind = DaySchedule::Kind::random;
        sched.seed = need_seed(g);
    } else if (schedule != "alternating") {
        throw InvalidInput("--schedule must be alternating or random");
    }
    Json j{{"scenario", "allergy"}, {"variant", variant}, {"days", days}, {"schedule", schedule}};
    if (variant == "triples") {
        j["gamma"] = allergy_gamma_triples(days, {}, sched);
        j["bound"] = -1;
    } else if (variant == "pairs") {
        j["gamma"] = allergy_gamma_pairs(days, {}, sched);
        j["bound"] = -1;
    } else if (variant == "single") {
        Json avg = Json::object();
        for (const char* o : {"a", "b", "c"})
            for (int l = 1; l <= 3; ++l)
                avg[std::string(o) + std::to_string(l)] =
                    allergy_single_average(parse_birthplace(o), l, days, {}, sched);
        j["averages"] = std::move(avg);
    } else {
        throw InvalidInput("--variant must be triples, pairs or single");
    }
    if (j.contains("gamma")) j["bound_holds"] = j["gamma"].get<double>() >= -1.0;
    return {std::move(j), {}};
}

Result run_factorizable(const std::string& mu, const std::vector<double>& ang, std::size_t samples,
                        int search_steps, const Globals& g) {
    const FactorizableModel m{parse_mu_kind(mu)};
    std::vector<double> rad;
    for (double x : ang) rad.push_back(angle(x, g));
    Json j{{"scenario", "factorizable"}, {"mu", mu_kind_name(m.mu_kind)}, {"angles_rad", rad}};
    std::function<void(std::ostream&)> csv;
    if (rad.size() == 2) {
        j["analytic"] = analytic_correlation(m, rad[0], rad[1]);
        if (samples > 0) {
            const auto draws = sample_pair_draws(m, rad[0], rad[1], need_seed(g), samples);
            std::int64_t sum = 0, plus = 0;
            for (const auto& d : draws) {
                sum += d.s * d.s_prime;
                plus += d.s > 0;
            }
            const double E = double(sum) / double(samples);
            j["samples"] = samples;
            j["seed"] = *g.seed;
            j["empirical"] = E;
            j["sigma"] = std::sqrt(std::max(0.0, 1 - E * E) / double(samples));
            j["station1_plus_frequency"] = double(plus) / double(samples);
            csv = [draws](std::ostream& os) {
                os << "phi,s1,s2\n";
                char buf[64];
                for (const auto& d : draws) {
                    std::snprintf(buf, sizeof buf, "%.17g,%d,%d\n", d.phi, d.s, d.s_prime);
                    os << buf;
                }
            };
        }
    } else if (rad.size() == 3) {
        const double Eab = analytic_correlation(m, rad[0], rad[1]);
        const double Eac = analytic_correlation(m, rad[0], rad[2]);
        const double Ebc = analytic_correlation(m, rad[1], rad[2]);
        const auto [f12, f13, f23] = anticorrelated_frame(Eab, Eac, Ebc);
        j["correlations"] = {{"E_ab", Eab}, {"E_ac", Eac}, {"E_bc", Ebc}};
        j["reports"] = {{"boole_direct", to_json(check_boole_triple(Eab, Eac, Ebc))},
                        {"boole_anticorrelated", to_json(check_boole_triple(f12, f13, f23))}};
        const auto s = factorizability_search(m, rad[0], rad[1], rad[2], search_steps);
        j["factorizability_search"] = {{"heuristic", true},
                                       {"grid_steps", search_steps},
                                       {"candidates", s.candidates},
                                       {"closest", s.best},
                                       {"linf_distance", s.distance}};
    } else {
        throw InvalidInput("--angles takes two or three values");
    }
    return {std::move(j), std::move(csv)};
}

Result run_pipeline(const std::string& source_s, const std::vector<double>& ang, double window,
                    std::size_t samples, double jitter, double exponent, const std::vector<double>& tbl,
                    const Globals& g) {
    if (ang.size() != 3) throw InvalidInput("--angles takes three values");
    const double a = angle(ang[0], g), b = angle(ang[1], g), c = angle(ang[2], g);
    Source src;
    if (source_s == "triple") {
        // Default triple table: the extended single-pair experiment at the same settings.
        src = TripleProcess{tbl.empty() ? extended_eprb_prob3(a, b, c).table.to_func3() : table3(tbl)};
    } else if (source_s == "singlet") {
        src = SingletSampler{};
    } else if (source_s.rfind("pair:", 0) == 0) {
        src = PairProcess{FactorizableModel{parse_mu_kind(source_s.substr(5))}};
    } else {
        throw InvalidInput("--source must be triple, singlet or pair:MU");
    }
    if (samples == 0) throw InvalidInput("--samples must be positive");
    const std::uint64_t seed = need_seed(g);
    const TimingModel tm{jitter, exponent};
    const auto rep = run_three_settings(a, b, c, src, tm, samples, window, seed);
    Json j{{"scenario", "epr-pipeline"},
           {"source", source_s},
           {"window", std::isinf(window) ? Json("inf") : Json(window)},
           {"samples", samples},
           {"seed", seed},
           {"timing", {{"jitter", jitter}, {"exponent", exponent}}},
           {"result", to_json(rep)},
           {"reports", {{"boole_triple", to_json(rep.boole)}, {"pair_bound", to_json(rep.pair_bound)}}}};
    std::function<void(std::ostream&)> csv = [=](std::ostream& os) {
        Schedule sched;
        sched.angles = {a, b, c};
        sched.pairs = {{0, 1}, {0, 2}, {1, 2}};
        write_event_log(os, generate_events(src, sched, samples, tm, seed));
    };
    return {std::move(j), std::move(csv)};
}

std::vector<double> angle_grid(double step, double max, const Globals& g) {
    if (!(step > 0)) throw InvalidInput("--step must be positive");
    std::vector<double> grid;
    for (int k = 0; k * step <= max + 1e-9; ++k) grid.push_back(angle(k * step, g));
    return grid;
}

Result run_sweep(const std::string& target, const std::string& mu, double step, double max, const Globals& g) {
    Json j{{"scenario", "sweep"}, {"target", target}};
    if (target == "factorizable") {
        const auto grid = angle_grid(step, max, g);
        const FactorizableModel m{parse_mu_kind(mu)};
        j["mu"] = mu_kind_name(m.mu_kind);
        j["grid_points"] = grid.size();
        j["summary"] = to_json(model_inequality_sweep(m, grid));
    } else if (target == "leggett-garg") {
        // Grid over omega*dt2 and omega*dt3 in [0, max] with `step` divisions count.
        const int n = static_cast<int>(std::lround(step));
        if (n < 2) throw InvalidInput("leggett-garg sweep: --step is the number of grid points (>= 2)");
        const double span = angle(max, g);
        std::size_t triple_viol = 0, pair_viol = 0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const LGParams p{1.0, 0.0, span * i / (n - 1), span * k / (n - 1)};
                const auto [a, b, c] = lg_triple_correlations(p);
                const auto [x, y, z] = lg_pair_correlations(p);
                triple_viol += !lg_inequality_check(a, b, c).all_satisfied();
                pair_viol += !lg_inequality_check(x, y, z).all_satisfied();
            }
        j["grid_points"] = n * n;
        j["triple_violations"] = triple_viol;
        j["pair_formula_violations"] = pair_viol;
    } else if (target == "extended-eprb") {
        const auto grid = angle_grid(step, max, g);
        std::size_t points = 0, ebbi_fail = 0, chsh_fail = 0;
        double worst_chsh = 0;
        for (double ta : grid)
            for (double tb : grid)
                for (double tc : grid) {
                    const auto r = extended_eprb_prob3(ta, tb, tc);
                    ++points;
                    ebbi_fail += !ebbi_check(r.coeffs.e0, r.coeffs.e12, r.coeffs.e13, r.coeffs.e23).all_satisfied();
                }
        for (double ta : grid)
            for (double tb : grid)
                for (double tc : grid)
                    for (double td : grid) {
                        const auto e = extended_eprb_prob4_closed(
                            UnitVector3::from_xz_angle(ta), UnitVector3::from_xz_angle(tb),
                            UnitVector3::from_xz_angle(tc), UnitVector3::from_xz_angle(td));
                        const double v = std::abs(e.e12 - e.e13 + e.e24 + e.e34);
                        worst_chsh = std::max(worst_chsh, v);
                        chsh_fail += v > 2 + kTol;
                    }
        j["triple_points"] = points;
        j["ebbi_violations"] = ebbi_fail;
        j["chsh_violations"] = chsh_fail;
        j["max_chsh_combination"] = worst_chsh;
    } else {
        throw InvalidInput("--target must be factorizable, leggett-garg or extended-eprb");
    }
    return {std::move(j), {}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification laboratory for Boole, Bell and extended Boole-Bell inequalities"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--out", g.out, "write output to this file instead of stdout");
    app.add_option("--seed", g.seed, "64-bit seed (required by randomized scenarios)");
    app.add_flag("--radians", g.radians, "angles are given in radians instead of degrees");

    std::function<Result()> action;
    auto sub = [&](CLI::App* parent, const char* name, const char* help) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    // dataset
    std::string csv_path;
    auto* ds = sub(&app, "dataset", "correlations and Boole/CHSH checks for a CSV dataset (s1..sn)");
    ds->add_option("--csv", csv_path, "dataset file")->required();
    ds->callback([&] { action = [&] { return run_dataset(csv_path); }; });

    // ebbi
    std::vector<double> ebbi_e, ebbi_a, ebbi_table;
    auto* eb = sub(&app, "ebbi", "extended Boole-Bell inequalities for three-variable functions");
    eb->require_subcommand(1);
    auto* ebc = sub(eb, "check", "check e0, e12, e13, e23");
    ebc->add_option("--e", ebbi_e, "e0 e12 e13 e23")->expected(4)->required();
    ebc->callback([&] { action = [&] { return run_ebbi_check(ebbi_e); }; });
    auto* ebk = sub(eb, "construct", "non-negative table from admissible a0, a12, a13, a23");
    ebk->add_option("--a", ebbi_a, "a0 a12 a13 a23")->expected(4)->required();
    ebk->callback([&] { action = [&] { return run_ebbi_construct(ebbi_a); }; });
    auto* ebx = sub(eb, "expand", "expansion coefficients of an 8-entry table");
    ebx->add_option("--table", ebbi_table, "values for +++ ++- +-+ +-- -++ -+- --+ ---")->expected(8)->required();
    ebx->callback([&] { action = [&] { return run_ebbi_expand(ebbi_table); }; });

    // theorem
    std::vector<double> th_c, th_e, th_f, th_fh, th_ft, th_w, th_ea, th_eb, th_ec;
    auto* th = sub(&app, "theorem", "theorems on non-negative functions of dichotomic variables");
    th->require_subcommand(1);
    auto* t1 = sub(th, "1", "two-variable non-negativity criterion");
    t1->add_option("--coeffs", th_c, "e0 e1 e2 e12")->expected(4)->required();
    t1->callback([&] { action = [&] { return run_theorem1(th_c); }; });
    auto* t3 = sub(th, "3", "bound for three independent two-variable functions");
    t3->add_option("--e", th_e, "e e_hat e_tilde e0")->expected(4)->required();
    t3->callback([&] { action = [&] { return run_theorem3(th_e); }; });
    auto* t4 = sub(th, "4", "marginal compatibility and joint reconstruction");
    t4->add_option("--f", th_f, "f(S1,S2): ++ +- -+ --")->expected(4)->required();
    t4->add_option("--fhat", th_fh, "f^(S1,S3)")->expected(4)->required();
    t4->add_option("--ftilde", th_ft, "f~(S2,S3)")->expected(4)->required();
    t4->callback([&] { action = [&] { return run_theorem4(th_f, th_fh, th_ft); }; });
    auto* tb = sub(th, "bell", "discrete lambda model: pair tables, triple table, compatibility");
    tb->add_option("--weights", th_w)->required();
    tb->add_option("--ea", th_ea)->required();
    tb->add_option("--eb", th_eb)->required();
    tb->add_option("--ec", th_ec)->required();
    tb->callback([&] { action = [&] { return run_theorem_bell(th_w, th_ea, th_eb, th_ec); }; });

    // quantum
    std::vector<double> q_angles, q_bloch, q_a, q_b, q_c;
    int q_components = 4;
    auto* qu = sub(&app, "quantum", "spin-1/2 models: singlet pairs, filtering, bounds, commutators");
    qu->require_subcommand(1);
    auto* qe = sub(qu, "eprb", "singlet pair tables at three coplanar settings");
    qe->add_option("--angles", q_angles, "A B C")->expected(3)->required();
    qe->callback([&] { action = [&] { return run_quantum_eprb(q_angles, g); }; });
    auto* qf = sub(qu, "filter", "sequential filtering of one spin");
    qf->add_option("--bloch", q_bloch, "x y z")->expected(3)->required();
    qf->add_option("--a", q_a)->expected(3)->required();
    qf->add_option("--b", q_b)->expected(3)->required();
    qf->add_option("--c", q_c)->expected(3);
    qf->callback([&] { action = [&] { return run_quantum_filter(q_bloch, q_a, q_b, q_c); }; });
    auto* qs = sub(qu, "schwartz", "singlet bound |E ± E^|^2 <= 2(1 ± b.c)");
    qs->add_option("--a", q_a)->expected(3)->required();
    qs->add_option("--b", q_b)->expected(3)->required();
    qs->add_option("--c", q_c)->expected(3)->required();
    qs->callback([&] { action = [&] { return run_quantum_schwartz(q_a, q_b, q_c); }; });
    auto* qc = sub(qu, "commutators", "commutator norms and uncertainty products for the singlet");
    qc->add_option("--a", q_a)->expected(3)->required();
    qc->add_option("--b", q_b)->expected(3)->required();
    qc->add_option("--c", q_c)->expected(3)->required();
    qc->callback([&] { action = [&] { return run_quantum_commutators(q_a, q_b, q_c); }; });
    auto* qp = sub(qu, "separable", "random separable mixture versus the singlet");
    qp->add_option("--A", q_a)->expected(3)->required();
    qp->add_option("--B", q_b)->expected(3)->required();
    qp->add_option("--C", q_c)->expected(3)->required();
    qp->add_option("--components", q_components);
    qp->callback([&] { action = [&] { return run_quantum_separable(q_a, q_b, q_c, q_components, g); }; });

    // leggett-garg
    double lg_omega = 1.0;
    std::vector<double> lg_dt;
    std::size_t lg_samples = 0;
    auto* lg = sub(&app, "leggett-garg", "flux qubit probed by three spins: triple versus pair correlations");
    lg->add_option("--omega", lg_omega);
    lg->add_option("--dt", lg_dt, "dt1 dt2 dt3 (time units)")->expected(3)->required();
    lg->add_option("--samples", lg_samples, "Monte Carlo triples (0 = none)");
    lg->callback([&] { action = [&] { return run_leggett_garg(lg_omega, lg_dt, lg_samples, g); }; });

    // extended-eprb
    std::vector<double> x_angles;
    auto* xe = sub(&app, "extended-eprb", "extended singlet experiments with three or four settings");
    xe->add_option("--angles", x_angles, "A B C [D]")->required();
    xe->callback([&] { action = [&] { return run_extended_eprb(x_angles, g); }; });

    // allergy
    std::string al_variant = "triples", al_schedule = "alternating";
    long al_days = 1000;
    auto* al = sub(&app, "allergy", "allergy-test counterexample: triples versus pairs");
    al->add_option("--variant", al_variant, "triples | pairs | single");
    al->add_option("--days", al_days);
    al->add_option("--schedule", al_schedule, "alternating | random");
    al->callback([&] { action = [&] { return run_allergy(al_variant, al_days, al_schedule, g); }; });

    // factorizable
    std::string fz_mu = "uniform";
    std::vector<double> fz_angles;
    std::size_t fz_samples = 0;
    int fz_steps = 12;
    auto* fz = sub(&app, "factorizable", "threshold hidden-variable model: analytic and Monte Carlo");
    fz->add_option("--mu", fz_mu, "uniform | equal | opposite");
    fz->add_option("--angles", fz_angles, "A B [C]")->required();
    fz->add_option("--samples", fz_samples);
    fz->add_option("--search-steps", fz_steps, "simplex divisions for the mixture search");
    fz->callback([&] { action = [&] { return run_factorizable(fz_mu, fz_angles, fz_samples, fz_steps, g); }; });

    // epr-pipeline
    std::string pl_source = "singlet";
    std::vector<double> pl_angles, pl_table;
    std::string pl_window = "inf";
    std::size_t pl_samples = 0;
    double pl_jitter = 0, pl_exponent = 0;
    auto* pl = sub(&app, "epr-pipeline", "time-tagged events, coincidence window, three-setting analysis");
    pl->add_option("--source", pl_source, "triple | singlet | pair:MU");
    pl->add_option("--angles", pl_angles, "A B C")->expected(3)->required();
    pl->add_option("--window", pl_window, "coincidence window or inf");
    pl->add_option("--samples", pl_samples)->required();
    pl->add_option("--jitter", pl_jitter);
    pl->add_option("--exponent", pl_exponent);
    pl->add_option("--table", pl_table, "triple table for --source triple")->expected(8);
    pl->callback([&] {
        action = [&] {
            double w = 0;
            if (pl_window == "inf") {
                w = std::numeric_limits<double>::infinity();
            } else {
                try {
                    w = std::stod(pl_window);
                } catch (const std::exception&) {
                    throw InvalidInput("--window must be a number or inf");
                }
            }
            return run_pipeline(pl_source, pl_angles, w, pl_samples, pl_jitter, pl_exponent, pl_table, g);
        };
    });

    // sweep
    std::string sw_target = "factorizable", sw_mu = "opposite";
    double sw_step = 20, sw_max = 720;
    auto* sw = sub(&app, "sweep", "grid sweeps of inequality families");
    sw->add_option("--target", sw_target, "factorizable | leggett-garg | extended-eprb");
    sw->add_option("--mu", sw_mu);
    sw->add_option("--step", sw_step, "grid step (angle), or grid size for leggett-garg");
    sw->add_option("--max", sw_max, "largest grid angle");
    sw->callback([&] { action = [&] { return run_sweep(sw_target, sw_mu, sw_step, sw_max, g); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Result res;
    try {
        res = action();
    } catch (const EmptySelection& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    std::ofstream file;
    if (!g.out.empty()) {
        file.open(g.out);
        if (!file) {
            err << "error: cannot write " << g.out << '\n';
            return 3;
        }
    }
    std::ostream& os = g.out.empty() ? out : file;
    if (g.format == "json") {
        os << res.json.dump(2) << '\n';
    } else if (g.format == "table") {
        render_table(os, res.json, 0);
    } else if (res.csv) {
        res.csv(os);
    } else {
        render_csv(os, res.json);
    }
    os.flush();
    if (!os) {
        err << "error: failed writing output\n";
        return 3;
    }
    return 0;
}

}  // namespace ebbi::cli
