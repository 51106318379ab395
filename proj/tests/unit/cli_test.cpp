#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ebbi/json_io.hpp"

using ebbi::Json;

namespace {

struct Out {
    int code;
    std::string out, err;
};

Out call(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = ebbi::cli::run(args, o, e);
    return {code, o.str(), e.str()};
}

Json call_json(std::vector<std::string> args) {
    auto r = call(std::move(args));
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
}

}  // namespace

TEST_CASE("help lists every scenario") {
    auto r = call({"--help"});
    CHECK(r.code == 0);
    for (const char* s : {"dataset", "ebbi", "theorem", "quantum", "leggett-garg", "extended-eprb", "allergy",
                          "factorizable", "epr-pipeline", "sweep"})
        CHECK(r.out.find(s) != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"nope"}).code == 2);
    CHECK(call({"ebbi", "check", "--e", "1", "0"}).code == 2);
    CHECK(call({"theorem", "3", "--e", "0.5", "0.5", "0.5", "0.4"}).code == 1);
    CHECK(call({"epr-pipeline", "--angles", "0", "60", "120", "--samples", "10"}).code == 1);
    CHECK(call({"--out", "/nonexistent/dir/x.json", "allergy"}).code == 3);
    CHECK(call({"quantum", "eprb", "--angles", "0", "60", "120", "--format", "xml"}).code == 2);
}

TEST_CASE("ebbi check reports clauses") {
    auto j = call_json({"ebbi", "check", "--e", "1", "-0.5", "0.5", "0.5"});
    CHECK(j["scenario"] == "ebbi");
    CHECK(j["reports"]["ebbi"]["all_satisfied"] == false);
    CHECK(j["violated_clauses"].size() >= 1);
    CHECK(j["violated_clauses"][0] == "|e12 - e13| <= e0 - e23");
}

TEST_CASE("theorem 4 reconstructs") {
    auto j = call_json({"theorem", "4", "--f", "0.25", "0.25", "0.25", "0.25", "--fhat", "0.5", "0", "0", "0.5",
                        "--ftilde", "0.25", "0.25", "0.25", "0.25"});
    CHECK(j["reconstructed"] == true);
    auto k = call_json({"theorem", "4", "--f", "0", "0.5", "0.5", "0", "--fhat", "0", "0.5", "0.5", "0",
                        "--ftilde", "0", "0.5", "0.5", "0"});
    CHECK(k["reconstructed"] == false);
    CHECK(k["compatibility"]["failures"].size() > 0);
}

TEST_CASE("quantum eprb in degrees and radians") {
    auto j = call_json({"quantum", "eprb", "--angles", "0", "60", "120"});
    CHECK(j["correlations"]["E"].get<double>() == doctest::Approx(-0.5));
    CHECK(j["reports"]["boole_anticorrelated"]["all_satisfied"] == false);
    CHECK(j["reports"]["boole_direct"]["all_satisfied"] == true);
    auto r = call_json({"quantum", "eprb", "--angles", "0", "1.0471975511965976", "2.0943951023931953",
                        "--radians"});
    CHECK(r["correlations"]["E_tilde"].get<double>() == doctest::Approx(-0.5));
}

TEST_CASE("dataset subcommand") {
    auto j = call_json({"dataset", "--csv", EBBI_TEST_DATA "/triples.csv"});
    CHECK(j["n"] == 3);
    CHECK(j["M"] == 4);
    CHECK(j["correlations"]["12"]["sum"] == 2);
    CHECK(j["reports"]["boole_triple"]["all_satisfied"] == true);
    CHECK(call({"dataset", "--csv", "/nonexistent.csv"}).code == 1);
}

TEST_CASE("formats and output file") {
    auto t = call({"allergy", "--variant", "pairs", "--format", "table"});
    CHECK(t.code == 0);
    CHECK(t.out.find("gamma: -3") != std::string::npos);
    auto c = call({"theorem", "3", "--e", "0.5", "0.5", "0.5", "1", "--format", "csv"});
    CHECK(c.out.rfind("report,family,description,lhs,rhs,satisfied,slack\n", 0) == 0);
    auto s = call({"factorizable", "--angles", "0", "30", "--samples", "5", "--seed", "1", "--format", "csv"});
    CHECK(s.out.rfind("phi,s1,s2\n", 0) == 0);

    const std::string path = "cli_test_out.json";
    CHECK(call({"--out", path, "allergy"}).code == 0);
    std::ifstream in(path);
    CHECK(Json::parse(in)["gamma"] == -1.0);
    std::remove(path.c_str());
}

TEST_CASE("randomized scenarios are reproducible") {
    std::vector<std::string> args{"epr-pipeline", "--source", "pair:opposite", "--angles", "0", "60", "120",
                                  "--samples", "3000", "--seed", "8", "--window", "0.5", "--jitter", "1",
                                  "--format", "csv"};
    auto a = call(args), b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = call_json({"--seed", "4", "leggett-garg", "--dt", "0.1", "0.2", "0.3", "--samples", "1000"});
    CHECK(j["seed"] == 4);
}

TEST_CASE("extended eprb with four settings") {
    auto j = call_json({"extended-eprb", "--angles", "0", "45", "90", "135"});
    CHECK(j["settings"] == 4);
    CHECK(j["reports"]["chsh"]["all_satisfied"] == true);
    CHECK(call({"extended-eprb", "--angles", "0", "45"}).code == 1);
}
