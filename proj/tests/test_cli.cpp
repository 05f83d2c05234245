#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "singmod/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = singmod::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classnum json output and determinism") {
    auto r1 = run({"classnum", "--delta", "-23"});
    REQUIRE(r1.code == 0);
    auto j = json::parse(r1.out);
    CHECK(j["h"] == "3");
    CHECK(j["d"] == "-23");
    CHECK(j["f"] == "1");
    auto r2 = run({"classnum", "--delta", "-23"});
    CHECK(r1.out == r2.out);  // byte-identical
}

TEST_CASE("forms: json arrays and csv") {
    auto r = run({"forms", "--delta", "-23"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["forms"].size() == 3);
    CHECK(j["forms"][0] == json::array({1, 1, 6}));
    auto c = run({"--format", "csv", "forms", "--delta", "-23"});
    CHECK(c.out == "a,b,c\n1,1,6\n2,-1,3\n2,1,3\n");
}

TEST_CASE("psi and denominators subcommands") {
    auto r = run({"psi", "--delta", "-3", "--ell", "2"});
    CHECK(json::parse(r.out)["psi"] == "3");
    auto s = run({"denominators", "--A", "13"});
    CHECK(json::parse(s.out)["S"] == "32");
    auto t = run({"denominators", "--delta", "-1000007", "--a", "2"});
    auto jt = json::parse(t.out);
    CHECK(jt["admits"] == true);
    CHECK(jt["multiplicity"] == "2");
}

TEST_CASE("isogeny subcommand") {
    auto r = run({"isogeny", "--qset", "12"});
    auto j = json::parse(r.out);
    CHECK(j["qset"] == json::array({"1/12", "1/3", "3/4", "4/3", "3", "12"}));
    auto p = run({"isogeny", "--delta", "-1007", "--z", "1,1", "--w", "1,2", "--n", "2"});
    CHECK(json::parse(p.out)["isogenous"] == true);
    auto d = run({"isogeny", "--x", "1,1,6", "--dx", "-23", "--y", "2,1,3", "--dy", "-23"});
    CHECK(json::parse(d.out)["constructive_degree"] == "2");
}

TEST_CASE("jeval certifies 1728 and prints coefficients") {
    auto r = run({"jeval", "--form", "1,0,1", "--delta", "-4", "--prec-bits", "128"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["certified_integer"] == "1728");
    auto c = run({"jeval", "--coeffs", "2"});
    auto j = json::parse(c.out);
    CHECK(j["coefficients"][0] == "1");
    CHECK(j["coefficients"][1] == "744");
    CHECK(j["coefficients"][2] == "196884");
}

TEST_CASE("masser-bound and check-hypothesis") {
    auto r = run({"masser-bound", "--k", "2", "--x", "100000000", "--ell", "1"});
    CHECK(json::parse(r.out)["bound"] == "20662426080000");
    auto h = run({"check-hypothesis", "--k", "6", "--x", "10000000000", "--y", "277777778", "--A", "162"});
    CHECK(json::parse(h.out)["verdict"] == "holds");
    auto h2 = run({"check-hypothesis", "--k", "2", "--x", "10000", "--y", "10000", "--A", "1000000"});
    CHECK(json::parse(h2.out)["verdict"] == "fails");
    auto e = run({"check-hypothesis", "--k", "6", "--x", "10000000000", "--core", "277777778", "--A",
                  "30", "--eps", "1/100"});
    CHECK(json::parse(e.out)["predicate"] == "eassumpdelta");
    CHECK(json::parse(e.out)["verdict"] == "holds");
}

TEST_CASE("solve-cases: pass by default, strict mode flags the nine singular systems") {
    auto r = run({"solve-cases", "--table", "all"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["strict_pass"] == false);
    CHECK(j["total_systems"] == 424);
    CHECK(j["table3_core_systems"] == 390);
    CHECK(j["totals_line"] == "390+8+2+6+6+9+3");
    CHECK(j["exceptions"].size() == 9);

    auto strict = run({"solve-cases", "--table", "all", "--strict"});
    CHECK(strict.code == 1);

    auto t4 = run({"solve-cases", "--table", "t4"});
    auto j4 = json::parse(t4.out);
    CHECK(j4["rows"].size() == 2);
    int systems = 0;
    for (const auto& row : j4["rows"]) systems += row["systems"].get<int>();
    CHECK(systems == 10);

    auto t2 = run({"solve-cases", "--table", "t2"});
    CHECK(json::parse(t2.out)["configurations"].size() == 8);
}

TEST_CASE("search-watkins formula stage") {
    auto r = run({"search-watkins", "--formula"});
    auto j = json::parse(r.out);
    CHECK(j["formula_bound"] == "28753200");
    CHECK(j["attained_at_f"] == "420");
}

TEST_CASE("search-watkins sieve with csv and checkpoint") {
    auto r = run({"--format", "csv", "search-watkins", "--bound", "4000", "--max-h", "1",
                  "--checkpoint", "/tmp/singmod_ck.txt"});
    REQUIRE(r.code == 0);
    // class number one discriminants up to 4000
    CHECK(r.out.find("-163,1") != std::string::npos);
    CHECK(r.out.find("-3763") == std::string::npos);
    std::ifstream ck("/tmp/singmod_ck.txt");
    std::string line;
    bool any = false;
    while (std::getline(ck, line)) {
        CHECK(line.find("done") != std::string::npos);
        any = true;
    }
    CHECK(any);
}

TEST_CASE("verify-relation exit codes") {
    auto ok = run({"verify-relation", "--values", "1728,-32768,-884736", "--exps", "10,6,-10"});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["verdict"] == "verified");
    auto bad = run({"verify-relation", "--values", "1728", "--exps", "1"});
    CHECK(bad.code == 1);
}

TEST_CASE("lattice-bruteforce") {
    auto r = run({"lattice-bruteforce", "--values", "1728,-32768,-884736", "--cap", "12"});
    auto j = json::parse(r.out);
    REQUIRE(j["basis"].size() == 1);
    CHECK(j["basis"][0] == json::array({"5", "3", "-5"}));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"classnum"}).code == 2);
    CHECK(run({"classnum", "--delta", "-5"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("global flags are accepted after the subcommand") {
    auto r = run({"search-watkins", "--bound", "20000", "--max-h", "1", "--threads", "2"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["max_abs_delta"] == "163");
    CHECK(j["count_qualifying"] == "13");  // the thirteen class-number-one discriminants
    auto c = run({"forms", "--delta", "-23", "--format", "csv"});
    CHECK(c.out.rfind("a,b,c\n", 0) == 0);
}

TEST_CASE("verify-constants exits 0 with all checks ok") {
    auto r = run({"verify-constants", "--prec-bits", "256"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["all_ok"] == true);
    CHECK(j["checks"].size() == 6);
}
