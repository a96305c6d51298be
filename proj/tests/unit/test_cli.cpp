#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "occ/cli.hpp"
#include "occ/reports.hpp"
#include "occ/spec_json.hpp"

using namespace occ;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result occ_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("help text matches the golden file") {
    auto golden = read_file(OCC_GOLDEN_DIR "/help.txt");
    REQUIRE_FALSE(golden.empty());
    CHECK(cli::help_text() == golden);
    auto r = occ_run({"--help-all"});
    CHECK(r.code == 0);
    CHECK(r.out == golden);
    for (const char* flag : {"--family", "--N", "--spec-file", "--level", "--horizon", "--window", "--cutoff", "--format",
                             "--out", "--seed", "--jobs", "--against-reverse", "--direction", "--length"})
        CHECK(golden.find(flag) != std::string::npos);
    CHECK(occ_run({"report", "--help"}).out.find("--against-reverse") == std::string::npos);
    CHECK(occ_run({"compare", "--help"}).out.find("--against-reverse") != std::string::npos);
}

TEST_CASE("k-groups of the reset shift") {
    auto r = occ_run({"kgroups", "--family", "reset", "--N", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["K0"] == json::parse(R"({"rank":1,"torsion":[2]})"));
    CHECK(j["K1"] == json::parse(R"({"rank":0,"torsion":[]})"));
    CHECK(j["schema"] == "occ.kgroups/1");
    CHECK(spec_from_json(j["spec"]) == CodeSpec::reset(2));
}

TEST_CASE("matrices of the reversed reset shift at level 2") {
    auto r = occ_run({"matrices", "--family", "reset-rev", "--N", "1", "--level", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["levels"].size() == 3);
    auto m = j["levels"][2]["MtminusIt"];
    CHECK(m.size() == 8);
    CHECK(m[0].size() == 6);
    CHECK(m == to_json(closed_form_fixtures(Family::ResetRev, 1, 2).MtminusIt));
}

TEST_CASE("comparison with the reverse") {
    auto r = occ_run({"compare", "--family", "reset", "--N", "2", "--against-reverse", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("distinguished: ideal structure (future simple vs not simple)\n", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(occ_run({}).code == cli::kExitUsage);
    CHECK(occ_run({"report"}).code == cli::kExitUsage);
    CHECK(occ_run({"report", "--family", "nope"}).code == cli::kExitUsage);
    CHECK(occ_run({"report", "--family", "reset", "--bogus"}).code == cli::kExitUsage);
    CHECK(occ_run({"kgroups", "--family", "reset", "--format", "dot"}).code == cli::kExitUsage);
    CHECK(occ_run({"fixtures", "--family", "reset-rev", "--level", "1"}).code == cli::kExitUsage);
    CHECK(occ_run({"report", "--spec-file", "/nonexistent/spec.json"}).code == cli::kExitUsage);

    auto bad = std::string(OCC_BINARY_DIR) + "/n0.json";
    std::ofstream(bad) << R"({"variant": "BuiltinReset", "N": 0})";
    auto r = occ_run({"report", "--spec-file", bad});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("SchemaError") != std::string::npos);

    auto hb = std::string(OCC_BINARY_DIR) + "/hb3.json";
    std::ofstream(hb) << R"({"variant": "HigherBlock", "n": 3, "base": {"variant": "BuiltinReset", "N": 2}})";
    r = occ_run({"kgroups", "--spec-file", hb, "--level", "3"});
    CHECK(r.code == cli::kExitUnresolved);
    auto j = json::parse(r.out);
    CHECK(j["K0"].is_null());
    CHECK_FALSE(j["unresolved"].empty());
    r = occ_run({"kgroups", "--spec-file", hb, "--level", "3", "--format", "text"});
    CHECK(r.out.find("unresolved: K0") != std::string::npos);
}

TEST_CASE("output is deterministic and independent of --jobs") {
    std::vector<std::string> cmd{"compare", "--family", "reset", "--N", "2", "--other-family", "counter", "--level", "6"};
    auto a = occ_run(cmd);
    cmd.insert(cmd.end(), {"--jobs", "2"});
    auto b = occ_run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto s1 = occ_run({"simplicity", "--family", "counter", "--N", "2", "--level", "6"});
    auto s2 = occ_run({"simplicity", "--family", "counter", "--N", "2", "--level", "6", "--jobs", "3"});
    CHECK(s1.out == s2.out);
    CHECK(occ_run({"report", "--family", "reset", "--N", "1", "--level", "5"}).out ==
          occ_run({"report", "--family", "reset", "--N", "1", "--level", "5"}).out);
}

TEST_CASE("every subcommand emits parseable JSON") {
    std::vector<std::vector<std::string>> cmds{
        {"lang", "--family", "counter", "--length", "2"},
        {"sync", "--family", "reset", "--N", "2"},
        {"graph", "--family", "reset", "--level", "3"},
        {"matrices", "--family", "counter", "--level", "3"},
        {"kgroups", "--family", "counter", "--N", "2"},
        {"bf", "--family", "reset-rev", "--N", "2"},
        {"simplicity", "--family", "reset", "--N", "2", "--level", "6"},
        {"report", "--family", "reset-rev", "--N", "2", "--level", "6"},
        {"fixtures", "--family", "reset-rev", "--N", "2", "--level", "4"}};
    for (const auto& c : cmds) {
        CAPTURE(c[0]);
        auto r = occ_run(c);
        CHECK(r.code == 0);
        auto j = json::parse(r.out);
        CHECK(j.contains("schema"));
        CHECK(json::parse(j.dump()) == j);
        if (j.contains("spec")) CHECK(spec_to_json(spec_from_json(j["spec"])) == j["spec"]);
    }
    auto lang = json::parse(occ_run({"lang", "--family", "counter", "--length", "2"}).out);
    CHECK(lang["count"] == 5);
}

TEST_CASE("artifacts can go to a file") {
    auto path = std::string(OCC_BINARY_DIR) + "/bf.json";
    auto r = occ_run({"bf", "--family", "reset", "--N", "2", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    auto j = json::parse(read_file(path));
    CHECK(j["BF0"] == json::parse(R"({"rank":0,"torsion":[2]})"));
    CHECK(j["BF1"] == json::parse(R"({"rank":1,"torsion":[]})"));
    CHECK(j["reference_BF1"] == json::parse(R"({"rank":2,"torsion":[]})"));
}
