#include "cli.hpp"
#include "cftkit/json_io.hpp"
#include "cftkit/minimal.hpp"
#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace cftkit;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    CliResult r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out);
}

std::set<std::string> tags_of(const Json& j) {
    std::set<std::string> out;
    for (const auto& x : j.at("invariants")) out.insert(x.at("tag").get<std::string>());
    return out;
}

fs::path scratch_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("cftkit-cli-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::size_t table_rows(const std::string& text) {
    std::size_t rows = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("| ", 0) == 0) ++rows;
    return rows;
}

}  // namespace

TEST(Cli, MdataSl2Markdown) {
    CliResult r = run({"mdata", "sl2", "--level", "10"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("c = 5/2"), std::string::npos);
    EXPECT_EQ(table_rows(r.out), 13u);
}

TEST(Cli, MdataMinimalJson) {
    Json j = run_json({"mdata", "minimal", "--m", "1"});
    EXPECT_EQ(j.at("labels").size(), 3u);
    EXPECT_EQ(j.at("h"), Json({"0", "1/16", "1/2"}));
    EXPECT_EQ(j.at("c"), "1/2");
    const ModularData data = minimal_modular_data(1);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            EXPECT_EQ(cyclotomic_from_json(j.at("S")[a][b]), data.s_entry(a, b));
}

TEST(Cli, MdataHFromOracle) {
    Json j = run_json({"mdata", "--algebra", "minimal", "--m", "4"});
    const auto labels = j.at("labels");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        KacLabel k = parse_kac_label(4, labels[i].get<std::string>());
        auto [num, den] = oracle::minimal_weight_fraction(4, k.r, k.s);
        EXPECT_EQ(rational_from_json(j.at("h")[i]), make_rational(num, den));
    }
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"mdata", "sl2", "--level", "-1"}).code, 2);
    EXPECT_EQ(run({"mdata", "sl3", "--level", "2"}).code, 2);
    EXPECT_EQ(run({"mdata", "sl2"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"--order", "0", "char", "sl2", "--level", "1", "--j", "0"}).code, 2);
    EXPECT_EQ(run({"--json", "--markdown", "mdata", "sl2", "--level", "1"}).code, 2);
    EXPECT_EQ(run({"classify", "--c", "3/2", "--summands", "(1,1)"}).code, 2);
    EXPECT_EQ(run({"invariants", "verify", "--algebra", "sl2", "--level", "4"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, EnumerateSl2Level10) {
    Json j = run_json({"invariants", "enumerate", "--algebra", "sl2", "--level", "10"});
    EXPECT_EQ(tags_of(j), (std::set<std::string>{"A", "D_odd", "E6"}));
}

TEST(Cli, ExpectedMinimal27) {
    Json j = run_json({"invariants", "expected", "--algebra", "minimal", "--m", "27"});
    EXPECT_TRUE(tags_of(j).count("(A,E8)"));
}

TEST(Cli, VerifyTag) {
    CliResult r = run({"invariants", "verify", "--algebra", "sl2", "--level", "16", "--tag", "E7"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(run({"invariants", "verify", "--algebra", "sl2", "--level", "16", "--tag", "E6"}).code, 2);
}

TEST(Cli, VerifyMatrixFile) {
    const fs::path dir = scratch_dir("verify");
    Json good = run_json({"invariants", "expected", "--algebra", "minimal", "--m", "10"});
    for (const auto& x : good.at("invariants")) {
        std::ofstream(dir / "x.json") << x.dump();
        CliResult r = run({"invariants", "verify", "--algebra", "minimal", "--m", "10", "--matrix", (dir / "x.json").string(), "--json"});
        EXPECT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(Json::parse(r.out).at("tag"), x.at("tag"));
    }
    Json bad = good.at("invariants")[0];
    bad["matrix"][0][1] = 1;
    std::ofstream(dir / "bad.json") << bad.dump();
    CliResult r = run({"invariants", "verify", "--algebra", "minimal", "--m", "10", "--matrix", (dir / "bad.json").string(), "--json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(Json::parse(r.out).at("passed").get<bool>());
    std::ofstream(dir / "junk.json") << "{not json";
    EXPECT_EQ(run({"invariants", "verify", "--algebra", "minimal", "--m", "10", "--matrix", (dir / "junk.json").string()}).code, 2);
    fs::remove_all(dir);
}

TEST(Cli, FromExtensionMatchesDeclaredTags) {
    for (std::string k : {"10", "16", "28"}) {
        Json j = run_json({"invariants", "from-extension", "--algebra", "sl2", "--level", k});
        EXPECT_FALSE(j.at("extensions").empty());
        for (const auto& e : j.at("extensions")) EXPECT_TRUE(e.at("match").get<bool>()) << e.dump();
    }
}

TEST(Cli, CosetVerify) {
    CliResult r = run({"coset", "verify", "--m", "1", "--n", "0", "--eps", "0", "--order", "8"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("pass"), std::string::npos);
    Json j = run_json({"coset", "verify", "--m", "2", "--n", "1", "--eps", "1", "--order", "6"});
    EXPECT_TRUE(j.at("passed").get<bool>());
}

TEST(Cli, CosetMirrorAndEmbed) {
    Json j = run_json({"coset", "mirror", "--m", "9", "--summands", "0,6"});
    std::set<std::string> labels;
    for (const auto& s : j.at("summands")) labels.insert(s.at("label").get<std::string>());
    EXPECT_EQ(labels, (std::set<std::string>{"(1,1)", "(1,7)"}));
    EXPECT_EQ(run({"coset", "embed", "--level", "10", "--target", "B2"}).code, 0);
    EXPECT_EQ(run({"coset", "embed", "--level", "28", "--target", "G2"}).code, 0);
    EXPECT_EQ(run({"coset", "embed", "--level", "12", "--target", "B2"}).code, 1);
    EXPECT_EQ(run({"coset", "embed", "--level", "10", "--target", "F4"}).code, 2);
}

TEST(Cli, ClassifyExamples) {
    Json j = run_json({"classify", "--c", "25/26", "--summands", "(1,1),(7,1)"});
    ASSERT_TRUE(j.at("accepted").get<bool>());
    EXPECT_EQ(j.at("voa").at("tag"), "E6");
    EXPECT_EQ(j.at("voa").at("m"), 10);

    CliResult r = run({"classify", "--c", "3/4", "--summands", "(1,1)", "--json"});
    EXPECT_EQ(r.code, 1);
    Json rej = Json::parse(r.out);
    EXPECT_FALSE(rej.at("accepted").get<bool>());
    EXPECT_NE(rej.at("reason").get<std::string>().find("3/4"), std::string::npos);

    Json aff = run_json({"classify", "--level", "10", "--summands", "0,6"});
    EXPECT_TRUE(aff.at("accepted").get<bool>());
}

TEST(Cli, CatalogNames) {
    Json j = run_json({"catalog", "--algebra", "sl2", "--param", "16"});
    std::set<std::string> names;
    for (const auto& e : j.at("entries")) names.insert(e.at("extension").at("name").get<std::string>());
    EXPECT_TRUE(names.count("D(16)"));
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
    const std::vector<std::vector<std::string>> commands = {
        {"mdata", "sl2", "--level", "4"},
        {"char", "minimal", "--m", "2", "--r", "1", "--s", "2", "--order", "10"},
        {"invariants", "enumerate", "--algebra", "minimal", "--m", "9"},
        {"coset", "decompose", "--m", "3", "--n", "1", "--eps", "0"},
        {"catalog", "--algebra", "minimal", "--param", "28"},
        {"classify", "--c", "25/26", "--summands", "(1,1),(7,1)"},
    };
    for (auto args : commands) {
        args.push_back("--json");
        CliResult r = run(args);
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(Json::parse(r.out).dump(2) + "\n", r.out);
    }
}

TEST(Cli, Deterministic) {
    const std::vector<std::string> args = {"invariants", "enumerate", "--algebra", "sl2", "--level", "16"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, CacheWarmEqualsCold) {
    const fs::path dir = scratch_dir("cache");
    const std::vector<std::string> args = {"--cache-dir", dir.string(), "invariants", "enumerate", "--algebra", "minimal", "--m", "10"};
    CliResult cold = run(args);
    ASSERT_EQ(cold.code, 0) << cold.err;
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        ++files;
        EXPECT_EQ(e.path().extension(), ".json");
    }
    EXPECT_EQ(files, 1u);
    CliResult warm = run(args);
    EXPECT_EQ(warm.out, cold.out);
    for (const auto& e : fs::directory_iterator(dir)) std::ofstream(e.path()) << "garbage";
    EXPECT_EQ(run(args).out, cold.out);
    EXPECT_EQ(run({"invariants", "enumerate", "--algebra", "minimal", "--m", "10"}).out, cold.out);
    fs::remove_all(dir);
}

TEST(Cli, ConfigFileAndPrecedence) {
    const fs::path dir = scratch_dir("config");
    std::ofstream(dir / "run.cfg") << "# test\norder = 6\noutput = json\n";
    const std::string cfg = (dir / "run.cfg").string();
    CliResult r = run({"--config", cfg, "char", "sl2", "--level", "1", "--j", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("series").at("coeffs").size(), 6u);
    r = run({"--config", cfg, "char", "sl2", "--level", "1", "--j", "0", "--order", "4"});
    EXPECT_EQ(Json::parse(r.out).at("series").at("coeffs").size(), 4u);
    r = run({"--config", cfg, "--markdown", "mdata", "sl2", "--level", "1"});
    EXPECT_EQ(r.out.rfind("# ", 0), 0u);
    std::ofstream(dir / "bad.cfg") << "colour = blue\n";
    EXPECT_EQ(run({"--config", (dir / "bad.cfg").string(), "mdata", "sl2", "--level", "1"}).code, 2);
    EXPECT_EQ(run({"--config", (dir / "missing.cfg").string(), "mdata", "sl2", "--level", "1"}).code, 2);
    fs::remove_all(dir);
}

TEST(Cli, CapRefusal) {
    CliResult r = run({"--cap", "1", "invariants", "enumerate", "--algebra", "sl2", "--level", "10", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& x : Json::parse(r.out).at("invariants"))
        for (const auto& row : x.at("matrix"))
            for (const auto& v : row) EXPECT_LE(v.get<long>(), 1);
}
