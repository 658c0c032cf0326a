#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prudentia/cli.hpp"

using prudentia::io::json;

namespace {

std::string fixture(const std::string& name) { return std::string(PRUDENTIA_FIXTURES) + "/" + name; }

struct Outcome {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = prudentia::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, PrudenceOnTheWorkedExample) {
    const auto r = run({"prudence", "--pairwise", fixture("example5_pairwise.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.report().at("prudent").get<bool>());
    EXPECT_EQ(r.report().at("scalars").size(), 3u);
}

TEST(Cli, PrudenceFailsOnRankThree) {
    const auto r = run({"prudence", "--pairwise", fixture("rank3_triple.json")});
    EXPECT_EQ(r.code, 1) << r.err;
    EXPECT_FALSE(r.report().at("prudent").get<bool>());
}

TEST(Cli, ChamberCounts) {
    const auto pos = run({"chambers", "--pairwise", fixture("example5_pairwise.json"), "--subset", "x,y,z", "--ambient", "positive"});
    ASSERT_EQ(pos.code, 0) << pos.err;
    EXPECT_EQ(pos.report().at("count"), 4);
    const auto full = run({"chambers", "--pairwise", fixture("example5_pairwise.json"), "--ambient", "full", "--list"});
    ASSERT_EQ(full.code, 0) << full.err;
    EXPECT_EQ(full.report().at("count"), 6);
    EXPECT_EQ(full.report().at("count_mobius"), 6);
    EXPECT_EQ(full.report().at("count_rank"), 6);
    EXPECT_EQ(full.report().at("chambers").size(), 6u);
}

TEST(Cli, Complexity) {
    const auto r = run({"complexity", "--m", "4", "--n", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report().at("summary"), "16 vs 64");
}

TEST(Cli, YieldCurveAndArbitrage) {
    const auto y = run({"yield-curve", "--model", fixture("two_date_model.json"), "--database", fixture("database_11.json")});
    ASSERT_EQ(y.code, 0) << y.err;
    EXPECT_NEAR(y.report().at("prices").at("1").get<double>(), 20.0 / 21.0, 1e-12);
    const auto clean = run({"arbitrage-scan", "--model", fixture("example5_model.json")});
    EXPECT_EQ(clean.code, 0) << clean.err;
    EXPECT_TRUE(clean.report().at("arbitrage_free").get<bool>());
    const auto dirty = run({"arbitrage-scan", "--model", fixture("example5_model_perturbed.json")});
    EXPECT_EQ(dirty.code, 1) << dirty.err;
    EXPECT_FALSE(dirty.report().at("findings").empty());
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"prudence"}).code, 2);
    EXPECT_EQ(run({"complexity", "--m", "four", "--n", "4"}).code, 2);
    EXPECT_EQ(run({"chambers", "--pairwise", fixture("example5_pairwise.json"), "--ambient", "sideways"}).code, 2);
    const auto missing = run({"prudence", "--pairwise", "/nonexistent.json"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("expected pairwise schema"), std::string::npos);
    // a similarity matrix handed to a pairwise-only command
    EXPECT_EQ(run({"prudence", "--pairwise", fixture("example5_global.json")}).code, 2);
}

TEST(Cli, CheckAxiomsReports) {
    const auto r = run({"check-axioms", "--matrix", fixture("example5_global.json"), "--samples", "20"});
    ASSERT_LE(r.code, 1) << r.err;
    EXPECT_FALSE(r.report().at("reports").empty());
    const auto bad = run({"check-axioms", "--matrix", fixture("rank3_triple.json"), "--samples", "20"});
    EXPECT_EQ(bad.code, 1) << bad.err;
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    const std::vector<std::string> args{"check-axioms", "--matrix", fixture("lexicographic_pairwise.json"), "--seed", "5"};
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TextFormatAndOutFile) {
    const auto text = run({"--format", "text", "complexity", "--m", "4", "--n", "4"});
    ASSERT_EQ(text.code, 0) << text.err;
    EXPECT_THROW((void)json::parse(text.out), json::exception);
    EXPECT_NE(text.out.find("16 vs 64"), std::string::npos);

    const auto path = (std::filesystem::temp_directory_path() / "prudentia_cli_out.json").string();
    const auto r = run({"--out", path, "complexity", "--m", "4", "--n", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    EXPECT_EQ(json::parse(in).at("summary"), "16 vs 64");
    std::remove(path.c_str());
}
