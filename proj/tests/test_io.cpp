#include <gtest/gtest.h>

#include <filesystem>

#include "prudentia/config.hpp"
#include "prudentia/io.hpp"
#include "support.hpp"

using namespace prudentia;
using io::json;
using testsupport::ints;

namespace {

std::string fixture(const std::string& name) { return std::string(PRUDENTIA_FIXTURES) + "/" + name; }

// Parses a fixture into its library type and serializes it again.
json reserialize(const json& j) {
    if (j.contains("v")) return io::to_json(io::similarity_from_json(j));
    if (j.contains("rows")) return io::to_json(io::pairwise_from_json(j));
    if (j.contains("dates") || j.contains("spot_yields")) return io::to_json(io::model_from_json(j));
    if (j.contains("counts")) return io::to_json(io::database_from_json(j));
    if (j.contains("observations")) {
        json out{{"eventualities", j.at("eventualities")}, {"case_types", j.at("case_types")}, {"observations", json::array()}};
        for (const auto& o : j.at("observations"))
            out["observations"].push_back(json{{"database", io::to_json(io::database_from_json(o.at("database")))},
                                               {"ranking", io::to_json(io::ranking_from_json(o.at("ranking")))}});
        return out;
    }
    RunConfig cfg;
    apply_config_json(cfg, j);
    return json{{"seed", cfg.seed},
                {"grid_max_entry", cfg.grid_max_entry},
                {"grid_max_denominator", cfg.grid_max_denominator},
                {"random_samples", cfg.random_samples},
                {"max_dim", cfg.budget.max_dim},
                {"max_hyperplanes", cfg.budget.max_hyperplanes},
                {"format", cfg.format == OutputFormat::Json ? "json" : "text"},
                {"free_label", cfg.free_label}};
}

}  // namespace

TEST(Io, EveryFixtureRoundTrips) {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(PRUDENTIA_FIXTURES)) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        const json first = reserialize(io::read_file(entry.path().string()));
        const json second = reserialize(first);
        EXPECT_EQ(first, second) << entry.path();
        EXPECT_EQ(reserialize(io::parse_text(first.dump())), first) << entry.path();
    }
    EXPECT_GE(seen, 10u);
}

TEST(Io, RationalsAreStrings) {
    EXPECT_EQ(io::to_json(frac(-3, 6)), "-1/2");
    EXPECT_EQ(io::rational_from_json(json("0.75")), Rational(3, 4));
    EXPECT_EQ(io::rational_from_json(json(4)), 4);
    EXPECT_THROW(io::rational_from_json(json(0.5)), ParseError);
    EXPECT_THROW(io::rational_from_json(json("x")), ParseError);
}

TEST(Io, MatricesCarrySchemaAndCanonicalOrder) {
    const json j = io::to_json(testsupport::example5());
    EXPECT_EQ(j.at("schema"), io::kSchema);
    EXPECT_EQ(j.at("v")[2], json::array({"3", "-2"}));
    const auto vp = io::pairwise_from_json(io::read_file(fixture("example5_pairwise.json")));
    EXPECT_EQ(vp, pairwise_from_global(testsupport::example5()));
    EXPECT_EQ(io::similarity_from_json(io::read_file(fixture("example5_global.json"))), testsupport::example5());
}

TEST(Io, RankingsEmitCarLists) {
    const json j = io::to_json(Ranking::from_car({"x", "y", "z", "x"}));
    EXPECT_EQ(j.at("car"), json::array({"x", "y", "z", "x"}));
    EXPECT_EQ(io::ranking_from_json(json{{"car", {"b", "a"}}}), Ranking::from_car({"b", "a"}));
    EXPECT_EQ(io::ranking_from_json(j), Ranking::from_car({"x", "y", "z", "x"}));
    EXPECT_THROW(io::ranking_from_json(json{{"domain", {"a"}}}), ParseError);
}

TEST(Io, ParseErrorsNameTheProblem) {
    EXPECT_THROW(io::parse_text("{"), ParseError);
    EXPECT_THROW(io::read_file("/nonexistent/file.json"), ParseError);
    try {
        io::similarity_from_json(json{{"eventualities", {"x"}}, {"v", {{"1"}}}});
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("case_types"), std::string::npos);
    }
    const json dup{{"eventualities", {"x", "y"}},
                   {"case_types", {"s"}},
                   {"rows", {json{{"pair", {"x", "y"}}, {"v", {"1"}}}, json{{"pair", {"x", "y"}}, {"v", {"1"}}}}}};
    EXPECT_THROW(io::pairwise_from_json(dup), ParseError);
}

TEST(Io, ModelsFromBothFormats) {
    const auto two = io::model_from_json(io::read_file(fixture("two_date_model.json")));
    EXPECT_NEAR(bond_price(two, 1, io::database_from_json(io::read_file(fixture("database_11.json")))), 20.0 / 21.0, 1e-12);
    const auto spot = io::model_from_json(io::read_file(fixture("three_date_spot_yields.json")));
    EXPECT_TRUE(spot.arbitrage_free());
    const auto back = io::model_from_json(io::to_json(spot));
    EXPECT_EQ(back.pairwise(), spot.pairwise());
    EXPECT_EQ(back.dates(), spot.dates());
}

TEST(Io, DisplayRoundsToTwelveDigits) {
    EXPECT_EQ(io::display(20.0 / 21.0).dump(), "0.952380952381");
    EXPECT_TRUE(io::display(std::nan("")).is_null());
}

TEST(Config, OverlayAndValidation) {
    RunConfig cfg;
    apply_config_json(cfg, json{{"seed", 7}, {"format", "text"}, {"max_hyperplanes", 9}});
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_EQ(cfg.format, OutputFormat::Text);
    EXPECT_EQ(cfg.budget.max_hyperplanes, 9u);
    EXPECT_EQ(cfg.sample().seed, 7u);
    EXPECT_THROW(apply_config_json(cfg, json{{"bogus", 1}}), ParseError);
    EXPECT_THROW(apply_config_json(cfg, json{{"format", "xml"}}), ParseError);
    cfg.budget.max_dim = 0;
    EXPECT_THROW(cfg.validate(), PreconditionViolated);
}
