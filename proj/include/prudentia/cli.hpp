#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prudentia/arrangements.hpp"
#include "prudentia/axioms.hpp"
#include "prudentia/config.hpp"
#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/finance.hpp"
#include "prudentia/io.hpp"
#include "prudentia/ranking_engine.hpp"
#include "prudentia/representation.hpp"

namespace prudentia::cli {

using io::json;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2 };

namespace detail {

inline const std::map<std::string, std::string>& schema_hints() {
    static const std::map<std::string, std::string> hints{
        {"matrix", R"({"eventualities":["x","y"],"case_types":["s","t"],"v":[["0","0"],["1","-1"]]} or a pairwise matrix)"},
        {"pairwise", R"({"eventualities":["x","y"],"case_types":["s","t"],"rows":[{"pair":["x","y"],"v":["1","-1"]}]})"},
        {"rankings",
         R"({"eventualities":[...],"case_types":[...],"observations":[{"database":{"counts":{"s":"1"}},"ranking":{"car":["x","y"]}}]})"},
        {"model", R"({"dates":["0","1"],"pairwise":{...}} or {"case_types":[...],"spot_yields":{"1":[0.05,-0.01]}})"},
        {"database", R"({"counts":{"s":"1/2","t":"3"}})"},
    };
    return hints;
}

inline void flatten(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

inline std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Context {
    RunConfig cfg;
    std::ostream* out = nullptr;
    std::string out_path;

    void emit(const json& report) const {
        std::ostringstream s;
        if (cfg.format == OutputFormat::Text) flatten(report, "", s);
        else s << report.dump(2) << "\n";
        if (out_path.empty()) {
            *out << s.str();
            return;
        }
        std::ofstream f(out_path);
        if (!f) throw ParseError("cannot write '" + out_path + "'");
        f << s.str();
    }
};

inline json header() { return json{{"schema", io::kSchema}}; }

// ---------------------------------------------------------------------------
// Subcommands

inline int check_axioms(const Context& ctx, const std::string& path, int k) {
    if (k < 2 || k > 4) throw PreconditionViolated("--k must be between 2 and 4");
    const json j = io::read_file(path);
    RankingFamily family;
    PairwiseMatrix vp;
    if (j.contains("v")) {
        const auto v = io::similarity_from_json(j);
        family = RankingFamily::from_similarity(v);
        vp = pairwise_from_global(v);
    } else {
        vp = io::pairwise_from_json(j);
        family = RankingFamily::from_pairwise(vp);
    }
    const auto sample = default_sample(family.case_types, ctx.cfg.sample());
    std::vector<AxiomReport> reports;
    reports.push_back(check_transitivity(family, sample));
    reports.push_back(check_completeness(family, sample));
    reports.push_back(check_combination(
        family, random_combination_sample(family.case_types, ctx.cfg.combination_samples, ctx.cfg.sample())));
    reports.push_back(check_archimedean_on_sample(family, sample, ctx.cfg.archimedean_k_max));
    reports.push_back(check_2_diversity(vp));
    reports.push_back(check_conditional_2_diversity(vp));
    reports.push_back(check_partial_3_diversity(vp, ctx.cfg.budget));
    reports.push_back(check_k_diversity(vp, k, ctx.cfg.budget));

    json out = header();
    out["reports"] = json::array();
    bool ok = true;
    for (const auto& r : reports) {
        out["reports"].push_back(io::to_json(r));
        ok = ok && r.passed();
    }
    ctx.emit(out);
    return ok ? kOk : kNegative;
}

inline int fit(const Context& ctx, const std::string& path) {
    const json j = io::read_file(path);
    const EventualitySet x(io::strings_from_json(io::require(j, "eventualities"), "eventualities"));
    std::optional<std::string> free_case;
    if (j.contains("free_case")) {
        const auto& f = j.at("free_case");
        if (f.is_boolean() && f.get<bool>()) free_case = ctx.cfg.free_label;
        else if (f.is_string()) free_case = f.get<std::string>();
    }
    const CaseTypeSet t(io::strings_from_json(io::require(j, "case_types"), "case_types"), free_case);
    std::map<Database, Ranking> table;
    std::vector<Database> grid;
    for (const auto& o : io::require(j, "observations")) {
        const Database d = io::database_from_json(io::require(o, "database"));
        d.dense(t);  // reject foreign case types early
        if (!table.emplace(d, io::ranking_from_json(io::require(o, "ranking"))).second)
            throw ParseError("a database is listed twice");
        grid.push_back(d);
    }
    const auto family = RankingFamily::from_oracle(x, t, [&table](const Database& d) { return table.at(d); });
    try {
        ctx.emit(io::to_json(build_pairwise_representation(family, grid)));
        return kOk;
    } catch (const Infeasible& e) {
        ctx.emit(json{{"schema", io::kSchema}, {"error", "Infeasible"}, {"message", e.what()}});
    } catch (const Underdetermined& e) {
        ctx.emit(json{{"schema", io::kSchema}, {"error", "Underdetermined"}, {"message", e.what()}});
    }
    return kNegative;
}

inline int prudence(const Context& ctx, const std::string& path) {
    const auto vp = io::pairwise_from_json(io::read_file(path));
    try {
        const auto verdict = test_prudence(vp);
        ctx.emit(io::to_json(verdict));
        return verdict.prudent ? kOk : kNegative;
    } catch (const NotConditionally2Diverse& e) {
        ctx.emit(json{{"schema", io::kSchema},
                      {"prudent", false},
                      {"error", "NotConditionally2Diverse"},
                      {"message", e.what()},
                      {"witness", e.witness()}});
        return kNegative;
    }
}

inline int chambers(const Context& ctx, const std::string& path, const std::string& subset, const std::string& ambient,
                    bool list) {
    const auto vp = io::pairwise_from_json(io::read_file(path));
    if (ambient != "positive" && ambient != "full") throw PreconditionViolated("--ambient must be positive or full");
    auto y = subset.empty() ? vp.eventualities().labels() : split_labels(subset);
    const auto arr = build_arrangement(vp, y, ambient == "full" ? Ambient::FullSpace : Ambient::PositiveOrthant);
    auto poset = intersection_poset(arr, ctx.cfg.budget);
    const long by_mobius = count_regions_mobius(poset);
    const auto found = enumerate_chambers(arr, ctx.cfg.budget);

    json out = header();
    out["subset"] = arr.eventualities();
    out["ambient"] = ambient;
    out["hyperplanes"] = arr.size();
    out["warnings"] = arr.warnings();
    out["count"] = found.size();
    out["count_mobius"] = by_mobius;
    out["count_rank"] = count_regions_rank(arr, ctx.cfg.budget);
    json mu = json::array();
    for (const auto& f : poset.elements) mu.push_back(f.mobius);
    out["mobius"] = mu;
    std::size_t total = 0;
    for (const auto& c : found) total += c.ranking && c.ranking->is_transitive();
    out["total"] = total;
    if (list) {
        out["chambers"] = json::array();
        for (const auto& c : found) out["chambers"].push_back(io::to_json(c));
    }
    ctx.emit(out);
    return kOk;
}

inline int assemble(const Context& ctx, const std::string& path, const std::string& base) {
    const auto vp = io::pairwise_from_json(io::read_file(path));
    try {
        ctx.emit(io::to_json(assemble_global_matrix(vp, base)));
        return kOk;
    } catch (const JacobiViolated& e) {
        ctx.emit(json{{"schema", io::kSchema},
                      {"error", "JacobiViolated"},
                      {"message", e.what()},
                      {"triple", e.triple()},
                      {"residual", e.residual()}});
        return kNegative;
    }
}

inline int uniq(const Context& ctx, const std::string& upath, const std::string& vpath) {
    const auto u = io::similarity_from_json(io::read_file(upath));
    const auto v = io::similarity_from_json(io::read_file(vpath));
    json out = header();
    try {
        const auto eq = check_uniqueness_equivalence(u, v);
        out["equivalent"] = eq.has_value();
        if (eq) {
            out["lambda"] = to_string(eq->first);
            out["beta"] = io::to_json(eq->second);
        }
        ctx.emit(out);
        return eq ? kOk : kNegative;
    } catch (const Degenerate& e) {
        out["equivalent"] = nullptr;
        out["error"] = "Degenerate";
        out["message"] = e.what();
        ctx.emit(out);
        return kNegative;
    }
}

inline int yield_curve(const Context& ctx, const std::string& model_path, const std::string& db_path) {
    const auto model = io::model_from_json(io::read_file(model_path));
    const auto d = io::database_from_json(io::read_file(db_path));
    json prices = json::object(), exponents = json::object();
    for (const auto& x : model.dates()) {
        prices[YieldCurveModel::label(x)] = io::display(bond_price(model, x, d));
        exponents[YieldCurveModel::label(x)] = to_string(log_bond_price(model, x, d));
    }
    json out = header();
    out["prices"] = prices;
    out["log_prices"] = exponents;
    out["ranking"] = io::to_json(ranking_by_price(model, d));
    ctx.emit(out);
    return kOk;
}

inline int arbitrage_scan(const Context& ctx, const std::string& model_path) {
    const auto model = io::model_from_json(io::read_file(model_path));
    const auto findings = check_no_arbitrage(model);
    json out = header();
    out["arbitrage_free"] = findings.empty();
    out["findings"] = json::array();
    for (const auto& f : findings) out["findings"].push_back(io::to_json(f));
    ctx.emit(out);
    return findings.empty() ? kOk : kNegative;
}

inline int complexity(const Context& ctx, long m, long n, const std::string& matrix_path) {
    const auto [main, gsii] = complexity_table(m, n);
    json out = header();
    out["m"] = m;
    out["n"] = n;
    out["cost_main"] = main;
    out["cost_gsii"] = gsii;
    out["summary"] = std::to_string(main) + " vs " + std::to_string(gsii);
    if (!matrix_path.empty()) {
        const auto v = io::similarity_from_json(io::read_file(matrix_path));
        out["measured"] = json{{"rows_main", io::to_json(check_rows_main(v))}, {"rows_gsii", io::to_json(check_rows_gsii(v))}};
    }
    ctx.emit(out);
    return kOk;
}

}  // namespace detail

/// Runs one subcommand; 0 on a positive outcome, 1 on a negative one, 2 on usage or I/O errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Case-based ranking representations: axioms, chambers, prudence and yield curves", "prudentia"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::optional<std::string> format, free_label;
    std::optional<std::size_t> max_dim, max_hyperplanes, samples;
    std::optional<long> grid_max, grid_den;
    std::string out_path;
    app.add_option("--seed", seed, "random seed for sampled checks");
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--free-label", free_label, "label of the free case");
    app.add_option("--max-dim", max_dim, "dimension budget for arrangements");
    app.add_option("--max-hyperplanes", max_hyperplanes, "hyperplane budget for enumeration");
    app.add_option("--grid-max", grid_max, "largest integer entry of sampling grids");
    app.add_option("--grid-den", grid_den, "largest denominator of random databases");
    app.add_option("--out", out_path, "write the report to this file instead of stdout");
    app.fallthrough();

    std::string matrix, pairwise, rankings, subset, ambient = "positive", base, upath, vpath, model, database;
    int k = 4;
    bool list = false;
    long cm = 0, cn = 0;

    auto* ax = app.add_subcommand("check-axioms", "check A0-A3 and the diversity axioms");
    ax->add_option("--matrix", matrix, "similarity or pairwise matrix JSON")->required();
    ax->add_option("--k", k, "k for k-diversity (2..4)");
    ax->add_option("--samples", samples, "number of random sample databases");

    auto* fi = app.add_subcommand("fit", "fit a pairwise representation from ranking observations");
    fi->add_option("--rankings", rankings, "observations JSON")->required();

    auto* pr = app.add_subcommand("prudence", "decide prudence via Jacobi scaling");
    pr->add_option("--pairwise", pairwise, "pairwise matrix JSON")->required();

    auto* ch = app.add_subcommand("chambers", "count and list chambers of a sub-arrangement");
    ch->add_option("--pairwise", pairwise, "pairwise matrix JSON")->required();
    ch->add_option("--subset", subset, "comma-separated eventualities (default: all)");
    ch->add_option("--ambient", ambient, "positive or full")->check(CLI::IsMember({"positive", "full"}));
    ch->add_flag("--list", list, "include every chamber with its CAR list");

    auto* as = app.add_subcommand("assemble", "assemble a global matrix from a Jacobi pairwise matrix");
    as->add_option("--pairwise", pairwise, "pairwise matrix JSON")->required();
    as->add_option("--base", base, "eventuality whose row is zero")->required();

    auto* un = app.add_subcommand("uniq", "test u = lambda v + beta");
    un->add_option("--u", upath, "similarity matrix JSON")->required();
    un->add_option("--v", vpath, "similarity matrix JSON")->required();

    auto* yc = app.add_subcommand("yield-curve", "bond prices for a database");
    yc->add_option("--model", model, "model JSON")->required();
    yc->add_option("--database", database, "database JSON")->required();

    auto* ar = app.add_subcommand("arbitrage-scan", "list arbitrage opportunities");
    ar->add_option("--model", model, "model JSON")->required();

    auto* co = app.add_subcommand("complexity", "operation counts of the two matrix conditions");
    co->add_option("--m", cm, "number of eventualities")->required();
    co->add_option("--n", cn, "number of case types")->required();
    co->add_option("--matrix", matrix, "optional similarity matrix to measure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        detail::Context ctx;
        ctx.cfg = load_config_from_env();
        if (seed) ctx.cfg.seed = *seed;
        if (format) ctx.cfg.format = *format == "text" ? OutputFormat::Text : OutputFormat::Json;
        if (free_label) ctx.cfg.free_label = *free_label;
        if (max_dim) ctx.cfg.budget.max_dim = *max_dim;
        if (max_hyperplanes) ctx.cfg.budget.max_hyperplanes = *max_hyperplanes;
        if (grid_max) ctx.cfg.grid_max_entry = *grid_max;
        if (grid_den) ctx.cfg.grid_max_denominator = *grid_den;
        if (samples) ctx.cfg.random_samples = *samples;
        ctx.cfg.validate();
        ctx.out = &out;
        ctx.out_path = out_path;

        if (name == "check-axioms") return detail::check_axioms(ctx, matrix, k);
        if (name == "fit") return detail::fit(ctx, rankings);
        if (name == "prudence") return detail::prudence(ctx, pairwise);
        if (name == "chambers") return detail::chambers(ctx, pairwise, subset, ambient, list);
        if (name == "assemble") return detail::assemble(ctx, pairwise, base);
        if (name == "uniq") return detail::uniq(ctx, upath, vpath);
        if (name == "yield-curve") return detail::yield_curve(ctx, model, database);
        if (name == "arbitrage-scan") return detail::arbitrage_scan(ctx, model);
        if (name == "complexity") return detail::complexity(ctx, cm, cn, matrix);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        static const std::map<std::string, std::vector<std::string>> inputs{
            {"check-axioms", {"matrix"}}, {"fit", {"rankings"}},          {"prudence", {"pairwise"}},
            {"chambers", {"pairwise"}},   {"assemble", {"pairwise"}},     {"uniq", {"matrix"}},
            {"yield-curve", {"model", "database"}}, {"arbitrage-scan", {"model"}}, {"complexity", {"matrix"}}};
        for (const auto& key : inputs.at(name))
            err << "expected " << key << " schema: " << detail::schema_hints().at(key) << "\n";
        return kUsage;
    } catch (const io::json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<const char*> argv{"prudentia"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace prudentia::cli
