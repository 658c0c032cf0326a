#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prudentia/arrangements.hpp"
#include "prudentia/axioms.hpp"
#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/finance.hpp"
#include "prudentia/rational.hpp"
#include "prudentia/ranking_engine.hpp"
#include "prudentia/representation.hpp"

namespace prudentia::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "prudentia/1";

// ---------------------------------------------------------------------------
// Scalars

inline json to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
    throw ParseError("expected a rational as a \"p/q\" string, got " + j.dump());
}

inline json to_json(const Vector& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_json(q));
    return a;
}

inline Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    Vector v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

/// Display float rounded to 12 significant digits.
inline json display(double x) {
    if (!std::isfinite(x)) return json(nullptr);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return json(std::stod(buf));
}

inline std::vector<std::string> strings_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("expected an array of strings for ") + what);
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError(std::string("expected string entries in ") + what);
        out.push_back(e.get<std::string>());
    }
    return out;
}

inline const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

// ---------------------------------------------------------------------------
// Core types

inline json to_json(const Database& d) {
    json counts = json::object();
    for (const auto& [label, q] : d.counts()) counts[label] = to_string(q);
    return json{{"counts", counts}};
}

inline Database database_from_json(const json& j) {
    const json& counts = require(j, "counts");
    if (!counts.is_object()) throw ParseError("\"counts\" must be an object");
    std::map<std::string, Rational> m;
    for (const auto& [label, q] : counts.items()) m.emplace(label, rational_from_json(q));
    return Database(std::move(m));
}

inline json to_json(const Ranking& r) {
    json pairs = json::array();
    for (const auto& [x, y] : r.pairs()) pairs.push_back(json::array({x, y}));
    json out{{"domain", r.domain()}, {"pairs", pairs}};
    if (r.size() >= 1 && r.size() <= 4 && r.is_complete() && r.is_antisymmetric()) out["car"] = car_list(r);
    return out;
}

inline Ranking ranking_from_json(const json& j) {
    if (j.contains("pairs")) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : require(j, "pairs")) {
            if (!p.is_array() || p.size() != 2) throw ParseError("ranking pairs must be [x, y] arrays");
            pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        }
        return Ranking(strings_from_json(require(j, "domain"), "domain"), pairs);
    }
    if (j.contains("car")) return Ranking::from_car(strings_from_json(j.at("car"), "car"));
    throw ParseError("a ranking needs \"domain\" and \"pairs\", or \"car\"");
}

// ---------------------------------------------------------------------------
// Matrices

inline json to_json(const SimilarityMatrix& v) {
    json rows = json::array();
    for (const auto& r : v.rows()) rows.push_back(to_json(r));
    return json{{"schema", kSchema},
                {"eventualities", v.eventualities().labels()},
                {"case_types", v.case_types().ordinary().labels()},
                {"v", rows}};
}

inline SimilarityMatrix similarity_from_json(const json& j) {
    Matrix rows;
    for (const auto& r : require(j, "v")) rows.push_back(vector_from_json(r));
    return SimilarityMatrix(strings_from_json(require(j, "eventualities"), "eventualities"),
                            strings_from_json(require(j, "case_types"), "case_types"), rows);
}

inline json to_json(const PairwiseMatrix& vp) {
    json rows = json::array();
    for (const auto& [pair, row] : vp.upper_rows())
        rows.push_back(json{{"pair", json::array({pair.first, pair.second})}, {"v", to_json(row)}});
    json out{{"schema", kSchema},
             {"eventualities", vp.eventualities().labels()},
             {"case_types", vp.case_types().ordinary().labels()}};
    if (vp.case_types().has_free_case()) out["free_case"] = *vp.case_types().free_case();
    out["rows"] = rows;
    return out;
}

inline PairwiseMatrix pairwise_from_json(const json& j) {
    std::map<std::pair<std::string, std::string>, Vector> rows;
    for (const auto& r : require(j, "rows")) {
        const auto pair = strings_from_json(require(r, "pair"), "pair");
        if (pair.size() != 2) throw ParseError("\"pair\" needs two labels");
        if (!rows.emplace(std::make_pair(pair[0], pair[1]), vector_from_json(require(r, "v"))).second)
            throw ParseError("row (" + pair[0] + "," + pair[1] + ") appears twice");
    }
    std::optional<std::string> free_case;
    if (j.contains("free_case") && !j.at("free_case").is_null()) free_case = j.at("free_case").get<std::string>();
    return PairwiseMatrix(strings_from_json(require(j, "eventualities"), "eventualities"),
                          strings_from_json(require(j, "case_types"), "case_types"), rows, free_case);
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const AxiomReport& r) {
    json out{{"axiom", r.name()}, {"verdict", to_string(r.verdict)}, {"checked", r.checked}};
    if (r.least_k) out["least_k"] = *r.least_k;
    if (r.budget_exhausted) out["budget_exhausted"] = true;
    if (r.witness) {
        json dbs = json::array();
        for (const auto& d : r.witness->databases) dbs.push_back(to_json(d));
        out["witness"] = json{{"databases", dbs}, {"eventualities", r.witness->eventualities}, {"note", r.witness->note}};
    }
    if (!r.subset_counts.empty()) {
        json counts = json::array();
        for (const auto& c : r.subset_counts)
            counts.push_back(json{{"subset", c.subset},
                                  {"chambers", c.chambers},
                                  {"total", c.transitive},
                                  {"required", c.required}});
        out["subset_counts"] = counts;
    }
    return out;
}

inline json to_json(const PrudenceVerdict& v) {
    json out{{"schema", kSchema}, {"prudent", v.prudent}};
    if (v.prudent) {
        json scalars = json::array();
        for (const auto& [pair, q] : v.scalars)
            scalars.push_back(json{{"pair", json::array({pair.first, pair.second})}, {"lambda", to_string(q)}});
        out["scalars"] = scalars;
    } else {
        out["witness"] = v.witness;
        out["reason"] = v.reason;
    }
    return out;
}

inline json to_json(const Chamber& c) {
    json signs = json::array();
    for (int s : c.signs) signs.push_back(s > 0 ? "+" : "-");
    json out{{"signs", signs}, {"witness", to_json(c.witness)}};
    if (c.car) out["car"] = *c.car;
    if (c.ranking) out["transitive"] = c.ranking->is_transitive();
    return out;
}

inline json to_json(const Arrangement& a) {
    json planes = json::array();
    for (const auto& h : a.hyperplanes()) {
        json members = json::array();
        for (const auto& m : h.members) members.push_back(json{{"pair", json::array({m.x, m.y})}, {"scale", to_string(m.scale)}});
        planes.push_back(json{{"normal", to_json(h.normal)}, {"members", members}});
    }
    return json{{"ambient", to_string(a.ambient())}, {"dimension", a.dim()}, {"hyperplanes", planes}};
}

inline json to_json(const RowsMainReport& r) {
    json out{{"passed", r.passed},
             {"row_pair_scans", r.row_pair_scans},
             {"triple_tests", r.triple_tests},
             {"elementary_steps", r.elementary_steps}};
    if (r.dominated) out["dominated"] = json::array({r.dominated->first, r.dominated->second});
    if (r.collinear_triple) out["collinear_triple"] = *r.collinear_triple;
    return out;
}

inline json to_json(const RowsGsiiReport& r) {
    json out{{"passed", r.passed},
             {"small_cardinality", r.small_cardinality},
             {"lp_solves", r.lp.solves},
             {"pivots", r.lp.pivots},
             {"cell_updates", r.lp.cell_updates}};
    if (r.dominated) out["dominated"] = *r.dominated;
    return out;
}

// ---------------------------------------------------------------------------
// Finance

/*
 * Either {"dates": [...], "pairwise": {...}} with eventualities named by the
 * dates, or {"case_types": [...], "spot_yields": {"<date>": [r_c, ...]}} with
 * pre-aggregated per-case-type spot yields.
 */
inline YieldCurveModel model_from_json(const json& j) {
    if (j.contains("spot_yields")) {
        std::map<Rational, std::vector<double>> spot;
        for (const auto& [date, ys] : require(j, "spot_yields").items()) {
            std::vector<double> r;
            for (const auto& y : ys) r.push_back(y.is_string() ? std::stod(y.get<std::string>()) : y.get<double>());
            spot.emplace(parse_rational(date), r);
        }
        return YieldCurveModel::from_spot_yields(strings_from_json(require(j, "case_types"), "case_types"), spot);
    }
    std::vector<Rational> dates;
    for (const auto& d : require(j, "dates")) dates.push_back(rational_from_json(d));
    return YieldCurveModel(dates, pairwise_from_json(require(j, "pairwise")));
}

inline json to_json(const YieldCurveModel& m) {
    json dates = json::array();
    for (const auto& d : m.dates()) dates.push_back(to_string(d));
    return json{{"schema", kSchema}, {"dates", dates}, {"pairwise", to_json(m.pairwise())}};
}

inline json to_json(const ArbitrageFinding& f) {
    return json{{"triple", json::array({to_string(f.x), to_string(f.z), to_string(f.y)})},
                {"case_type", f.case_type},
                {"direction", f.forward_too_cheap ? "a(x,y) < a(x,z) a(z,y)" : "a(x,y) > a(x,z) a(z,y)"},
                {"trade", f.trade},
                {"magnitude", to_string(f.magnitude)},
                {"magnitude_display", display(to_double(f.magnitude))}};
}

inline json to_json(const NegativeYieldReport& r) {
    json yields = json::object();
    for (const auto& [c, y] : r.yields) yields[c] = display(y);
    json cond = json::array();
    for (const auto& w : r.conditional) {
        json e{{"third", to_string(w.third)}, {"found", w.found}};
        if (w.positive) e["positive"] = to_json(*w.positive);
        if (w.negative) e["negative"] = to_json(*w.negative);
        cond.push_back(e);
    }
    return json{{"pair", json::array({to_string(r.x), to_string(r.y)})},
                {"negative_cases", r.negative_cases},
                {"positive_cases", r.positive_cases},
                {"yields", yields},
                {"conditional", cond}};
}

}  // namespace prudentia::io
