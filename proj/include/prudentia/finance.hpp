#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prudentia/axioms.hpp"
#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/lp.hpp"
#include "prudentia/rational.hpp"
#include "prudentia/ranking_engine.hpp"

namespace prudentia {

/*
 * Trading dates (nonnegative rationals, 0 is the spot date) with a pairwise
 * matrix whose eventuality labels are the dates' canonical strings. The
 * log-accumulation of a contract (x,y) in case c is -v^(x,y)_c.
 *
 * Construction does not insist on the Jacobi identity, so that arbitrage scans
 * can inspect inconsistent quotes; `arbitrage_free()` reports whether it holds.
 */
class YieldCurveModel {
public:
    YieldCurveModel() = default;

    YieldCurveModel(std::vector<Rational> dates, PairwiseMatrix vp) : dates_(std::move(dates)), vp_(std::move(vp)) {
        std::sort(dates_.begin(), dates_.end());
        if (std::adjacent_find(dates_.begin(), dates_.end()) != dates_.end())
            throw PreconditionViolated("repeated trading date");
        if (dates_.empty() || dates_.front() != 0) throw PreconditionViolated("trading dates must include 0");
        if (dates_.front() < 0) throw PreconditionViolated("trading dates must be nonnegative");
        if (vp_.m() != dates_.size()) throw PreconditionViolated("pairwise matrix does not match the dates");
        for (const auto& d : dates_) vp_.eventualities().index_of(label(d));
    }

    /*
     * Builds the Jacobi model implied by per-case spot yields r^{0,x}_c:
     * v^(0,x)_c = -x log(1 + r^{0,x}_c) and v^(x,y) = v^(x,0) + v^(0,y). The
     * logarithms are computed in double precision and then held exactly.
     */
    static YieldCurveModel from_spot_yields(const std::vector<std::string>& case_types,
                                            const std::map<Rational, std::vector<double>>& spot_yields) {
        std::vector<Rational> dates{0};
        std::map<Rational, Vector> to_spot;  // v^(0,x)
        to_spot[0] = zeros(case_types.size());
        for (const auto& [x, r] : spot_yields) {
            if (x == 0) continue;
            if (r.size() != case_types.size()) throw PreconditionViolated("spot yields need one entry per case type");
            Vector v;
            for (double y : r) {
                if (!(y > -1)) throw PreconditionViolated("a gross yield must be positive");
                v.push_back(from_double(-to_double(x) * std::log1p(y)));
            }
            dates.push_back(x);
            to_spot[x] = v;
        }
        std::map<std::pair<std::string, std::string>, Vector> rows;
        for (const auto& [x, vx] : to_spot)
            for (const auto& [y, vy] : to_spot)
                if (x < y) rows.emplace(std::make_pair(label(x), label(y)), subtract(vy, vx));
        std::vector<std::string> labels;
        for (const auto& d : dates) labels.push_back(label(d));
        return YieldCurveModel(dates, PairwiseMatrix(labels, case_types, rows));
    }

    static std::string label(const Rational& d) { return to_string(d); }

    const std::vector<Rational>& dates() const noexcept { return dates_; }
    const PairwiseMatrix& pairwise() const noexcept { return vp_; }
    const CaseTypeSet& case_types() const noexcept { return vp_.case_types(); }

    const Vector& row(const Rational& x, const Rational& y) const { return vp_.row(label(x), label(y)); }
    Rational entry(const Rational& x, const Rational& y, const std::string& c) const {
        return row(x, y)[case_types().column_index(c)];
    }

    bool has_date(const Rational& d) const { return std::binary_search(dates_.begin(), dates_.end(), d); }
    void require_date(const Rational& d) const {
        if (!has_date(d)) throw UnknownLabel(label(d));
    }

    bool arbitrage_free() const { return satisfies_jacobi(vp_); }

private:
    std::vector<Rational> dates_;
    PairwiseMatrix vp_;
};

/// 1 + r = exp(v^(y,x)_c / (y - x)); zero when x = y.
inline double implied_yield(const YieldCurveModel& model, const Rational& x, const Rational& y, const std::string& c) {
    model.require_date(x);
    model.require_date(y);
    if (x == y) return 0.0;
    const Rational exponent = model.entry(y, x, c) / (y - x);
    return std::expm1(to_double(exponent));
}

/// Exact exponent of B(x,D): -(1/|D|) sum_c D(c) v^(x,0)_c.
inline Rational log_bond_price(const YieldCurveModel& model, const Rational& x, const Database& d) {
    model.require_date(x);
    if (d.is_zero()) throw EmptyDatabase("bond prices need a nonempty database");
    return -dot(model.row(x, 0), d.dense(model.case_types())) / d.total_mass();
}

inline double bond_price(const YieldCurveModel& model, const Rational& x, const Database& d) {
    return std::exp(to_double(log_bond_price(model, x, d)));
}

/// x <=_D y iff B(x,D) <= B(y,D), decided on the exact exponents.
inline Ranking ranking_by_price(const YieldCurveModel& model, const Database& d) {
    const auto& dates = model.dates();
    Vector e;
    for (const auto& x : dates) e.push_back(log_bond_price(model, x, d));
    std::vector<std::string> labels;
    for (const auto& x : dates) labels.push_back(YieldCurveModel::label(x));
    std::vector<std::vector<char>> leq(dates.size(), std::vector<char>(dates.size(), 0));
    for (std::size_t a = 0; a < dates.size(); ++a)
        for (std::size_t b = 0; b < dates.size(); ++b) leq[a][b] = e[a] <= e[b];
    return Ranking(labels, std::move(leq));
}

struct ArbitrageFinding {
    Rational x, z, y;  // x < z < y
    std::string case_type;
    bool forward_too_cheap = false;  // a^(x,y) < a^(x,z) a^(z,y)
    std::string trade;
    Rational magnitude;  // log a^(x,y) - log a^(x,z) - log a^(z,y)
};

/// One finding per date triple x < z < y and case type where log-accumulations fail to add up.
inline std::vector<ArbitrageFinding> check_no_arbitrage(const YieldCurveModel& model) {
    std::vector<ArbitrageFinding> out;
    const auto& dates = model.dates();
    const auto& types = model.case_types();
    for (std::size_t a = 0; a < dates.size(); ++a)
        for (std::size_t b = a + 1; b < dates.size(); ++b)
            for (std::size_t c = b + 1; c < dates.size(); ++c) {
                const auto &x = dates[a], &z = dates[b], &y = dates[c];
                const Vector& xy = model.row(x, y);
                const Vector& xz = model.row(x, z);
                const Vector& zy = model.row(z, y);
                for (std::size_t t = 0; t < types.width(); ++t) {
                    const Rational gap = xz[t] + zy[t] - xy[t];  // log-price residual
                    if (gap == 0) continue;
                    ArbitrageFinding f{x, z, y, types.column_label(t), gap < 0, "", gap};
                    const std::string fx = YieldCurveModel::label(x), fz = YieldCurveModel::label(z),
                                      fy = YieldCurveModel::label(y);
                    if (f.forward_too_cheap)
                        f.trade = "sell forward (" + fx + "," + fy + "), buy spot (" + fx + "," + fz + "), sell spot (" +
                                  fz + "," + fy + ")";
                    else
                        f.trade = "buy forward (" + fx + "," + fy + "), sell spot (" + fx + "," + fz + "), buy spot (" +
                                  fz + "," + fy + ")";
                    out.push_back(std::move(f));
                }
            }
    return out;
}

/// Sign of the database yield r^{x,y}_D, exactly.
inline int yield_sign(const YieldCurveModel& model, const Rational& x, const Rational& y, const Database& d) {
    if (x == y) return 0;
    const int s = sign(dot(model.row(y, x), d.dense(model.case_types())));
    return x < y ? s : -s;
}

struct ConditionalYieldWitness {
    Rational third;
    bool found = false;
    std::optional<Database> positive;  // C with r^{x,y}_C > 0
    std::optional<Database> negative;  // D with r^{x,y}_D < 0
};

struct NegativeYieldReport {
    Rational x, y;
    std::vector<std::string> negative_cases;
    std::vector<std::string> positive_cases;
    std::map<std::string, double> yields;
    std::vector<ConditionalYieldWitness> conditional;
};

/*
 * For every x < y, the case types with negative and positive implied yield, and
 * for every third date z databases C, D on opposite sides of zero for (x,y)
 * whose (x,z) yields share a strict sign. Witnesses are strictly positive
 * integer databases found by an exact cone LP.
 */
inline std::vector<NegativeYieldReport> detect_negative_yields(const YieldCurveModel& model) {
    const auto div = check_2_diversity(model.pairwise());
    if (!div.passed()) throw NotTwoDiverse("model is not 2-diverse on pair (" + div.witness->eventualities[0] + "," +
                                           div.witness->eventualities[1] + ")");
    const auto& dates = model.dates();
    const auto& types = model.case_types();
    // yield_sign(x, y, D) = sign <normal(x, y), D>
    const auto normal = [&](const Rational& x, const Rational& y) {
        const Vector& v = model.row(y, x);
        return x < y ? v : negate(v);
    };
    const auto solve = [&](const Vector& a, const Vector& b) -> std::optional<Database> {
        const auto w = lp::strict_cone_point({}, {a, b}, true, types.width());
        if (!w) return std::nullopt;
        return Database::from_dense(types, *w);
    };

    std::vector<NegativeYieldReport> out;
    for (std::size_t a = 0; a < dates.size(); ++a)
        for (std::size_t b = a + 1; b < dates.size(); ++b) {
            NegativeYieldReport r{dates[a], dates[b], {}, {}, {}, {}};
            for (std::size_t t = 0; t < types.width(); ++t) {
                const auto& c = types.column_label(t);
                const double yv = implied_yield(model, r.x, r.y, c);
                r.yields[c] = yv;
                const int s = sign(model.entry(r.y, r.x, c));
                if (s < 0) r.negative_cases.push_back(c);
                if (s > 0) r.positive_cases.push_back(c);
            }
            for (const auto& z : dates) {
                if (z == r.x || z == r.y) continue;
                ConditionalYieldWitness w{z, false, std::nullopt, std::nullopt};
                const Vector xy = normal(r.x, r.y);
                for (int s : {1, -1}) {
                    const Vector xz = scale(normal(r.x, z), Rational(s));
                    auto pos = solve(xy, xz);
                    auto neg = pos ? solve(negate(xy), xz) : std::nullopt;
                    if (pos && neg) {
                        w.found = true;
                        w.positive = std::move(pos);
                        w.negative = std::move(neg);
                        break;
                    }
                }
                r.conditional.push_back(std::move(w));
            }
            out.push_back(std::move(r));
        }
    return out;
}

}  // namespace prudentia
