#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prudentia/axioms.hpp"
#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/linalg.hpp"
#include "prudentia/lp.hpp"
#include "prudentia/rational.hpp"
#include "prudentia/ranking_engine.hpp"

namespace prudentia {

/// One ranking datum for the pair (x,y): +1 means x strictly below y, 0 a tie, -1 y strictly below x.
struct LabeledObservation {
    Database database;
    std::string x;
    std::string y;
    int sign = 0;
};

struct FitResult {
    Vector normal;              // first nonzero entry has absolute value one
    bool underdetermined = false;
    Matrix basis;               // the linear span the valid normals live in
};

/*
 * Finds v with <v,J> matching every label's sign. Tied databases pin v to a
 * subspace S; strict labels carve an open cone inside S. The normal is unique
 * up to positive scale only when S is a line; otherwise the result is a witness
 * flagged underdetermined, together with a basis of S.
 */
inline FitResult fit_separating_hyperplane(const std::vector<LabeledObservation>& obs, const CaseTypeSet& types,
                                           lp::Counters* counters = nullptr) {
    const std::size_t n = types.width();
    Matrix ties, strict;
    bool pos = false, neg = false;
    std::map<Database, int> seen;
    for (const auto& o : obs) {
        auto [it, fresh] = seen.emplace(o.database, o.sign);
        if (!fresh && it->second != o.sign) throw Infeasible("a database carries two different labels");
        const Vector d = o.database.dense(types);
        if (o.sign == 0) ties.push_back(d);
        else strict.push_back(scale(d, Rational(o.sign)));
        pos = pos || o.sign > 0;
        neg = neg || o.sign < 0;
    }
    if (!pos || !neg) throw PreconditionViolated("fitting needs at least one strict label of each sign");

    const auto w = lp::strict_cone_point(ties, strict, false, n, counters);
    if (!w) throw Infeasible("no linear functional reproduces the labels");

    FitResult r;
    r.basis = linalg::nullspace<Rational>(ties, n);
    if (r.basis.size() == 1) {
        Vector v = r.basis.front();
        if (dot(v, strict.front()) < 0) v = negate(v);
        r.normal = normalize_leading(v);
    } else {
        r.underdetermined = true;
        r.normal = normalize_leading(*w);
    }
    return r;
}

inline int observed_sign(const Ranking& r, const std::string& x, const std::string& y) {
    if (r.strictly_below(x, y)) return 1;
    if (r.strictly_below(y, x)) return -1;
    return 0;
}

/*
 * Fits one row per unordered pair from the family's rankings on `grid`, then
 * completes skew-symmetry. A pair tied on every grid database whose points span
 * the space gets the zero row. Underdetermined fits are raised, not guessed.
 */
inline PairwiseMatrix build_pairwise_representation(const RankingFamily& family, const std::vector<Database>& grid) {
    const auto& x = family.eventualities;
    const auto& types = family.case_types;
    std::vector<Ranking> rankings;
    rankings.reserve(grid.size());
    for (const auto& j : grid) rankings.push_back(family.rank(j));

    std::map<std::pair<std::string, std::string>, Vector> rows;
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = a + 1; b < x.size(); ++b) {
            std::vector<LabeledObservation> obs;
            bool strict = false;
            for (std::size_t g = 0; g < grid.size(); ++g) {
                const int s = observed_sign(rankings[g], x[a], x[b]);
                strict = strict || s != 0;
                obs.push_back({grid[g], x[a], x[b], s});
            }
            const std::string pair = "(" + x[a] + "," + x[b] + ")";
            if (!strict) {
                Matrix pts;
                for (const auto& j : grid) pts.push_back(j.dense(types));
                if (!linalg::nullspace<Rational>(pts, types.width()).empty())
                    throw Underdetermined("pair " + pair + " is tied on a grid that does not span the space");
                rows.emplace(std::make_pair(x[a], x[b]), zeros(types.width()));
                continue;
            }
            try {
                const auto fit = fit_separating_hyperplane(obs, types);
                if (fit.underdetermined) throw Underdetermined("pair " + pair + ": the grid does not pin the normal");
                rows.emplace(std::make_pair(x[a], x[b]), fit.normal);
            } catch (const Infeasible& e) {
                throw Infeasible("pair " + pair + ": " + e.what());
            } catch (const PreconditionViolated& e) {
                throw Infeasible("pair " + pair + ": " + e.what());
            }
        }
    return PairwiseMatrix(x.labels(), types.ordinary().labels(), rows, types.free_case());
}

// ---------------------------------------------------------------------------
// Prudence as Jacobi solvability

struct PrudenceVerdict {
    bool prudent = false;
    std::map<std::pair<std::string, std::string>, Rational> scalars;  // keyed by (x,y), x before y
    std::vector<std::string> witness;                                  // offending triple or quadruple
    std::string reason;
};

namespace detail {

inline std::string join_labels(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& l : v) s += (s.empty() ? "" : ",") + l;
    return s;
}

inline PairwiseMatrix restrict_pairwise(const PairwiseMatrix& vp, const std::vector<std::string>& subset) {
    std::map<std::pair<std::string, std::string>, Vector> rows;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            rows.emplace(std::make_pair(subset[a], subset[b]), vp.row(subset[a], subset[b]));
    return PairwiseMatrix(subset, vp.case_types().ordinary().labels(), rows, vp.case_types().free_case());
}

/*
 * Core solver without the diversity precheck. Per triple a<b<c the exact system
 * v^(a,c) = alpha v^(a,b) + beta v^(b,c) fixes the ratios lambda_ab/lambda_ac
 * and lambda_bc/lambda_ac. Ratios are propagated from lambda = 1 on the first
 * pair, every triple is verified, and the scalars are finally rescaled to
 * coprime positive integers.
 */
inline PrudenceVerdict jacobi_scaling(const PairwiseMatrix& vp, bool look_for_quadruple) {
    const auto& x = vp.eventualities();
    const std::size_t m = vp.m();
    PrudenceVerdict out;
    if (m < 2) {
        out.prudent = true;
        return out;
    }
    auto id = [m](std::size_t a, std::size_t b) { return a * m + b; };

    // ratio[(p,q)] = lambda_p / lambda_q between pair ids, from each triple
    std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> edges;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c) {
                const auto coef = linalg::combination<Rational>({vp.row(a, b), vp.row(b, c)}, vp.row(a, c));
                if (!coef || (*coef)[0] <= 0 || (*coef)[1] <= 0) {
                    out.witness = {x[a], x[b], x[c]};
                    out.reason = !coef ? "v^(x,z) is not a combination of v^(x,y) and v^(y,z)"
                                       : "the triple forces a nonpositive scalar";
                    return out;
                }
                const Rational& alpha = (*coef)[0];
                const Rational& beta = (*coef)[1];
                edges[id(a, b)].emplace_back(id(a, c), alpha);  // lambda_ab = alpha lambda_ac
                edges[id(a, c)].emplace_back(id(a, b), 1 / alpha);
                edges[id(b, c)].emplace_back(id(a, c), beta);
                edges[id(a, c)].emplace_back(id(b, c), 1 / beta);
            }

    std::map<std::size_t, Rational> lambda;
    lambda[id(0, 1)] = 1;
    std::deque<std::size_t> queue{id(0, 1)};
    while (!queue.empty()) {
        const auto p = queue.front();
        queue.pop_front();
        for (const auto& [q, r] : edges[p]) {
            // lambda_p = r lambda_q
            if (lambda.count(q)) continue;
            lambda[q] = lambda[p] / r;
            queue.push_back(q);
        }
    }

    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c) {
                const Vector lhs = scale(vp.row(a, c), lambda[id(a, c)]);
                const Vector rhs = add(scale(vp.row(a, b), lambda[id(a, b)]), scale(vp.row(b, c), lambda[id(b, c)]));
                if (lhs == rhs) continue;
                out.witness = {x[a], x[b], x[c]};
                out.reason = "triple scalars are inconsistent across quadruples";
                if (look_for_quadruple) {
                    for (std::size_t w = 0; w < m; ++w) {
                        if (w == a || w == b || w == c) continue;
                        std::vector<std::string> quad{x[a], x[b], x[c], x[w]};
                        std::sort(quad.begin(), quad.end());
                        if (!jacobi_scaling(restrict_pairwise(vp, quad), false).prudent) {
                            out.witness = quad;
                            break;
                        }
                    }
                }
                return out;
            }

    Vector values;
    std::vector<std::pair<std::string, std::string>> keys;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            keys.emplace_back(x[a], x[b]);
            values.push_back(lambda[id(a, b)]);
        }
    values = primitive_integer(values);
    for (std::size_t i = 0; i < keys.size(); ++i) out.scalars.emplace(keys[i], values[i]);
    out.prudent = true;
    return out;
}

}  // namespace detail

/// Positive scalars lambda^{x,y} making lambda v a Jacobi representation, or the obstruction.
inline PrudenceVerdict solve_jacobi_scaling(const PairwiseMatrix& vp) {
    const auto c2d = check_conditional_2_diversity(vp);
    if (!c2d.passed())
        throw NotConditionally2Diverse("not conditionally 2-diverse: " + c2d.witness->note, c2d.witness->eventualities);
    return detail::jacobi_scaling(vp, true);
}

/// The prudence decision, which reduces to Jacobi solvability under conditional 2-diversity.
inline PrudenceVerdict test_prudence(const PairwiseMatrix& vp) { return solve_jacobi_scaling(vp); }

/// vp with each row (x,y) multiplied by the verdict's scalar.
inline PairwiseMatrix apply_scalars(const PairwiseMatrix& vp, const PrudenceVerdict& verdict) {
    std::map<std::pair<std::string, std::string>, Vector> rows;
    for (const auto& [pair, row] : vp.upper_rows()) {
        auto it = verdict.scalars.find(pair);
        rows.emplace(pair, it == verdict.scalars.end() ? row : scale(row, it->second));
    }
    return PairwiseMatrix(vp.eventualities().labels(), vp.case_types().ordinary().labels(), rows,
                          vp.case_types().free_case());
}

/// Global matrix with v(base) = 0 and v(x) = v^(base,x); needs the exact Jacobi identity.
inline SimilarityMatrix assemble_global_matrix(const PairwiseMatrix& vp, const std::string& base) {
    const auto& x = vp.eventualities();
    const std::size_t w = x.index_of(base);
    if (auto t = first_jacobi_violation(vp)) {
        const auto [a, b, c] = *t;
        const Vector residual = subtract(vp.row(a, c), add(vp.row(a, b), vp.row(b, c)));
        throw JacobiViolated("Jacobi identity fails on (" + x[a] + "," + x[b] + "," + x[c] + ")", {x[a], x[b], x[c]},
                             to_strings(residual));
    }
    Matrix rows;
    for (std::size_t i = 0; i < x.size(); ++i) rows.push_back(vp.row(w, i));
    return SimilarityMatrix(x.labels(), vp.case_types().column_labels(), rows);
}

// ---------------------------------------------------------------------------
// Matrix conditions

struct RowsMainReport {
    bool passed = true;
    std::optional<std::pair<std::string, std::string>> dominated;  // (x,y): row x <= row y
    std::optional<std::vector<std::string>> collinear_triple;
    std::size_t row_pair_scans = 0;
    std::size_t triple_tests = 0;
    std::size_t elementary_steps = 0;  // triple tests times n
};

/// No row dominated by another, and every three rows affinely independent.
inline RowsMainReport check_rows_main(const SimilarityMatrix& v) {
    RowsMainReport r;
    const auto& x = v.eventualities();
    const std::size_t m = v.m();
    for (std::size_t a = 0; a < m && r.passed; ++a)
        for (std::size_t b = 0; b < m && r.passed; ++b) {
            if (a == b) continue;
            ++r.row_pair_scans;
            bool le = true;
            for (std::size_t t = 0; t < v.n() && le; ++t) le = v.row(a)[t] <= v.row(b)[t];
            if (le) {
                r.passed = false;
                r.dominated = std::make_pair(x[a], x[b]);
            }
        }
    // triples: v(x) = l v(y) + (1-l) v(z) for some l iff v(x)-v(z) and v(y)-v(z) are collinear
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c) {
                ++r.triple_tests;
                r.elementary_steps += v.n();
                if (linalg::collinear<Rational>(subtract(v.row(a), v.row(c)), subtract(v.row(b), v.row(c))) &&
                    !r.collinear_triple) {
                    r.passed = false;
                    r.collinear_triple = std::vector<std::string>{x[a], x[b], x[c]};
                }
            }
    return r;
}

struct RowsGsiiReport {
    bool passed = true;
    bool small_cardinality = false;  // fewer than four rows: the clause over all other rows
    std::optional<std::vector<std::string>> dominated;  // dominated row first, then the combined rows
    lp::Counters lp;
};

/*
 * No row weakly below an affine combination of three others (of all other
 * rows when m < 4), decided by one exact LP per subset and choice of row.
 */
inline RowsGsiiReport check_rows_gsii(const SimilarityMatrix& v) {
    RowsGsiiReport r;
    const auto& x = v.eventualities();
    const std::size_t m = v.m();
    const std::size_t n = v.n();
    const std::size_t k = m < 4 ? m : 4;
    r.small_cardinality = m < 4;
    std::vector<std::vector<std::string>> subsets;
    std::vector<std::string> cur;
    detail::subsets_of_size(x.labels(), k, 0, cur, subsets);
    for (const auto& s : subsets)
        for (std::size_t d = 0; d < s.size(); ++d) {
            std::vector<std::string> others;
            for (std::size_t o = 0; o < s.size(); ++o)
                if (o != d) others.push_back(s[o]);
            if (others.empty()) continue;
            // variables: weights on the other rows, summing to one
            lp::Program<Rational> prog;
            prog.num_vars = others.size();
            for (std::size_t t = 0; t < n; ++t) {
                Vector c;
                for (const auto& o : others) c.push_back(v.row(o)[t]);
                prog.constraints.push_back({c, lp::Relation::GreaterEqual, v.row(s[d])[t]});
            }
            prog.constraints.push_back({Vector(others.size(), Rational(1)), lp::Relation::Equal, Rational(1)});
            const auto res = lp::solve(prog);
            r.lp.record(res);
            if (res.status != lp::Status::Infeasible && r.passed) {
                r.passed = false;
                std::vector<std::string> w{s[d]};
                w.insert(w.end(), others.begin(), others.end());
                r.dominated = w;
            }
        }
    return r;
}

inline long binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Operation counts (C(m,3) n, or C(m,2) n when m < 3) against C(m,4) n^3.
inline std::pair<long, long> complexity_table(long m, long n) {
    if (m < 2 || n < 1) throw PreconditionViolated("complexity_table needs m >= 2 and n >= 1");
    const long main = (m < 3 ? binomial(m, 2) : binomial(m, 3)) * n;
    return {main, binomial(m, 4) * n * n * n};
}

/// lambda > 0 and a constant-column shift beta with u = lambda v + beta, when they exist.
inline std::optional<std::pair<Rational, Vector>> check_uniqueness_equivalence(const SimilarityMatrix& u,
                                                                               const SimilarityMatrix& v) {
    if (!(u.eventualities() == v.eventualities()) || !(u.case_types() == v.case_types()))
        throw PreconditionViolated("matrices differ in shape or labels");
    const std::size_t m = v.m(), n = v.n();
    std::optional<Rational> lambda;
    for (std::size_t t = 0; t < n && !lambda; ++t)
        for (std::size_t a = 1; a < m && !lambda; ++a)
            if (v.row(a)[t] != v.row(0)[t]) lambda = (u.row(a)[t] - u.row(0)[t]) / (v.row(a)[t] - v.row(0)[t]);
    if (!lambda) throw Degenerate("all rows of v are equal, so the scale is unidentified");
    if (*lambda <= 0) return std::nullopt;
    Vector beta(n);
    for (std::size_t t = 0; t < n; ++t) beta[t] = u.row(0)[t] - *lambda * v.row(0)[t];
    for (std::size_t a = 0; a < m; ++a)
        if (u.row(a) != add(scale(v.row(a), *lambda), beta)) return std::nullopt;
    return std::make_pair(*lambda, beta);
}

/*
 * Appends the free column eta^(x,y) = -((1-iota)/iota) <v^(x,y), J>, so that
 * ((1-iota) J, iota) lies on every extended hyperplane and the free case alone
 * ranks X in the inverse of the order at J. A J on the orthant boundary is first
 * nudged inside along the all-ones direction without changing its ranking.
 */
inline PairwiseMatrix make_testworthy_extension(const PairwiseMatrix& vp, const Database& j, const Rational& iota,
                                                const std::string& free_label = kDefaultFreeLabel) {
    if (iota <= 0 || iota >= 1) throw PreconditionViolated("iota must lie strictly between 0 and 1");
    if (vp.case_types().has_free_case()) throw PreconditionViolated("matrix already has a free column");
    const auto& types = vp.case_types();
    const Ranking at_j = rank_pairwise(vp, j);
    if (!at_j.is_total()) throw NotTotal("the ranking at J is not total");

    Vector d = j.dense(types);
    bool interior = true;
    for (const auto& q : d) interior = interior && q > 0;
    if (!interior) {
        Rational eps = 1;
        for (;;) {
            Vector shifted = d;
            for (auto& q : shifted) q += eps;
            if (rank_pairwise(vp, Database::from_dense(types, shifted)) == at_j) {
                d = shifted;
                break;
            }
            eps /= 2;
        }
    }
    const Rational factor = -(1 - iota) / iota;
    std::map<std::pair<std::string, std::string>, Vector> rows;
    for (const auto& [pair, row] : vp.upper_rows()) {
        Vector ext = row;
        ext.push_back(factor * dot(row, d));
        rows.emplace(pair, ext);
    }
    return PairwiseMatrix(vp.eventualities().labels(), types.ordinary().labels(), rows, free_label);
}

}  // namespace prudentia
