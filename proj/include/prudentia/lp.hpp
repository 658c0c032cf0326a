#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "prudentia/linalg.hpp"
#include "prudentia/rational.hpp"

namespace prudentia::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

template <typename Field>
struct Constraint {
    linalg::FieldVector<Field> coeffs;
    Relation relation = Relation::LessEqual;
    Field rhs = Field(0);
};

/// maximize objective . x  subject to constraints; variables free unless flagged.
template <typename Field>
struct Program {
    std::size_t num_vars = 0;
    std::vector<bool> nonnegative;  // empty means all free
    std::vector<Constraint<Field>> constraints;
    linalg::FieldVector<Field> objective;  // empty means feasibility only
};

enum class Status { Optimal, Infeasible, Unbounded };

template <typename Field>
struct Result {
    Status status = Status::Infeasible;
    linalg::FieldVector<Field> x;
    Field value = Field(0);
    std::size_t pivots = 0;
    std::size_t cell_updates = 0;
};

namespace detail {

template <typename Field>
class Tableau {
public:
    linalg::FieldMatrix<Field> rows;  // each row: coefficients then rhs
    std::vector<std::size_t> basis;
    linalg::FieldVector<Field> reduced;  // reduced costs (maximisation)
    Field value = Field(0);
    std::size_t cols = 0;
    std::size_t pivots = 0;
    std::size_t cell_updates = 0;

    void pivot(std::size_t p, std::size_t q) {
        auto& prow = rows[p];
        const Field inv = Field(1) / prow[q];
        for (auto& x : prow) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == p || rows[i][q] == Field(0)) continue;
            const Field f = rows[i][q];
            for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * prow[j];
            cell_updates += cols + 1;
        }
        if (reduced[q] != Field(0)) {
            const Field f = reduced[q];
            for (std::size_t j = 0; j < cols; ++j) reduced[j] -= f * prow[j];
            value += f * prow[cols];
        }
        basis[p] = q;
        ++pivots;
    }

    void price(const linalg::FieldVector<Field>& cost) {
        reduced = cost;
        value = Field(0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Field cb = cost[basis[i]];
            if (cb == Field(0)) continue;
            for (std::size_t j = 0; j < cols; ++j) reduced[j] -= cb * rows[i][j];
            value += cb * rows[i][cols];
        }
    }

    /// Bland's rule; returns false when unbounded.
    bool optimise(const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t q = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (allowed[j] && reduced[j] > Field(0)) {
                    q = j;
                    break;
                }
            }
            if (q == cols) return true;
            std::size_t p = rows.size();
            Field best = Field(0);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][q] <= Field(0)) continue;
                const Field r = rows[i][cols] / rows[i][q];
                if (p == rows.size() || r < best || (r == best && basis[i] < basis[p])) {
                    p = i;
                    best = r;
                }
            }
            if (p == rows.size()) return false;
            pivot(p, q);
        }
    }
};

}  // namespace detail

/// Exact two-phase primal simplex with Bland's anti-cycling rule.
template <typename Field>
Result<Field> solve(const Program<Field>& prog) {
    const std::size_t n = prog.num_vars;
    auto nonneg = [&](std::size_t j) { return !prog.nonnegative.empty() && prog.nonnegative[j]; };

    // Column layout: split free variables, then one slack per inequality, then artificials.
    std::vector<std::size_t> pos_col(n), neg_col(n, static_cast<std::size_t>(-1));
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = cols++;
        if (!nonneg(j)) neg_col[j] = cols++;
    }
    const std::size_t first_slack = cols;
    for (const auto& c : prog.constraints)
        if (c.relation != Relation::Equal) ++cols;
    const std::size_t first_artificial = cols;
    const std::size_t m = prog.constraints.size();
    cols += m;

    detail::Tableau<Field> t;
    t.cols = cols;
    t.rows.assign(m, linalg::FieldVector<Field>(cols + 1, Field(0)));
    t.basis.resize(m);
    std::size_t slack = first_slack;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = prog.constraints[i];
        auto& row = t.rows[i];
        for (std::size_t j = 0; j < n && j < c.coeffs.size(); ++j) {
            row[pos_col[j]] = c.coeffs[j];
            if (neg_col[j] != static_cast<std::size_t>(-1)) row[neg_col[j]] = -c.coeffs[j];
        }
        if (c.relation == Relation::LessEqual) row[slack++] = Field(1);
        if (c.relation == Relation::GreaterEqual) row[slack++] = Field(-1);
        row[cols] = c.rhs;
        if (row[cols] < Field(0))
            for (auto& x : row) x = -x;
        row[first_artificial + i] = Field(1);
        t.basis[i] = first_artificial + i;
    }

    // Phase one: maximise minus the sum of artificials.
    linalg::FieldVector<Field> cost(cols, Field(0));
    for (std::size_t i = 0; i < m; ++i) cost[first_artificial + i] = Field(-1);
    std::vector<bool> allowed(cols, true);
    t.price(cost);
    t.optimise(allowed);

    Result<Field> res;
    if (t.value < Field(0)) {
        res.status = Status::Infeasible;
        res.pivots = t.pivots;
        res.cell_updates = t.cell_updates;
        return res;
    }

    // Drive artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < first_artificial) {
            ++i;
            continue;
        }
        std::size_t q = first_artificial;
        for (std::size_t j = 0; j < first_artificial; ++j) {
            if (t.rows[i][j] != Field(0)) {
                q = j;
                break;
            }
        }
        if (q == first_artificial) {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        t.pivot(i, q);
        ++i;
    }

    // Phase two on the original objective.
    for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
    std::fill(cost.begin(), cost.end(), Field(0));
    for (std::size_t j = 0; j < n && j < prog.objective.size(); ++j) {
        cost[pos_col[j]] = prog.objective[j];
        if (neg_col[j] != static_cast<std::size_t>(-1)) cost[neg_col[j]] = -prog.objective[j];
    }
    t.price(cost);
    const bool bounded = t.optimise(allowed);

    linalg::FieldVector<Field> col_value(cols, Field(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) col_value[t.basis[i]] = t.rows[i][cols];
    res.x.assign(n, Field(0));
    for (std::size_t j = 0; j < n; ++j) {
        res.x[j] = col_value[pos_col[j]];
        if (neg_col[j] != static_cast<std::size_t>(-1)) res.x[j] -= col_value[neg_col[j]];
    }
    res.status = bounded ? Status::Optimal : Status::Unbounded;
    res.value = t.value;
    res.pivots = t.pivots;
    res.cell_updates = t.cell_updates;
    return res;
}

struct Counters {
    std::size_t solves = 0;
    std::size_t pivots = 0;
    std::size_t cell_updates = 0;

    template <typename Field>
    void record(const Result<Field>& r) {
        ++solves;
        pivots += r.pivots;
        cell_updates += r.cell_updates;
    }
};

/*
 * Finds x with  equalities * x = 0,  strict * x > 0  and, when `positive`,
 * x > 0 componentwise. The strict system is homogeneous, so it is feasible
 * exactly when  max t  s.t.  strict*x >= t, x >= t, t <= 1  has optimum t > 0.
 * Returns a primitive integer witness.
 */
inline std::optional<Vector> strict_cone_point(const Matrix& equalities, const Matrix& strict, bool positive,
                                               std::size_t dim, Counters* counters = nullptr) {
    Program<Rational> prog;
    prog.num_vars = dim + 1;
    const std::size_t t = dim;
    for (const auto& row : equalities) {
        Vector c(dim + 1, Rational(0));
        for (std::size_t j = 0; j < dim; ++j) c[j] = row[j];
        prog.constraints.push_back({c, Relation::Equal, Rational(0)});
    }
    for (const auto& row : strict) {
        Vector c(dim + 1, Rational(0));
        for (std::size_t j = 0; j < dim; ++j) c[j] = row[j];
        c[t] = -1;
        prog.constraints.push_back({c, Relation::GreaterEqual, Rational(0)});
    }
    if (positive) {
        for (std::size_t j = 0; j < dim; ++j) {
            Vector c(dim + 1, Rational(0));
            c[j] = 1;
            c[t] = -1;
            prog.constraints.push_back({c, Relation::GreaterEqual, Rational(0)});
        }
    }
    Vector cap(dim + 1, Rational(0));
    cap[t] = 1;
    prog.constraints.push_back({cap, Relation::LessEqual, Rational(1)});
    prog.objective = cap;

    const auto res = solve(prog);
    if (counters) counters->record(res);
    if (res.status != Status::Optimal || res.value <= 0) return std::nullopt;
    Vector x(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(dim));
    return primitive_integer(x);
}

}  // namespace prudentia::lp
