#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/rational.hpp"

namespace prudentia {

namespace detail {

// Position of each canonical label in the caller's original order.
inline std::vector<std::size_t> original_positions(const std::vector<std::string>& given, const LabelSet& canonical) {
    std::vector<std::size_t> pos(canonical.size());
    for (std::size_t i = 0; i < given.size(); ++i) pos[canonical.index_of(given[i])] = i;
    return pos;
}

}  // namespace detail

/// The global matrix v : X x T -> Q; x <=_J y iff sum_t v(x,t)J(t) <= sum_t v(y,t)J(t).
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;

    /// Rows follow `eventualities`, columns follow `case_types`; both are re-sorted.
    SimilarityMatrix(const std::vector<std::string>& eventualities, const std::vector<std::string>& case_types,
                     const Matrix& rows)
        : x_(eventualities), t_(case_types) {
        if (rows.size() != eventualities.size())
            throw PreconditionViolated("similarity matrix needs one row per eventuality");
        const auto rpos = detail::original_positions(eventualities, x_);
        const auto cpos = detail::original_positions(case_types, t_.ordinary());
        rows_.assign(x_.size(), zeros(t_.width()));
        for (std::size_t i = 0; i < x_.size(); ++i) {
            const auto& src = rows[rpos[i]];
            if (src.size() != case_types.size())
                throw PreconditionViolated("row for '" + x_[i] + "' has the wrong number of entries");
            for (std::size_t j = 0; j < t_.size(); ++j) rows_[i][j] = src[cpos[j]];
        }
    }

    const EventualitySet& eventualities() const noexcept { return x_; }
    const CaseTypeSet& case_types() const noexcept { return t_; }
    std::size_t m() const noexcept { return x_.size(); }
    std::size_t n() const noexcept { return t_.size(); }
    const Matrix& rows() const noexcept { return rows_; }
    const Vector& row(std::size_t i) const { return rows_.at(i); }
    const Vector& row(const std::string& x) const { return rows_[x_.index_of(x)]; }

    friend bool operator==(const SimilarityMatrix& a, const SimilarityMatrix& b) {
        return a.x_ == b.x_ && a.t_ == b.t_ && a.rows_ == b.rows_;
    }

private:
    EventualitySet x_;
    CaseTypeSet t_;
    Matrix rows_;
};

/// Skew-symmetric pairwise matrix v^(x,y); x <=_J y iff <v^(x,y), J> >= 0.
class PairwiseMatrix {
public:
    PairwiseMatrix() = default;

    /*
     * Builds from any set of ordered-pair rows. A missing (y,x) is filled as
     * -v^(x,y); a supplied one must agree. Every off-diagonal pair needs one of
     * its two orientations. Row vectors follow `case_types` order, then the
     * free column if `free_case` is set.
     */
    PairwiseMatrix(const std::vector<std::string>& eventualities, const std::vector<std::string>& case_types,
                   const std::map<std::pair<std::string, std::string>, Vector>& rows,
                   std::optional<std::string> free_case = std::nullopt)
        : x_(eventualities), t_(case_types, std::move(free_case)) {
        const auto cpos = detail::original_positions(case_types, t_.ordinary());
        const std::size_t m = x_.size();
        rows_.assign(m * m, zeros(t_.width()));
        std::vector<char> seen(m * m, 0);
        for (const auto& [pair, src] : rows) {
            const auto i = x_.index_of(pair.first);
            const auto j = x_.index_of(pair.second);
            if (src.size() != t_.width())
                throw PreconditionViolated("row (" + pair.first + "," + pair.second + ") has the wrong width");
            Vector v(t_.width());
            for (std::size_t c = 0; c < t_.size(); ++c) v[c] = src[cpos[c]];
            if (t_.has_free_case()) v[t_.size()] = src[t_.size()];
            if (i == j) {
                if (!is_zero(v)) throw PreconditionViolated("diagonal row (" + pair.first + "," + pair.first + ") is nonzero");
                continue;
            }
            if (seen[j * m + i] && rows_[j * m + i] != negate(v))
                throw PreconditionViolated("rows (" + pair.first + "," + pair.second + ") and its reverse are not skew");
            rows_[i * m + j] = v;
            rows_[j * m + i] = negate(v);
            seen[i * m + j] = seen[j * m + i] = 1;
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j && !seen[i * m + j])
                    throw PreconditionViolated("missing row for pair (" + x_[i] + "," + x_[j] + ")");
    }

    const EventualitySet& eventualities() const noexcept { return x_; }
    const CaseTypeSet& case_types() const noexcept { return t_; }
    std::size_t m() const noexcept { return x_.size(); }
    std::size_t width() const noexcept { return t_.width(); }

    const Vector& row(std::size_t i, std::size_t j) const { return rows_.at(i * m() + j); }
    const Vector& row(const std::string& x, const std::string& y) const {
        return row(x_.index_of(x), x_.index_of(y));
    }

    /// Rows (x,y) with x before y in canonical order.
    std::map<std::pair<std::string, std::string>, Vector> upper_rows() const {
        std::map<std::pair<std::string, std::string>, Vector> out;
        for (std::size_t i = 0; i < m(); ++i)
            for (std::size_t j = i + 1; j < m(); ++j) out.emplace(std::make_pair(x_[i], x_[j]), row(i, j));
        return out;
    }

    friend bool operator==(const PairwiseMatrix& a, const PairwiseMatrix& b) {
        return a.x_ == b.x_ && a.t_ == b.t_ && a.rows_ == b.rows_;
    }

private:
    EventualitySet x_;
    CaseTypeSet t_;
    Matrix rows_;  // row-major over ordered pairs
};

/// Sum_t v(x,t) J(t) for every eventuality.
inline Vector scores(const SimilarityMatrix& v, const Database& j) {
    const Vector d = j.dense(v.case_types());
    Vector out;
    out.reserve(v.m());
    for (const auto& r : v.rows()) out.push_back(dot(r, d));
    return out;
}

/// `less` means x is strictly less plausible than y.
inline std::strong_ordering rank_pair(const SimilarityMatrix& v, const std::string& x, const std::string& y,
                                      const Database& j) {
    const Vector d = j.dense(v.case_types());
    const int s = sign(dot(v.row(x), d) - dot(v.row(y), d));
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

inline Ranking rank_all(const SimilarityMatrix& v, const Database& j) {
    const Vector s = scores(v, j);
    std::vector<std::vector<char>> leq(v.m(), std::vector<char>(v.m(), 0));
    for (std::size_t a = 0; a < v.m(); ++a)
        for (std::size_t b = 0; b < v.m(); ++b) leq[a][b] = s[a] <= s[b];
    return Ranking(v.eventualities().labels(), std::move(leq));
}

inline PairwiseMatrix pairwise_from_global(const SimilarityMatrix& v) {
    std::map<std::pair<std::string, std::string>, Vector> rows;
    const auto& x = v.eventualities();
    for (std::size_t i = 0; i < v.m(); ++i)
        for (std::size_t j = i + 1; j < v.m(); ++j) rows.emplace(std::make_pair(x[i], x[j]), subtract(v.row(j), v.row(i)));
    return PairwiseMatrix(x.labels(), v.case_types().ordinary().labels(), rows);
}

/// Sign of <v^(x,y), J>; nonnegative means x <=_J y.
inline int eval_pairwise(const PairwiseMatrix& vp, const std::string& x, const std::string& y, const Database& j) {
    return sign(dot(vp.row(x, y), j.dense(vp.case_types())));
}

/// The ranking induced on all of X by a pairwise matrix (possibly intransitive).
inline Ranking rank_pairwise(const PairwiseMatrix& vp, const Database& j) {
    const Vector d = j.dense(vp.case_types());
    const std::size_t m = vp.m();
    std::vector<std::vector<char>> leq(m, std::vector<char>(m, 0));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) leq[a][b] = a == b || sign(dot(vp.row(a, b), d)) >= 0;
    return Ranking(vp.eventualities().labels(), std::move(leq));
}

/// First ordered triple (x,y,z) with v^(x,z) != v^(x,y) + v^(y,z), as indices.
inline std::optional<std::array<std::size_t, 3>> first_jacobi_violation(const PairwiseMatrix& vp) {
    const std::size_t m = vp.m();
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            for (std::size_t z = 0; z < m; ++z) {
                if (x == y || y == z || x == z) continue;
                if (vp.row(x, z) != add(vp.row(x, y), vp.row(y, z))) return std::array<std::size_t, 3>{x, y, z};
            }
    return std::nullopt;
}

inline bool satisfies_jacobi(const PairwiseMatrix& vp) { return !first_jacobi_violation(vp).has_value(); }

/// A ranking family: an oracle from databases to rankings, optionally backed by a matrix.
struct RankingFamily {
    using Generator = std::variant<std::monostate, SimilarityMatrix, PairwiseMatrix>;

    EventualitySet eventualities;
    CaseTypeSet case_types;
    std::function<Ranking(const Database&)> oracle;
    Generator generator;

    Ranking rank(const Database& j) const { return oracle(j); }
    bool matrix_generated() const noexcept { return !std::holds_alternative<std::monostate>(generator); }
    /// Similarity matrices always give transitive rankings; pairwise ones need not.
    bool similarity_generated() const noexcept { return std::holds_alternative<SimilarityMatrix>(generator); }

    static RankingFamily from_similarity(const SimilarityMatrix& v) {
        return {v.eventualities(), v.case_types(), [v](const Database& j) { return rank_all(v, j); }, v};
    }

    static RankingFamily from_pairwise(const PairwiseMatrix& vp) {
        return {vp.eventualities(), vp.case_types(), [vp](const Database& j) { return rank_pairwise(vp, j); }, vp};
    }

    static RankingFamily from_oracle(EventualitySet x, CaseTypeSet t, std::function<Ranking(const Database&)> f) {
        return {std::move(x), std::move(t), std::move(f), std::monostate{}};
    }
};

}  // namespace prudentia
