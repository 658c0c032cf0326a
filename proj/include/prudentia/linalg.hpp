#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "prudentia/rational.hpp"

namespace prudentia::linalg {

/*
 * Exact Gauss-Jordan elimination over an ordered field.
 *
 * Every routine here assumes exact arithmetic: a pivot is "nonzero" only when
 * it compares unequal to Field(0). Instantiating with a floating-point type
 * compiles but gives no guarantees.
 */

template <typename Field>
using FieldVector = std::vector<Field>;

template <typename Field>
using FieldMatrix = std::vector<FieldVector<Field>>;

template <typename Field>
struct Echelon {
    FieldMatrix<Field> rows;           // reduced rows, zero rows dropped
    std::vector<std::size_t> pivots;   // pivot column of each kept row
};

/// Reduced row echelon form. `cols` is needed when `m` has no rows.
template <typename Field>
Echelon<Field> reduce(FieldMatrix<Field> m, std::size_t cols) {
    Echelon<Field> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == Field(0)) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        const Field inv = Field(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == Field(0)) continue;
            const Field f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rows = std::move(m);
    return out;
}

template <typename Field>
std::size_t rank(const FieldMatrix<Field>& m, std::size_t cols) {
    return reduce<Field>(m, cols).rows.size();
}

inline std::size_t rank(const Matrix& m) {
    if (m.empty()) return 0;
    return rank<Rational>(m, m.front().size());
}

/// Basis of {x : m x = 0}, one vector per free column, in column order.
template <typename Field>
FieldMatrix<Field> nullspace(const FieldMatrix<Field>& m, std::size_t cols) {
    const auto e = reduce<Field>(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    FieldMatrix<Field> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        FieldVector<Field> x(cols, Field(0));
        x[f] = Field(1);
        for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

/// True when `v` lies in the row space of `m`.
template <typename Field>
bool in_span(const FieldMatrix<Field>& m, const FieldVector<Field>& v) {
    const std::size_t cols = v.size();
    auto ext = m;
    ext.push_back(v);
    return rank<Field>(ext, cols) == rank<Field>(m, cols);
}

/// Coefficients c with sum_i c_i basis[i] = target, when the combination exists.
/// If `basis` is linearly dependent an arbitrary solution is returned.
template <typename Field>
std::optional<FieldVector<Field>> combination(const FieldMatrix<Field>& basis, const FieldVector<Field>& target) {
    const std::size_t k = basis.size();
    const std::size_t n = target.size();
    // Augmented system with one row per coordinate: [basis^T | target].
    FieldMatrix<Field> aug(n, FieldVector<Field>(k + 1, Field(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
        aug[i][k] = target[i];
    }
    const auto e = reduce<Field>(aug, k + 1);
    FieldVector<Field> x(k, Field(0));
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == k) return std::nullopt;  // inconsistent
        x[e.pivots[i]] = e.rows[i][k];
    }
    return x;
}

/// Linear dependence of two vectors (a zero vector is collinear with anything).
template <typename Field>
bool collinear(const FieldVector<Field>& a, const FieldVector<Field>& b) {
    return rank<Field>(FieldMatrix<Field>{a, b}, a.size()) < 2;
}

/// If b = c * a for some scalar c and a != 0, returns c.
template <typename Field>
std::optional<Field> ratio(const FieldVector<Field>& a, const FieldVector<Field>& b) {
    std::optional<Field> c;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Field(0)) {
            if (b[i] != Field(0)) return std::nullopt;
            continue;
        }
        const Field q = b[i] / a[i];
        if (c && *c != q) return std::nullopt;
        c = q;
    }
    return c;
}

/// Canonical basis of the row space (RREF rows); equal spaces give equal output.
inline Matrix canonical_row_space(const Matrix& m, std::size_t cols) {
    return reduce<Rational>(m, cols).rows;
}

}  // namespace prudentia::linalg
