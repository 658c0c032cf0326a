#pragma once

// Shared fixtures and independent oracles for the test binaries. Nothing here
// calls into the arrangement or representation code it is used to check.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prudentia/core.hpp"
#include "prudentia/rational.hpp"
#include "prudentia/ranking_engine.hpp"

namespace testsupport {

using prudentia::Database;
using prudentia::Matrix;
using prudentia::PairwiseMatrix;
using prudentia::Rational;
using prudentia::SimilarityMatrix;
using prudentia::Vector;

inline Vector ints(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline SimilarityMatrix example5() {
    return SimilarityMatrix({"x", "y", "z"}, {"s", "t"}, {ints({0, 0}), ints({1, -1}), ints({3, -2})});
}

inline PairwiseMatrix pairwise3(const std::vector<std::string>& types, Vector xy, Vector yz, Vector xz) {
    return PairwiseMatrix({"x", "y", "z"}, types,
                          {{{"x", "y"}, std::move(xy)}, {{"y", "z"}, std::move(yz)}, {{"x", "z"}, std::move(xz)}});
}

// The three-eventuality, three-case-type pair with and without a Jacobi rescaling.
inline PairwiseMatrix prudent_triple() {
    return pairwise3({"s", "t", "u"}, ints({1, -1, 0}), ints({0, 1, -1}), ints({2, -1, -1}));
}
inline PairwiseMatrix rank3_triple() {
    return pairwise3({"s", "t", "u"}, ints({1, -1, 0}), ints({0, 1, -1}), ints({1, -1, 1}));
}

inline SimilarityMatrix four_jac() {
    return SimilarityMatrix({"w", "x", "y", "z"}, {"s", "t", "u", "r"},
                            {ints({0, 0, 1, -1}), ints({0, 0, 0, 0}), ints({1, -1, 0, 0}), ints({0, 1, -1, 0})});
}

inline Database db(std::initializer_list<std::pair<const char*, long>> counts) {
    std::map<std::string, Rational> m;
    for (const auto& [k, v] : counts) m.emplace(k, Rational(v));
    return Database(std::move(m));
}

inline std::vector<std::string> labels(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    long between(long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Vector vec(std::size_t n, long lo, long hi) {
        Vector v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(between(lo, hi));
        return v;
    }
};

inline SimilarityMatrix random_similarity(Rng& rng, std::size_t m, std::size_t n, long bound = 3) {
    Matrix rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(rng.vec(n, -bound, bound));
    return SimilarityMatrix(labels("e", m), labels("c", n), rows);
}

inline PairwiseMatrix random_pairwise(Rng& rng, std::size_t m, std::size_t n, long bound = 3) {
    const auto x = labels("e", m);
    std::map<std::pair<std::string, std::string>, Vector> rows;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) rows.emplace(std::make_pair(x[i], x[j]), rng.vec(n, -bound, bound));
    return PairwiseMatrix(x, labels("c", n), rows);
}

// ---------------------------------------------------------------------------
// Oracles

// Plain fraction-free elimination rank over the integers scaled from rationals.
inline std::size_t oracle_rank(Matrix m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            const Rational f = m[i][c];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] * m[r][c] - f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Regions of a central arrangement from the rank generating sum, without any poset.
inline long oracle_zaslavsky_full(const Matrix& normals) {
    const std::size_t h = normals.size();
    long total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h); ++mask) {
        Matrix sub;
        for (std::size_t i = 0; i < h; ++i)
            if (mask >> i & 1) sub.push_back(normals[i]);
        const long k = static_cast<long>(sub.size()) - static_cast<long>(oracle_rank(sub));
        total += k % 2 == 0 ? 1 : -1;
    }
    return total;
}

// Distinct strict sign vectors seen on an integer grid; a lower bound on the regions.
inline std::set<std::vector<int>> grid_sign_vectors(const Matrix& normals, std::size_t dim, long lo, long hi) {
    std::set<std::vector<int>> out;
    std::vector<long> p(dim, lo);
    for (;;) {
        std::vector<int> s;
        bool strict = true;
        for (const auto& nrm : normals) {
            Rational d = 0;
            for (std::size_t i = 0; i < dim; ++i) d += nrm[i] * p[i];
            const int sg = sgn(d);
            if (sg == 0) {
                strict = false;
                break;
            }
            s.push_back(sg);
        }
        if (strict) out.insert(s);
        std::size_t i = 0;
        while (i < dim && p[i] == hi) p[i++] = lo;
        if (i == dim) break;
        ++p[i];
    }
    return out;
}

// Does <v, J> take both strict signs for some strictly positive J in {1..5}^n?
inline bool oracle_two_signs(const Vector& v) {
    const std::size_t n = v.size();
    bool pos = false, neg = false;
    std::vector<long> p(n, 1);
    for (;;) {
        Rational d = 0;
        for (std::size_t i = 0; i < n; ++i) d += v[i] * p[i];
        pos = pos || d > 0;
        neg = neg || d < 0;
        std::size_t i = 0;
        while (i < n && p[i] == 5) p[i++] = 1;
        if (i == n) break;
        ++p[i];
    }
    return pos && neg;
}

inline bool oracle_two_diverse(const PairwiseMatrix& vp) {
    for (std::size_t a = 0; a < vp.m(); ++a)
        for (std::size_t b = a + 1; b < vp.m(); ++b)
            if (!oracle_two_signs(vp.row(a, b))) return false;
    return true;
}

}  // namespace testsupport
