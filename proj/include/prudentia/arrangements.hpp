#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/linalg.hpp"
#include "prudentia/lp.hpp"
#include "prudentia/rational.hpp"
#include "prudentia/ranking_engine.hpp"

namespace prudentia {

enum class Ambient { FullSpace, PositiveOrthant };

inline const char* to_string(Ambient a) { return a == Ambient::FullSpace ? "full" : "positive"; }

struct Budget {
    std::size_t max_dim = 8;
    std::size_t max_hyperplanes = 12;
};

/// A pair (x,y) whose row is `scale` times the hyperplane's normal.
struct HyperplaneMember {
    std::string x;
    std::string y;
    Rational scale;
};

struct Hyperplane {
    Vector normal;  // primitive integer vector
    std::vector<HyperplaneMember> members;

    std::string label() const {
        if (members.empty()) return "h";
        return "{" + members.front().x + "," + members.front().y + "}";
    }
};

class Arrangement {
public:
    Arrangement() = default;

    /// Arrangement of raw normals, merged up to nonzero scaling.
    static Arrangement from_normals(const Matrix& normals, std::size_t dim, Ambient ambient) {
        Arrangement a;
        a.dim_ = dim;
        a.ambient_ = ambient;
        for (const auto& v : normals) a.insert(v, std::nullopt);
        return a;
    }

    const std::vector<Hyperplane>& hyperplanes() const noexcept { return planes_; }
    std::size_t size() const noexcept { return planes_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    Ambient ambient() const noexcept { return ambient_; }
    const std::vector<std::string>& eventualities() const noexcept { return y_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    Matrix normals() const {
        Matrix out;
        for (const auto& h : planes_) out.push_back(h.normal);
        return out;
    }

    Arrangement with_ambient(Ambient a) const {
        Arrangement copy = *this;
        copy.ambient_ = a;
        return copy;
    }

private:
    friend Arrangement build_arrangement(const PairwiseMatrix&, const std::vector<std::string>&, Ambient);

    void insert(const Vector& row, std::optional<HyperplaneMember> member) {
        if (is_zero(row)) throw ZeroNormal("hyperplane normal is zero");
        if (row.size() != dim_) throw PreconditionViolated("normal has the wrong dimension");
        for (auto& h : planes_) {
            if (auto c = linalg::ratio<Rational>(h.normal, row)) {
                if (member) h.members.push_back({member->x, member->y, *c});
                return;
            }
        }
        Hyperplane h;
        h.normal = primitive_integer(row);
        if (member) {
            h.members.push_back({member->x, member->y, *linalg::ratio<Rational>(h.normal, row)});
        }
        planes_.push_back(std::move(h));
    }

    std::vector<Hyperplane> planes_;
    std::size_t dim_ = 0;
    Ambient ambient_ = Ambient::FullSpace;
    std::vector<std::string> y_;
    std::vector<std::string> warnings_;
};

/// Hyperplanes H^{x,y} for the pairs of Y, one per collinearity class.
inline Arrangement build_arrangement(const PairwiseMatrix& vp, const std::vector<std::string>& subset, Ambient ambient) {
    Arrangement a;
    a.dim_ = vp.width();
    a.ambient_ = ambient;
    a.y_ = subset;
    std::sort(a.y_.begin(), a.y_.end());
    if (std::adjacent_find(a.y_.begin(), a.y_.end()) != a.y_.end())
        throw PreconditionViolated("subset repeats an eventuality");
    for (std::size_t i = 0; i < a.y_.size(); ++i)
        for (std::size_t j = i + 1; j < a.y_.size(); ++j) {
            const auto& row = vp.row(a.y_[i], a.y_[j]);
            if (is_zero(row)) throw ZeroNormal("row (" + a.y_[i] + "," + a.y_[j] + ") is zero");
            a.insert(row, HyperplaneMember{a.y_[i], a.y_[j], 0});
        }
    if (a.y_.size() == 4 && (a.size() < 4 || a.size() > 6))
        a.warnings_.push_back("four eventualities gave " + std::to_string(a.size()) + " hyperplanes, outside 4..6");
    return a;
}

// ---------------------------------------------------------------------------
// Intersection poset

struct Flat {
    std::vector<std::size_t> hyperplanes;  // every hyperplane containing the flat
    std::size_t rank = 0;                  // codimension
    Matrix basis;                          // basis of the solution space
    long mobius = 0;
};

struct IntersectionPoset {
    Ambient ambient = Ambient::FullSpace;
    std::size_t dim = 0;
    std::vector<Flat> elements;  // by rank, then hyperplane set; elements[0] is the ambient

    /// True when flat a strictly contains flat b as a set.
    bool strictly_contains(std::size_t a, std::size_t b) const {
        const auto& ha = elements[a].hyperplanes;
        const auto& hb = elements[b].hyperplanes;
        return ha.size() < hb.size() && std::includes(hb.begin(), hb.end(), ha.begin(), ha.end());
    }
};

namespace detail {

inline void check_budget(const Arrangement& arr, const Budget& b, bool hyperplanes_too) {
    if (arr.dim() > b.max_dim)
        throw BudgetExceeded("dimension " + std::to_string(arr.dim()) + " exceeds budget " + std::to_string(b.max_dim));
    if (hyperplanes_too && arr.size() > b.max_hyperplanes)
        throw BudgetExceeded("hyperplane count " + std::to_string(arr.size()) + " exceeds budget " +
                             std::to_string(b.max_hyperplanes));
}

inline Matrix rows_of(const Arrangement& arr, const std::vector<std::size_t>& idx) {
    Matrix m;
    for (auto i : idx) m.push_back(arr.hyperplanes()[i].normal);
    return m;
}

inline bool meets_open_orthant(const Matrix& equalities, std::size_t dim, lp::Counters* c = nullptr) {
    return lp::strict_cone_point(equalities, {}, true, dim, c).has_value();
}

}  // namespace detail

inline IntersectionPoset intersection_poset(const Arrangement& arr, const Budget& budget = {}) {
    detail::check_budget(arr, budget, false);
    const std::size_t n = arr.dim();
    IntersectionPoset poset;
    poset.ambient = arr.ambient();
    poset.dim = n;

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> frontier{{}};
    seen.insert({});
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& flat : frontier) {
            Flat f;
            f.hyperplanes = flat;
            const Matrix eqs = detail::rows_of(arr, flat);
            f.rank = linalg::rank<Rational>(eqs, n);
            f.basis = linalg::nullspace<Rational>(eqs, n);
            poset.elements.push_back(f);
            for (std::size_t h = 0; h < arr.size(); ++h) {
                if (std::binary_search(flat.begin(), flat.end(), h)) continue;
                Matrix gen = eqs;
                gen.push_back(arr.hyperplanes()[h].normal);
                std::vector<std::size_t> closure;
                for (std::size_t k = 0; k < arr.size(); ++k)
                    if (linalg::in_span<Rational>(gen, arr.hyperplanes()[k].normal)) closure.push_back(k);
                if (!seen.insert(closure).second) continue;
                if (arr.ambient() == Ambient::PositiveOrthant && !detail::meets_open_orthant(detail::rows_of(arr, closure), n))
                    continue;
                next.push_back(std::move(closure));
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    std::stable_sort(poset.elements.begin(), poset.elements.end(), [](const Flat& a, const Flat& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.hyperplanes < b.hyperplanes;
    });
    return poset;
}

/// mu(ambient) = 1, mu(A) = -sum of mu(B) over flats B strictly containing A.
inline std::vector<long> mobius(IntersectionPoset& poset) {
    std::vector<long> mu(poset.elements.size(), 0);
    for (std::size_t a = 0; a < poset.elements.size(); ++a) {
        if (poset.elements[a].hyperplanes.empty()) {
            mu[a] = 1;
        } else {
            long s = 0;
            for (std::size_t b = 0; b < a; ++b)
                if (poset.strictly_contains(b, a)) s += mu[b];
            mu[a] = -s;
        }
        poset.elements[a].mobius = mu[a];
    }
    return mu;
}

inline long count_regions_mobius(IntersectionPoset& poset) {
    long total = 0;
    for (long m : mobius(poset)) total += m < 0 ? -m : m;
    return total;
}

/// Signed sum over central subarrangements of (-1)^(|A| - rank A).
inline long count_regions_rank(const Arrangement& arr, const Budget& budget = {}, lp::Counters* counters = nullptr) {
    detail::check_budget(arr, budget, true);
    const std::size_t h = arr.size();
    long total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < h; ++i)
            if (mask >> i & 1) idx.push_back(i);
        const Matrix eqs = detail::rows_of(arr, idx);
        if (arr.ambient() == Ambient::PositiveOrthant && !detail::meets_open_orthant(eqs, arr.dim(), counters)) continue;
        const long r = static_cast<long>(linalg::rank<Rational>(eqs, arr.dim()));
        total += (static_cast<long>(idx.size()) - r) % 2 == 0 ? 1 : -1;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Chambers

struct Chamber {
    std::vector<int> signs;  // +1 / -1 per hyperplane
    Vector witness;          // strictly inside; strictly positive in the orthant ambient
    std::optional<Ranking> ranking;
    std::optional<std::vector<std::string>> car;
};

namespace detail {

inline Ranking chamber_ranking(const Arrangement& arr, const std::vector<int>& signs) {
    const auto& y = arr.eventualities();
    std::vector<std::vector<char>> leq(y.size(), std::vector<char>(y.size(), 0));
    for (std::size_t i = 0; i < y.size(); ++i) leq[i][i] = 1;
    for (std::size_t h = 0; h < arr.size(); ++h)
        for (const auto& m : arr.hyperplanes()[h].members) {
            const auto i = static_cast<std::size_t>(std::find(y.begin(), y.end(), m.x) - y.begin());
            const auto j = static_cast<std::size_t>(std::find(y.begin(), y.end(), m.y) - y.begin());
            const bool up = sign(m.scale) * signs[h] > 0;  // <v^(x,y), J> > 0
            leq[i][j] = up;
            leq[j][i] = !up;
        }
    return Ranking(y, std::move(leq));
}

}  // namespace detail

/// Every feasible sign vector, found by depth-first search with exact LP pruning ('+' first).
inline std::vector<Chamber> enumerate_chambers(const Arrangement& arr, const Budget& budget = {},
                                               lp::Counters* counters = nullptr) {
    detail::check_budget(arr, budget, true);
    const bool positive = arr.ambient() == Ambient::PositiveOrthant;
    const std::size_t h = arr.size();
    std::vector<Chamber> out;
    std::vector<int> signs;
    Matrix strict;

    // Labels come from a full Y^2 only when the arrangement was built from pairs.
    bool labelled = !arr.eventualities().empty();
    for (const auto& p : arr.hyperplanes()) labelled = labelled && !p.members.empty();

    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (depth == h) {
            auto w = lp::strict_cone_point({}, strict, positive, arr.dim(), counters);
            Chamber c;
            c.signs = signs;
            c.witness = *w;
            if (labelled) {
                c.ranking = detail::chamber_ranking(arr, signs);
                if (c.ranking->size() <= 4) c.car = car_list(*c.ranking);
            }
            out.push_back(std::move(c));
            return;
        }
        for (int s : {+1, -1}) {
            strict.push_back(scale(arr.hyperplanes()[depth].normal, Rational(s)));
            signs.push_back(s);
            if (lp::strict_cone_point({}, strict, positive, arr.dim(), counters)) self(self, depth + 1);
            signs.pop_back();
            strict.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

/// Two chambers with opposite sign vectors whose rankings are total and mutually inverse.
inline std::pair<Chamber, Chamber> find_polar_pair(const Arrangement& arr, const Budget& budget = {}) {
    const auto chambers = enumerate_chambers(arr, budget);
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < chambers.size(); ++i) index.emplace(chambers[i].signs, i);
    for (const auto& c : chambers) {
        if (!c.ranking || !c.ranking->is_total()) continue;
        std::vector<int> opposite = c.signs;
        for (auto& s : opposite) s = -s;
        auto it = index.find(opposite);
        if (it == index.end()) continue;
        const auto& d = chambers[it->second];
        if (d.ranking && d.ranking->is_total() && *d.ranking == c.ranking->inverse()) return {c, d};
    }
    throw NotFound("no antipodal pair of total chambers");
}

}  // namespace prudentia
