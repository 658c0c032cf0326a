#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prudentia/error.hpp"
#include "prudentia/rational.hpp"

namespace prudentia {

inline constexpr const char* kDefaultFreeLabel = "__free__";

/// Sorted set of distinct string labels with O(1) index lookup.
class LabelSet {
public:
    LabelSet() = default;

    explicit LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw PreconditionViolated("duplicate label in label set");
        for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
    }

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    const std::string& operator[](std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    auto begin() const noexcept { return labels_.begin(); }
    auto end() const noexcept { return labels_.end(); }

    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw UnknownLabel(label);
        return it->second;
    }

    friend bool operator==(const LabelSet& a, const LabelSet& b) { return a.labels_ == b.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// The eventualities X; never empty.
class EventualitySet : public LabelSet {
public:
    EventualitySet() = default;
    explicit EventualitySet(std::vector<std::string> labels) : LabelSet(std::move(labels)) {
        if (empty()) throw PreconditionViolated("an eventuality set needs at least one label");
    }
};

/// Case types T plus an optional free case, which is always the last column.
class CaseTypeSet {
public:
    CaseTypeSet() = default;

    explicit CaseTypeSet(std::vector<std::string> labels, std::optional<std::string> free_case = std::nullopt)
        : ordinary_(std::move(labels)), free_case_(std::move(free_case)) {
        if (ordinary_.empty()) throw PreconditionViolated("a case-type set needs at least one label");
        if (free_case_ && ordinary_.contains(*free_case_))
            throw PreconditionViolated("free case label collides with an ordinary case type");
    }

    /// Number of ordinary case types n.
    std::size_t size() const noexcept { return ordinary_.size(); }
    /// Number of columns, counting the free case when present.
    std::size_t width() const noexcept { return ordinary_.size() + (free_case_ ? 1 : 0); }

    const LabelSet& ordinary() const noexcept { return ordinary_; }
    const std::optional<std::string>& free_case() const noexcept { return free_case_; }
    bool has_free_case() const noexcept { return free_case_.has_value(); }

    const std::string& column_label(std::size_t i) const {
        if (i < ordinary_.size()) return ordinary_[i];
        if (free_case_ && i == ordinary_.size()) return *free_case_;
        throw PreconditionViolated("column index out of range");
    }

    std::size_t column_index(const std::string& label) const {
        if (free_case_ && label == *free_case_) return ordinary_.size();
        return ordinary_.index_of(label);
    }

    std::vector<std::string> column_labels() const {
        auto out = ordinary_.labels();
        if (free_case_) out.push_back(*free_case_);
        return out;
    }

    CaseTypeSet with_free_case(const std::string& label = kDefaultFreeLabel) const {
        return CaseTypeSet(ordinary_.labels(), label);
    }

    friend bool operator==(const CaseTypeSet& a, const CaseTypeSet& b) {
        return a.ordinary_ == b.ordinary_ && a.free_case_ == b.free_case_;
    }

private:
    LabelSet ordinary_;
    std::optional<std::string> free_case_;
};

/// A database as a sparse, nonnegative rational counting vector over case types.
class Database {
public:
    Database() = default;

    explicit Database(std::map<std::string, Rational> counts) {
        for (auto& [label, q] : counts) {
            if (q < 0) throw PreconditionViolated("negative count for case type '" + label + "'");
            if (q != 0) counts_.emplace(label, q);
        }
    }

    static Database from_dense(const CaseTypeSet& types, const Vector& v) {
        std::map<std::string, Rational> m;
        for (std::size_t i = 0; i < v.size(); ++i) m.emplace(types.column_label(i), v[i]);
        return Database(std::move(m));
    }

    const std::map<std::string, Rational>& counts() const noexcept { return counts_; }

    Rational count(const std::string& label) const {
        auto it = counts_.find(label);
        return it == counts_.end() ? Rational(0) : it->second;
    }

    std::vector<std::string> support() const {
        std::vector<std::string> out;
        for (const auto& [label, q] : counts_) out.push_back(label);
        return out;
    }

    bool is_zero() const noexcept { return counts_.empty(); }

    Rational total_mass() const {
        Rational s = 0;
        for (const auto& [label, q] : counts_) s += q;
        return s;
    }

    /// Dense view in column order; throws UnknownLabel for foreign case types.
    Vector dense(const CaseTypeSet& types) const {
        Vector out(types.width(), Rational(0));
        for (const auto& [label, q] : counts_) out[types.column_index(label)] = q;
        return out;
    }

    Database scaled(const Rational& q) const {
        if (q < 0) throw PreconditionViolated("databases scale by nonnegative factors only");
        std::map<std::string, Rational> m;
        for (const auto& [label, c] : counts_) m.emplace(label, c * q);
        return Database(std::move(m));
    }

    /// lambda * a + mu * b.
    static Database mix(const Rational& lambda, const Database& a, const Rational& mu, const Database& b) {
        std::map<std::string, Rational> m;
        for (const auto& [label, c] : a.counts_) m[label] += lambda * c;
        for (const auto& [label, c] : b.counts_) m[label] += mu * c;
        return Database(std::move(m));
    }

    friend bool operator==(const Database& a, const Database& b) { return a.counts_ == b.counts_; }
    friend bool operator<(const Database& a, const Database& b) { return a.counts_ < b.counts_; }

private:
    std::map<std::string, Rational> counts_;
};

/// Least positive integer k with k*J integral, and L = k*J.
inline std::pair<mpz_class, Database> canonicalize_database(const Database& db) {
    mpz_class k = 1;
    for (const auto& [label, q] : db.counts()) {
        mpz_class d = q.get_den();
        mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), d.get_mpz_t());
    }
    return {k, db.scaled(Rational(k))};
}

/// A binary relation "x is at most as plausible as y" on a finite domain.
class Ranking {
public:
    Ranking() = default;

    /// `leq[i][j]` means domain[i] <= domain[j]; domain order is kept as given.
    Ranking(std::vector<std::string> domain, std::vector<std::vector<char>> leq)
        : domain_(std::move(domain)), leq_(std::move(leq)) {
        if (leq_.size() != domain_.size()) throw PreconditionViolated("ranking matrix does not match domain");
        for (const auto& row : leq_)
            if (row.size() != domain_.size()) throw PreconditionViolated("ranking matrix is not square");
        index_domain();
    }

    Ranking(std::vector<std::string> domain, const std::vector<std::pair<std::string, std::string>>& pairs)
        : domain_(std::move(domain)) {
        leq_.assign(domain_.size(), std::vector<char>(domain_.size(), 0));
        index_domain();
        for (const auto& [x, y] : pairs) leq_[index_of(x)][index_of(y)] = 1;
    }

    /// Parses a CAR list: ascending plausibility, one repeated label closing a cycle.
    static Ranking from_car(const std::vector<std::string>& car);

    const std::vector<std::string>& domain() const noexcept { return domain_; }
    std::size_t size() const noexcept { return domain_.size(); }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw UnknownLabel(label);
        return it->second;
    }

    bool leq(std::size_t i, std::size_t j) const { return leq_[i][j] != 0; }
    bool leq(const std::string& x, const std::string& y) const { return leq(index_of(x), index_of(y)); }
    bool strictly_below(std::size_t i, std::size_t j) const { return leq(i, j) && !leq(j, i); }
    bool strictly_below(const std::string& x, const std::string& y) const {
        return strictly_below(index_of(x), index_of(y));
    }
    bool tied(std::size_t i, std::size_t j) const { return leq(i, j) && leq(j, i); }
    bool tied(const std::string& x, const std::string& y) const { return tied(index_of(x), index_of(y)); }

    std::vector<std::pair<std::string, std::string>> pairs() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (leq(i, j)) out.emplace_back(domain_[i], domain_[j]);
        return out;
    }

    /// R intersected with its inverse.
    std::vector<std::pair<std::string, std::string>> symmetric_part() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (tied(i, j)) out.emplace_back(domain_[i], domain_[j]);
        return out;
    }

    /// R minus its inverse.
    std::vector<std::pair<std::string, std::string>> asymmetric_part() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (strictly_below(i, j)) out.emplace_back(domain_[i], domain_[j]);
        return out;
    }

    /// Complete means every pair, including (x, x), is comparable.
    bool is_complete() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i; j < size(); ++j)
                if (!leq(i, j) && !leq(j, i)) return false;
        return true;
    }

    bool is_antisymmetric() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (tied(i, j)) return false;
        return true;
    }

    /// First violating triple (x <= y <= z but not x <= z), if any.
    std::optional<std::array<std::size_t, 3>> transitivity_violation() const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) {
                if (!leq(i, j)) continue;
                for (std::size_t k = 0; k < size(); ++k)
                    if (leq(j, k) && !leq(i, k)) return std::array<std::size_t, 3>{i, j, k};
            }
        return std::nullopt;
    }

    bool is_transitive() const { return !transitivity_violation().has_value(); }

    /// Complete, transitive and antisymmetric.
    bool is_total() const { return is_complete() && is_antisymmetric() && is_transitive(); }

    Ranking inverse() const {
        std::vector<std::vector<char>> inv(size(), std::vector<char>(size(), 0));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) inv[i][j] = leq_[j][i];
        return Ranking(domain_, std::move(inv));
    }

    /// Restriction to a subset of the domain (kept in the subset's order).
    Ranking restrict_to(const std::vector<std::string>& subset) const {
        std::vector<std::vector<char>> m(subset.size(), std::vector<char>(subset.size(), 0));
        for (std::size_t a = 0; a < subset.size(); ++a)
            for (std::size_t b = 0; b < subset.size(); ++b) m[a][b] = leq_[index_of(subset[a])][index_of(subset[b])];
        return Ranking(subset, std::move(m));
    }

    /// Equality as relations; domain order is irrelevant.
    friend bool operator==(const Ranking& a, const Ranking& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!b.index_.count(a.domain_[i])) return false;
            for (std::size_t j = 0; j < a.size(); ++j)
                if (a.leq(i, j) != b.leq(b.index_of(a.domain_[i]), b.index_of(a.domain_[j]))) return false;
        }
        return true;
    }

private:
    void index_domain() {
        index_.clear();
        for (std::size_t i = 0; i < domain_.size(); ++i)
            if (!index_.emplace(domain_[i], i).second) throw PreconditionViolated("duplicate label in ranking domain");
    }

    std::vector<std::string> domain_;
    std::vector<std::vector<char>> leq_;
    std::unordered_map<std::string, std::size_t> index_;
};

namespace detail {

/// Strongly connected components of the strict tournament, listed bottom-up.
inline std::vector<std::vector<std::size_t>> tournament_components(const Ranking& r) {
    const std::size_t n = r.size();
    // reach[i][j]: j reachable from i along strict edges (i below j).
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (r.strictly_below(i, j)) reach[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    std::vector<std::vector<std::size_t>> comps;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> c;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i]) {
                c.push_back(j);
                seen[j] = 1;
            }
        comps.push_back(std::move(c));
    }
    // In a tournament the condensation is a chain; sort it bottom-up.
    std::sort(comps.begin(), comps.end(), [&](const auto& a, const auto& b) { return r.strictly_below(a[0], b[0]); });
    return comps;
}

}  // namespace detail

/*
 * CAR list of a complete antisymmetric ranking on at most four elements.
 * Labels appear in ascending plausibility; a cyclic block is written starting
 * from its earliest domain label and closed by repeating that label, so
 * x<y<z<x gives (x,y,z,x) and the same cycle below a dominant w gives
 * (x,y,z,x,w). A four-element cycle is written by its unique Hamiltonian cycle.
 */
inline std::vector<std::string> car_list(const Ranking& r) {
    if (r.size() == 0 || r.size() > 4) throw NotCar("CAR lists are defined for domains of size 1 to 4");
    if (!r.is_complete()) throw NotCar("ranking is not complete");
    if (!r.is_antisymmetric()) throw NotCar("ranking is not antisymmetric");
    std::vector<std::string> out;
    for (auto comp : detail::tournament_components(r)) {
        if (comp.size() == 1) {
            out.push_back(r.domain()[comp[0]]);
            continue;
        }
        std::sort(comp.begin(), comp.end());
        std::vector<std::size_t> tail(comp.begin() + 1, comp.end());
        do {
            bool ok = r.strictly_below(comp[0], tail.front()) && r.strictly_below(tail.back(), comp[0]);
            for (std::size_t i = 0; ok && i + 1 < tail.size(); ++i) ok = r.strictly_below(tail[i], tail[i + 1]);
            if (ok) break;
        } while (std::next_permutation(tail.begin(), tail.end()));
        out.push_back(r.domain()[comp[0]]);
        for (auto t : tail) out.push_back(r.domain()[t]);
        out.push_back(r.domain()[comp[0]]);
    }
    return out;
}

inline Ranking Ranking::from_car(const std::vector<std::string>& car) {
    std::vector<std::string> domain;
    std::optional<std::size_t> open, close;
    for (std::size_t i = 0; i < car.size(); ++i) {
        auto it = std::find(domain.begin(), domain.end(), car[i]);
        if (it == domain.end()) {
            domain.push_back(car[i]);
            continue;
        }
        if (close) throw ParseError("CAR list repeats more than one label");
        open = static_cast<std::size_t>(it - domain.begin());
        close = i;
    }
    if (domain.empty()) throw ParseError("empty CAR list");
    const std::size_t n = domain.size();
    std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) leq[i][j] = 1;  // ascending order
    if (open) {
        const std::size_t len = *close - *open;
        if (len == 4 || len > 4) throw ParseError("a four-element cycle does not determine its chords");
        if (len < 3) throw ParseError("a CAR cycle needs three elements");
        // the cycle's last element sits strictly below its first
        leq[*open][*open + len - 1] = 0;
        leq[*open + len - 1][*open] = 1;
    }
    return Ranking(std::move(domain), std::move(leq));
}

}  // namespace prudentia
