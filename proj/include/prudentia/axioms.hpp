#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "prudentia/arrangements.hpp"
#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/linalg.hpp"
#include "prudentia/rational.hpp"
#include "prudentia/ranking_engine.hpp"

namespace prudentia {

enum class Axiom { A0, A1, A2, A3, Div2, CondDiv2, Partial3Div, KDiv };
enum class Verdict { Holds, HoldsOnSample, Fails };

inline std::string to_string(Axiom a, int k = 0) {
    switch (a) {
        case Axiom::A0: return "A0";
        case Axiom::A1: return "A1";
        case Axiom::A2: return "A2";
        case Axiom::A3: return "A3";
        case Axiom::Div2: return "Div2";
        case Axiom::CondDiv2: return "CondDiv2";
        case Axiom::Partial3Div: return "Partial3Div";
        case Axiom::KDiv: return "KDiv(" + std::to_string(k) + ")";
    }
    return "?";
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::HoldsOnSample: return "HoldsOnSample";
        case Verdict::Fails: return "Fails";
    }
    return "?";
}

struct Witness {
    std::vector<Database> databases;
    std::vector<std::string> eventualities;
    std::string note;
};

/// Chamber tally for one subset Y of eventualities.
struct SubsetCount {
    std::vector<std::string> subset;
    std::size_t chambers = 0;
    std::size_t transitive = 0;
    std::size_t required = 0;
};

struct AxiomReport {
    Axiom axiom = Axiom::A0;
    int k = 0;
    Verdict verdict = Verdict::Holds;
    std::optional<Witness> witness;
    std::vector<SubsetCount> subset_counts;
    std::size_t checked = 0;
    std::optional<long> least_k;    // archimedean search result
    bool budget_exhausted = false;  // a Fails that is inconclusive rather than a refutation

    bool passed() const noexcept { return verdict != Verdict::Fails; }
    std::string name() const { return to_string(axiom, k); }
};

// ---------------------------------------------------------------------------
// Sampling

struct SampleConfig {
    long max_entry = 3;
    std::size_t random_count = 200;
    long max_denominator = 4;
    std::uint64_t seed = 20240601;
    std::size_t max_grid_columns = 5;  // exhaustive grid only up to this many columns
};

/// Every database with integer entries in 0..max_entry over the given columns.
inline std::vector<Database> integer_grid(const CaseTypeSet& types, long max_entry) {
    const auto labels = types.column_labels();
    std::vector<Database> out;
    std::vector<long> digits(labels.size(), 0);
    for (;;) {
        std::map<std::string, Rational> m;
        for (std::size_t i = 0; i < labels.size(); ++i) m.emplace(labels[i], digits[i]);
        out.emplace_back(std::move(m));
        std::size_t i = 0;
        while (i < digits.size() && digits[i] == max_entry) digits[i++] = 0;
        if (i == digits.size()) break;
        ++digits[i];
    }
    return out;
}

namespace detail {

// mt19937_64 output is fixed by the standard; distributions are not, so reduce by hand.
inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational random_rational(std::mt19937_64& rng, long max_value, long max_den, bool positive) {
    const long den = uniform(rng, 1, max_den);
    const long num = uniform(rng, positive ? 1 : 0, max_value * den);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace detail

inline std::vector<Database> random_databases(const CaseTypeSet& types, std::size_t count, const SampleConfig& cfg,
                                              std::mt19937_64& rng) {
    const auto labels = types.column_labels();
    std::vector<Database> out;
    for (std::size_t s = 0; s < count; ++s) {
        std::map<std::string, Rational> m;
        for (const auto& l : labels) m.emplace(l, detail::random_rational(rng, cfg.max_entry, cfg.max_denominator, false));
        out.emplace_back(std::move(m));
    }
    return out;
}

/// Integer grid (when small enough) plus random rational databases.
inline std::vector<Database> default_sample(const CaseTypeSet& types, const SampleConfig& cfg = {}) {
    std::vector<Database> out;
    if (types.width() <= cfg.max_grid_columns) out = integer_grid(types, cfg.max_entry);
    std::mt19937_64 rng(cfg.seed);
    auto extra = random_databases(types, cfg.random_count, cfg, rng);
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

struct CombinationSample {
    Database first;
    Database second;
    Rational lambda = 1;
    Rational mu = 1;
};

/// Random pairs with disjoint supports and positive rational weights.
inline std::vector<CombinationSample> random_combination_sample(const CaseTypeSet& types, std::size_t count,
                                                                const SampleConfig& cfg = {}) {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    const auto labels = types.column_labels();
    std::vector<CombinationSample> out;
    for (std::size_t s = 0; s < count; ++s) {
        std::map<std::string, Rational> a, b;
        for (const auto& l : labels) {
            const long owner = detail::uniform(rng, 0, 2);
            const Rational q = detail::random_rational(rng, cfg.max_entry, cfg.max_denominator, true);
            if (owner == 0) a.emplace(l, q);
            if (owner == 1) b.emplace(l, q);
        }
        out.push_back({Database(a), Database(b), detail::random_rational(rng, cfg.max_entry, cfg.max_denominator, true),
                       detail::random_rational(rng, cfg.max_entry, cfg.max_denominator, true)});
    }
    return out;
}

/// All ordered pairs of a database list with unit weights (the union form).
inline std::vector<CombinationSample> union_pairs(const std::vector<Database>& dbs) {
    std::vector<CombinationSample> out;
    out.reserve(dbs.size() * dbs.size());
    for (const auto& a : dbs)
        for (const auto& b : dbs) out.push_back({a, b, 1, 1});
    return out;
}

// ---------------------------------------------------------------------------
// A0 to A3

namespace detail {

// Rankings from similarity matrices are transitive and complete by construction;
// pairwise ones are when the Jacobi identity holds exactly.
inline bool structurally_transitive(const RankingFamily& f) {
    if (f.similarity_generated()) return true;
    if (const auto* vp = std::get_if<PairwiseMatrix>(&f.generator)) return satisfies_jacobi(*vp);
    return false;
}

}  // namespace detail

inline AxiomReport check_transitivity(const RankingFamily& family, const std::vector<Database>& sample) {
    AxiomReport r;
    r.axiom = Axiom::A0;
    for (const auto& j : sample) {
        ++r.checked;
        const Ranking rank = family.rank(j);
        if (auto t = rank.transitivity_violation()) {
            r.verdict = Verdict::Fails;
            r.witness = Witness{{j}, {rank.domain()[(*t)[0]], rank.domain()[(*t)[1]], rank.domain()[(*t)[2]]},
                                "x <= y and y <= z but not x <= z"};
            return r;
        }
    }
    r.verdict = detail::structurally_transitive(family) ? Verdict::Holds : Verdict::HoldsOnSample;
    return r;
}

inline AxiomReport check_completeness(const RankingFamily& family, const std::vector<Database>& sample) {
    AxiomReport r;
    r.axiom = Axiom::A1;
    for (const auto& j : sample) {
        ++r.checked;
        const Ranking rank = family.rank(j);
        for (std::size_t a = 0; a < rank.size(); ++a)
            for (std::size_t b = a; b < rank.size(); ++b)
                if (!rank.leq(a, b) && !rank.leq(b, a)) {
                    r.verdict = Verdict::Fails;
                    r.witness = Witness{{j}, {rank.domain()[a], rank.domain()[b]}, "pair is incomparable"};
                    return r;
                }
        if (rank.size() != family.eventualities.size()) {
            r.verdict = Verdict::Fails;
            r.witness = Witness{{j}, {}, "ranking does not cover every eventuality"};
            return r;
        }
    }
    r.verdict = family.matrix_generated() ? Verdict::Holds : Verdict::HoldsOnSample;
    return r;
}

/*
 * Combination in mixture form: x <=_I y and x <=_J y imply x <=_K y for
 * K = lambda I + mu J, strictly so when either premise is strict. Sampling
 * cannot prove this, so the best verdict is HoldsOnSample.
 */
inline AxiomReport check_combination(const RankingFamily& family, const std::vector<CombinationSample>& sample) {
    AxiomReport r;
    r.axiom = Axiom::A2;
    for (const auto& s : sample) {
        ++r.checked;
        const Ranking ri = family.rank(s.first);
        const Ranking rj = family.rank(s.second);
        const Database mixed = Database::mix(s.lambda, s.first, s.mu, s.second);
        const Ranking rk = family.rank(mixed);
        for (const auto& x : family.eventualities)
            for (const auto& y : family.eventualities) {
                if (!ri.leq(x, y) || !rj.leq(x, y)) continue;
                const bool strict = ri.strictly_below(x, y) || rj.strictly_below(x, y);
                if (rk.leq(x, y) && (!strict || rk.strictly_below(x, y))) continue;
                r.verdict = Verdict::Fails;
                r.witness = Witness{{s.first, s.second, mixed}, {x, y},
                                    strict ? "strict ranking lost under combination" : "weak ranking lost under combination"};
                return r;
            }
    }
    r.verdict = Verdict::HoldsOnSample;
    return r;
}

/*
 * Archimedean search: given x strictly below y at J, find the least k with
 * x strictly below y at (1-mu)I + mu J, mu = k/(k+1), k = 1..k_max. Running out
 * of budget is reported as Fails with budget_exhausted set (inconclusive).
 */
inline AxiomReport check_archimedean(const RankingFamily& family, const Database& i, const Database& j,
                                     const std::string& x, const std::string& y, long k_max) {
    if (k_max < 1) throw PreconditionViolated("k_max must be at least 1");
    if (!family.rank(j).strictly_below(x, y)) throw NotStrict(x + " is not strictly below " + y + " at J");
    AxiomReport r;
    r.axiom = Axiom::A3;
    for (long k = 1; k <= k_max; ++k) {
        ++r.checked;
        const Rational mu(k, k + 1);
        const Database mixed = Database::mix(1 - mu, i, mu, j);
        if (family.rank(mixed).strictly_below(x, y)) {
            r.verdict = Verdict::HoldsOnSample;
            r.least_k = k;
            return r;
        }
    }
    r.verdict = Verdict::Fails;
    r.budget_exhausted = true;
    r.witness = Witness{{i, j}, {x, y}, "no mixture up to k_max was strict; inconclusive"};
    return r;
}

/*
 * Runs the archimedean search over sampled (I, J, x, y) with x strictly below y
 * at J but not at I, up to `max_cases` instances. The reported least_k is the
 * largest one needed; one exhausted budget makes the sweep inconclusive.
 */
inline AxiomReport check_archimedean_on_sample(const RankingFamily& family, const std::vector<Database>& sample,
                                               long k_max, std::size_t max_cases = 200) {
    AxiomReport r;
    r.axiom = Axiom::A3;
    r.verdict = Verdict::HoldsOnSample;
    std::vector<Ranking> ranks;
    for (const auto& d : sample) ranks.push_back(family.rank(d));
    for (std::size_t j = 0; j < sample.size() && r.checked < max_cases; ++j)
        for (std::size_t i = 0; i < sample.size() && r.checked < max_cases; ++i)
            for (const auto& x : family.eventualities)
                for (const auto& y : family.eventualities) {
                    if (r.checked >= max_cases) break;
                    if (!ranks[j].strictly_below(x, y) || ranks[i].strictly_below(x, y)) continue;
                    ++r.checked;
                    const auto one = check_archimedean(family, sample[i], sample[j], x, y, k_max);
                    if (!one.passed()) {
                        r.verdict = Verdict::Fails;
                        r.budget_exhausted = one.budget_exhausted;
                        r.witness = one.witness;
                        return r;
                    }
                    if (!r.least_k || *one.least_k > *r.least_k) r.least_k = one.least_k;
                }
    return r;
}

// ---------------------------------------------------------------------------
// Diversity

inline AxiomReport check_2_diversity(const PairwiseMatrix& vp) {
    AxiomReport r;
    r.axiom = Axiom::Div2;
    const auto& x = vp.eventualities();
    for (std::size_t a = 0; a < vp.m(); ++a)
        for (std::size_t b = a + 1; b < vp.m(); ++b) {
            ++r.checked;
            bool pos = false, neg = false;
            for (const auto& q : vp.row(a, b)) {
                pos = pos || q > 0;
                neg = neg || q < 0;
            }
            if (!pos || !neg) {
                r.verdict = Verdict::Fails;
                r.witness = Witness{{}, {x[a], x[b]}, "row lacks a strictly positive or strictly negative entry"};
                return r;
            }
        }
    r.verdict = Verdict::Holds;
    return r;
}

/// 2-diversity plus linear independence of v^(x,z), v^(y,z) for every ordered triple.
inline AxiomReport check_conditional_2_diversity(const PairwiseMatrix& vp) {
    AxiomReport r = check_2_diversity(vp);
    r.axiom = Axiom::CondDiv2;
    if (!r.passed()) {
        r.witness->note = "2-diversity fails: " + r.witness->note;
        return r;
    }
    const auto& x = vp.eventualities();
    const std::size_t m = vp.m();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c) {
                if (a == b || b == c || a == c) continue;
                ++r.checked;
                if (linalg::collinear<Rational>(vp.row(a, c), vp.row(b, c))) {
                    r.verdict = Verdict::Fails;
                    r.witness = Witness{{}, {x[a], x[b], x[c]}, "v^(x,z) and v^(y,z) are collinear"};
                    return r;
                }
            }
    r.verdict = Verdict::Holds;
    return r;
}

namespace detail {

inline std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

inline void subsets_of_size(const std::vector<std::string>& labels, std::size_t k, std::size_t start,
                            std::vector<std::string>& cur, std::vector<std::vector<std::string>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < labels.size(); ++i) {
        cur.push_back(labels[i]);
        subsets_of_size(labels, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline SubsetCount count_total_chambers(const PairwiseMatrix& vp, const std::vector<std::string>& y, const Budget& budget) {
    SubsetCount sc;
    sc.subset = y;
    try {
        const auto arr = build_arrangement(vp, y, Ambient::PositiveOrthant);
        for (const auto& c : enumerate_chambers(arr, budget)) {
            ++sc.chambers;
            if (c.ranking && c.ranking->is_transitive()) ++sc.transitive;
        }
    } catch (const ZeroNormal&) {
        // a zero row ties the pair everywhere, so no chamber ranking is total
    }
    return sc;
}

template <typename Required>
AxiomReport diversity_by_chambers(const PairwiseMatrix& vp, std::size_t max_size, Required required, Axiom axiom,
                                  int k, const Budget& budget) {
    AxiomReport r;
    r.axiom = axiom;
    r.k = k;
    r.verdict = Verdict::Holds;
    const auto& labels = vp.eventualities().labels();
    for (std::size_t s = 2; s <= max_size && s <= labels.size(); ++s) {
        std::vector<std::vector<std::string>> subsets;
        std::vector<std::string> cur;
        subsets_of_size(labels, s, 0, cur, subsets);
        for (const auto& y : subsets) {
            ++r.checked;
            SubsetCount sc = count_total_chambers(vp, y, budget);
            sc.required = required(s);
            const bool ok = sc.transitive >= sc.required;
            r.subset_counts.push_back(sc);
            if (!ok && r.verdict != Verdict::Fails) {
                r.verdict = Verdict::Fails;
                r.witness = Witness{{}, y,
                                    std::to_string(sc.transitive) + " total rankings, need " + std::to_string(sc.required)};
            }
        }
    }
    return r;
}

}  // namespace detail

/// For every Y with 2 <= |Y| <= k, the positive-orthant chambers realise all |Y|! total orders.
inline AxiomReport check_k_diversity(const PairwiseMatrix& vp, int k, const Budget& budget = {}) {
    if (k < 2 || k > 4) throw PreconditionViolated("k-diversity is checked for k in 2..4");
    return detail::diversity_by_chambers(
        vp, static_cast<std::size_t>(k), [](std::size_t s) { return detail::factorial(s); }, Axiom::KDiv, k, budget);
}

/// For |Y| = 2, 3 at least |Y| total orders.
inline AxiomReport check_partial_3_diversity(const PairwiseMatrix& vp, const Budget& budget = {}) {
    return detail::diversity_by_chambers(
        vp, 3, [](std::size_t s) { return s; }, Axiom::Partial3Div, 0, budget);
}

}  // namespace prudentia
