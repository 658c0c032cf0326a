// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "prudentia/io.hpp"
#include "prudentia/prudentia.hpp"

using namespace prudentia;

namespace {

std::string fixture(const std::string& name) { return std::string(PRUDENTIA_FIXTURES) + "/" + name; }
PairwiseMatrix load_pairwise(const std::string& name) { return io::pairwise_from_json(io::read_file(fixture(name))); }
SimilarityMatrix load_global(const std::string& name) { return io::similarity_from_json(io::read_file(fixture(name))); }

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

template <typename T>
std::string str(const T& x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

struct Gen {
    std::mt19937_64 g;
    explicit Gen(std::uint64_t seed) : g(seed) {}
    long between(long lo, long hi) { return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Vector vec(std::size_t n, long lo, long hi) {
        Vector v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(between(lo, hi));
        return v;
    }
};

std::vector<std::string> names(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

SimilarityMatrix random_global(Gen& g, std::size_t m, std::size_t n, long bound) {
    Matrix rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(g.vec(n, -bound, bound));
    return SimilarityMatrix(names("e", m), names("c", n), rows);
}

bool positive_multiple(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) return false;
    std::optional<Rational> c;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] == 0) != (b[i] == 0)) return false;
        if (a[i] == 0) continue;
        const Rational r = a[i] / b[i];
        if (c && *c != r) return false;
        c = r;
    }
    return c && *c > 0;
}

struct Counts {
    long mobius, rank, chambers;
};

Counts three_counts(const Arrangement& arr) {
    auto poset = intersection_poset(arr);
    return {count_regions_mobius(poset), count_regions_rank(arr), static_cast<long>(enumerate_chambers(arr).size())};
}

std::size_t intransitive(const std::vector<Chamber>& cs) {
    std::size_t k = 0;
    for (const auto& c : cs) k += c.ranking && !c.ranking->is_transitive();
    return k;
}

// ---------------------------------------------------------------------------

void criterion1() {
    const auto vp = load_pairwise("example5_pairwise.json");
    require(vp.row("x", "y") == Vector{1, -1} && vp.row("y", "z") == Vector{2, -1} && vp.row("x", "z") == Vector{3, -2},
            "fixture rows differ from (1,-1), (2,-1), (3,-2)");
    const auto pos = build_arrangement(vp, {"x", "y", "z"}, Ambient::PositiveOrthant);
    const auto full = build_arrangement(vp, {"x", "y", "z"}, Ambient::FullSpace);
    const long npos = static_cast<long>(enumerate_chambers(pos).size());
    const long nfull = static_cast<long>(enumerate_chambers(full).size());
    require(npos == 4, "positive-orthant count " + str(npos));
    require(nfull == 6, "full-space count " + str(nfull));
    auto poset = intersection_poset(full);
    const auto mu = mobius(poset);
    require(mu == std::vector<long>{1, -1, -1, -1, 2}, "Mobius values differ");
}

void criterion2() {
    const auto vp = load_pairwise("rank3_triple.json");
    const auto cs = enumerate_chambers(build_arrangement(vp, {"x", "y", "z"}, Ambient::FullSpace));
    require(cs.size() == 8, "region count " + str(cs.size()));
    require(intransitive(cs) == 2, "intransitive chambers " + str(intransitive(cs)));
}

void criterion3() {
    const auto vp = pairwise_from_global(load_global("four_jac_global.json"));
    Matrix rows;
    for (const auto& [pair, r] : vp.upper_rows()) rows.push_back(r);
    require(linalg::rank(rows) == 3, "fixture is not rank 3");
    const auto cs = enumerate_chambers(build_arrangement(vp, vp.eventualities().labels(), Ambient::FullSpace));
    require(cs.size() == 24, "region count " + str(cs.size()));
    require(intransitive(cs) == 0, "intransitive chambers " + str(intransitive(cs)));
}

void criterion4() {
    Gen g(404);
    std::size_t fixtures = 0;
    for (int trial = 0; fixtures < 40 && trial < 1000; ++trial) {
        // rows drawn from a random plane inside R^n for n = 2..4
        const std::size_t n = static_cast<std::size_t>(g.between(2, 4));
        const Vector p = g.vec(n, -3, 3), q = g.vec(n, -3, 3);
        Matrix rows;
        for (int i = 0; i < 4; ++i) rows.push_back(add(scale(p, Rational(g.between(-3, 3))), scale(q, Rational(g.between(-3, 3)))));
        const SimilarityMatrix v(names("e", 4), names("c", n), rows);
        const auto vp = pairwise_from_global(v);
        Matrix prow;
        for (const auto& [pair, r] : vp.upper_rows()) prow.push_back(r);
        if (linalg::rank(prow) != 2) continue;
        Arrangement arr;
        try {
            arr = build_arrangement(vp, vp.eventualities().labels(), Ambient::PositiveOrthant);
        } catch (const ZeroNormal&) {
            continue;
        }
        const auto c = three_counts(arr);
        require(c.mobius == c.chambers && c.rank == c.chambers, "counting methods disagree on a rank-2 fixture");
        require(c.chambers <= 12, "rank-2 fixture with " + str(c.chambers) + " regions");
        ++fixtures;
    }
    require(fixtures >= 20, "only " + str(fixtures) + " rank-2 fixtures generated");
}

void criterion5() {
    std::vector<Arrangement> arrs;
    for (const char* name : {"example5_pairwise.json", "rank3_triple.json", "prudent_triple.json", "lexicographic_pairwise.json"}) {
        const auto vp = load_pairwise(name);
        for (auto a : {Ambient::FullSpace, Ambient::PositiveOrthant}) arrs.push_back(build_arrangement(vp, vp.eventualities().labels(), a));
    }
    const auto jac = pairwise_from_global(load_global("four_jac_global.json"));
    for (auto a : {Ambient::FullSpace, Ambient::PositiveOrthant}) arrs.push_back(build_arrangement(jac, jac.eventualities().labels(), a));

    Gen g(505);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = static_cast<std::size_t>(g.between(1, 4));
        const std::size_t h = static_cast<std::size_t>(g.between(1, 6));
        Matrix normals;
        while (normals.size() < h) {
            Vector v = g.vec(n, -3, 3);
            if (!is_zero(v)) normals.push_back(v);
        }
        arrs.push_back(Arrangement::from_normals(normals, n, i % 2 ? Ambient::PositiveOrthant : Ambient::FullSpace));
    }
    for (std::size_t i = 0; i < arrs.size(); ++i) {
        const auto c = three_counts(arrs[i]);
        require(c.mobius == c.rank && c.rank == c.chambers,
                "arrangement " + str(i) + ": " + str(c.mobius) + "/" + str(c.rank) + "/" + str(c.chambers));
    }
}

void criterion6() {
    const auto first = solve_jacobi_scaling(load_pairwise("prudent_triple.json"));
    require(first.prudent, "prudent fixture judged not prudent");
    const std::map<std::pair<std::string, std::string>, Rational> expected{
        {{"x", "y"}, 2}, {{"x", "z"}, 1}, {{"y", "z"}, 1}};
    require(first.scalars == expected, "scalars on the prudent fixture differ from (2,1,1)");
    require(satisfies_jacobi(apply_scalars(load_pairwise("prudent_triple.json"), first)), "rescaled rows are not Jacobi");

    const auto second = solve_jacobi_scaling(load_pairwise("rank3_triple.json"));
    require(!second.prudent && second.witness == std::vector<std::string>{"x", "y", "z"}, "rank-3 triple not refuted");

    bool threw = false;
    try {
        solve_jacobi_scaling(load_pairwise("lexicographic_pairwise.json"));
    } catch (const NotConditionally2Diverse&) {
        threw = true;
    }
    require(threw, "collinear fixture did not raise NotConditionally2Diverse");

    const auto base = load_pairwise("prudent_triple.json");
    require(check_conditional_2_diversity(base).passed(), "perturbation base is not conditionally 2-diverse");
    Gen g(606);
    const std::vector<std::pair<std::string, std::string>> pairs{{"x", "y"}, {"y", "z"}, {"x", "z"}};
    int broken = 0;
    for (int t = 0; t < 1000; ++t) {
        auto rows = base.upper_rows();
        long num = 0;
        while (num == 0) num = g.between(-50, 50);
        rows.at(pairs[static_cast<std::size_t>(g.between(0, 2))])[static_cast<std::size_t>(g.between(0, 2))] +=
            frac(num, g.between(1, 50));
        const PairwiseMatrix p(base.eventualities().labels(), base.case_types().ordinary().labels(), rows);
        try {
            broken += !solve_jacobi_scaling(p).prudent;
        } catch (const NotConditionally2Diverse&) {
            ++broken;
        }
    }
    require(broken >= 990, "only " + str(broken) + " of 1000 perturbations are not prudent");
}

void criterion7() {
    require(complexity_table(4, 4) == std::make_pair(16L, 64L), "complexity_table(4,4) differs from (16,64)");
    std::vector<SimilarityMatrix> fixtures{load_global("four_jac_global.json")};
    Gen g(707);
    while (fixtures.size() < 6) {
        const auto v = random_global(g, 4, 4, 3);
        if (check_rows_main(v).passed && check_rows_gsii(v).passed) fixtures.push_back(v);
    }
    for (const auto& v : fixtures) {
        const auto main = check_rows_main(v);
        const auto gsii = check_rows_gsii(v);
        require(main.passed && gsii.passed, "an m=n=4 fixture fails a row condition");
        require(main.elementary_steps == 16, "main condition used " + str(main.elementary_steps) + " steps");
        require(main.elementary_steps < gsii.lp.cell_updates,
                "main " + str(main.elementary_steps) + " vs gsii " + str(gsii.lp.cell_updates));
    }
}

void criterion8() {
    const auto v = load_global("example5_global.json");
    const auto family = RankingFamily::from_similarity(v);
    std::vector<Database> grid;
    for (const auto& d : integer_grid(family.case_types, 3))
        if (!d.is_zero()) grid.push_back(d);
    const auto truth = pairwise_from_global(v).upper_rows();
    const auto fitted = build_pairwise_representation(family, grid).upper_rows();
    for (const auto& [pair, row] : truth)
        require(positive_multiple(fitted.at(pair), row), "fitted row for (" + pair.first + "," + pair.second + ") is off");
}

void criterion9() {
    Gen g(909);
    int disagreements = 0, families = 0, diverse = 0;
    while (families < 100) {
        const auto m = static_cast<std::size_t>(g.between(2, 4));
        const auto n = static_cast<std::size_t>(g.between(2, 4));
        const auto v = random_global(g, m, n, 2);
        const auto family = RankingFamily::from_similarity(v);
        const auto sample = default_sample(family.case_types);
        if (!check_transitivity(family, sample).passed() || !check_completeness(family, sample).passed() ||
            !check_combination(family, random_combination_sample(family.case_types, 50)).passed())
            continue;
        ++families;
        const auto vp = pairwise_from_global(v);
        const bool c2d = check_conditional_2_diversity(vp).passed();
        disagreements += c2d != check_partial_3_diversity(vp).passed();
        diverse += c2d;
    }
    require(disagreements == 0, str(disagreements) + " disagreements");
    require(diverse > 0 && diverse < families, "only one verdict occurred (" + str(diverse) + " diverse)");
}

void criterion10() {
    const auto two = io::model_from_json(io::read_file(fixture("two_date_model.json")));
    const auto d11 = io::database_from_json(io::read_file(fixture("database_11.json")));
    const double b1 = bond_price(two, 1, d11);
    require(std::abs(b1 - 20.0 / 21.0) <= 1e-12, "B(1,D) = " + str(b1));

    Gen g(1010);
    for (const char* name : {"two_date_model.json", "three_date_spot_yields.json", "example5_model.json"}) {
        const auto m = io::model_from_json(io::read_file(fixture(name)));
        require(check_no_arbitrage(m).empty(), std::string(name) + " has arbitrage findings");
        const auto global = assemble_global_matrix(m.pairwise(), "0");
        const auto types = m.case_types();
        for (int k = 0; k < 100; ++k) {
            Database d = Database::from_dense(types, g.vec(types.width(), 0, 6));
            if (d.is_zero()) d = Database::from_dense(types, Vector(types.width(), Rational(1)));
            require(log_bond_price(m, 0, d) == 0 && bond_price(m, 0, d) == 1.0, "B(0,D) is not exactly 1");
            require(ranking_by_price(m, d) == rank_all(global, d), std::string(name) + ": price ranking differs");
        }
    }

    const auto m = io::model_from_json(io::read_file(fixture("example5_model.json")));
    const auto labels = m.pairwise().eventualities().labels();
    const auto types = m.case_types().ordinary().labels();
    for (const auto& [pair, row] : m.pairwise().upper_rows())
        for (std::size_t c = 0; c < row.size(); ++c)
            for (const Rational delta : {Rational(1, 3), Rational(-5, 2), Rational(1, 1000)}) {
                auto rows = m.pairwise().upper_rows();
                rows.at(pair)[c] += delta;
                const YieldCurveModel bent(m.dates(), PairwiseMatrix(labels, types, rows));
                const auto findings = check_no_arbitrage(bent);
                require(!findings.empty(), "perturbation of (" + pair.first + "," + pair.second + ") went unnoticed");
                for (const auto& f : findings) {
                    const std::string head = f.forward_too_cheap ? "sell forward (" : "buy forward (";
                    require(f.x < f.z && f.z < f.y && f.magnitude != 0 && f.trade.rfind(head, 0) == 0,
                            "malformed finding: " + f.trade);
                }
            }
}

void criterion11() {
    Gen g(1111);
    std::vector<SimilarityMatrix> globals{load_global("example5_global.json")};
    for (int i = 0; i < 12; ++i)
        globals.push_back(random_global(g, static_cast<std::size_t>(g.between(2, 4)), static_cast<std::size_t>(g.between(1, 3)), 3));
    for (const auto& v : globals) {
        std::vector<RankingFamily> families{RankingFamily::from_similarity(v), RankingFamily::from_pairwise(pairwise_from_global(v))};
        for (const auto& fam : families) {
            const auto grid = integer_grid(fam.case_types, 3);
            require(check_transitivity(fam, grid).verdict == Verdict::Holds, "A0 fails on the grid");
            require(check_completeness(fam, grid).verdict == Verdict::Holds, "A1 fails on the grid");
            const auto a2 = check_combination(fam, union_pairs(grid));
            require(a2.passed() && a2.checked == grid.size() * grid.size(), "A2 fails on the grid");
        }
    }
}

struct Criterion {
    int id;
    const char* description;
    void (*body)();
    double limit_seconds;  // 0 for no limit
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Example 5 golden suite: 4 and 6 regions, Mobius (1,-1,-1,-1,2)", criterion1, 1},
        {2, "rank-3 triple: 8 regions, exactly 2 intransitive", criterion2, 1},
        {3, "four-eventuality Jacobi fixture: 24 transitive regions", criterion3, 10},
        {4, "rank-2 four-eventuality fixtures have at most 12 regions", criterion4, 0},
        {5, "Mobius, rank-form and enumerated counts agree", criterion5, 60},
        {6, "prudence examples and perturbation robustness", criterion6, 0},
        {7, "complexity table and measured row-condition costs", criterion7, 0},
        {8, "fit round trip recovers positive multiples", criterion8, 0},
        {9, "conditional 2-diversity equals partial 3-diversity", criterion9, 0},
        {10, "finance coherence", criterion10, 0},
        {11, "exhaustive A0-A2 on the integer grid", criterion11, 30},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string problem;
        try {
            c.body();
        } catch (const Failure& f) {
            problem = f.what;
        } catch (const std::exception& e) {
            problem = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (problem.empty() && c.limit_seconds > 0 && secs > c.limit_seconds)
            problem = "took " + str(secs) + " s, limit " + str(c.limit_seconds) + " s";
        failed += !problem.empty();
        std::printf("[%s] %2d. %s (%.3f s)%s%s\n", problem.empty() ? "PASS" : "FAIL", c.id, c.description, secs,
                    problem.empty() ? "" : ": ", problem.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
