// Ranks three eventualities from a similarity matrix, then inspects the
// chambers of the induced pairwise arrangement and decides prudence.
#include <iostream>

#include "prudentia/prudentia.hpp"

using namespace prudentia;

int main() {
    const SimilarityMatrix v({"x", "y", "z"}, {"s", "t"}, {{0, 0}, {1, -1}, {3, -2}});

    const Database j({{"s", Rational(2)}, {"t", Rational(1)}});
    for (const auto& label : car_list(rank_all(v, j))) std::cout << label << ' ';
    std::cout << "(ascending plausibility at J = (2,1))\n";

    const auto vp = pairwise_from_global(v);
    for (auto ambient : {Ambient::FullSpace, Ambient::PositiveOrthant}) {
        const auto arr = build_arrangement(vp, {"x", "y", "z"}, ambient);
        auto poset = intersection_poset(arr);
        std::cout << to_string(ambient) << ": " << count_regions_mobius(poset) << " regions\n";
    }

    const auto verdict = test_prudence(vp);
    std::cout << "prudent: " << std::boolalpha << verdict.prudent << '\n';
}
