#include <catch2/catch_amalgamated.hpp>

#include "yano/yano_series.hpp"

using namespace yano;

TEST_CASE("cusp (2,3) expands to {5/6, 7/6}") {
    auto s = expand_generating_series(CharacteristicSequence{2, {3}});
    REQUIRE(s.terms.size() == 2);
    CHECK(s.terms.at(Rat(5, 6)) == 1);
    CHECK(s.terms.at(Rat(7, 6)) == 1);
}

TEST_CASE("(4,6,7) expansion: 16 unit terms, minimal exponent 5/12") {
    auto s = expand_generating_series(CharacteristicSequence{4, {6, 7}});
    CHECK(s.term_count() == 16);
    CHECK(s.terms.size() == 16);
    for (const auto& [e, c] : s.terms) CHECK(c == 1);
    CHECK(s.terms.begin()->first == Rat(5, 12));
    // frozen from the expansion oracle
    std::vector<Rat> expected = {
        {5, 12},  {7, 12},  {11, 26}, {15, 26}, {17, 26}, {19, 26},
        {21, 26}, {23, 26}, {25, 26}, {11, 12}, {27, 26}, {29, 26},
        {13, 12}, {31, 26}, {33, 26}, {35, 26}};
    std::sort(expected.begin(), expected.end());
    std::vector<Rat> got;
    for (const auto& [e, c] : s.terms) got.push_back(e);
    CHECK(got == expected);
}

TEST_CASE("degenerate block R_k = 1 contributes a single term") {
    // Directly: sum_{j=0}^{0} t^{(r+j)/1} = t^r
    YanoExponentData d;
    d.e = {2, 1};
    d.R = {2, 1};
    d.r = {3};
    d.Rp = {1, 1};   // minimal primed blocks: single terms each
    d.rp = {2, 1};
    auto s = expand_generating_series(d);
    // t + t^3 - t^2 - t^1 = t^3 - t^2
    CHECK(s.terms.size() == 2);
    CHECK(s.terms.at(Rat(3)) == 1);
    CHECK(s.terms.at(Rat(2)) == -1);
    CHECK(!s.nonnegative());
}

TEST_CASE("term_count equals the Milnor number over the sweep box",
          "[property]") {
    for (long long m = 3; m <= 9; ++m)
        for (long long n1 = 2; n1 < m; ++n1) {
            if (std::gcd(m, n1) != 1) continue;
            for (long long n2 = 2; n2 <= 5; ++n2)
                for (long long q = 1; q <= 9; ++q) {
                    if (std::gcd(q, n2) != 1) continue;
                    auto cc = validate_class(n1, m, n2, q);
                    auto s = expand_generating_series(characteristic_sequence(cc));
                    CHECK(s.term_count() == milnor_number(cc));
                    CHECK(s.nonnegative());
                    if (cc.distinct_eigenvalues) {
                        bool all_one = true;
                        for (const auto& [e, c] : s.terms) all_one &= (c == 1);
                        CHECK(all_one);
                    }
                    // every exponent in [lct, lct + 2)
                    Rat lct(m + n1, m * n1 * n2);
                    CHECK(s.terms.begin()->first == lct);
                    CHECK(s.terms.rbegin()->first < lct + Rat(2));
                }
        }
}
