#include <catch2/catch_amalgamated.hpp>

#include "yano/rational.hpp"

using yano::Rat;

TEST_CASE("Rat normalization and arithmetic") {
    CHECK(Rat(6, 4) == Rat(3, 2));
    CHECK(Rat(-6, 4) == Rat(3, -2));
    CHECK(Rat(3, 2) + Rat(1, 6) == Rat(5, 3));
    CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
    CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    CHECK(Rat(1, 2) / Rat(1, 8) == Rat(4));
    CHECK(Rat(7).is_integer());
    CHECK(!Rat(7, 2).is_integer());
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat(7, 2).floor() == 3);
    CHECK(Rat(-5, 3).abs() == Rat(5, 3));
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(5, 7).str() == "5/7");
    CHECK(Rat(-5).str() == "-5");
}

TEST_CASE("Rat guards") {
    CHECK_THROWS_AS(Rat(1, 0), yano::Error);
    CHECK_THROWS_AS(Rat(1) / Rat(0), yano::Error);
    // 2^62 * 3 overflows the 64-bit numerator
    Rat big(1LL << 62);
    CHECK_THROWS_AS(big * Rat(4), yano::OverflowError);
}

TEST_CASE("Rat ordering is total on cross-multiplied pairs",
          "[property]") {
    auto vals = GENERATE(take(50, chunk(4, random(-200, 200))));
    long long n1 = vals[0], d1 = vals[1], n2 = vals[2], d2 = vals[3];
    if (d1 == 0 || d2 == 0) return;
    Rat a(n1, d1), b(n2, d2);
    bool lt = a < b, gt = b < a, eq = a == b;
    CHECK((lt ? 1 : 0) + (gt ? 1 : 0) + (eq ? 1 : 0) == 1);
    CHECK(((a - b).num() < 0) == lt);
}
