#include <catch2/catch_amalgamated.hpp>

#include "yano/candidates.hpp"

using namespace yano;

TEST_CASE("class (2,3,2,1): A1 is four A11 roots, A2 is twelve A21 roots") {
    auto cc = validate_class(2, 3, 2, 1);
    auto A1 = build_A1(cc);
    auto A2 = build_A2(cc);

    REQUIRE(A1.size() == 4);
    std::vector<Rat> vals;
    for (auto& c : A1) {
        CHECK(c.family == Family::A11);
        vals.push_back(c.value);
    }
    CHECK(vals == std::vector<Rat>{{-5, 12}, {-7, 12}, {-11, 12}, {-13, 12}});

    // witness convention: minimal beta2 then beta1
    auto w13 = std::get<WitnessA11>(A1[3].witness);
    CHECK(w13.b1 == 3);
    CHECK(w13.b2 == 2);
    auto w5 = std::get<WitnessA11>(A1[0].witness);
    CHECK(w5.b1 == 1);
    CHECK(w5.b2 == 1);

    REQUIRE(A2.size() == 12);
    std::vector<long long> nums;
    for (auto& c : A2) {
        CHECK(c.family == Family::A21);
        CHECK(c.value.den() == 26);
        nums.push_back(-c.value.num());
        auto w = std::get<WitnessA21>(c.witness);
        CHECK(w.b3 == 0);
        CHECK(2 * (3 * w.b1 + 2 * w.b2) + 13 * w.b3 + 1 == -c.value.num());
    }
    CHECK(nums == std::vector<long long>{11, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35});
    auto w35 = std::get<WitnessA21>(A2.back().witness);
    CHECK(w35.b1 == 1);
    CHECK(w35.b2 == 7);
}

TEST_CASE("class (4,5,2,1): the small second members") {
    auto cc = validate_class(4, 5, 2, 1);
    auto A1 = build_A1(cc);
    auto A2 = build_A2(cc);
    CHECK(A1.size() == 24);
    CHECK(A2.size() == 40);

    std::vector<CandidateRoot> a12, a22;
    for (auto& c : A1)
        if (c.family == Family::A12) a12.push_back(c);
    for (auto& c : A2)
        if (c.family == Family::A22) a22.push_back(c);

    REQUIRE(a12.size() == 1);
    CHECK(a12[0].value == Rat(-11, 40));
    auto w = std::get<WitnessA12>(a12[0].witness);
    CHECK(w.i0 == 2);
    CHECK(w.j0 == 3);

    REQUIRE(a22.size() == 5);
    std::vector<Rat> vals;
    for (auto& c : a22) vals.push_back(c.value);
    CHECK(vals == std::vector<Rat>{{-21, 82}, {-23, 82}, {-25, 82}, {-31, 82}, {-33, 82}});
    auto w21 = std::get<WitnessA22>(a22[0].witness);
    CHECK(w21.ap == 2);
    CHECK(w21.bp == 8);
    CHECK(w21.l == 0);
    CHECK((w21.ap * 5 + w21.bp * 4) * 2 + w21.l * 41 == 41 * 2 + a22[0].k);
}

TEST_CASE("structural checks pass and report families correctly") {
    auto cc = validate_class(2, 3, 2, 1);
    auto A1 = build_A1(cc);
    auto A2 = build_A2(cc);
    auto rep = structural_checks(cc, A1, A2);
    CHECK(rep.passed);
    CHECK(rep.disjoint_applicable);
    CHECK((long long)(A1.size() + A2.size()) == milnor_number(cc));

    auto deg = validate_class(2, 3, 5, 6);
    auto rep2 = structural_checks(deg, build_A1(deg), build_A2(deg));
    CHECK(!rep2.disjoint_applicable);
}

TEST_CASE("compare_with_series: equality and a constructed mismatch") {
    auto cc = validate_class(2, 3, 2, 1);
    auto A1 = build_A1(cc);
    auto A2 = build_A2(cc);
    auto s = expand_generating_series(characteristic_sequence(cc));
    auto rep = compare_with_series(A1, A2, s);
    CHECK(rep.equal);

    auto s2 = s;
    s2.terms.erase(s2.terms.begin());
    auto rep2 = compare_with_series(A1, A2, s2);
    CHECK(!rep2.equal);
    CHECK(rep2.only_in_candidates.size() == 1);
    CHECK(rep2.only_in_series.empty());
}

TEST_CASE("witnesses satisfy their defining equations across the sweep box",
          "[property]") {
    for (long long m = 3; m <= 9; ++m)
        for (long long n1 = 2; n1 < m; ++n1) {
            if (std::gcd(m, n1) != 1) continue;
            for (long long n2 = 2; n2 <= 5; ++n2)
                for (long long q = 1; q <= 9; ++q) {
                    if (std::gcd(q, n2) != 1) continue;
                    auto cc = validate_class(n1, m, n2, q);
                    auto A1 = build_A1(cc);
                    auto A2 = build_A2(cc);
                    auto sg = semigroup(cc);
                    const long long D = cc.D();
                    for (auto& c : A1) {
                        long long num = m + n1 + c.k;
                        if (c.family == Family::A11) {
                            auto w = std::get<WitnessA11>(c.witness);
                            REQUIRE(w.b1 >= 1);
                            REQUIRE(w.b2 >= 1);
                            REQUIRE(m * w.b1 + n1 * w.b2 == num);
                        } else {
                            auto w = std::get<WitnessA12>(c.witness);
                            REQUIRE(m * w.i0 + n1 * w.j0 == m * n1 + c.k);
                            // A12 iff k is a gap of <m, n1>
                            bool in_mn1 = false;
                            for (long long u = 0; u * m <= c.k && !in_mn1; ++u)
                                if ((c.k - u * m) % n1 == 0) in_mn1 = true;
                            REQUIRE(!in_mn1);
                        }
                    }
                    for (auto& c : A2) {
                        long long Nk = (m + n1) * n2 + q + c.k;
                        if (c.family == Family::A21) {
                            auto w = std::get<WitnessA21>(c.witness);
                            REQUIRE(n2 * (w.b1 * m + w.b2 * n1) + w.b3 * D + q == Nk);
                            REQUIRE(sg.member(Nk - q));
                        } else {
                            auto w = std::get<WitnessA22>(c.witness);
                            REQUIRE((w.ap * m + w.bp * n1) * n2 + w.l * D == D * n2 + c.k);
                        }
                    }
                    if (cc.distinct_eigenvalues) {
                        auto s = expand_generating_series(characteristic_sequence(cc));
                        REQUIRE((long long)(A1.size() + A2.size()) == milnor_number(cc));
                        REQUIRE(compare_with_series(A1, A2, s).equal);
                        REQUIRE(structural_checks(cc, A1, A2).passed);
                    }
                }
        }
}
