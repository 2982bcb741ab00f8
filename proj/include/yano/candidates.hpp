#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "yano/curve.hpp"
#include "yano/yano_series.hpp"

namespace yano {

enum class Family { A11, A12, A21, A22 };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::A11: return "A11";
        case Family::A12: return "A12";
        case Family::A21: return "A21";
        case Family::A22: return "A22";
    }
    return "?";
}

// Representation witnesses, one shape per family:
//   A11:  m*b1 + n1*b2 = m + n1 + k            (b1,b2 >= 1)
//   A12:  m*i0 + n1*j0 = m*n1 + k              (i0,j0 >= 0)
//   A21:  n2*(b1*m + b2*n1) + b3*D + q = N_k   (b1,b2 >= 1, b3 >= 0)
//   A22:  (a'*m + b'*n1)*n2 + l*D = D*n2 + k   (a',b',l >= 0)
struct WitnessA11 { long long b1, b2; };
struct WitnessA12 { long long i0, j0; };
struct WitnessA21 { long long b1, b2, b3; };
struct WitnessA22 { long long ap, bp, l; };
using Witness = std::variant<WitnessA11, WitnessA12, WitnessA21, WitnessA22>;

struct CandidateRoot {
    Rat value;          // negative rational
    Family family;
    long long k;        // numerator offset within its set
    Witness witness;
};

namespace detail {

// minimal b2, then b1 (matches the convention used throughout the reports)
inline std::optional<WitnessA11> witness_a11(long long m, long long n1, long long num) {
    for (long long b2 = 1; n1 * b2 < num; ++b2) {
        long long rest = num - n1 * b2;
        if (rest % m == 0 && rest / m >= 1) return WitnessA11{rest / m, b2};
    }
    return std::nullopt;
}

inline std::optional<WitnessA12> witness_a12(long long m, long long n1, long long val) {
    for (long long i0 = 0; m * i0 <= val; ++i0) {
        long long rest = val - m * i0;
        if (rest % n1 == 0) return WitnessA12{i0, rest / n1};
    }
    return std::nullopt;
}

// minimal (b3, b1, b2)
inline std::optional<WitnessA21> witness_a21(const CurveClass& cc, long long Nk) {
    const long long D = cc.D();
    for (long long b3 = 0; Nk - cc.q - b3 * D >= 0; ++b3) {
        long long rest = Nk - cc.q - b3 * D;
        if (rest % cc.n2 != 0) continue;
        rest /= cc.n2;
        for (long long b1 = 1; cc.m * b1 < rest; ++b1) {
            long long rr = rest - cc.m * b1;
            if (rr % cc.n1 == 0 && rr / cc.n1 >= 1)
                return WitnessA21{b1, rr / cc.n1, b3};
        }
    }
    return std::nullopt;
}

// minimal (l, a', b')
inline std::optional<WitnessA22> witness_a22(const CurveClass& cc, long long k) {
    const long long D = cc.D();
    const long long total = D * cc.n2 + k;
    for (long long l = 0; total - l * D >= 0; ++l) {
        long long rest = total - l * D;
        if (rest % cc.n2 != 0) continue;
        rest /= cc.n2;
        for (long long ap = 0; cc.m * ap <= rest; ++ap) {
            long long rr = rest - cc.m * ap;
            if (rr % cc.n1 == 0) return WitnessA22{ap, rr / cc.n1, l};
        }
    }
    return std::nullopt;
}

} // namespace detail

// A1 = { -(m+n1+k)/(m n1 n2) : 0 <= k < m n1 n2, m and n1 both non-divisors }
inline std::vector<CandidateRoot> build_A1(const CurveClass& cc) {
    std::vector<CandidateRoot> out;
    const long long M = cc.m * cc.n1 * cc.n2;
    for (long long k = 0; k < M; ++k) {
        const long long num = cc.m + cc.n1 + k;
        if (num % cc.m == 0 || num % cc.n1 == 0) continue;
        if (auto w = detail::witness_a11(cc.m, cc.n1, num)) {
            out.push_back({Rat(-num, M), Family::A11, k, *w});
        } else {
            auto w2 = detail::witness_a12(cc.m, cc.n1, cc.m * cc.n1 + k);
            if (!w2) throw Error("A12 witness must exist (k below the conductor)");
            out.push_back({Rat(-num, M), Family::A12, k, *w2});
        }
    }
    return out;
}

// A2 = { -N_k/(n2 D) : N_k = (m+n1)n2+q+k, 0 <= k < n2 D, n2 and D non-divisors }
inline std::vector<CandidateRoot> build_A2(const CurveClass& cc) {
    std::vector<CandidateRoot> out;
    const long long D = cc.D();
    for (long long k = 0; k < cc.n2 * D; ++k) {
        const long long Nk = (cc.m + cc.n1) * cc.n2 + cc.q + k;
        if (Nk % cc.n2 == 0 || Nk % D == 0) continue;
        if (auto w = detail::witness_a21(cc, Nk)) {
            out.push_back({Rat(-Nk, cc.n2 * D), Family::A21, k, *w});
        } else {
            auto w2 = detail::witness_a22(cc, k);
            if (!w2) throw Error("A22 witness must exist by semigroup structure");
            out.push_back({Rat(-Nk, cc.n2 * D), Family::A22, k, *w2});
        }
    }
    return out;
}

// Structural properties of the two candidate sets.  Disjointness is only
// guaranteed (and only checked) when the monodromy eigenvalues are distinct.
struct StructuralReport {
    bool disjoint_applicable = false;
    bool passed = true;
    std::vector<std::string> failures;

    void fail(std::string what) {
        passed = false;
        failures.push_back(std::move(what));
    }
};

inline StructuralReport structural_checks(const CurveClass& cc,
                                          const std::vector<CandidateRoot>& A1,
                                          const std::vector<CandidateRoot>& A2) {
    StructuralReport rep;
    rep.disjoint_applicable = cc.distinct_eigenvalues;
    if (A1.empty() || A2.empty()) {
        rep.fail("empty candidate set");
        return rep;
    }
    auto minmax_val = [](const std::vector<CandidateRoot>& v) {
        Rat mn = v.front().value, mx = v.front().value;
        for (const auto& c : v) {
            if (c.value < mn) mn = c.value;
            if (mx < c.value) mx = c.value;
        }
        return std::pair<Rat, Rat>(mn, mx);
    };
    auto [min1, max1] = minmax_val(A1);
    auto [min2, max2] = minmax_val(A2);

    if (rep.disjoint_applicable) {
        std::vector<Rat> v1, v2;
        for (const auto& c : A1) v1.push_back(c.value);
        for (const auto& c : A2) v2.push_back(c.value);
        std::sort(v1.begin(), v1.end());
        std::sort(v2.begin(), v2.end());
        std::vector<Rat> common;
        std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(),
                              std::back_inserter(common));
        if (!common.empty()) rep.fail("(A1) A1 and A2 are not disjoint");
    }
    if (!(max1 - min1 < Rat(1))) rep.fail("(A2) spread of A1 is >= 1");
    if (!(max2 - min2 < Rat(1))) rep.fail("(A2) spread of A2 is >= 1");
    if (!(max1 == Rat(-(cc.m + cc.n1), cc.m * cc.n1 * cc.n2)))
        rep.fail("(A3) -max A1 is not (m+n1)/(m n1 n2)");
    Rat gap = max1 - max2;
    if (!(Rat(0) < gap && gap < Rat(1))) rep.fail("(A4) max A1 - max A2 not in (0,1)");

    // corrected small-set bounds for the second members of each decomposition
    const long long cond12 = cc.m * cc.n1 - cc.m - cc.n1;
    for (const auto& c : A1)
        if (c.family == Family::A12 && !(1 <= c.k && c.k <= cond12))
            rep.fail("A12 offset k out of [1, m n1 - m - n1] at k=" + std::to_string(c.k));
    const Rat bound22 = Rat(cc.m + cc.n1, cc.m * cc.n1 * cc.n2) + Rat(1);
    for (const auto& c : A2)
        if (c.family == Family::A22 && !(-c.value < bound22))
            rep.fail("A22 element above lct+1 at k=" + std::to_string(c.k));
    return rep;
}

// Multiset comparison of -(A1 u A2) against the support of the generating
// series (all multiplicities 1 in the distinct-eigenvalue regime).
struct MismatchReport {
    bool equal = true;
    std::vector<Rat> only_in_series;
    std::vector<Rat> only_in_candidates;
};

inline MismatchReport compare_with_series(const std::vector<CandidateRoot>& A1,
                                          const std::vector<CandidateRoot>& A2,
                                          const ExponentSeries& s) {
    MismatchReport rep;
    std::map<Rat, long long> cand;
    for (const auto& c : A1) cand[-c.value] += 1;
    for (const auto& c : A2) cand[-c.value] += 1;
    for (const auto& [e, mult] : s.terms) {
        auto it = cand.find(e);
        long long have = it == cand.end() ? 0 : it->second;
        for (long long i = have; i < mult; ++i) rep.only_in_series.push_back(e);
    }
    for (const auto& [e, mult] : cand) {
        auto it = s.terms.find(e);
        long long have = it == s.terms.end() ? 0 : it->second;
        for (long long i = have; i < mult; ++i) rep.only_in_candidates.push_back(e);
    }
    rep.equal = rep.only_in_series.empty() && rep.only_in_candidates.empty();
    return rep;
}

} // namespace yano
