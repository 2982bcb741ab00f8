#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "yano/errors.hpp"
#include "yano/rational.hpp"

namespace yano {

// Equisingularity class of an irreducible plane-curve germ with two Puiseux
// pairs, encoded by four integers.  The characteristic sequence is
// (n1*n2, m*n2, m*n2 + q).
struct CurveClass {
    long long n1 = 0, m = 0, n2 = 0, q = 0;
    // true iff gcd(q,n1)==1 or gcd(q,m)==1, i.e. the algebraic monodromy has
    // distinct eigenvalues.
    bool distinct_eigenvalues = false;

    long long D() const { return m * n1 * n2 + q; }   // highest semigroup generator
};

inline CurveClass validate_class(long long n1, long long m, long long n2, long long q) {
    if (n1 <= 0 || m <= 0 || n2 <= 0 || q <= 0)
        throw RangeViolation("all class parameters must be positive");
    if (!(1 < n1 && n1 < m))
        throw RangeViolation("need 1 < n1 < m, got n1=" + std::to_string(n1) +
                             ", m=" + std::to_string(m));
    if (n2 <= 1) throw RangeViolation("need n2 > 1, got n2=" + std::to_string(n2));
    if (std::gcd(m, n1) != 1)
        throw GcdViolation("gcd(m,n1) = " + std::to_string(std::gcd(m, n1)) +
                           " != 1");
    if (std::gcd(q, n2) != 1)
        throw GcdViolation("gcd(q,n2) = " + std::to_string(std::gcd(q, n2)) +
                           " != 1");
    CurveClass cc{n1, m, n2, q, false};
    cc.distinct_eigenvalues = std::gcd(q, n1) == 1 || std::gcd(q, m) == 1;
    return cc;
}

// Characteristic sequence (n; beta_1 < ... < beta_g).
struct CharacteristicSequence {
    long long n = 0;
    std::vector<long long> betas;

    int g() const { return (int)betas.size(); }
};

inline CharacteristicSequence characteristic_sequence(const CurveClass& cc) {
    return {cc.n1 * cc.n2, {cc.m * cc.n2, cc.m * cc.n2 + cc.q}};
}

// The integer data attached to a characteristic sequence: the gcd tower
// e^(k), the exceptional multiplicities R_k / R'_k and the numerators
// r_k / r'_k that drive the generating series.
struct YanoExponentData {
    std::vector<long long> e;    // e[0..g]
    std::vector<long long> R;    // R[0..g], R[0] = n
    std::vector<long long> r;    // r[1..g] stored at index k-1
    std::vector<long long> Rp;   // R'[0..g]
    std::vector<long long> rp;   // r'[0..g]
};

inline YanoExponentData exponent_data(const CharacteristicSequence& cs) {
    const int g = cs.g();
    if (g < 1) throw RangeViolation("characteristic sequence needs g >= 1");
    if (cs.n <= 1) throw RangeViolation("multiplicity n must exceed 1");
    for (int k = 0; k < g; ++k) {
        long long prev = k == 0 ? cs.n : cs.betas[k - 1];
        if (cs.betas[k] <= prev)
            throw RangeViolation("characteristic exponents must increase");
    }

    YanoExponentData d;
    d.e.resize(g + 1);
    d.e[0] = cs.n;
    for (int k = 1; k <= g; ++k) d.e[k] = std::gcd(d.e[k - 1], cs.betas[k - 1]);
    if (d.e[g] != 1) throw RangeViolation("e^(g) must equal 1");

    d.R.resize(g + 1);
    d.R[0] = cs.n;
    for (int k = 1; k <= g; ++k) {
        long long bk = cs.betas[k - 1];
        long long bk1 = k == 1 ? cs.n : cs.betas[k - 2];
        d.R[k] = d.e[k - 1] / d.e[k] * (d.R[k - 1] + bk - bk1);
    }
    d.r.resize(g);
    for (int k = 1; k <= g; ++k) {
        long long num = cs.betas[k - 1] + cs.n;
        if (num % d.e[k] != 0)
            throw RangeViolation("r_k not integral; invalid sequence");
        d.r[k - 1] = num / d.e[k];
    }
    d.Rp.resize(g + 1);
    d.rp.resize(g + 1);
    d.Rp[0] = cs.n;
    d.rp[0] = 2;
    for (int k = 1; k <= g; ++k) {
        d.Rp[k] = d.R[k] * d.e[k] / d.e[k - 1];        // always exact
        d.rp[k] = floor_div(d.r[k - 1] * d.e[k], d.e[k - 1]) + 1;
    }
    return d;
}

// mu = 1 + sum R_k - sum R'_k; for these branches it also equals the
// conductor of the value semigroup.
inline long long milnor_number(const YanoExponentData& d) {
    long long mu = 1;
    for (size_t k = 1; k < d.R.size(); ++k) mu += d.R[k];
    for (long long rp : d.Rp) mu -= rp;
    return mu;
}

inline long long milnor_number(const CurveClass& cc) {
    return cc.n2 * cc.D() - (cc.m + cc.n1) * cc.n2 - cc.q + 1;
}

// Numerical semigroup <g1,...,gk> with membership decided by a boolean DP
// table up to the conductor; everything at or above the conductor is a member.
class NumericalSemigroup {
  public:
    NumericalSemigroup(std::vector<long long> gens, long long conductor)
        : gens_(std::move(gens)), conductor_(conductor) {
        table_.assign((size_t)conductor_ + 1, -1);
        table_[0] = 0;
        for (long long v = 1; v <= conductor_; ++v) {
            for (size_t gi = 0; gi < gens_.size(); ++gi) {
                long long g = gens_[gi];
                if (v >= g && table_[(size_t)(v - g)] >= 0) {
                    table_[(size_t)v] = (int)gi;
                    break;
                }
            }
        }
        if (conductor_ > 0 && table_[(size_t)(conductor_ - 1)] >= 0)
            throw Error("semigroup: conductor-1 is a member; wrong conductor");
        for (long long v = 0; v < conductor_; ++v)
            if (table_[(size_t)v] < 0) gaps_.push_back(v);
    }

    const std::vector<long long>& generators() const { return gens_; }
    long long conductor() const { return conductor_; }
    const std::vector<long long>& gaps() const { return gaps_; }

    bool member(long long v) const {
        if (v < 0) return false;
        if (v >= conductor_) return true;
        return table_[(size_t)v] >= 0;
    }

    // Nonnegative coefficients on the generators, if v is a member.
    std::optional<std::vector<long long>> representation(long long v) const {
        if (v < 0) return std::nullopt;
        std::vector<long long> coeff(gens_.size(), 0);
        while (v >= conductor_ && v > 0) {
            // shrink with the largest generator that keeps membership
            bool moved = false;
            for (size_t gi = gens_.size(); gi-- > 0;) {
                long long g = gens_[gi];
                if (v - g >= 0 && member(v - g)) {
                    ++coeff[gi];
                    v -= g;
                    moved = true;
                    break;
                }
            }
            if (!moved) return std::nullopt;
        }
        while (v > 0) {
            int gi = table_[(size_t)v];
            if (gi < 0) return std::nullopt;
            ++coeff[(size_t)gi];
            v -= gens_[(size_t)gi];
        }
        if (v != 0) return std::nullopt;
        return coeff;
    }

  private:
    std::vector<long long> gens_;
    long long conductor_;
    std::vector<int> table_;               // generator index used, -1 = gap
    std::vector<long long> gaps_;
};

inline NumericalSemigroup semigroup(const CurveClass& cc) {
    return NumericalSemigroup({cc.n1 * cc.n2, cc.m * cc.n2, cc.D()},
                              milnor_number(cc));
}

// Solve a*m + b*n1 = m*n1*n2 + q with a,b >= 1 and a minimal.
inline std::pair<long long, long long> solve_monomial_exponents(const CurveClass& cc) {
    const long long target = cc.D();
    for (long long a = 1; a * cc.m < target; ++a) {
        long long rest = target - a * cc.m;
        if (rest % cc.n1 == 0 && rest / cc.n1 >= 1) return {a, rest / cc.n1};
    }
    throw NoPositiveSolution("no (a,b) with a,b >= 1 solves a*m + b*n1 = " +
                             std::to_string(target));
}

} // namespace yano
