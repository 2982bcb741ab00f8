#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "yano/candidates.hpp"
#include "yano/curve.hpp"
#include "yano/poly2.hpp"

namespace yano {

// Plus-type model  f = (x^n1 + y^m + h1 [+ t x^{i0} y^{j0}])^n2 + x^a y^b + h2
// with supp(h1) above the (m,n1) line and supp(h2) above the degree-m*n1*n2
// line, so the blow-up chain factors exactly.
struct PlusModel {
    CurveClass cc;
    long long a = 0, b = 0;
    Poly2 h1, h2;
    std::optional<WitnessA12> deformation;
    Rat t = Rat(0);

    Poly2 inner() const {
        Poly2 g = Poly2::monomial(cc.n1, 0) + Poly2::monomial(0, cc.m) + h1;
        if (deformation && !(t == Rat(0)))
            g = g + Poly2::monomial(deformation->i0, deformation->j0, to_bigrat(t));
        return g;
    }
    Poly2 f() const {
        return inner().pow(cc.n2) + Poly2::monomial(a, b) + h2;
    }
};

// Minus-type model  f = (x^n1 - y^m + h1)^n2 + x^a y^b + h2
//                       [+ t (x^n1 - y^m)^l x^{a'} y^{b'}]
// together with the branch data Y1(x) = x (1 + c1 x + ...) bounding the
// integration domain D_Y.
struct MinusModel {
    CurveClass cc;
    long long a = 0, b = 0;
    Poly2 h1, h2;
    std::vector<Rat> y_coeffs;              // c1..ck of Y1; empty = default
    std::optional<WitnessA22> deformation;
    Rat t = Rat(0);

    Poly2 g() const {
        return Poly2::monomial(cc.n1, 0) - Poly2::monomial(0, cc.m) + h1;
    }
    Poly2 f() const {
        Poly2 out = g().pow(cc.n2) + Poly2::monomial(a, b) + h2;
        if (deformation && !(t == Rat(0)))
            out = out + Poly2::constant(to_bigrat(t)) * g().pow(deformation->l) *
                            Poly2::monomial(deformation->ap, deformation->bp);
        return out;
    }
    // Y2(x) = 1 + c1 x + ... (Y1 = x Y2)
    Poly2 Y2() const {
        Poly2 p = Poly2::constant(BigRat(1));
        for (size_t i = 0; i < y_coeffs.size(); ++i)
            p = p + Poly2::monomial((long long)i + 1, 0, to_bigrat(y_coeffs[i]));
        return p;
    }
    // g_Y(x,y) = prod_{zeta^m = 1} (y - Y(zeta x^{1/m})), computed through
    // power sums and Newton's identities; default collapses to y^m - x^{n1}.
    Poly2 gY() const {
        const long long m = cc.m, n1 = cc.n1;
        // Y(u) = u^{n1} (1 + c1 u + ...)^{n1} as a polynomial in u
        Poly2 Yu = Poly2::constant(BigRat(1));
        for (size_t i = 0; i < y_coeffs.size(); ++i)
            Yu = Yu + Poly2::monomial((long long)i + 1, 0, to_bigrat(y_coeffs[i]));
        Yu = Yu.pow(n1) * Poly2::monomial(n1, 0);
        // power sums p_r(x) = sum_zeta Y(zeta u)^r keep only exponents = 0 mod m
        std::vector<Poly2> psums((size_t)m + 1);
        Poly2 Ypow = Poly2::constant(BigRat(1));
        for (long long r = 1; r <= m; ++r) {
            Ypow = Ypow * Yu;
            Poly2 pr;
            for (const auto& [k, v] : Ypow.terms())
                if (k.first % m == 0) pr.add_term(k.first / m, 0, v * BigRat(m));
            psums[(size_t)r] = pr;
        }
        // Newton: r e_r = sum_{i=1..r} (-1)^{i-1} e_{r-i} p_i
        std::vector<Poly2> e((size_t)m + 1);
        e[0] = Poly2::constant(BigRat(1));
        for (long long r = 1; r <= m; ++r) {
            Poly2 acc;
            for (long long i = 1; i <= r; ++i) {
                Poly2 term = e[(size_t)(r - i)] * psums[(size_t)i];
                acc = (i % 2 == 1) ? acc + term : acc - term;
            }
            Poly2 er;
            for (const auto& [k, v] : acc.terms()) er.add_term(k.first, k.second, v / BigRat(r));
            e[(size_t)r] = er;
        }
        Poly2 out;
        for (long long r = 0; r <= m; ++r) {
            Poly2 term = e[(size_t)r] * Poly2::monomial(0, m - r);
            out = (r % 2 == 0) ? out + term : out - term;
        }
        return out;
    }
};

inline void validate_h1_support(const CurveClass& cc, const Poly2& h1) {
    for (const auto& [k, v] : h1.terms())
        if (!(cc.m * k.first + cc.n1 * k.second > cc.m * cc.n1))
            throw RangeViolation("h1 support must satisfy m i + n1 j > m n1");
}
inline void validate_h2_support(const CurveClass& cc, const Poly2& h2) {
    for (const auto& [k, v] : h2.terms())
        if (!(cc.m * k.first + cc.n1 * k.second > cc.m * cc.n1 * cc.n2))
            throw RangeViolation("h2 support must satisfy m i + n1 j > m n1 n2");
}

struct PlusOptions {
    Poly2 h1, h2;
    std::optional<WitnessA12> deformation;
    Rat t = Rat(0);
};

inline PlusModel build_plus(const CurveClass& cc, const PlusOptions& opt = {}) {
    if (!cc.distinct_eigenvalues)
        throw RangeViolation("plus model needs distinct monodromy eigenvalues");
    auto [a, b] = solve_monomial_exponents(cc);
    validate_h1_support(cc, opt.h1);
    validate_h2_support(cc, opt.h2);
    return PlusModel{cc, a, b, opt.h1, opt.h2, opt.deformation, opt.t};
}

struct MinusOptions {
    Poly2 h1, h2;
    std::vector<Rat> y_coeffs;
    std::optional<WitnessA22> deformation;
    Rat t = Rat(0);
};

inline MinusModel build_minus(const CurveClass& cc, const MinusOptions& opt = {}) {
    if (!cc.distinct_eigenvalues)
        throw RangeViolation("minus model needs distinct monodromy eigenvalues");
    auto [a, b] = solve_monomial_exponents(cc);
    validate_h1_support(cc, opt.h1);
    validate_h2_support(cc, opt.h2);
    MinusModel mm{cc, a, b, opt.h1, opt.h2, opt.y_coeffs, opt.deformation, opt.t};
    // (H3): ord_u g(u^m, Y(u)) must exceed (m n1 n2 + q)/n2
    Poly2 gu = mm.g().substitute_monomials(cc.m, 0, 0, 1);
    Poly2 Yu = Poly2::constant(BigRat(1));
    for (size_t i = 0; i < opt.y_coeffs.size(); ++i)
        Yu = Yu + Poly2::monomial((long long)i + 1, 0, to_bigrat(opt.y_coeffs[i]));
    Yu = Yu.pow(cc.n1) * Poly2::monomial(cc.n1, 0);
    Poly2 contact = gu.compose_y(Yu);
    if (!contact.zero()) {
        long long ord = contact.x_degree();
        for (const auto& [k, v] : contact.terms()) ord = std::min(ord, k.first);
        if (!(Rat(ord) > Rat(cc.m * cc.n1 * cc.n2 + cc.q, cc.n2)))
            throw RangeViolation("Y does not reach the required contact order (H3)");
    }
    return mm;
}

// ---------------------------------------------------------------------------
// Positivity certification by recursive subdivision.  Cells are certified by
// a local gradient bound evaluated on the cell's far corner, counterexamples
// are confirmed in exact arithmetic, and leftovers surface as Inconclusive.
struct PositivityResult {
    enum class Status { Certified, Counterexample, Unknown };
    Status status = Status::Unknown;
    double witness_x = 0, witness_y = 0;     // for counterexamples
    long long cells_checked = 0;
};

struct PositivityConfig {
    int max_depth = 40;
    long long max_cells = 400'000;
};

namespace detail {

struct PTerm {
    int i, j;
    long double coef;
};

// Recenter P to the cell [x0,x0+h] x [y0,y0+h]:  d_pq of P(x0+hu, y0+hv).
// On [0,1]^2 the value is bounded below by d_00 - sum_{pq != 00} |d_pq|;
// the bound is vacuous globally (huge cancelling coefficients) but tightens
// fast once cells are small against the local variation.
class ShiftedBound {
  public:
    explicit ShiftedBound(const Poly2& P) {
        for (const auto& [k, v] : P.terms()) {
            terms_.push_back({(int)k.first, (int)k.second, from_bigrat<long double>(v)});
            dx_ = std::max(dx_, (int)k.first);
            dy_ = std::max(dy_, (int)k.second);
        }
        int n = std::max(dx_, dy_) + 1;
        binom_.assign((size_t)n, std::vector<long double>((size_t)n, 0));
        for (int i = 0; i < n; ++i) {
            binom_[(size_t)i][0] = 1;
            for (int p = 1; p <= i; ++p)
                binom_[(size_t)i][(size_t)p] =
                    binom_[(size_t)(i - 1)][(size_t)(p - 1)] +
                    (p <= i - 1 ? binom_[(size_t)(i - 1)][(size_t)p] : 0);
        }
        work_.assign((size_t)(dx_ + 1) * (size_t)(dy_ + 1), 0);
    }

    // returns {base = d_00, rest = sum |d_pq|, pq != 00}
    std::pair<long double, long double> bound(long double x0, long double y0,
                                              long double h) {
        std::fill(work_.begin(), work_.end(), 0.0L);
        std::vector<long double> xp((size_t)dx_ + 1), yp((size_t)dy_ + 1);
        for (const auto& t : terms_) {
            // (x0 + h u)^i = sum_p C(i,p) x0^{i-p} h^p u^p, same in v
            long double xpow = 1;
            for (int p = 0; p <= t.i; ++p) {
                xp[(size_t)p] = binom_[(size_t)t.i][(size_t)p] *
                                powl(x0, (long double)(t.i - p)) * xpow;
                xpow *= h;
            }
            long double ypow = 1;
            for (int q = 0; q <= t.j; ++q) {
                yp[(size_t)q] = binom_[(size_t)t.j][(size_t)q] *
                                powl(y0, (long double)(t.j - q)) * ypow;
                ypow *= h;
            }
            for (int p = 0; p <= t.i; ++p) {
                long double cxp = t.coef * xp[(size_t)p];
                long double* row = &work_[(size_t)p * (size_t)(dy_ + 1)];
                for (int q = 0; q <= t.j; ++q) row[q] += cxp * yp[(size_t)q];
            }
        }
        long double base = work_[0], rest = 0;
        for (size_t idx = 1; idx < work_.size(); ++idx) rest += fabsl(work_[idx]);
        return {base, rest};
    }

  private:
    std::vector<PTerm> terms_;
    int dx_ = 0, dy_ = 0;
    std::vector<std::vector<long double>> binom_;
    std::vector<long double> work_;
};

inline PositivityResult certify_positive_square(const Poly2& P,
                                                const PositivityConfig& cfg) {
    ShiftedBound sb(P);
    struct Cell { double x0, y0, h; int depth; };
    std::vector<Cell> stack{{0.0, 0.0, 1.0, 0}};
    PositivityResult res;
    bool unknown_left = false;
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        ++res.cells_checked;
        if (res.cells_checked > cfg.max_cells) { unknown_left = true; break; }
        auto [base, rest] = sb.bound(c.x0, c.y0, c.h);
        if (base <= 0) {
            // corner value at a dyadic point: confirm in exact arithmetic
            BigRat ex = P.evaluate<BigRat>(BigRat(c.x0), BigRat(c.y0));
            if (!(ex > 0)) {
                res.status = PositivityResult::Status::Counterexample;
                res.witness_x = c.x0;
                res.witness_y = c.y0;
                return res;
            }
        } else if (base > rest) {
            continue;   // certified on this cell
        }
        if (c.depth >= cfg.max_depth) { unknown_left = true; continue; }
        const double h2 = c.h / 2;
        stack.push_back({c.x0, c.y0, h2, c.depth + 1});
        stack.push_back({c.x0 + h2, c.y0, h2, c.depth + 1});
        stack.push_back({c.x0, c.y0 + h2, h2, c.depth + 1});
        stack.push_back({c.x0 + h2, c.y0 + h2, h2, c.depth + 1});
    }
    res.status = unknown_left ? PositivityResult::Status::Unknown
                              : PositivityResult::Status::Certified;
    return res;
}

} // namespace detail

} // namespace yano
