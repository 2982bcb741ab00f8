#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "yano/errors.hpp"
#include "yano/gamma.hpp"
#include "yano/poly2.hpp"
#include "yano/quadrature.hpp"
#include "yano/rational.hpp"
#include "yano/scalar.hpp"
#include "yano/series.hpp"

namespace yano {

namespace detail {
template <class R>
R re_part(const R& v) { return v; }
template <class R>
R re_part(const std::complex<R>& v) { return v.real(); }
} // namespace detail

// A function on [0,1], real analytic in t^{1/grid}, exposed both pointwise
// and through its Taylor coefficients at 0.  This is the common currency of
// every continuation formula.
template <class V, class R = typename value_traits<V>::real_type>
struct GridFn {
    int grid = 1;
    std::function<V(const R&)> eval;
    std::function<std::vector<V>(int)> series;   // first `count` coefficients
};

// Meromorphic continuation of  G_h(sigma) = int_0^1 h(t) t^sigma dt/t.
//
// For Re(sigma) >= 1/2: Taylor-split, G = sum_{j<=K} c_j/(sigma + j/N) plus
// the quadrature of the subtracted tail, K chosen so Re(sigma) + (K+1)/N
// clears a margin.  For deep continuation the tail subtraction drowns in
// rounding noise under the t^{sigma-1} weight, so the series is instead
// integrated termwise-analytically on [0,x0] (x0 inside the convergence
// radius by a decay test; x0 = 1 makes the value fully analytic) and the
// bare integrand is quadratured on [x0,1].
template <class V, class R>
V mellin_value(const GridFn<V, R>& h, const V& sigma, const QuadratureConfig& cfg) {
    const int N = h.grid;
    const R margin = R(5) / 4;
    const R re_sigma = detail::re_part(sigma);
    int K = 0;
    while (re_sigma + R(K + 1) / N < margin) ++K;
    K += cfg.taylor_bump;

    auto pole_guard = [&](const V& denom, const V& coeff) -> bool {
        // returns true if the term should be skipped (zero coefficient at a
        // grid point sigma happens to hit exactly)
        if (value_traits<V>::norm(denom) < R(1e-13) * (1 + value_traits<V>::norm(sigma))) {
            if (value_traits<V>::norm(coeff) > R(1e-30))
                throw AtPole("mellin_value: sigma at a pole of the continuation");
            return true;
        }
        return false;
    };

    auto tail_eval = [&](const std::vector<V>& cs, int upto, const R& t) -> V {
        // h(t) - sum_{j<=upto} c_j t^{j/N}
        R u = N == 1 ? t : r_pow(t, R(1) / N);
        V poly = V(0);
        for (int j = upto; j >= 0; --j) poly = poly * V(u) + cs[(size_t)j];
        return h.eval(t) - poly;
    };

    if (re_sigma >= R(1) / 2) {
        std::vector<V> cs = h.series(K + 1);
        V head = V(0);
        for (int j = 0; j <= K; ++j) {
            V denom = sigma + V(R(j) / N);
            if (pole_guard(denom, cs[(size_t)j])) continue;
            head += cs[(size_t)j] / denom;
        }
        auto integrand = [&](const R& t) -> V {
            return tail_eval(cs, K, t) * r_pow(t, sigma - V(1));
        };
        return head + integrate<V>(integrand, R(0), R(1), cfg);
    }

    // Deep continuation.  Subtracted tails are hopeless here: their values sit
    // below the rounding noise of h while t^{sigma-1} amplifies that noise
    // without bound near 0.  Instead integrate the series termwise over
    // [0,x0] (exact continuation, converges inside the radius) and quadrate
    // the bare integrand on [x0,1], where t^{sigma-1} <= x0^{sigma-1} is tame.
    const int JMAX = (cfg.precision_bits > 64 ? 900 : 420) * N;
    std::vector<V> cs = h.series(JMAX + 1);

    R x0 = 0;
    auto decays_at = [&](const R& cand) {
        R late = 0, mid = 0;
        for (int j = JMAX - 50 * N; j <= JMAX; ++j)
            late = std::max(late, value_traits<V>::norm(cs[(size_t)j]) * r_pow(cand, R(j) / N));
        int m0 = JMAX / 2;
        for (int j = m0; j <= m0 + 50 * N; ++j)
            mid = std::max(mid, value_traits<V>::norm(cs[(size_t)j]) * r_pow(cand, R(j) / N));
        return late < mid * R(1e-12) || late < R(1e-45);
    };
    for (R cand : {R(1), R(7) / 8, R(3) / 4, R(1) / 2, R(1) / 4, R(1) / 8, R(1) / 16}) {
        if (decays_at(cand)) { x0 = cand; break; }
    }
    if (x0 == R(0))
        throw QuadratureFailure("mellin_value: series tail does not decay inside [0,1]");

    V series_part = V(0);
    const R term_tol = R(cfg.abs_tol) / 4096;
    int quiet = 0;
    for (int j = 0; j <= JMAX; ++j) {
        V denom = sigma + V(R(j) / N);
        if (pole_guard(denom, cs[(size_t)j])) continue;
        V term = cs[(size_t)j] * r_pow(x0, sigma + V(R(j) / N)) / denom;
        series_part += term;
        if (j > K && value_traits<V>::norm(term) < term_tol) {
            if (++quiet > 64 * N) break;
        } else {
            quiet = 0;
        }
    }
    if (x0 == R(1)) return series_part;
    auto integrand = [&](const R& t) -> V { return h.eval(t) * r_pow(t, sigma - V(1)); };
    return series_part + integrate<V>(integrand, x0, R(1), cfg);
}

// ---------------------------------------------------------------------------
// One-variable parameter integral  Y(s) = int_0^T f(t)^s g(t) t^{a s + b} dt/t
// with f, g real analytic in t^{1/N}, f > 0 on (0,T].
template <class R>
struct OneVarIntegral {
    Series<BigRat> f;                      // exact series data at 0
    Series<BigRat> g;                      // same grid as f
    std::function<R(const R&)> f_eval;
    std::function<R(const R&)> g_eval;
    Rat a, b;
    R T = R(1);

    int grid() const { return f.grid; }

    // order of f at 0 in grid steps
    int f_order_index() const {
        int r0 = f.order_index();
        if (r0 == f.length()) throw Error("OneVarIntegral: f vanishes identically");
        return r0;
    }
    // effective exponent slope a1 = a + ord f
    Rat a_eff() const { return a + Rat(f_order_index(), grid()); }

    // pole location -(b1 + k/N)/a1 for the k-th coefficient of f^s g (unit
    // part); b's fractional part and g's order are carried by the series.
    Rat pole(long long k) const {
        Rat a1 = a_eff();
        if (!(Rat(0) < a1)) throw Error("OneVarIntegral: a1 must be positive for poles");
        return -(b + Rat(k, grid())) / a1;
    }
};

namespace detail {

// series + eval of  u(t)^s g(t)  where u = f / t^{ord f}
template <class V, class R>
GridFn<V, R> unit_part_fn(const OneVarIntegral<R>& h, const V& s) {
    const int N = h.grid();
    const int r0 = h.f_order_index();
    GridFn<V, R> fn;
    fn.grid = N;
    fn.eval = [h, s, r0, N](const R& t) -> V {
        V val = r_pow(h.f_eval(t), s) * V(h.g_eval(t));
        if (r0 > 0) val = val * r_pow(t, V(-(R(r0) / N)) * s);
        return val;
    };
    fn.series = [h, s, r0](int count) -> std::vector<V> {
        // shift f down by its order, convert, power, multiply by g
        Series<V> u{h.f.grid, {}};
        u.c.reserve((size_t)count);
        for (int j = r0; j < r0 + count; ++j)
            u.c.push_back(j < h.f.length() ? V(from_bigrat<R>(h.f.at(j))) : V(0));
        Series<V> w = pow_real(u, s, count);
        Series<V> g{h.g.grid, {}};
        g.c.reserve((size_t)count);
        for (int j = 0; j < count; ++j)
            g.c.push_back(j < h.g.length() ? V(from_bigrat<R>(h.g.at(j))) : V(0));
        return (w * g).c;
    };
    return fn;
}

} // namespace detail

// Taylor-split evaluation; s real or complex, off the pole set.
template <class V, class R>
V evaluate_one_var(const OneVarIntegral<R>& h, const V& s, const QuadratureConfig& cfg) {
    const int N = h.grid();
    const Rat a1 = h.a_eff();
    V sigma = V(from_rat<R>(a1)) * s + V(from_rat<R>(h.b));
    GridFn<V, R> fn = detail::unit_part_fn<V, R>(h, s);
    if (!(h.T == R(1))) {
        // rescale t = T u so the core runs on [0,1]
        GridFn<V, R> fnT;
        fnT.grid = N;
        R T = h.T;
        fnT.eval = [fn, T](const R& u) { return fn.eval(T * u); };
        fnT.series = [fn, T, N](int count) {
            auto cs = fn.series(count);
            R Tp = 1;
            R Tstep = r_pow(T, R(1) / N);
            for (auto& c : cs) { c = c * V(Tp); Tp *= Tstep; }
            return cs;
        };
        return r_pow(h.T, sigma) * mellin_value(fnT, sigma, cfg);
    }
    return mellin_value(fn, sigma, cfg);
}

// Residue at the k-th pole, float mode: c_k(alpha)/a1.
template <class R>
R residue_one_var(const OneVarIntegral<R>& h, long long k, const QuadratureConfig& cfg) {
    (void)cfg;
    const Rat alpha = h.pole(k);
    const R al = from_rat<R>(alpha);
    auto fn = detail::unit_part_fn<R, R>(h, al);
    auto cs = fn.series((int)k + 1);
    return cs[(size_t)k] / from_rat<R>(h.a_eff());
}

// Exact-mode residue; needs the unit part of f to have constant term 1
// (or an integer exponent).
template <class R>
BigRat residue_one_var_exact(const OneVarIntegral<R>& h, long long k) {
    const Rat alpha = h.pole(k);
    const int r0 = h.f_order_index();
    Series<BigRat> u{h.f.grid, {}};
    for (int j = r0; j < r0 + (int)k + 1; ++j)
        u.c.push_back(j < h.f.length() ? h.f.at(j) : BigRat(0));
    Series<BigRat> w = pow_exact(u, to_bigrat(alpha), (int)k + 1);
    Series<BigRat> g = h.g.extended((int)k + 1).truncated((int)k + 1);
    BigRat ck = (w * g).at((int)k);
    return ck / to_bigrat(h.a_eff());
}

// ---------------------------------------------------------------------------
// Two-variable integral
//   Y(s) = pref * int_0^1 int_0^1 f(x,y)^s x^{a1 s + b1} y^{a2 s + b2} dx/x dy/y
// with f an exact positive polynomial and integer exponent data.
struct TwoVarIntegral {
    Poly2 f;
    long long a1 = 0, b1 = 1, a2 = 0, b2 = 1;
    Rat prefactor = Rat(1);

    // x-family pole at -(b1+nu1)/a1 collides with the y-family?
    bool x_pole_collides(long long nu1) const {
        if (a1 == 0) throw Error("TwoVarIntegral: a1 = 0 has no x-family poles");
        Rat alpha = Rat(-(b1 + nu1), a1);
        if (a2 == 0) return false;
        Rat nu2 = -(Rat(a2) * alpha + Rat(b2));
        return nu2.is_integer() && nu2.num() >= 0;
    }
    TwoVarIntegral transposed() const {
        return {f.transpose(), a2, b2, a1, b1, prefactor};
    }
};

namespace detail {

// GridFn for the row function  y -> [x^nu] f(.,y)^alpha  (grid 1).
template <class R>
GridFn<R, R> row_function(const TwoVarIntegral& h, int nu, const R& alpha) {
    GridFn<R, R> fn;
    fn.grid = 1;
    auto rows = std::make_shared<std::vector<std::vector<R>>>(h.f.template rows_as<R>());
    int xdeg = (int)h.f.x_degree();
    Poly2 f = h.f;
    fn.eval = [rows, nu, alpha, xdeg](const R& y) -> R {
        // profile of f in x at fixed y, then a scalar series power
        Series<R> prof{1, std::vector<R>((size_t)nu + 1, R(0))};
        for (int i = 0; i <= std::min(nu, xdeg); ++i) {
            const auto& row = (*rows)[(size_t)i];
            R acc = 0;
            for (size_t j = row.size(); j-- > 0;) acc = acc * y + row[j];
            prof.c[(size_t)i] = acc;
        }
        return pow_real(prof, alpha, nu + 1).at(nu);
    };
    fn.series = [f, nu, alpha](int count) -> std::vector<R> {
        auto f2 = f.template to_series2<R>(nu, count - 1);
        auto g2 = pow_real2(f2, alpha, nu, count - 1);
        return g2.rows[(size_t)nu].c;
    };
    return fn;
}

} // namespace detail

// Simple-pole residue at alpha = -(b1+nu1)/a1 (x family):
//   pref * (1/a1) * G_{[x^nu1] f^alpha(., y)} (a2 alpha + b2).
template <class R>
R residue_two_var_x(const TwoVarIntegral& h, long long nu1, const QuadratureConfig& cfg) {
    if (h.x_pole_collides(nu1))
        throw DoublePole("residue_two_var: pole families collide; use double_pole_coefficient");
    const Rat alpha = Rat(-(h.b1 + nu1), h.a1);
    const R al = from_rat<R>(alpha);
    const Rat sig = Rat(h.a2) * alpha + Rat(h.b2);
    auto fn = detail::row_function<R>(h, (int)nu1, al);
    R g = mellin_value(fn, from_rat<R>(sig), cfg);
    return from_rat<R>(h.prefactor) * g / R(h.a1);
}

template <class R>
R residue_two_var_y(const TwoVarIntegral& h, long long nu2, const QuadratureConfig& cfg) {
    return residue_two_var_x<R>(h.transposed(), nu2, cfg);
}

// Order-two part when both families meet at alpha:
//   lim (s-alpha)^2 Y(s) = pref * [x^{nu1} y^{nu2}] f^alpha / (a1 a2).
template <class R>
R double_pole_coefficient(const TwoVarIntegral& h, long long nu1, long long nu2,
                          const QuadratureConfig& cfg) {
    (void)cfg;
    if (h.a1 == 0 || h.a2 == 0)
        throw NotADoublePole("double_pole_coefficient: a degenerate family");
    const Rat alx = Rat(-(h.b1 + nu1), h.a1);
    const Rat aly = Rat(-(h.b2 + nu2), h.a2);
    if (!(alx == aly))
        throw NotADoublePole("double_pole_coefficient: families do not meet");
    auto f2 = h.f.template to_series2<R>((int)nu1, (int)nu2);
    auto g2 = pow_real2(f2, from_rat<R>(alx), (int)nu1, (int)nu2);
    return from_rat<R>(h.prefactor) * g2.coeff((int)nu1, (int)nu2) / (R(h.a1) * R(h.a2));
}

// Four-part decomposition of Y(s): the mixed-coefficient double sum, the two
// boundary corrections and the doubly-subtracted remainder.
template <class V, class R = typename value_traits<V>::real_type>
V evaluate_two_var(const TwoVarIntegral& h, const V& s, const QuadratureConfig& cfg) {
    const R re_s = detail::re_part(s);
    auto split_order = [&](long long a, long long b) {
        double v = -(double)a * to_double(re_s) - (double)b;
        int n = v > 0 ? (int)std::ceil(v) : 0;
        return n + 2 + cfg.taylor_bump;
    };
    const int N1 = split_order(h.a1, h.b1);
    const int N2 = split_order(h.a2, h.b2);

    const V e1 = V(R(h.a1)) * s + V(R(h.b1));   // x exponent (dx/x measure)
    const V e2 = V(R(h.a2)) * s + V(R(h.b2));

    auto f2 = h.f.template to_series2<V>(N1, N2);
    // constant term must be positive for the power series
    auto g2 = pow_real2(f2, s, N1, N2);

    V part1 = V(0);
    for (int i = 0; i <= N1; ++i)
        for (int j = 0; j <= N2; ++j) {
            V den = (e1 + V(R(i))) * (e2 + V(R(j)));
            if (value_traits<V>::norm(den) < R(1e-25))
                throw AtPole("evaluate_two_var: s at a pole");
            part1 += g2.coeff(i, j) / den;
        }

    auto rows = h.f.template rows_as<R>();
    auto cols = h.f.transpose().template rows_as<R>();
    const int xdeg = (int)h.f.x_degree(), ydeg = (int)h.f.y_degree();

    auto profile_pow = [&](const std::vector<std::vector<R>>& rws, int deg, int K,
                           const R& t) -> Series<V> {
        Series<V> prof{1, std::vector<V>((size_t)K + 1, V(0))};
        for (int i = 0; i <= std::min(K, deg); ++i) {
            const auto& row = rws[(size_t)i];
            R acc = 0;
            for (size_t j = row.size(); j-- > 0;) acc = acc * t + row[j];
            prof.c[(size_t)i] = V(acc);
        }
        return pow_real(prof, s, K + 1);
    };

    // phi^2: for each nu1, int_0^1 y^{e2-1} (T_{nu1}(y) - sum_j c_{nu1 j} y^j) dy
    V part2 = V(0);
    {
        auto integrand = [&](const R& y) -> V {
            Series<V> T = profile_pow(rows, xdeg, N1, y);
            V acc = V(0);
            for (int i = 0; i <= N1; ++i) {
                V poly = V(0);
                for (int j = N2; j >= 0; --j) poly = poly * V(y) + g2.coeff(i, j);
                acc += (T.at(i) - poly) / (e1 + V(R(i)));
            }
            return acc * r_pow(y, e2 - V(1));
        };
        part2 = integrate<V>(integrand, R(0), R(1), cfg);
    }
    V part3 = V(0);
    {
        auto integrand = [&](const R& x) -> V {
            Series<V> U = profile_pow(cols, ydeg, N2, x);
            V acc = V(0);
            for (int j = 0; j <= N2; ++j) {
                V poly = V(0);
                for (int i = N1; i >= 0; --i) poly = poly * V(x) + g2.coeff(i, j);
                acc += (U.at(j) - poly) / (e2 + V(R(j)));
            }
            return acc * r_pow(x, e1 - V(1));
        };
        part3 = integrate<V>(integrand, R(0), R(1), cfg);
    }

    // doubly subtracted remainder over the square
    auto f_value = [&](const R& x, const R& y) -> R {
        R acc = 0;
        for (size_t i = rows.size(); i-- > 0;) {
            R rv = 0;
            for (size_t j = rows[i].size(); j-- > 0;) rv = rv * y + rows[i][j];
            acc = acc * x + rv;
        }
        return acc;
    };
    auto inner = [&](const R& x) -> V {
        Series<V> U = profile_pow(cols, ydeg, N2, x);
        auto integrand_y = [&](const R& y) -> V {
            Series<V> T = profile_pow(rows, xdeg, N1, y);
            V S = r_pow(f_value(x, y), s);
            for (int i = 0; i <= N1; ++i) S -= T.at(i) * r_pow(x, R(i));
            for (int j = 0; j <= N2; ++j) S -= U.at(j) * r_pow(y, R(j));
            for (int i = 0; i <= N1; ++i) {
                V poly = V(0);
                for (int j = N2; j >= 0; --j) poly = poly * V(y) + g2.coeff(i, j);
                S += poly * r_pow(x, R(i));
            }
            return S * r_pow(y, e2 - V(1));
        };
        return integrate<V>(integrand_y, R(0), R(1), cfg) * r_pow(x, e1 - V(1));
    };
    V part4 = integrate<V>(inner, R(0), R(1), cfg);

    return V(from_rat<R>(h.prefactor)) * (part1 + part2 + part3 + part4);
}

// ---------------------------------------------------------------------------
// Lemma-style Beta identity:
//   G_{(y^p+c)^alpha}(p s1) + G_{(1+c x^p)^alpha}(p s2) = c^{-s2}/p B(s1,s2)
// for s1 + s2 = -alpha > 0.
template <class R>
struct BetaIdentityResult {
    R lhs, rhs, error;
};

template <class R>
GridFn<R, R> binomial_grid_fn(const R& c, int p, const R& alpha, bool c_first) {
    // c_first: (y^p + c)^alpha,  else (1 + c x^p)^alpha
    GridFn<R, R> fn;
    fn.grid = 1;
    fn.eval = [c, p, alpha, c_first](const R& t) -> R {
        R tp = r_pow(t, R(p));
        R base = c_first ? tp + c : 1 + c * tp;
        return r_pow(base, alpha);
    };
    fn.series = [c, p, alpha, c_first](int count) -> std::vector<R> {
        Series<R> base{1, std::vector<R>((size_t)count, R(0))};
        base.c[0] = c_first ? c : R(1);
        if (p < count) base.c[(size_t)p] = c_first ? R(1) : c;
        return pow_real(base, alpha, count).c;
    };
    return fn;
}

template <class R>
BetaIdentityResult<R> beta_identity_check(int p, const R& c, const R& alpha,
                                          const R& s1, const R& s2,
                                          const QuadratureConfig& cfg) {
    if (!(r_abs(R(s1 + s2 + alpha)) <= machine_eps<R>() * 64 * (1 + r_abs(alpha))))
        throw Error("beta_identity_check: need s1 + s2 = -alpha");
    auto f1 = binomial_grid_fn<R>(c, p, alpha, true);
    auto f2 = binomial_grid_fn<R>(c, p, alpha, false);
    R lhs = mellin_value(f1, R(p) * s1, cfg) + mellin_value(f2, R(p) * s2, cfg);
    R rhs = r_pow(c, -s2) / R(p) * beta_function(s1, s2);
    return {lhs, rhs, r_abs(lhs - rhs)};
}

} // namespace yano
