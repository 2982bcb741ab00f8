#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "yano/errors.hpp"
#include "yano/scalar.hpp"

namespace yano {

// Tolerances and budget for all continuation quadratures.  precision_bits
// selects the float backend (<= 64 -> long double, else the quad float);
// taylor_bump raises every Taylor split order (robustness re-runs).
struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
    int precision_bits = 64;
    int taylor_bump = 0;

    QuadratureConfig with_bump(int extra) const {
        QuadratureConfig c = *this;
        c.taylor_bump += extra;
        return c;
    }
};

// FNV-1a over the canonical config string; cache keys and reports carry it.
inline std::string config_fingerprint(const QuadratureConfig& cfg) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "abs=%.17g;rel=%.17g;sub=%d;bits=%d;bump=%d",
                  cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions,
                  cfg.precision_bits, cfg.taylor_bump);
    unsigned long long hash = 1469598103934665603ull;
    for (const char* p = buf; *p; ++p) {
        hash ^= (unsigned char)*p;
        hash *= 1099511628211ull;
    }
    char out[24];
    std::snprintf(out, sizeof out, "%016llx", hash);
    return out;
}

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1], computed at runtime by Newton on
// P_n so the same code serves every precision.
template <class R>
struct GaussRule {
    std::vector<R> x, w;

    explicit GaussRule(int n) {
        x.resize((size_t)n);
        w.resize((size_t)n);
        const R pi = pi_value<R>();
        for (int i = 0; i < n; ++i) {
            // Chebyshev-like initial guess, then Newton
            R xi = r_cos<R>(pi * (R(i) + R(3) / 4) / (R(n) + R(1) / 2));
            R dp = 0;
            for (int it = 0; it < 60; ++it) {
                R p0 = 1, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    R p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (xi * p1 - p0) / (xi * xi - 1);
                R dx = p1 / dp;
                xi -= dx;
                if (r_abs(dx) <= machine_eps<R>() * 4 * (r_abs(xi) + R(1) / 4)) break;
            }
            x[(size_t)i] = xi;
            w[(size_t)i] = 2 / ((1 - xi * xi) * dp * dp);
        }
    }
};

template <class R>
const GaussRule<R>& gauss_rule(int n) {
    static const GaussRule<R> g7(7), g15(15);
    if (n == 7) return g7;
    if (n == 15) return g15;
    throw Error("gauss_rule: unsupported order");
}

} // namespace detail

// Adaptive bisection with a fixed-order Gauss pair (G7/G15) as the embedded
// error estimate.  Intervals are processed depth-first left-to-right and
// accumulated in that order, so results are bit-reproducible at fixed config.
// V may be real or complex.
template <class V, class R, class F>
V integrate(F&& f, R a, R b, const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0) || !(cfg.rel_tol > 0))
        throw Error("QuadratureConfig: tolerances must be positive");
    using VT = value_traits<V>;
    const auto& g7 = detail::gauss_rule<R>(7);
    const auto& g15 = detail::gauss_rule<R>(15);

    auto rule = [&](R lo, R hi, V& v15, R& err, R& resabs) {
        const R c = (lo + hi) / 2, h = (hi - lo) / 2;
        V s7 = V(0), s15 = V(0);
        R sa = 0;
        for (int i = 0; i < 7; ++i) s7 += V(g7.w[(size_t)i]) * f(c + h * g7.x[(size_t)i]);
        for (int i = 0; i < 15; ++i) {
            V fv = f(c + h * g15.x[(size_t)i]);
            s15 += V(g15.w[(size_t)i]) * fv;
            sa += g15.w[(size_t)i] * VT::norm(fv);
        }
        v15 = V(h) * s15;
        resabs = h * sa;
        err = VT::norm(V(h) * s7 - v15);
    };

    struct Item { R lo, hi; int depth; };
    std::vector<Item> stack;
    stack.push_back({a, b, 0});
    V total = V(0);
    R err_total = 0;
    long long used = 0;
    const R span = b - a;
    const R abs_tol = R(cfg.abs_tol), rel_tol = R(cfg.rel_tol);

    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        V v;
        R e, resabs;
        rule(it.lo, it.hi, v, e, resabs);
        const R width_frac = (it.hi - it.lo) / span;
        const R budget = (abs_tol + rel_tol * VT::norm(total)) * width_frac;
        // accept on the budget, on per-interval relative convergence, or at
        // the rounding-noise floor of the integrand itself
        const R noise_floor = machine_eps<R>() * 64 * resabs;
        if (e <= budget || e <= rel_tol * VT::norm(v) || e <= noise_floor ||
            it.depth >= 60) {
            total += v;
            err_total += e;
            continue;
        }
        if (++used > cfg.max_subdivisions)
            throw QuadratureFailure("adaptive quadrature: subdivision budget exhausted");
        const R mid = (it.lo + it.hi) / 2;
        // push right first so the left half is processed next (left-to-right order)
        stack.push_back({mid, it.hi, it.depth + 1});
        stack.push_back({it.lo, mid, it.depth + 1});
    }
    (void)err_total;
    return total;
}

template <class R, class F>
R integrate_real(F&& f, R a, R b, const QuadratureConfig& cfg) {
    return integrate<R>(std::forward<F>(f), a, b, cfg);
}

} // namespace yano
