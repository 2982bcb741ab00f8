#pragma once

#include <vector>

#include "yano/errors.hpp"
#include "yano/scalar.hpp"

namespace yano {

// Log-gamma by the Stirling series with exact Bernoulli coefficients and
// upward argument shifting.  The shift threshold and term count are fixed so
// the same code is accurate for long double and the quad float.
namespace detail {

// B_2, B_4, ..., B_52 from the defining recurrence, kept exact.
inline const std::vector<BigRat>& bernoulli_even() {
    static const std::vector<BigRat> table = [] {
        const int N = 53;
        std::vector<BigRat> b((size_t)N + 1);
        std::vector<std::vector<BigRat>> binom((size_t)N + 2,
                                               std::vector<BigRat>((size_t)N + 2, BigRat(0)));
        for (int n = 0; n <= N + 1; ++n) {
            binom[(size_t)n][0] = 1;
            for (int k = 1; k <= n; ++k)
                binom[(size_t)n][(size_t)k] =
                    binom[(size_t)(n - 1)][(size_t)(k - 1)] +
                    binom[(size_t)(n - 1)][(size_t)k];
        }
        b[0] = 1;
        for (int n = 1; n <= N; ++n) {
            BigRat acc = 0;
            for (int k = 0; k < n; ++k) acc += binom[(size_t)n + 1][(size_t)k] * b[(size_t)k];
            b[(size_t)n] = -acc / BigRat(n + 1);
        }
        std::vector<BigRat> evens;
        for (int n = 2; n <= N; n += 2) evens.push_back(b[(size_t)n]);
        return evens;
    }();
    return table;
}

// log Gamma(x) for x > 0
template <class R>
R log_gamma_pos(R x) {
    static const int kShift = 15;
    static const std::vector<R> coef = [] {
        // B_{2n} / (2n (2n-1))
        std::vector<R> c;
        const auto& b = bernoulli_even();
        for (size_t i = 0; i < b.size(); ++i) {
            long long n2 = 2 * (long long)(i + 1);
            c.push_back(from_bigrat<R>(b[i] / BigRat(n2 * (n2 - 1))));
        }
        return c;
    }();
    R shift = 0;
    while (x < kShift) {
        shift += r_log(x);
        x += 1;
    }
    const R half_log_2pi = r_log(2 * pi_value<R>()) / 2;
    R acc = (x - R(1) / 2) * r_log(x) - x + half_log_2pi;
    R inv = 1 / x, inv2 = inv * inv, p = inv;
    for (size_t i = 0; i < coef.size(); ++i) {
        acc += coef[i] * p;
        p *= inv2;
    }
    return acc - shift;
}

// sin(pi x) with argument reduction; also reports the parity used
template <class R>
R sin_pi(const R& x, int& sign_flips) {
    R fl = r_floor(x);
    R frac = x - fl;                         // in [0,1)
    long long n = (long long)to_double(fl);  // desk-scale arguments only
    sign_flips = (int)(((n % 2) + 2) % 2);
    return r_sin(pi_value<R>() * frac);
}

} // namespace detail

template <class R>
struct LogGamma {
    R log_abs;
    int sign;   // +1 or -1
};

// log |Gamma(x)| and sign, any real non-pole x; reflection below zero.
template <class R>
LogGamma<R> log_gamma(const R& x) {
    if (x > 0) return {detail::log_gamma_pos(x), 1};
    int flips = 0;
    R s = detail::sin_pi(x, flips);
    if (r_abs(s) < machine_eps<R>() * 8)
        throw AtPole("log_gamma at a nonpositive integer");
    // Gamma(x) = pi / (sin(pi x) Gamma(1-x)),  Gamma(1-x) > 0 here
    R la = r_log(pi_value<R>()) - r_log(r_abs(s)) - detail::log_gamma_pos(R(1) - x);
    int sign = s > 0 ? 1 : -1;
    if (flips % 2) sign = -sign;
    return {la, sign};
}

template <class R>
R gamma_fn(const R& x) {
    auto g = log_gamma(x);
    return R(g.sign) * r_exp(g.log_abs);
}

// Beta via the Gamma ratio, valid for negative non-integer arguments too.
template <class R>
R beta_function(const R& a, const R& b) {
    auto ga = log_gamma(a);
    auto gb = log_gamma(b);
    auto gs = log_gamma(a + b);
    R la = ga.log_abs + gb.log_abs - gs.log_abs;
    int sign = ga.sign * gb.sign * gs.sign;
    return R(sign) * r_exp(la);
}

} // namespace yano
