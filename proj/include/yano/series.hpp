#pragma once

#include <numeric>
#include <vector>

#include "yano/errors.hpp"
#include "yano/scalar.hpp"

namespace yano {

// Truncated formal power series on the exponent grid (1/grid)*Z>=0.
// c[j] multiplies t^{j/grid}; c.size() is the truncation length, i.e. the
// series is known below exponent c.size()/grid.
template <class S>
struct Series {
    int grid = 1;
    std::vector<S> c;

    Series() = default;
    Series(int g, std::vector<S> coeffs) : grid(g), c(std::move(coeffs)) {}

    static Series constant(const S& v, int len, int g = 1) {
        Series s{g, std::vector<S>((size_t)len, S(0))};
        if (len > 0) s.c[0] = v;
        return s;
    }

    int length() const { return (int)c.size(); }
    const S& at(int j) const { return c[(size_t)j]; }

    Series extended(int len) const {
        Series s = *this;
        s.c.resize((size_t)len, S(0));
        return s;
    }
    Series truncated(int len) const {
        Series s = *this;
        if ((int)s.c.size() > len) s.c.resize((size_t)len);
        return s;
    }

    // lowest index with a nonzero coefficient, or length() if none
    int order_index() const {
        for (int j = 0; j < length(); ++j)
            if (!(c[(size_t)j] == S(0))) return j;
        return length();
    }

    template <class T>
    Series<T> convert() const {
        Series<T> out;
        out.grid = grid;
        out.c.reserve(c.size());
        for (const auto& v : c) out.c.push_back(T(v));
        return out;
    }

    S evaluate(const S& t) const {
        // Horner in u = t^{1/grid}
        S u = t;
        if (grid != 1) u = r_pow(t, S(1) / S(grid));
        S acc = S(0);
        for (size_t j = c.size(); j-- > 0;) acc = acc * u + c[j];
        return acc;
    }
};

template <class S>
Series<S> operator+(const Series<S>& a, const Series<S>& b) {
    if (a.grid != b.grid) throw GridMismatch("series addition: grids differ");
    Series<S> out{a.grid, {}};
    int len = std::min(a.length(), b.length());
    out.c.resize((size_t)len);
    for (int j = 0; j < len; ++j) out.c[(size_t)j] = a.at(j) + b.at(j);
    return out;
}

template <class S>
Series<S> operator-(const Series<S>& a, const Series<S>& b) {
    if (a.grid != b.grid) throw GridMismatch("series subtraction: grids differ");
    Series<S> out{a.grid, {}};
    int len = std::min(a.length(), b.length());
    out.c.resize((size_t)len);
    for (int j = 0; j < len; ++j) out.c[(size_t)j] = a.at(j) - b.at(j);
    return out;
}

template <class S>
Series<S> operator*(const Series<S>& a, const Series<S>& b) {
    if (a.grid != b.grid) throw GridMismatch("series product: grids differ");
    Series<S> out{a.grid, {}};
    int len = std::min(a.length(), b.length());
    out.c.assign((size_t)len, S(0));
    for (int i = 0; i < std::min(a.length(), len); ++i) {
        if (a.at(i) == S(0)) continue;
        for (int j = 0; j + i < len && j < b.length(); ++j)
            out.c[(size_t)(i + j)] += a.at(i) * b.at(j);
    }
    return out;
}

// t -> t^p (p >= 1); truncation length scales accordingly.
template <class S>
Series<S> substitute_power(const Series<S>& a, int p) {
    if (p < 1) throw Error("substitute_power: exponent must be >= 1");
    Series<S> out{a.grid, std::vector<S>((size_t)(a.length() * p), S(0))};
    for (int j = 0; j < a.length(); ++j) out.c[(size_t)(j * p)] = a.at(j);
    return out;
}

// regrid to a multiple of the current grid
template <class S>
Series<S> regrid(const Series<S>& a, int new_grid) {
    if (new_grid % a.grid != 0) throw GridMismatch("regrid: not a multiple");
    int f = new_grid / a.grid;
    Series<S> out{new_grid, std::vector<S>((size_t)(a.length() * f), S(0))};
    for (int j = 0; j < a.length(); ++j) out.c[(size_t)(j * f)] = a.at(j);
    return out;
}

namespace detail {

template <class S>
struct pow_base {
    // g = f^alpha from the first-order ODE g' f = alpha f' g:
    //   k g_k f_0 = sum_{i=1..k} (alpha i - (k - i)) f_i g_{k-i}
    static Series<S> run(const Series<S>& f, const S& alpha, int len, const S& g0) {
        Series<S> g{f.grid, std::vector<S>((size_t)len, S(0))};
        if (len == 0) return g;
        g.c[0] = g0;
        const S f0 = f.at(0);
        for (int k = 1; k < len; ++k) {
            S acc = S(0);
            for (int i = 1; i <= k && i < f.length(); ++i)
                acc += (alpha * S(i) - S(k - i)) * f.at(i) * g.at(k - i);
            g.c[(size_t)k] = acc / (S(k) * f0);
        }
        return g;
    }
};

} // namespace detail

// f^alpha for float scalars; needs f(0) > 0.
template <class S>
Series<S> pow_real(const Series<S>& f, const S& alpha, int len) {
    if (f.length() == 0 || !(f.at(0) > S(0)))
        throw NonpositiveConstantTerm("pow_real: constant term must be positive");
    return detail::pow_base<S>::run(f, alpha, len, r_pow(f.at(0), alpha));
}
template <class R>
Series<std::complex<R>> pow_real(const Series<std::complex<R>>& f,
                                 const std::complex<R>& alpha, int len) {
    if (f.length() == 0 || !(f.at(0).real() > R(0)) || f.at(0).imag() != R(0))
        throw NonpositiveConstantTerm("pow_real: constant term must be positive real");
    std::complex<R> g0 = r_pow(f.at(0).real(), alpha);
    return detail::pow_base<std::complex<R>>::run(f, alpha, len, g0);
}

// exact-mode power: rational alpha with f(0) = 1, or integer alpha
inline Series<BigRat> pow_exact(const Series<BigRat>& f, const BigRat& alpha, int len) {
    if (f.length() == 0 || f.at(0) == BigRat(0))
        throw NonpositiveConstantTerm("pow_exact: zero constant term");
    BigRat g0;
    if (f.at(0) == BigRat(1)) {
        g0 = 1;
    } else if (boost::multiprecision::denominator(alpha) == 1) {
        boost::multiprecision::cpp_int e = boost::multiprecision::numerator(alpha);
        g0 = 1;
        BigRat base = e < 0 ? BigRat(1) / f.at(0) : f.at(0);
        for (boost::multiprecision::cpp_int n = abs(e); n > 0; --n) g0 *= base;
    } else {
        throw Error("pow_exact: need f(0) = 1 for fractional exponents");
    }
    return detail::pow_base<BigRat>::run(f, alpha, len, g0);
}

// nu-th derivative at 0: nu! * coefficient of t^nu
template <class S>
S derivative_at_zero(const Series<S>& f, int nu) {
    long long idx = (long long)nu * f.grid;
    if (idx >= f.length())
        throw OrderUnderflow("derivative_at_zero: order beyond truncation");
    S fact = S(1);
    for (int i = 2; i <= nu; ++i) fact *= S(i);
    return fact * f.at((int)idx);
}

// ---------------------------------------------------------------------------
// Two variables: a series in x whose coefficients are truncated series in y,
// matching the iterated-Taylor structure of the continuation formulas.
template <class S>
struct Series2 {
    std::vector<Series<S>> rows;   // rows[i] multiplies x^i (grid 1 in x)

    int x_length() const { return (int)rows.size(); }

    S coeff(int i, int j) const {
        if (i >= x_length() || j >= rows[(size_t)i].length()) return S(0);
        return rows[(size_t)i].at(j);
    }

    S evaluate(const S& x, const S& y) const {
        S acc = S(0);
        for (size_t i = rows.size(); i-- > 0;) acc = acc * x + rows[i].evaluate(y);
        return acc;
    }
};

template <class S>
Series2<S> mul2(const Series2<S>& a, const Series2<S>& b, int KX, int KY) {
    Series2<S> out;
    out.rows.assign((size_t)KX + 1, Series<S>::constant(S(0), KY + 1));
    for (int i = 0; i < a.x_length() && i <= KX; ++i)
        for (int j = 0; j + i <= KX && j < b.x_length(); ++j) {
            auto prod = (a.rows[(size_t)i].extended(KY + 1) *
                         b.rows[(size_t)j].extended(KY + 1));
            auto& row = out.rows[(size_t)(i + j)];
            for (int k = 0; k <= KY; ++k) row.c[(size_t)k] += prod.at(k);
        }
    return out;
}

// f^alpha for a two-variable series, coordinate-wise application of the same
// ODE recurrence with series-in-y coefficients; needs f(0,0) > 0.
template <class S>
Series2<S> pow_real2(const Series2<S>& f, const S& alpha, int KX, int KY) {
    if (f.x_length() == 0) throw NonpositiveConstantTerm("pow_real2: empty series");
    Series2<S> g;
    g.rows.assign((size_t)KX + 1, Series<S>::constant(S(0), KY + 1));
    auto f0 = f.rows[0].extended(KY + 1);
    g.rows[0] = pow_real(f0, alpha, KY + 1);
    if (KX == 0) return g;
    auto inv0 = pow_real(f0, S(-1), KY + 1);
    for (int k = 1; k <= KX; ++k) {
        Series<S> acc = Series<S>::constant(S(0), KY + 1);
        for (int i = 1; i <= k && i < f.x_length(); ++i) {
            auto term = f.rows[(size_t)i].extended(KY + 1) * g.rows[(size_t)(k - i)];
            const S w = alpha * S(i) - S(k - i);
            for (int j = 0; j <= KY; ++j) acc.c[(size_t)j] += w * term.at(j);
        }
        acc = acc * inv0;
        for (int j = 0; j <= KY; ++j) acc.c[(size_t)j] /= S(k);
        g.rows[(size_t)k] = acc;
    }
    return g;
}

// x -> x^px, y -> y^py on a two-variable series
template <class S>
Series2<S> substitute_powers(const Series2<S>& a, int px, int py) {
    if (px < 1 || py < 1) throw Error("substitute_powers: exponents must be >= 1");
    Series2<S> out;
    out.rows.assign((size_t)(a.x_length() * px), Series<S>{});
    int ylen = 0;
    for (const auto& r : a.rows) ylen = std::max(ylen, r.length());
    for (auto& r : out.rows) r = Series<S>::constant(S(0), ylen * py, a.rows.empty() ? 1 : a.rows[0].grid);
    for (int i = 0; i < a.x_length(); ++i)
        for (int j = 0; j < a.rows[(size_t)i].length(); ++j)
            out.rows[(size_t)(i * px)].c[(size_t)(j * py)] = a.rows[(size_t)i].at(j);
    return out;
}

template <class S>
S derivative_at_zero2(const Series2<S>& f, int nu1, int nu2) {
    if (nu1 >= f.x_length()) throw OrderUnderflow("derivative_at_zero2: x order");
    S d = derivative_at_zero(f.rows[(size_t)nu1], nu2);
    S fact = S(1);
    for (int i = 2; i <= nu1; ++i) fact *= S(i);
    return fact * d;
}

} // namespace yano
