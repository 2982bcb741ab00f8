#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "yano/errors.hpp"
#include "yano/scalar.hpp"
#include "yano/series.hpp"

namespace yano {

// Exact bivariate polynomial over big rationals.  This is the symbolic
// carrier for the change-of-variables chains: monomial substitutions,
// composition in y, and exact monomial division.
class Poly2 {
  public:
    using Key = std::pair<long long, long long>;   // (x exponent, y exponent)

    Poly2() = default;

    static Poly2 monomial(long long i, long long j, BigRat c = BigRat(1)) {
        Poly2 p;
        if (!(c == 0)) p.c_[{i, j}] = std::move(c);
        return p;
    }
    static Poly2 constant(BigRat c) { return monomial(0, 0, std::move(c)); }

    const std::map<Key, BigRat>& terms() const { return c_; }
    bool zero() const { return c_.empty(); }

    void add_term(long long i, long long j, const BigRat& v) {
        if (v == 0) return;
        auto it = c_.find({i, j});
        if (it == c_.end()) {
            c_.emplace(Key{i, j}, v);
        } else {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 out = a;
        for (const auto& [k, v] : b.c_) out.add_term(k.first, k.second, v);
        return out;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        Poly2 out = a;
        for (const auto& [k, v] : b.c_) out.add_term(k.first, k.second, -v);
        return out;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 out;
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_)
                out.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
        return out;
    }
    Poly2 operator-() const {
        Poly2 out;
        for (const auto& [k, v] : c_) out.c_[k] = -v;
        return out;
    }

    Poly2 pow(long long e) const {
        if (e < 0) throw Error("Poly2::pow: negative exponent");
        Poly2 out = constant(BigRat(1));
        Poly2 base = *this;
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    // x -> x^px * y^py_from_x,  y -> x^qx_from_y * y^qy (monomial substitution)
    Poly2 substitute_monomials(long long px, long long py_from_x,
                               long long qx_from_y, long long qy) const {
        Poly2 out;
        for (const auto& [k, v] : c_)
            out.add_term(k.first * px + k.second * qx_from_y,
                         k.first * py_from_x + k.second * qy, v);
        return out;
    }

    // y -> G(x,y) by Horner in y
    Poly2 compose_y(const Poly2& G) const {
        long long dy = 0;
        for (const auto& [k, v] : c_) dy = std::max(dy, k.second);
        // coefficient polys of y^j
        std::vector<Poly2> coef((size_t)dy + 1);
        for (const auto& [k, v] : c_) coef[(size_t)k.second].add_term(k.first, 0, v);
        Poly2 acc;
        for (long long j = dy; j >= 0; --j) acc = acc * G + coef[(size_t)j];
        return acc;
    }

    // exact division by x^i y^j; throws if any term lies below
    Poly2 divide_monomial(long long i, long long j) const {
        Poly2 out;
        for (const auto& [k, v] : c_) {
            if (k.first < i || k.second < j)
                throw Error("Poly2::divide_monomial: division not exact");
            out.c_[{k.first - i, k.second - j}] = v;
        }
        return out;
    }

    long long x_degree() const {
        long long d = 0;
        for (const auto& [k, v] : c_) d = std::max(d, k.first);
        return d;
    }
    long long y_degree() const {
        long long d = 0;
        for (const auto& [k, v] : c_) d = std::max(d, k.second);
        return d;
    }

    template <class S>
    S evaluate(const S& x, const S& y) const {
        // Horner over x-rows
        long long dx = x_degree(), dy = y_degree();
        std::vector<std::vector<S>> rows((size_t)dx + 1,
                                         std::vector<S>((size_t)dy + 1, S(0)));
        for (const auto& [k, v] : c_)
            rows[(size_t)k.first][(size_t)k.second] = from_bigrat<S>(v);
        S acc = S(0);
        for (size_t i = rows.size(); i-- > 0;) {
            S rowv = S(0);
            for (size_t j = rows[i].size(); j-- > 0;) rowv = rowv * y + rows[i][j];
            acc = acc * x + rowv;
        }
        return acc;
    }

    // dense x-rows with scalar coefficients, for the continuation engine
    template <class S>
    std::vector<std::vector<S>> rows_as() const {
        std::vector<std::vector<S>> rows((size_t)x_degree() + 1);
        long long dy = y_degree();
        for (auto& r : rows) r.assign((size_t)dy + 1, S(0));
        for (const auto& [k, v] : c_)
            rows[(size_t)k.first][(size_t)k.second] = from_bigrat<S>(v);
        return rows;
    }

    Poly2 transpose() const {
        Poly2 out;
        for (const auto& [k, v] : c_) out.c_[{k.second, k.first}] = v;
        return out;
    }

    template <class S>
    Series2<S> to_series2(int KX, int KY) const {
        Series2<S> out;
        out.rows.assign((size_t)KX + 1, Series<S>::constant(S(0), KY + 1));
        for (const auto& [k, v] : c_)
            if (k.first <= KX && k.second <= KY)
                out.rows[(size_t)k.first].c[(size_t)k.second] = from_bigrat<S>(v);
        return out;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (const auto& [k, v] : c_) {
            if (!s.empty()) s += " + ";
            s += v.str();
            if (k.first) s += "*x^" + std::to_string(k.first);
            if (k.second) s += "*y^" + std::to_string(k.second);
        }
        return s;
    }

  private:
    std::map<Key, BigRat> c_;
};

} // namespace yano
