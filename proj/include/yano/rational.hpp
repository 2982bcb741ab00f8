#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

#include "yano/errors.hpp"

namespace yano {

// Exact rational with 64-bit storage, kept normalized (den > 0, reduced).
// Intermediates go through __int128 and narrowing is checked, so overflow
// surfaces as an OverflowError instead of silent wraparound.  Ample for the
// exponent arithmetic of this library, where numerators stay at desk scale.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}       // NOLINT: implicit by design
    Rat(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    static Rat from_i128(__int128 n, __int128 d) {
        if (d == 0) throw Error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return Rat(narrow(n), narrow(d), unchecked{});
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from_i128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                         (__int128)a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from_i128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                         (__int128)a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_i128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw Error("Rat: division by zero");
        return from_i128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    bool is_integer() const { return den_ == 1; }
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    Rat abs() const { return num_ < 0 ? Rat(-num_, den_) : *this; }

    double to_double() const { return (double)num_ / (double)den_; }
    long double to_long_double() const {
        return (long double)num_ / (long double)den_;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.str();
    }

  private:
    struct unchecked {};
    Rat(long long n, long long d, unchecked) : num_(n), den_(d) {}

    void assign(long long n, long long d) {
        if (d == 0) throw Error("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }
    static long long narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw OverflowError("Rat: 64-bit overflow");
        return (long long)v;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }

    long long num_, den_;
};

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace yano
