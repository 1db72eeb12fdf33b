// Exact rational scalar used throughout the identity engine.
//
// Components stay small at desk scale (structure constants, bounded random
// jets, rational epsilon), so a normalized int64 fraction with 128-bit
// intermediates is enough; any overflow throws instead of silently wrapping.

#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace folia {

struct overflow_error : std::runtime_error {
    overflow_error() : std::runtime_error("rational overflow") {}
};

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational from_string(const std::string& s);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
        __int128 d = i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;
    long long num_;
    long long den_;

    static long long clamp(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw overflow_error();
        return static_cast<long long>(v);
    }
    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        if (n == 0) d = 1;
        i128 g = gcd128(n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = clamp(n);
        r.den_ = clamp(d);
        return r;
    }
    void normalize() { *this = make(num_, den_); }
};

inline Rational Rational::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

using Q = Rational;

// Scale parameter of the canonical metric variation. Infinity is a distinct
// value (the adiabatic connection), never a float limit.
struct Epsilon {
    bool infinite = false;
    Rational value = Rational(1);

    static Epsilon inf() { return Epsilon{true, Rational(0)}; }
    static Epsilon of(const Rational& v) {
        if (!(v > Rational(0))) throw std::domain_error("epsilon must be positive");
        return Epsilon{false, v};
    }
    // 1/eps, which is what every formula actually consumes; 0 in the adiabatic limit.
    Rational inv() const { return infinite ? Rational(0) : Rational(1) / value; }
    std::string str() const { return infinite ? "inf" : value.str(); }
    friend bool operator==(const Epsilon& a, const Epsilon& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

} // namespace folia
