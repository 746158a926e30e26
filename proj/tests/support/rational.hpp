// Exact rational arithmetic for oracle computations in tests. Numerator and
// denominator are kept in __int128 and reduced on every operation; the graphs
// exercised here are small enough that intermediate products stay far below
// the overflow limit, and an overflow check throws rather than wrapping.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace testsupport {

class Rational {
public:
    Rational() = default;
    explicit Rational(int v) : num_(v) {}
    explicit Rational(long long v) : num_(v) {}
    explicit Rational(std::uint64_t v) : num_(static_cast<__int128>(v)) {}
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    static Rational from_parts(__int128 n, __int128 d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.reduce();
        return r;
    }

    Rational& operator+=(const Rational& o) {
        *this = from_parts(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        *this = from_parts(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        *this = from_parts(num_ * o.num_, den_ * o.den_);
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        *this = from_parts(num_ * o.den_, den_ * o.num_);
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        std::string s = int128_str(num_);
        if (den_ != 1) s += "/" + int128_str(den_);
        return s;
    }

private:
    __int128 num_ = 0;
    __int128 den_ = 1;

    static __int128 abs128(__int128 v) { return v < 0 ? -v : v; }

    static std::string int128_str(__int128 v) {
        if (v == 0) return "0";
        const bool neg = v < 0;
        __int128 a = abs128(v);
        std::string s;
        while (a > 0) {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(a % 10)));
            a /= 10;
        }
        return neg ? "-" + s : s;
    }

    void reduce() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        __int128 a = abs128(num_), b = den_;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num_ /= a;
            den_ /= a;
        }
        // Guard against silent wraparound in later products.
        const __int128 limit = static_cast<__int128>(1) << 96;
        if (abs128(num_) > limit || den_ > limit)
            throw std::overflow_error("rational magnitude exceeded test guard");
    }
};

}  // namespace testsupport
