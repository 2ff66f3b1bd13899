#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "zf/errors.hpp"

namespace zf {

// Exact rational with int64 storage; every operation is checked and throws
// NumericalFailure on overflow instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers on purpose
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("division by zero rational");
        return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const { return make(-static_cast<__int128>(num_), den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }

    int sign() const { return (num_ > 0) - (num_ < 0); }

    // Always "p/q", also for integers.
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }
    // Accepts "p/q" or a plain integer.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        auto read = [&](std::string_view part) {
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
                throw ParseError("malformed rational '" + std::string(text) + "'", 0);
            return v;
        };
        if (slash == std::string_view::npos) return Rational(read(text));
        return Rational(read(text.substr(0, slash)), read(text.substr(slash + 1)));
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    static Rational make(__int128 n, __int128 d) {
        if (d < 0) n = -n, d = -d;
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) n /= a, d /= a;
        constexpr __int128 lim = INT64_MAX;
        if (n > lim || n < -lim || d > lim) throw NumericalFailure("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw DomainError("zero denominator");
        *this = make(n, d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Orientation of (b - a) x (c - a) for points with rational coordinates; exact.
inline int orient(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by, const Rational& cx,
                  const Rational& cy) {
    return ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)).sign();
}

}  // namespace zf
