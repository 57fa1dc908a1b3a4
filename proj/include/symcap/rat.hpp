#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "symcap/error.hpp"

namespace symcap {

// Exact rational with 64-bit numerator and denominator. Intermediate products
// are formed in 128 bits and narrowed with an overflow check, so a result is
// either exact or an Error(Overflow) is thrown.
class Rat {
public:
    constexpr Rat() noexcept = default;
    constexpr Rat(std::int64_t n) noexcept : num_(n), den_(1) {} // NOLINT(implicit)
    Rat(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

    constexpr std::int64_t num() const noexcept { return num_; }
    constexpr std::int64_t den() const noexcept { return den_; }

    constexpr bool is_integer() const noexcept { return den_ == 1; }
    constexpr bool is_zero() const noexcept { return num_ == 0; }
    constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    std::int64_t floor() const noexcept {
        if (num_ >= 0) return num_ / den_;
        return -((-num_ + den_ - 1) / den_);
    }
    std::int64_t ceil() const noexcept { return -(-*this).floor(); }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rat operator-() const { return from_wide(-static_cast<wide>(num_), den_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from_wide(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
                         static_cast<wide>(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from_wide(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
                         static_cast<wide>(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_wide(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
        return from_wide(static_cast<wide>(a.num_) * b.den_, static_cast<wide>(a.den_) * b.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend constexpr bool operator==(const Rat& a, const Rat& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend constexpr std::strong_ordering operator<=>(const Rat& a, const Rat& b) noexcept {
        const wide lhs = static_cast<wide>(a.num_) * b.den_;
        const wide rhs = static_cast<wide>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Canonical text form: "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "p", "p/q", with optional sign on p. Anything else is a Parse error.
    static Rat parse(std::string_view text) {
        auto fail = [&](const char* why) {
            return Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "': " + why);
        };
        if (text.empty()) throw fail("empty");
        const auto slash = text.find('/');
        const auto read = [&](std::string_view part, bool allow_sign) {
            if (part.empty()) throw fail("missing digits");
            std::size_t start = 0;
            if (allow_sign && (part[0] == '-' || part[0] == '+')) start = 1;
            if (start == part.size()) throw fail("missing digits");
            for (std::size_t i = start; i < part.size(); ++i)
                if (part[i] < '0' || part[i] > '9') throw fail("unexpected character");
            std::int64_t v = 0;
            const char* first = part.data() + (part[0] == '+' ? 1 : 0);
            auto [ptr, ec] = std::from_chars(first, part.data() + part.size(), v);
            if (ec != std::errc() || ptr != part.data() + part.size()) throw fail("out of range");
            return v;
        };
        if (slash == std::string_view::npos) return Rat(read(text, true));
        const std::int64_t n = read(text.substr(0, slash), true);
        const std::int64_t d = read(text.substr(slash + 1), false);
        if (d == 0) throw fail("zero denominator");
        return Rat(n, d);
    }

private:
    __extension__ typedef __int128 wide;

    static wide gcd(wide a, wide b) noexcept {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rat from_wide(wide n, wide d) {
        if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const wide g = gcd(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr wide lo = std::numeric_limits<std::int64_t>::min() + 1;
        constexpr wide hi = std::numeric_limits<std::int64_t>::max();
        if (n < lo || n > hi || d > hi) throw Error(ErrorCode::Overflow, "rational out of 64-bit range");
        Rat r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline Rat factorial(int n) {
    Rat r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

/// A rational or +infinity (only volumes of unbounded domains use this).
struct Extended {
    std::optional<Rat> value;

    static Extended infinite() { return {}; }
    bool is_infinite() const noexcept { return !value.has_value(); }
    std::string str() const { return value ? value->str() : "inf"; }
    friend bool operator==(const Extended&, const Extended&) = default;
};

namespace literals {
inline Rat operator""_q(const char* text, std::size_t len) { return Rat::parse({text, len}); }
inline Rat operator""_q(const char* digits) { return Rat::parse(digits); }
} // namespace literals

} // namespace symcap

template <> struct std::hash<symcap::Rat> {
    std::size_t operator()(const symcap::Rat& r) const noexcept {
        return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
    }
};
