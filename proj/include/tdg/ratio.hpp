#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tdg {

// Exact rational thresholds. All epsilon/delta/gamma style parameters flow
// through the library as Ratio so that comparisons like  count >= eps*n^2
// are integer comparisons, never floating point.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;  // > 0 after normalization

    constexpr Ratio() = default;
    Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
    static Ratio of(std::int64_t n, std::int64_t d = 1) { return Ratio(n, d); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Ratio& o) const { return !(*this == o); }
    bool operator<(const Ratio& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Ratio& o) const { return !(o < *this); }
    bool operator>(const Ratio& o) const { return o < *this; }
    bool operator>=(const Ratio& o) const { return !(*this < o); }

    Ratio operator+(const Ratio& o) const {
        return Ratio(num * o.den + o.num * den, den * o.den);
    }
    Ratio operator-(const Ratio& o) const {
        return Ratio(num * o.den - o.num * den, den * o.den);
    }
    Ratio operator*(const Ratio& o) const { return Ratio(num * o.num, den * o.den); }
    Ratio operator/(const Ratio& o) const {
        if (o.num == 0) throw std::invalid_argument("Ratio: division by zero");
        return Ratio(num * o.den, den * o.num);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    // count >= (*this) * scale, exactly.
    bool le_scaled(std::int64_t count, std::int64_t scale) const {
        return static_cast<__int128>(num) * scale <= static_cast<__int128>(count) * den;
    }
    // count <= (*this) * scale, exactly.
    bool ge_scaled(std::int64_t count, std::int64_t scale) const {
        return static_cast<__int128>(count) * den <= static_cast<__int128>(num) * scale;
    }
    // Smallest integer >= (*this) * scale.
    std::int64_t ceil_scaled(std::int64_t scale) const {
        const __int128 p = static_cast<__int128>(num) * scale;
        if (p >= 0) return static_cast<std::int64_t>((p + den - 1) / den);
        return static_cast<std::int64_t>(p / den);
    }
    // Largest integer <= (*this) * scale.
    std::int64_t floor_scaled(std::int64_t scale) const {
        const __int128 p = static_cast<__int128>(num) * scale;
        if (p >= 0) return static_cast<std::int64_t>(p / den);
        return static_cast<std::int64_t>((p - den + 1) / den);
    }
    // Round-half-up of (*this) * scale.
    std::int64_t round_scaled(std::int64_t scale) const {
        const __int128 p = static_cast<__int128>(num) * scale * 2 + den;
        const __int128 q = static_cast<__int128>(den) * 2;
        if (p >= 0) return static_cast<std::int64_t>(p / q);
        return static_cast<std::int64_t>(-((-p + q - 1) / q));
    }
};

// Parse "3/10", "0.3", "0.125", "1", "-0.05".
Ratio parse_ratio(const std::string& text);

inline bool count_at_least(std::int64_t count, const Ratio& r, std::int64_t scale) {
    return r.le_scaled(count, scale);
}
inline bool count_at_most(std::int64_t count, const Ratio& r, std::int64_t scale) {
    return r.ge_scaled(count, scale);
}

}  // namespace tdg
