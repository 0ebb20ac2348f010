#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lvadv {

/// Exact rational with 64-bit numerator/denominator. Used for code rates and
/// read/write fractions where float rounding would corrupt integrality checks.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    explicit Rational(std::int64_t n) : num(n), den(1) {}

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::domain_error("Rational: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }

    bool is_integer() const { return den == 1; }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

/// Parses "a/b", plain integers, and terminating decimals ("0.1").
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = std::stoll(s.substr(0, slash));
        std::int64_t d = std::stoll(s.substr(slash + 1));
        return {n, d};
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational{std::stoll(s)};
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("parse_rational: too many decimal digits");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
    bool neg = !whole.empty() && whole[0] == '-';
    std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    std::int64_t n = w * den + (neg ? -f : f);
    return {n, den};
}

} // namespace lvadv
