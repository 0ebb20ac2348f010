#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvadv/rng.hpp"

namespace lvadv {

/// Field element value; membership in a specific F_q is carried by context.
using Fe = std::uint64_t;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline std::uint64_t next_prime_above(std::uint64_t n) {
    std::uint64_t c = n + 1;
    if (c <= 2) return 2;
    if ((c & 1) == 0) ++c;
    while (!is_prime(c)) c += 2;
    return c;
}

/// Prime field F_q with word-sized modulus. All element values live in [0, q).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t q) : q_(q), small_(q < (1ULL << 32)) {
        if (!is_prime(q)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(q) + " is not prime");
    }

    std::uint64_t modulus() const { return q_; }

    Fe reduce(std::uint64_t v) const { return v % q_; }

    Fe add(Fe a, Fe b) const {
        Fe s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Fe sub(Fe a, Fe b) const { return a >= b ? a - b : a + q_ - b; }
    Fe neg(Fe a) const { return a == 0 ? 0 : q_ - a; }
    Fe mul(Fe a, Fe b) const {
        if (small_) return (a * b) % q_;
        return detail::mulmod_u64(a, b, q_);
    }

    Fe pow(Fe a, std::uint64_t e) const {
        Fe r = 1 % q_, base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Fe inv(Fe a) const {
        if (a == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
        // extended Euclid on (a, q)
        std::int64_t t = 0, new_t = 1;
        std::uint64_t r = q_, new_r = a;
        while (new_r != 0) {
            std::uint64_t quot = r / new_r;
            std::int64_t tmp_t = t - static_cast<std::int64_t>(quot) * new_t;
            t = new_t; new_t = tmp_t;
            std::uint64_t tmp_r = r - quot * new_r;
            r = new_r; new_r = tmp_r;
        }
        return t < 0 ? static_cast<Fe>(t + static_cast<std::int64_t>(q_)) : static_cast<Fe>(t);
    }

    Fe uniform(std::mt19937_64& g) const { return uniform_below(g, q_); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.q_ == b.q_; }

private:
    std::uint64_t q_;
    bool small_;
};

/// Smallest generator of F_q^*, so codewords are reproducible across runs.
inline Fe primitive_root(const PrimeField& f) {
    const std::uint64_t q = f.modulus();
    const std::uint64_t order = q - 1;
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t m = order;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            prime_factors.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (Fe g = 1; g < q; ++g) {
        bool ok = true;
        for (std::uint64_t p : prime_factors) {
            if (f.pow(g, order / p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: no generator found"); // unreachable for prime q
}

/// Dense polynomial over F_q, coefficient i belongs to X^i. Normalized form
/// has no trailing zeros; fixed-length unnormalized vectors are used where a
/// block layout requires exact positional lengths.
using Poly = std::vector<Fe>;

inline void poly_normalize(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool poly_is_zero(const Poly& p) {
    for (Fe c : p)
        if (c != 0) return false;
    return true;
}

inline Fe poly_eval(const PrimeField& f, const Poly& p, Fe x) {
    Fe acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
    return acc;
}

inline Poly poly_add(const PrimeField& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    poly_normalize(r);
    return r;
}

inline Poly poly_convolve(const PrimeField& f, const Poly& a, const Poly& b) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    poly_normalize(r);
    return r;
}

} // namespace lvadv
