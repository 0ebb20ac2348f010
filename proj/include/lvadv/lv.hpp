#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lvadv/errors.hpp"
#include "lvadv/field.hpp"
#include "lvadv/frs.hpp"
#include "lvadv/linalg.hpp"
#include "lvadv/mac.hpp"
#include "lvadv/rational.hpp"
#include "lvadv/rng.hpp"

namespace lvadv {

/// Ceiling of sqrt(2*u1) without float round-off.
inline std::size_t key_block_count_for_folding(std::size_t u1) {
    std::size_t d = 1;
    while (d * d < 2 * u1) ++d;
    return d;
}

/// Full parameter set of the randomized limited-view adversary code. Each of
/// the N codeword components is an FRS column of u1 symbols followed by a MAC
/// key of u2 symbols; the FRS message carries the padded source state plus
/// all N tags, hence k = N*l + N*(3N-2).
struct LvParams {
    std::size_t block_len; // N
    std::size_t u1;        // FRS symbols per component
    std::size_t u2;        // MAC key symbols per component = N*d + 3N - 2
    std::size_t u;         // u1 + u2
    std::size_t v;         // list-decoder parameter
    std::size_t d;         // MAC key blocks = ceil(sqrt(2*u1))
    std::size_t l;         // MAC source blocks = ceil(u*R)
    std::size_t dim;       // FRS dimension k
    std::size_t msg_len;   // N*u*R
    Rational rate;         // R
    PrimeField field;
    Fe gamma;
    double rho;            // decoding-radius fraction (min of the two bound terms)

    FrsParams frs() const { return FrsParams{field, gamma, u1, block_len, dim, v}; }
    MacParams mac() const { return MacParams{field, block_len, l, d}; }
};

struct RhoBound {
    double half_term; // 1/2 - 1/(2N)
    double frs_term;  // v/(v+1) - v/(v+1) * (uR+3N) / (N^2+u-N(sqrt(N^2+2u)+3)-v)
    double value;     // min of the two
    Rational proof_form; // v/(v+1) - v/(v+1) * (uR+3N-1)/(u1-v+1), the pre-simplification bound
};

namespace detail {

/// Sign-exact comparison of L vs R*sqrt(S) in integer arithmetic. Falls back
/// to long double only when squaring would overflow 128 bits, which desk
/// scale parameters never reach.
inline bool int_ge_surd(__int128 lhs, __int128 rhs, __int128 s) {
    if (rhs <= 0 && lhs >= 0) return true;
    if (rhs >= 0 && lhs < 0) return false;
    const __int128 al = lhs < 0 ? -lhs : lhs, ar = rhs < 0 ? -rhs : rhs;
    const __int128 lim = static_cast<__int128>(1) << 62;
    if (al >= lim || ar >= lim || (ar != 0 && ar * ar >= (static_cast<__int128>(1) << 120) / s)) {
        const long double sval = std::sqrt(static_cast<long double>(s));
        return static_cast<long double>(lhs) >= static_cast<long double>(rhs) * sval;
    }
    if (lhs >= 0) return lhs * lhs >= rhs * rhs * s; // both nonnegative
    return lhs * lhs <= rhs * rhs * s;               // both negative
}

/// Exact test of N * frs_term >= t, avoiding sqrt round-off:
/// (Nv - t(v+1)) * wd * (E - N*sqrt(S)) >= Nv * wn, with E = N^2+u-3N-v,
/// S = N^2+2u and wn/wd = uR + 3N.
inline bool scaled_frs_term_at_least(std::size_t N, std::size_t u, std::size_t v, Rational R,
                                     long long t) {
    const __int128 E = static_cast<__int128>(N) * N + u - 3 * static_cast<__int128>(N) - v;
    const __int128 S = static_cast<__int128>(N) * N + 2 * static_cast<__int128>(u);
    const __int128 wd = R.den;
    const __int128 wn = static_cast<__int128>(u) * R.num + 3 * static_cast<__int128>(N) * R.den;
    const __int128 Nv = static_cast<__int128>(N) * v;
    // the bound is only meaningful when the denominator E - N*sqrt(S) is
    // strictly positive
    if (E <= 0 || E * E <= static_cast<__int128>(N) * N * S) return false;
    const __int128 c = Nv - static_cast<__int128>(t) * (v + 1);
    const __int128 lhs = c * wd * E - Nv * wn;
    const __int128 rhs = c * wd * static_cast<__int128>(N);
    return int_ge_surd(lhs, rhs, S);
}

} // namespace detail

inline RhoBound rho_bound_terms(std::size_t N, std::size_t u1, std::size_t u, std::size_t v, Rational R) {
    RhoBound b{};
    b.half_term = 0.5 - 0.5 / static_cast<double>(N);
    const long double s = std::sqrt(static_cast<long double>(N) * N + 2.0L * u);
    const long double den = static_cast<long double>(N) * N + u - N * (s + 3.0L) - v;
    const long double frac = static_cast<long double>(v) / (v + 1.0L);
    b.frs_term = static_cast<double>(frac * (1.0L - (u * static_cast<long double>(R.value()) + 3.0L * N) / den));
    b.value = std::min(b.half_term, b.frs_term);
    const Rational vf{static_cast<std::int64_t>(v), static_cast<std::int64_t>(v) + 1};
    const Rational w = Rational{static_cast<std::int64_t>(u), 1} * R +
                       Rational{3 * static_cast<std::int64_t>(N) - 1, 1};
    b.proof_form = vf - vf * (w / Rational{static_cast<std::int64_t>(u1 - v + 1), 1});
    return b;
}

inline RhoBound rho_bound(const LvParams& p) {
    return rho_bound_terms(p.block_len, p.u1, p.u, p.v, p.rate);
}

/// Exact floor(N * rho), clamped at zero: the adversary's component budget
/// and the complement of the decoder's agreement threshold.
inline std::size_t adversary_budget_for(std::size_t N, std::size_t u, std::size_t v, Rational R) {
    const long long b_half = (static_cast<long long>(N) - 1) / 2; // floor(N*(1/2 - 1/(2N)))
    long long b_frs = -1;
    for (long long t = b_half; t >= 0; --t) {
        if (detail::scaled_frs_term_at_least(N, u, v, R, t)) { b_frs = t; break; }
    }
    const long long b = std::min(b_half, b_frs);
    return b < 0 ? 0 : static_cast<std::size_t>(b);
}

inline std::size_t adversary_budget(const LvParams& p) {
    return adversary_budget_for(p.block_len, p.u, p.v, p.rate);
}

/// Failure-probability bound 2N / q^(N-v+1).
inline double delta_bound_for(std::size_t N, std::uint64_t q, std::size_t v) {
    const double e = static_cast<double>(N) - static_cast<double>(v) + 1.0;
    const double bits = e * std::log2(static_cast<double>(q));
    if (e >= 1.0 && bits < 63.0) {
        std::uint64_t qe = 1;
        for (std::size_t i = 0; i < static_cast<std::size_t>(e); ++i) qe *= q;
        return 2.0 * static_cast<double>(N) / static_cast<double>(qe);
    }
    return std::exp2(std::log2(2.0 * static_cast<double>(N)) - bits);
}

inline double delta_bound(const LvParams& p) {
    return delta_bound_for(p.block_len, p.field.modulus(), p.v);
}

inline Rational nearest_feasible_rate(std::size_t N, std::size_t u, Rational target) {
    const std::int64_t total = static_cast<std::int64_t>(N) * static_cast<std::int64_t>(u);
    std::int64_t m = (target.num * total + target.den / 2) / target.den; // round(target * N * u)
    if (m < 1) m = 1;
    if (m >= total) m = total - 1;
    return Rational{m, total};
}

inline LvParams derive_params(std::size_t N, std::size_t u1, std::size_t v, Rational R,
                              std::optional<std::uint64_t> q_override = {}) {
    if (N < 2) throw InfeasibleParamsError("lv: need N >= 2");
    if (v < 1 || v > u1) throw InfeasibleParamsError("lv: need 1 <= v <= u1");
    if (!(Rational{0} < R) || !(R < Rational{1})) throw InfeasibleParamsError("lv: need 0 < R < 1");

    LvParams p{N, u1, 0, 0, v, 0, 0, 0, 0, R, PrimeField(2), 0, 0.0};
    p.d = key_block_count_for_folding(u1);
    p.u2 = N * p.d + 3 * N - 2;
    p.u = u1 + p.u2;

    const Rational uR = Rational{static_cast<std::int64_t>(p.u), 1} * R;
    p.l = static_cast<std::size_t>((uR.num + uR.den - 1) / uR.den); // ceil(u*R)
    if (p.d * (p.d + 3) / 2 < p.l)
        throw InfeasibleParamsError("lv: MAC key blocks cannot cover l source blocks");

    const Rational mlen = Rational{static_cast<std::int64_t>(N), 1} * uR;
    if (!mlen.is_integer()) {
        Rational suggestion = nearest_feasible_rate(N, p.u, R);
        throw InfeasibleParamsError("lv: message length N*u*R = " + mlen.str() +
                                    " is not an integer; nearest feasible rate is " + suggestion.str());
    }
    p.msg_len = static_cast<std::size_t>(mlen.num);

    p.dim = N * p.l + N * (3 * N - 2);
    if (p.dim > u1 * N)
        throw InfeasibleParamsError("lv: FRS dimension k = " + std::to_string(p.dim) +
                                    " exceeds u1*N = " + std::to_string(u1 * N) +
                                    "; increase u1 or lower the rate");

    std::uint64_t q;
    if (q_override) {
        q = *q_override;
        if (!is_prime(q)) throw InfeasibleParamsError("lv: q override is not prime");
        if (q <= static_cast<std::uint64_t>(u1) * N)
            throw InfeasibleParamsError("lv: q override must exceed u1*N");
    } else {
        q = next_prime_above(static_cast<std::uint64_t>(N) * p.u);
    }
    p.field = PrimeField(q);
    p.gamma = primitive_root(p.field);
    p.rho = rho_bound_terms(N, u1, p.u, v, R).value;
    return p;
}

struct EpsilonPreset {
    std::size_t v;
    std::size_t u;
};

/// Small-epsilon parameterization: v = ceil(1/eps), u = 2/eps^4 + 2N/eps^2
/// (rounded up when eps does not divide exactly).
inline EpsilonPreset epsilon_preset(Rational eps, std::size_t N) {
    if (!(Rational{0} < eps)) throw InfeasibleParamsError("lv: eps must be positive");
    auto ceil_rat = [](Rational r) {
        return static_cast<std::size_t>((r.num + r.den - 1) / r.den);
    };
    const Rational one{1};
    EpsilonPreset out;
    out.v = ceil_rat(one / eps);
    const Rational e2 = eps * eps, e4 = e2 * e2;
    out.u = ceil_rat(Rational{2, 1} / e4 + Rational{2 * static_cast<std::int64_t>(N), 1} / e2);
    return out;
}

/// Largest u1 whose component width u1 + N*ceil(sqrt(2*u1)) + 3N - 2 fits in
/// the requested u; nullopt when even u1 = 1 does not fit.
inline std::optional<std::size_t> resolve_folding_for_width(std::size_t N, std::size_t u) {
    std::optional<std::size_t> best;
    for (std::size_t u1 = 1; u1 + N * key_block_count_for_folding(u1) + 3 * N - 2 <= u; ++u1)
        best = u1;
    return best;
}

/// Codeword: N components, each u symbols (FRS column then the MAC key).
using LvCodeword = std::vector<std::vector<Fe>>;
using Message = std::vector<Fe>;

/// Decoder output: the message, or nothing (the bottom symbol).
using DecodeOutcome = std::optional<Message>;

inline std::vector<MacKey> draw_keys(const LvParams& p, std::mt19937_64& rng) {
    std::vector<MacKey> keys;
    keys.reserve(p.block_len);
    const MacParams mp = p.mac();
    for (std::size_t i = 0; i < p.block_len; ++i) keys.push_back(random_key(mp, rng));
    return keys;
}

/// Deterministic encoding for given keys; the randomized encoder draws the
/// keys and delegates here. Also the hook tests use to pin key material.
inline LvCodeword lv_encode_with_keys(const LvParams& p, const Message& msg,
                                      const std::vector<MacKey>& keys) {
    if (msg.size() != p.msg_len) throw std::invalid_argument("lv_encode: message length != N*u*R");
    if (keys.size() != p.block_len) throw std::invalid_argument("lv_encode: need one key per component");
    for (Fe m : msg)
        if (m >= p.field.modulus()) throw std::invalid_argument("lv_encode: symbol outside field");

    const MacParams mp = p.mac();
    SourceState x(msg);
    x.resize(p.block_len * p.l, 0); // zero padding up to N*l

    std::vector<Fe> frs_msg(x);
    frs_msg.reserve(p.dim);
    for (const MacKey& key : keys) {
        Tag t = mac_tag_matrix(mp, x, key);
        frs_msg.insert(frs_msg.end(), t.begin(), t.end());
    }
    assert(frs_msg.size() == p.dim);

    FrsCodeword cf = frs_encode(p.frs(), frs_msg);
    LvCodeword c(p.block_len);
    for (std::size_t i = 0; i < p.block_len; ++i) {
        c[i] = cf[i];
        std::vector<Fe> ks = key_to_symbols(keys[i]);
        c[i].insert(c[i].end(), ks.begin(), ks.end());
        assert(c[i].size() == p.u);
    }
    return c;
}

inline LvCodeword lv_encode(const LvParams& p, const Message& msg, std::mt19937_64& rng) {
    return lv_encode_with_keys(p, msg, draw_keys(p, rng));
}

/// Joint decoder. One interpolation pass turns the FRS halves into the k x k
/// message-finding system; each component then contributes its own
/// verification rows, and a component "votes" for the source state its joint
/// system pins down uniquely. A message is released only when at least
/// N - floor(rho*N) components vote for the same value.
inline DecodeOutcome lv_decode(const LvParams& p, const LvCodeword& y) {
    if (y.size() != p.block_len) throw MalformedInputError("lv_decode: wrong component count");
    for (const auto& comp : y) {
        if (comp.size() != p.u) throw MalformedInputError("lv_decode: wrong component width");
        for (Fe s : comp)
            if (s >= p.field.modulus()) throw MalformedInputError("lv_decode: symbol outside field");
    }

    const FrsParams fp = p.frs();
    const MacParams mp = p.mac();
    const std::size_t tag_len = mp.tag_len();
    const std::size_t xlen = p.block_len * p.l;

    FrsCodeword y_frs(p.block_len);
    std::vector<MacKey> keys;
    keys.reserve(p.block_len);
    for (std::size_t i = 0; i < p.block_len; ++i) {
        y_frs[i].assign(y[i].begin(), y[i].begin() + p.u1);
        keys.push_back(key_from_symbols(mp, std::vector<Fe>(y[i].begin() + p.u1, y[i].end())));
    }

    auto [frs_mat, frs_rhs] = message_system(fp, interpolate(fp, y_frs));

    std::map<std::vector<Fe>, std::size_t> votes;
    for (std::size_t i = 1; i <= p.block_len; ++i) {
        auto [mac_mat, mac_rhs] = mac_equation_rows(mp, keys[i - 1], i, p.block_len);
        Matrix joint(p.dim + tag_len, p.dim);
        std::vector<Fe> rhs(p.dim + tag_len);
        for (std::size_t r = 0; r < p.dim; ++r) {
            for (std::size_t c = 0; c < p.dim; ++c) joint.at(r, c) = frs_mat.at(r, c);
            rhs[r] = frs_rhs[r];
        }
        for (std::size_t r = 0; r < tag_len; ++r) {
            for (std::size_t c = 0; c < p.dim; ++c) joint.at(p.dim + r, c) = mac_mat.at(r, c);
            rhs[p.dim + r] = mac_rhs[r];
        }
        SolutionSpace s = solve_affine(p.field, joint, rhs);
        if (!s.consistent) continue; // NULL output
        // The system votes only when every solution shares one source state:
        // leftover directions that move tags of other slots alone are fine,
        // any freedom in the x-prefix is not.
        bool x_unique = true;
        for (const auto& dir : s.nullspace) {
            for (std::size_t j = 0; j < xlen && x_unique; ++j)
                if (dir[j] != 0) x_unique = false;
            if (!x_unique) break;
        }
        if (!x_unique) continue; // NULL output
        std::vector<Fe> x(s.particular.begin(), s.particular.begin() + xlen);
        bool pad_ok = true;
        for (std::size_t j = p.msg_len; j < xlen; ++j)
            if (x[j] != 0) { pad_ok = false; break; }
        if (!pad_ok) continue; // padding is verifiable structure; treat as NULL
        ++votes[std::move(x)];
    }

    const std::size_t threshold = p.block_len - adversary_budget(p);
    const std::vector<Fe>* winner = nullptr;
    for (const auto& [x, n] : votes) {
        if (n >= threshold) {
            // two distinct winners would need 2*threshold <= N, impossible for rho < 1/2
            assert(winner == nullptr);
            if (winner != nullptr) return std::nullopt;
            winner = &x;
        }
    }
    if (winner == nullptr) return std::nullopt;
    return Message(winner->begin(), winner->begin() + p.msg_len);
}

} // namespace lvadv
