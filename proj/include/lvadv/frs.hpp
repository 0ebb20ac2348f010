#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lvadv/errors.hpp"
#include "lvadv/field.hpp"
#include "lvadv/linalg.hpp"

namespace lvadv {

/// Folded Reed-Solomon code: a length-u1*N Reed-Solomon codeword over F_q,
/// regrouped into N columns of u1 consecutive evaluations at powers of a
/// generator gamma. `v` tunes the list decoder (1 <= v <= u1).
struct FrsParams {
    PrimeField field;
    Fe gamma;
    std::size_t folding;   // u1
    std::size_t block_len; // N, number of columns
    std::size_t dim;       // k, message length over F_q
    std::size_t v;

    std::size_t rs_len() const { return folding * block_len; }
};

inline FrsParams make_frs_params(const PrimeField& field, std::size_t u1, std::size_t block_len,
                                 std::size_t dim, std::size_t v) {
    if (u1 == 0 || block_len == 0) throw InfeasibleParamsError("frs: folding and block length must be positive");
    if (field.modulus() <= u1 * block_len)
        throw InfeasibleParamsError("frs: need q > u1*N for distinct evaluation points");
    if (dim == 0 || dim > u1 * block_len) throw InfeasibleParamsError("frs: need 0 < k <= u1*N");
    if (v < 1 || v > u1) throw InfeasibleParamsError("frs: need 1 <= v <= u1");
    return FrsParams{field, primitive_root(field), u1, block_len, dim, v};
}

/// N columns of u1 symbols; column j row w holds f(gamma^(j*u1+w)).
using FrsCodeword = std::vector<std::vector<Fe>>;

inline void check_word_shape(const FrsParams& p, const FrsCodeword& y) {
    if (y.size() != p.block_len) throw std::invalid_argument("frs: wrong column count");
    for (const auto& col : y)
        if (col.size() != p.folding) throw std::invalid_argument("frs: wrong column height");
}

inline FrsCodeword frs_encode(const FrsParams& p, const std::vector<Fe>& msg) {
    if (msg.size() != p.dim) throw std::invalid_argument("frs_encode: message length != k");
    FrsCodeword cw(p.block_len, std::vector<Fe>(p.folding, 0));
    Fe point = 1;
    for (std::size_t j = 0; j < p.block_len; ++j) {
        for (std::size_t w = 0; w < p.folding; ++w) {
            cw[j][w] = poly_eval(p.field, msg, point);
            point = p.field.mul(point, p.gamma);
        }
    }
    return cw;
}

/// Q(X, Y_1..Y_v) = A_0(X) + sum_s A_s(X) Y_s, with deg A_0 <= D+k-1 and
/// deg A_s <= D. Coefficient vectors keep their full positional length.
struct InterpolationPoly {
    Poly a0;               // D + k coefficients
    std::vector<Poly> ai;  // v polynomials, D + 1 coefficients each
    std::size_t degree_bound = 0;
};

inline std::size_t constraint_count(const FrsParams& p) {
    return (p.folding - p.v + 1) * p.block_len; // n0
}

/// Smallest D for which the unknown count (D+k) + v(D+1) exceeds the n0
/// constraints, so a nonzero Q always exists.
inline std::size_t interpolation_degree_bound(const FrsParams& p) {
    const std::size_t n0 = constraint_count(p);
    const std::size_t need = n0 + 1;
    const std::size_t base = p.dim + p.v; // unknowns at D = 0
    if (base >= need) return 0;
    const std::size_t shortfall = need - base;
    return (shortfall + p.v) / (p.v + 1); // ceil(shortfall / (v+1))
}

/// Constraint matrix row for each sliding-window point: column j, window
/// start w in [0, u1-v] gives the point (gamma^(j*u1+w); y[j][w..w+v-1]).
/// Rows are emitted column-major, ascending window start.
inline Matrix interpolation_matrix(const FrsParams& p, const FrsCodeword& y, std::size_t D) {
    const std::size_t n0 = constraint_count(p);
    const std::size_t a0_len = D + p.dim, ai_len = D + 1;
    Matrix m(n0, a0_len + p.v * ai_len);
    std::size_t r = 0;
    for (std::size_t j = 0; j < p.block_len; ++j) {
        for (std::size_t w = 0; w + p.v <= p.folding; ++w, ++r) {
            const Fe x = p.field.pow(p.gamma, static_cast<std::uint64_t>(j * p.folding + w));
            Fe xp = 1;
            for (std::size_t c = 0; c < a0_len; ++c) {
                m.at(r, c) = xp;
                xp = p.field.mul(xp, x);
            }
            for (std::size_t s = 0; s < p.v; ++s) {
                const Fe ys = y[j][w + s];
                if (ys == 0) continue;
                Fe val = ys;
                for (std::size_t c = 0; c < ai_len; ++c) {
                    m.at(r, a0_len + s * ai_len + c) = val;
                    val = p.field.mul(val, x);
                }
            }
        }
    }
    return m;
}

inline InterpolationPoly interpolate(const FrsParams& p, const FrsCodeword& y) {
    check_word_shape(p, y);
    const std::size_t D = interpolation_degree_bound(p);
    std::vector<Fe> q = nullspace_vector(p.field, interpolation_matrix(p, y, D));
    if (q.empty()) throw std::logic_error("interpolate: trivial nullspace despite underdetermined system");
    InterpolationPoly ip;
    ip.degree_bound = D;
    const std::size_t a0_len = D + p.dim, ai_len = D + 1;
    ip.a0.assign(q.begin(), q.begin() + a0_len);
    for (std::size_t s = 0; s < p.v; ++s)
        ip.ai.emplace_back(q.begin() + a0_len + s * ai_len, q.begin() + a0_len + (s + 1) * ai_len);
    return ip;
}

/// Band coefficient B_t(x) = sum_s a_{s,t} x^(s-1) over s = 1..v.
inline Fe band_coefficient(const FrsParams& p, const InterpolationPoly& ip, std::size_t t, Fe x) {
    Fe acc = 0, xp = 1;
    for (std::size_t s = 0; s < p.v; ++s) {
        const Fe a_st = t < ip.ai[s].size() ? ip.ai[s][t] : 0;
        acc = p.field.add(acc, p.field.mul(a_st, xp));
        xp = p.field.mul(xp, x);
    }
    return acc;
}

/// The k x k message-finding system: entry (i, j) = B_{i-j}(gamma^j) on the
/// lower band, rhs_i = -a_{0,i}. Its solutions are the message candidates.
inline std::pair<Matrix, std::vector<Fe>> message_system(const FrsParams& p, const InterpolationPoly& ip) {
    const std::size_t k = p.dim;
    Matrix m(k, k);
    std::vector<Fe> rhs(k, 0);
    std::vector<Fe> gpow(k, 1);
    for (std::size_t j = 1; j < k; ++j) gpow[j] = p.field.mul(gpow[j - 1], p.gamma);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j)
            m.at(i, j) = band_coefficient(p, ip, i - j, gpow[j]);
        rhs[i] = p.field.neg(i < ip.a0.size() ? ip.a0[i] : 0);
    }
    return {std::move(m), std::move(rhs)};
}

/// Message-finding stage alone; exposed so a precomputed interpolation can be
/// reused. Refuses to return a space wider than the list-size bound.
inline SolutionSpace message_space(const FrsParams& p, const InterpolationPoly& ip) {
    auto [m, rhs] = message_system(p, ip);
    SolutionSpace s = solve_affine(p.field, m, rhs);
    if (s.consistent && s.dimension() > p.v - 1)
        throw DecodeDegenerateError("frs: degenerate interpolation, solution space exceeds list bound");
    return s;
}

/// List decoder: affine space of dimension <= v-1 containing every message
/// whose encoding agrees with y on enough columns (see agreement_threshold).
inline SolutionSpace list_decode(const FrsParams& p, const FrsCodeword& y) {
    return message_space(p, interpolate(p, y));
}

/// Largest error count e such that agreement N-e still clears the decoding
/// radius, i.e. (N-e)(v+1)(u1-v+1) > N(u1-v+1) + v*k. Zero when even a clean
/// word sits at or below the radius (rate too high for this v).
inline std::size_t max_correctable(const FrsParams& p) {
    const std::size_t N = p.block_len, v = p.v, win = p.folding - p.v + 1;
    const std::size_t bound = N * win + v * p.dim;
    std::size_t best = 0;
    for (std::size_t e = 0; e <= N; ++e) {
        if ((N - e) * (v + 1) * win > bound) best = e;
        else break;
    }
    return best;
}

inline std::size_t agreement_threshold(const FrsParams& p) {
    return p.block_len - max_correctable(p);
}

inline std::size_t column_agreement(const FrsCodeword& a, const FrsCodeword& b) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] == b[j]) ++n;
    return n;
}

/// Enumerates the decoded space and keeps candidates whose re-encoding meets
/// the agreement threshold. The full filtered list is returned; breaking ties
/// is the caller's concern.
inline std::vector<std::vector<Fe>> list_decode_filtered(const FrsParams& p, const FrsCodeword& y,
                                                         std::uint64_t cap) {
    SolutionSpace s = list_decode(p, y);
    std::vector<std::vector<Fe>> out;
    if (!s.consistent) return out;
    const std::size_t threshold = agreement_threshold(p);
    for (auto& cand : enumerate_solutions(p.field, s, cap))
        if (column_agreement(frs_encode(p, cand), y) >= threshold) out.push_back(std::move(cand));
    return out;
}

} // namespace lvadv
