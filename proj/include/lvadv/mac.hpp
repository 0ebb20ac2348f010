#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lvadv/errors.hpp"
#include "lvadv/field.hpp"
#include "lvadv/linalg.hpp"
#include "lvadv/rng.hpp"

namespace lvadv {

/// Smallest key-block count d with d(d+3)/2 >= l.
inline std::size_t min_key_blocks(std::size_t l) {
    std::size_t d = 1;
    while (d * (d + 3) / 2 < l) ++d;
    return d;
}

/// One-time MAC over F_q. The source state is l blocks of N symbols, the key
/// is d blocks of N symbols plus one block of 3N-2, the tag has 3N-2 symbols.
struct MacParams {
    PrimeField field;
    std::size_t block; // N
    std::size_t l;     // source-state block count
    std::size_t d;     // key block count

    std::size_t tag_len() const { return 3 * block - 2; }
    std::size_t key_len() const { return block * d + tag_len(); }
    std::size_t source_len() const { return block * l; }
};

/// d may exceed min_key_blocks(l): the enclosing code sizes d for the worst
/// feasible l, and the construction only needs d(d+3)/2 >= l.
inline MacParams make_mac_params(const PrimeField& field, std::size_t block, std::size_t l, std::size_t d) {
    if (block == 0) throw InfeasibleParamsError("mac: block size must be positive");
    if (l == 0) throw InfeasibleParamsError("mac: source state must have at least one block");
    if (d == 0 || d * (d + 3) / 2 < l) throw InfeasibleParamsError("mac: need d(d+3)/2 >= l");
    return MacParams{field, block, l, d};
}

/// Recovers the unique pair 1 <= i <= j <= d from m = i*d + j - i(i-1)/2,
/// the key-pair sequence order (i ascending, then j from i to d).
inline std::pair<std::size_t, std::size_t> index_to_pair(std::size_t m, std::size_t d) {
    if (m < d + 1 || m > d * (d + 3) / 2)
        throw std::out_of_range("index_to_pair: index outside [d+1, d(d+3)/2]");
    for (std::size_t i = 1; i <= d; ++i) {
        const std::size_t first = i * d + i - i * (i - 1) / 2; // j = i
        const std::size_t last = i * d + d - i * (i - 1) / 2;  // j = d
        if (m >= first && m <= last) return {i, m - i * d + i * (i - 1) / 2};
    }
    throw std::logic_error("index_to_pair: no pair found"); // unreachable
}

struct MacKey {
    std::vector<Poly> r;  // d blocks, each exactly N coefficients
    Poly r_final;         // exactly 3N-2 coefficients
};

using SourceState = std::vector<Fe>; // N*l symbols, block m at [(m-1)N, mN)
using Tag = std::vector<Fe>;         // 3N-2 symbols

inline MacKey random_key(const MacParams& p, std::mt19937_64& rng) {
    MacKey k;
    k.r.assign(p.d, Poly(p.block, 0));
    for (auto& blk : k.r)
        for (auto& c : blk) c = p.field.uniform(rng);
    k.r_final.assign(p.tag_len(), 0);
    for (auto& c : k.r_final) c = p.field.uniform(rng);
    return k;
}

/// Key layout on the wire: r_1 .. r_d then the final block.
inline std::vector<Fe> key_to_symbols(const MacKey& k) {
    std::vector<Fe> out;
    for (const auto& blk : k.r) out.insert(out.end(), blk.begin(), blk.end());
    out.insert(out.end(), k.r_final.begin(), k.r_final.end());
    return out;
}

inline MacKey key_from_symbols(const MacParams& p, const std::vector<Fe>& symbols) {
    if (symbols.size() != p.key_len()) throw std::invalid_argument("mac: wrong key length");
    MacKey k;
    auto it = symbols.begin();
    for (std::size_t m = 0; m < p.d; ++m) {
        k.r.emplace_back(it, it + p.block);
        it += p.block;
    }
    k.r_final.assign(it, symbols.end());
    return k;
}

inline void check_source(const MacParams& p, const SourceState& x) {
    if (x.size() != p.source_len()) throw std::invalid_argument("mac: wrong source-state length");
}

inline void check_key(const MacParams& p, const MacKey& k) {
    if (k.r.size() != p.d || k.r_final.size() != p.tag_len())
        throw std::invalid_argument("mac: wrong key shape");
    for (const auto& blk : k.r)
        if (blk.size() != p.block) throw std::invalid_argument("mac: wrong key block length");
}

/// Key block used for source block m: r_m itself for m <= d, the product
/// r_i * r_j for the pair mapped from m above.
inline Poly key_block_poly(const MacParams& p, const MacKey& k, std::size_t m) {
    if (m <= p.d) return k.r[m - 1];
    auto [i, j] = index_to_pair(m, p.d);
    return poly_convolve(p.field, k.r[i - 1], k.r[j - 1]);
}

/// Polynomial-form tag: t(X) = sum_m x_m(X) * g_m(X) + r_final(X), where all
/// products are plain convolutions in F_q[X] (powers of X are never reduced).
inline Tag mac_tag_poly(const MacParams& p, const SourceState& x, const MacKey& k) {
    check_source(p, x);
    check_key(p, k);
    Tag t(p.tag_len(), 0);
    for (std::size_t i = 0; i < k.r_final.size(); ++i) t[i] = k.r_final[i];
    for (std::size_t m = 1; m <= p.l; ++m) {
        Poly xm(x.begin() + (m - 1) * p.block, x.begin() + m * p.block);
        Poly term = poly_convolve(p.field, xm, key_block_poly(p, k, m));
        for (std::size_t i = 0; i < term.size(); ++i) t[i] = p.field.add(t[i], term[i]);
    }
    return t;
}

/// Matrix form of the key: [G_1 | ... | G_l | r_final], shape (3N-2) x (Nl+1),
/// where G_m is the banded Toeplitz convolution matrix of the m-th key block
/// (column c is the block shifted down by c rows).
inline Matrix key_matrix(const MacParams& p, const MacKey& k) {
    check_key(p, k);
    Matrix m(p.tag_len(), p.source_len() + 1);
    for (std::size_t blk = 1; blk <= p.l; ++blk) {
        Poly g = key_block_poly(p, k, blk);
        const std::size_t col0 = (blk - 1) * p.block;
        for (std::size_t c = 0; c < p.block; ++c)
            for (std::size_t w = 0; w < g.size(); ++w)
                m.at(w + c, col0 + c) = g[w];
    }
    for (std::size_t w = 0; w < p.tag_len(); ++w) m.at(w, p.source_len()) = k.r_final[w];
    return m;
}

/// Matrix-form tag: key matrix applied to (x, 1).
inline Tag mac_tag_matrix(const MacParams& p, const SourceState& x, const MacKey& k) {
    check_source(p, x);
    std::vector<Fe> ext(x);
    ext.push_back(1);
    return mat_vec(p.field, key_matrix(p, k), ext);
}

inline bool mac_verify(const MacParams& p, const SourceState& x, const Tag& t, const MacKey& k) {
    if (t.size() != p.tag_len()) throw std::invalid_argument("mac: wrong tag length");
    return mac_tag_matrix(p, x, k) == t;
}

/// Verification rows for the joint decoder: over unknowns (x, t_1..t_S) the
/// slot-i block reads [G_1|..|G_l | 0 .. -I .. 0] * (x, t_1..t_S) = -r_final,
/// with -I placed against t_slot. Row count 3N-2.
inline std::pair<Matrix, std::vector<Fe>> mac_equation_rows(const MacParams& p, const MacKey& k,
                                                            std::size_t slot, std::size_t total_slots) {
    if (slot < 1 || slot > total_slots) throw std::out_of_range("mac_equation_rows: slot outside [1, total]");
    check_key(p, k);
    const std::size_t rows = p.tag_len();
    const std::size_t xcols = p.source_len();
    Matrix m(rows, xcols + total_slots * rows);
    Matrix km = key_matrix(p, k);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < xcols; ++c) m.at(r, c) = km.at(r, c);
    const std::size_t tcol0 = xcols + (slot - 1) * rows;
    const Fe minus_one = p.field.neg(1);
    for (std::size_t r = 0; r < rows; ++r) m.at(r, tcol0 + r) = minus_one;
    std::vector<Fe> rhs(rows);
    for (std::size_t r = 0; r < rows; ++r) rhs[r] = p.field.neg(k.r_final[r]);
    return {std::move(m), std::move(rhs)};
}

} // namespace lvadv
