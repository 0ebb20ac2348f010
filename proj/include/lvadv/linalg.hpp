#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lvadv/errors.hpp"
#include "lvadv/field.hpp"

namespace lvadv {

/// Dense row-major matrix over F_q.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fe& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    Fe at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Fe* row(std::size_t r) { return a_.data() + r * cols_; }
    const Fe* row(std::size_t r) const { return a_.data() + r * cols_; }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Fe> a_;
};

struct RowReduction {
    Matrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form with deterministic pivoting: columns are scanned
/// left to right, the first row holding a nonzero entry becomes the pivot.
inline RowReduction row_reduce(const PrimeField& f, Matrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    RowReduction out;
    std::size_t pr = 0; // next pivot row
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t sel = pr;
        while (sel < rows && m.at(sel, c) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != pr) {
            Fe* a = m.row(sel);
            Fe* b = m.row(pr);
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[j], b[j]);
        }
        const Fe pinv = f.inv(m.at(pr, c));
        if (pinv != 1) {
            Fe* prow = m.row(pr);
            for (std::size_t j = c; j < cols; ++j) prow[j] = f.mul(prow[j], pinv);
        }
        const Fe* prow = m.row(pr);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const Fe factor = m.at(r, c);
            if (factor == 0) continue;
            Fe* target = m.row(r);
            for (std::size_t j = c; j < cols; ++j)
                target[j] = f.sub(target[j], f.mul(factor, prow[j]));
        }
        out.pivot_cols.push_back(c);
        ++pr;
    }
    out.rank = pr;
    out.rref = std::move(m);
    return out;
}

/// Affine solution set of a linear system: one particular solution plus a
/// basis of the homogeneous solutions. `consistent == false` marks an empty
/// set, in which case the other fields are empty too.
struct SolutionSpace {
    bool consistent = false;
    std::vector<Fe> particular;
    std::vector<std::vector<Fe>> nullspace;
    std::size_t dimension() const { return nullspace.size(); }
};

/// All x with a*x = b, as particular solution + nullspace basis. Free
/// variables are zeroed in the particular solution; basis vector j sets free
/// variable j to one and the rest to zero.
inline SolutionSpace solve_affine(const PrimeField& f, const Matrix& a, const std::vector<Fe>& b) {
    if (a.rows() != b.size())
        throw std::invalid_argument("solve_affine: rhs length does not match row count");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    RowReduction rr = row_reduce(f, std::move(aug));

    SolutionSpace s;
    if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == a.cols()) return s; // 0 = nonzero row
    s.consistent = true;

    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;

    s.particular.assign(n, 0);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        s.particular[rr.pivot_cols[i]] = rr.rref.at(i, n);

    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Fe> v(n, 0);
        v[c] = 1;
        for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
            v[rr.pivot_cols[i]] = f.neg(rr.rref.at(i, c));
        s.nullspace.push_back(std::move(v));
    }
    return s;
}

/// Every point of the affine set, at most q^dimension of them.
inline std::vector<std::vector<Fe>> enumerate_solutions(const PrimeField& f, const SolutionSpace& s,
                                                        std::uint64_t cap) {
    if (!s.consistent) throw std::invalid_argument("enumerate_solutions: inconsistent system");
    const std::uint64_t q = f.modulus();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        if (total > cap / q) throw CapExceededError("enumerate_solutions: q^dimension exceeds cap");
        total *= q;
    }
    if (total > cap) throw CapExceededError("enumerate_solutions: q^dimension exceeds cap");

    std::vector<std::vector<Fe>> out;
    out.reserve(total);
    std::vector<Fe> coeff(s.dimension(), 0);
    for (std::uint64_t it = 0; it < total; ++it) {
        std::vector<Fe> v = s.particular;
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            if (coeff[j] == 0) continue;
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = f.add(v[i], f.mul(coeff[j], s.nullspace[j][i]));
        }
        out.push_back(std::move(v));
        for (std::size_t j = 0; j < coeff.size(); ++j) { // odometer
            if (++coeff[j] < q) break;
            coeff[j] = 0;
        }
    }
    return out;
}

inline std::vector<Fe> mat_vec(const PrimeField& f, const Matrix& a, const std::vector<Fe>& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("mat_vec: vector length does not match column count");
    std::vector<Fe> out(a.rows(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Fe acc = 0;
        const Fe* row = a.row(r);
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (row[c] != 0 && x[c] != 0) acc = f.add(acc, f.mul(row[c], x[c]));
        out[r] = acc;
    }
    return out;
}

/// Deterministic nonzero kernel vector (the one attached to the first free
/// column). Empty result means the kernel is trivial.
inline std::vector<Fe> nullspace_vector(const PrimeField& f, const Matrix& a) {
    RowReduction rr = row_reduce(f, a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Fe> v(n, 0);
        v[c] = 1;
        for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
            v[rr.pivot_cols[i]] = f.neg(rr.rref.at(i, c));
        return v;
    }
    return {};
}

} // namespace lvadv
