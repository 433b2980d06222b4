#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "dw/errors.hpp"

namespace dw {

/** Checked 64-bit integer arithmetic; overflow raises instead of wrapping. */
inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw BudgetError("integer overflow in exact arithmetic (add)");
    return r;
}

inline long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r))
        throw BudgetError("integer overflow in exact arithmetic (sub)");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw BudgetError("integer overflow in exact arithmetic (mul)");
    return r;
}

/** Dense exact integer matrix (row-major). */
class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    long long& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    long long at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<long long> a_;
};

/** Smith normal form diagonal of m: non-negative entries d_1 | d_2 | ...,
 *  padded with zeros up to min(rows, cols). Euclidean pivoting with a
 *  divisibility fixup pass; all arithmetic overflow-checked. */
inline std::vector<long long> smith_diagonal(IntMat m) {
    std::size_t R = m.rows(), C = m.cols();
    std::size_t n = R < C ? R : C;
    std::vector<long long> diag(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
        // find a nonzero pivot of minimal magnitude in the working submatrix
        std::size_t pr = t, pc = t;
        long long best = 0;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                long long v = m.at(i, j);
                if (v != 0 && (best == 0 || std::llabs(v) < std::llabs(best))) {
                    best = v; pr = i; pc = j;
                }
            }
        if (best == 0) break;  // remaining submatrix is zero
        for (std::size_t j = 0; j < C; ++j) std::swap(m.at(t, j), m.at(pr, j));
        for (std::size_t i = 0; i < R; ++i) std::swap(m.at(i, t), m.at(i, pc));
        bool dirty = true;
        while (dirty) {
            dirty = false;
            // clear column t below the pivot by Euclidean steps
            for (std::size_t i = t + 1; i < R; ++i) {
                while (m.at(i, t) != 0) {
                    long long g = m.at(i, t) / m.at(t, t);
                    for (std::size_t j = t; j < C; ++j)
                        m.at(i, j) = checked_sub(m.at(i, j), checked_mul(g, m.at(t, j)));
                    if (m.at(i, t) != 0)
                        for (std::size_t j = t; j < C; ++j) std::swap(m.at(t, j), m.at(i, j));
                }
            }
            // clear row t right of the pivot
            for (std::size_t j = t + 1; j < C; ++j) {
                while (m.at(t, j) != 0) {
                    long long g = m.at(t, j) / m.at(t, t);
                    for (std::size_t i = t; i < R; ++i)
                        m.at(i, j) = checked_sub(m.at(i, j), checked_mul(g, m.at(i, t)));
                    if (m.at(t, j) != 0) {
                        for (std::size_t i = t; i < R; ++i) std::swap(m.at(i, t), m.at(i, j));
                        dirty = true;  // column operations may have refilled column t
                    }
                }
            }
            if (dirty) continue;
            // divisibility fixup: pivot must divide every remaining entry
            for (std::size_t i = t + 1; i < R && !dirty; ++i)
                for (std::size_t j = t + 1; j < C && !dirty; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        for (std::size_t jj = t; jj < C; ++jj)
                            m.at(t, jj) = checked_add(m.at(t, jj), m.at(i, jj));
                        dirty = true;
                    }
        }
        diag[t] = std::llabs(m.at(t, t));
    }
    return diag;
}

/** Rank over the rationals = number of nonzero Smith diagonal entries. */
inline std::size_t int_rank(const IntMat& m) {
    std::size_t r = 0;
    for (long long d : smith_diagonal(m))
        if (d != 0) ++r;
    return r;
}

/** Invariant factors > 1, in divisibility order. For a presentation matrix
 *  of an abelian group these are exactly the torsion coefficients. */
inline std::vector<long long> invariant_factors(const IntMat& m) {
    std::vector<long long> out;
    for (long long d : smith_diagonal(m))
        if (d > 1) out.push_back(d);
    return out;
}

}  // namespace dw
