#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

#include "dw/errors.hpp"

namespace dw {

/** Dense bit vector over GF(2), packed into 64-bit words. */
class BitVector {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v = true) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVector& operator^=(const BitVector& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool none() const {
        for (auto w : w_) if (w) return false;
        return true;
    }

    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
        return npos;
    }

    bool operator==(const BitVector& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }

    /** Lexicographic from bit 0 upward; used only for deterministic ordering. */
    bool operator<(const BitVector& o) const {
        for (std::size_t k = 0; k < w_.size() && k < o.w_.size(); ++k)
            if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
        return n_ < o.n_;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/** Parity of <a, b> (bitwise AND then popcount mod 2). */
inline int dot(const BitVector& a, const BitVector& b) {
    std::uint64_t acc = 0;
    const auto& aw = a.words();
    const auto& bw = b.words();
    std::size_t n = aw.size() < bw.size() ? aw.size() : bw.size();
    for (std::size_t k = 0; k < n; ++k) acc ^= aw[k] & bw[k];
    return std::popcount(acc) & 1;
}

/** Dense GF(2) matrix with bit-packed rows in one flat buffer. */
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t word_stride() const { return stride_; }

    bool at(std::size_t r, std::size_t c) const {
        return (w_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v = true) {
        std::uint64_t m = std::uint64_t(1) << (c & 63);
        std::uint64_t& word = w_[r * stride_ + (c >> 6)];
        if (v) word |= m; else word &= ~m;
    }

    void flip(std::size_t r, std::size_t c) {
        w_[r * stride_ + (c >> 6)] ^= std::uint64_t(1) << (c & 63);
    }

    const std::uint64_t* row_ptr(std::size_t r) const { return w_.data() + r * stride_; }
    std::uint64_t* row_ptr(std::size_t r) { return w_.data() + r * stride_; }

    BitVector row(std::size_t r) const {
        BitVector v(cols_);
        for (std::size_t k = 0; k < stride_; ++k) v.words()[k] = w_[r * stride_ + k];
        return v;
    }

    void set_row(std::size_t r, const BitVector& v) {
        for (std::size_t k = 0; k < stride_; ++k) w_[r * stride_ + k] = v.words()[k];
    }

    bool is_zero() const {
        for (auto w : w_) if (w) return false;
        return true;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            const std::uint64_t* rp = row_ptr(r);
            for (std::size_t k = 0; k < stride_; ++k) {
                std::uint64_t w = rp[k];
                while (w) {
                    unsigned b = std::countr_zero(w);
                    t.set(k * 64 + b, r);
                    w &= w - 1;
                }
            }
        }
        return t;
    }

    /** Matrix product over GF(2). */
    BitMatrix operator*(const BitMatrix& o) const {
        if (cols_ != o.rows_) throw ValidationError("gf2 product shape mismatch");
        BitMatrix out(rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            const std::uint64_t* rp = row_ptr(r);
            std::uint64_t* op = out.row_ptr(r);
            for (std::size_t k = 0; k < stride_; ++k) {
                std::uint64_t w = rp[k];
                while (w) {
                    unsigned b = std::countr_zero(w);
                    const std::uint64_t* src = o.row_ptr(k * 64 + b);
                    for (std::size_t j = 0; j < out.stride_; ++j) op[j] ^= src[j];
                    w &= w - 1;
                }
            }
        }
        return out;
    }

    /** M * v with v a column vector in GF(2)^cols. */
    BitVector apply(const BitVector& v) const {
        BitVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            const std::uint64_t* rp = row_ptr(r);
            const auto& vw = v.words();
            for (std::size_t k = 0; k < stride_; ++k) acc ^= rp[k] & vw[k];
            if (std::popcount(acc) & 1) out.set(r);
        }
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> w_;
};

/** Incremental reduced row echelon machine. Rows fed in are reduced against
 *  the pivots collected so far; the pivot set is kept fully back-eliminated,
 *  so reduce() maps every vector to the unique canonical representative of
 *  its coset modulo the row span. */
class Eliminator {
public:
    Eliminator() = default;
    explicit Eliminator(std::size_t cols) : cols_(cols), pivot_at_(cols, BitVector::npos) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return pivots_.size(); }

    /** Reduce v in place against the current pivots. */
    void reduce(BitVector& v) const {
        auto& vw = v.words();
        for (std::size_t k = 0; k < vw.size(); ++k) {
            std::uint64_t w = vw[k];
            while (w) {
                unsigned b = std::countr_zero(w);
                std::size_t col = k * 64 + b;
                std::size_t pi = pivot_at_[col];
                if (pi != BitVector::npos) {
                    const auto& pw = pivots_[pi].words();
                    for (std::size_t j = k; j < vw.size(); ++j) vw[j] ^= pw[j];
                    w = vw[k] & ~((std::uint64_t(1) << b) - 1);
                } else {
                    w &= w - 1;  // no pivot for this column; keep bit, move on
                }
            }
        }
    }

    /** Reduce v; if nonzero, install it as a new pivot. Returns the pivot
     *  column, or BitVector::npos if v reduced to zero. */
    std::size_t insert(BitVector v) {
        reduce(v);
        std::size_t col = v.first_set();
        if (col == BitVector::npos) return col;
        for (std::size_t i = 0; i < pivots_.size(); ++i)
            if (pivots_[i].get(col)) pivots_[i] ^= v;
        pivot_at_[col] = pivots_.size();
        pivots_.push_back(std::move(v));
        pivot_cols_.push_back(col);
        return col;
    }

    /** True iff v lies in the span of the inserted rows. */
    bool contains(BitVector v) const {
        reduce(v);
        return v.none();
    }

    const std::vector<BitVector>& pivot_rows() const { return pivots_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }
    bool has_pivot(std::size_t col) const { return pivot_at_[col] != BitVector::npos; }

private:
    std::size_t cols_;
    std::vector<std::size_t> pivot_at_;
    std::vector<BitVector> pivots_;
    std::vector<std::size_t> pivot_cols_;
};

/** Rank over GF(2) by Gaussian elimination on bit-packed rows. */
inline std::size_t gf2_rank(const BitMatrix& m) {
    Eliminator e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    return e.rank();
}

/** Basis of { v : M v = 0 }, deterministic: one vector per free column, in
 *  ascending column order, each with unit at its free column. */
inline std::vector<BitVector> nullspace_basis(const BitMatrix& m) {
    Eliminator e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
    std::vector<char> is_pivot(m.cols(), 0);
    for (std::size_t c : e.pivot_cols()) is_pivot[c] = 1;
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector v(m.cols());
        v.set(f);
        const auto& rows = e.pivot_rows();
        const auto& cols = e.pivot_cols();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].get(f)) v.set(cols[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/** One solution of M v = b, or nullopt if the system is inconsistent. */
inline std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.rows()) throw ValidationError("gf2 solve: rhs size mismatch");
    std::size_t n = m.cols();
    Eliminator e(n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BitVector aug(n + 1);
        for (std::size_t k = 0; k < m.word_stride(); ++k) aug.words()[k] = m.row_ptr(r)[k];
        if (b.get(r)) aug.set(n);
        e.insert(std::move(aug));
    }
    if (e.has_pivot(n)) return std::nullopt;
    BitVector v(n);
    const auto& rows = e.pivot_rows();
    const auto& cols = e.pivot_cols();
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].get(n)) v.set(cols[i]);
    return v;
}

/** Radical of a symmetric bilinear form given by its Gram matrix:
 *  { v : M v = 0 }. */
inline std::vector<BitVector> radical(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("radical: matrix not square");
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r + 1; c < m.cols(); ++c)
            if (m.at(r, c) != m.at(c, r)) throw ValidationError("radical: matrix not symmetric");
    return nullspace_basis(m);
}

}  // namespace dw
