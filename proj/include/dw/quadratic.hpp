#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "dw/errors.hpp"
#include "dw/gf2.hpp"

namespace dw {

/** Quadratic form q : GF(2)^dim -> GF(2) whose polarization
 *  l(x,y) = q(x+y) + q(x) + q(y) is bilinear. Stored as the values on the
 *  standard basis plus the Gram matrix of the polarization, which together
 *  determine q everywhere:
 *      q(sum c_i e_i) = sum c_i q(e_i)  +  sum_{i<j} c_i c_j l(e_i, e_j).
 */
class QuadraticForm {
public:
    QuadraticForm() = default;

    /** Build from an explicit value table of size 2^dim (index = bit mask of
     *  coordinates). Verifies that the table is induced by a bilinear
     *  polarization, i.e. the expansion above reproduces every entry. */
    static QuadraticForm from_table(const std::vector<int>& table) {
        std::size_t n = table.size();
        if (n == 0 || (n & (n - 1)) != 0)
            throw ValidationError("quadratic form table size must be a power of two");
        std::size_t dim = 0;
        while ((std::size_t(1) << dim) < n) ++dim;
        if (dim > 20) throw BudgetError("quadratic form table dimension exceeds 20");
        if (table[0] % 2 != 0)
            throw ValidationError("quadratic form must vanish at zero");
        QuadraticForm q;
        q.dim_ = dim;
        q.vals_ = BitVector(dim);
        q.bil_ = BitMatrix(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            q.vals_.set(i, table[std::size_t(1) << i] & 1);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) {
                int l = (table[(std::size_t(1) << i) | (std::size_t(1) << j)] ^
                         table[std::size_t(1) << i] ^ table[std::size_t(1) << j]) & 1;
                q.bil_.set(i, j, l);
                q.bil_.set(j, i, l);
            }
        for (std::size_t mask = 0; mask < n; ++mask) {
            BitVector v(dim);
            for (std::size_t i = 0; i < dim; ++i)
                if ((mask >> i) & 1) v.set(i);
            if (q.value(v) != (table[mask] & 1))
                throw ValidationError("table is not a quadratic form with bilinear polarization");
        }
        return q;
    }

    /** Build from basis values and the polarization Gram matrix (must be
     *  symmetric with zero diagonal, since l(x,x) = q(2x) + 2q(x) = 0). */
    static QuadraticForm from_basis(const BitVector& basis_values, const BitMatrix& bilinear) {
        std::size_t dim = basis_values.size();
        if (bilinear.rows() != dim || bilinear.cols() != dim)
            throw ValidationError("polarization Gram matrix shape mismatch");
        for (std::size_t i = 0; i < dim; ++i) {
            if (bilinear.at(i, i))
                throw ValidationError("polarization must be alternating (zero diagonal)");
            for (std::size_t j = i + 1; j < dim; ++j)
                if (bilinear.at(i, j) != bilinear.at(j, i))
                    throw ValidationError("polarization must be symmetric");
        }
        QuadraticForm q;
        q.dim_ = dim;
        q.vals_ = basis_values;
        q.bil_ = bilinear;
        return q;
    }

    std::size_t dim() const { return dim_; }
    const BitVector& basis_values() const { return vals_; }
    const BitMatrix& bilinear() const { return bil_; }

    /** q(v) for v in basis coordinates. */
    int value(const BitVector& v) const {
        int acc = dot(vals_, v);
        // strictly-upper-triangular part of v^T L v
        const auto& vw = v.words();
        for (std::size_t k = 0; k < vw.size(); ++k) {
            std::uint64_t w = vw[k];
            while (w) {
                unsigned b = std::countr_zero(w);
                std::size_t i = k * 64 + b;
                w &= w - 1;
                const std::uint64_t* rp = bil_.row_ptr(i);
                std::uint64_t rest = w;  // remaining set bits of word k are all > i
                std::uint64_t a = rp[k] & rest;
                for (std::size_t j = k + 1; j < vw.size(); ++j) a ^= rp[j] & vw[j];
                acc ^= std::popcount(a) & 1;
            }
        }
        return acc;
    }

    /** Polarization l(a, b) = a^T L b. */
    int bil(const BitVector& a, const BitVector& b) const {
        std::uint64_t acc = 0;
        const auto& aw = a.words();
        const auto& bw = b.words();
        for (std::size_t k = 0; k < aw.size(); ++k) {
            std::uint64_t w = aw[k];
            while (w) {
                unsigned c = std::countr_zero(w);
                w &= w - 1;
                const std::uint64_t* rp = bil_.row_ptr(k * 64 + c);
                for (std::size_t j = 0; j < bw.size(); ++j) acc ^= std::popcount(rp[j] & bw[j]);
            }
        }
        return acc & 1;
    }

private:
    std::size_t dim_ = 0;
    BitVector vals_;
    BitMatrix bil_;
};

/** Arf invariant of a quadratic form with nondegenerate polarization
 *  (dimension must be even, Gram matrix of full rank). Computed by greedy
 *  symplectic pairing: split off hyperbolic pairs (a, b) with l(a,b) = 1 and
 *  accumulate q(a) q(b).
 *
 *  For dim <= 12 the result is cross-checked against the sign of the full
 *  exponential sum  sum_v (-1)^{q(v)} = (-1)^{Arf} 2^{dim/2}. */
inline int arf(const QuadraticForm& q) {
    std::size_t d = q.dim();
    if (d % 2 != 0)
        throw ValidationError("Arf invariant needs even dimension");
    if (gf2_rank(q.bilinear()) != d)
        throw ValidationError("Arf invariant needs nondegenerate polarization");
    std::vector<BitVector> vecs;
    vecs.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        BitVector e(d);
        e.set(i);
        vecs.push_back(std::move(e));
    }
    int result = 0;
    while (!vecs.empty()) {
        BitVector a = vecs.front();
        std::size_t bi = 0;
        for (std::size_t i = 1; i < vecs.size(); ++i)
            if (q.bil(a, vecs[i])) { bi = i; break; }
        if (bi == 0)
            throw SelfCheckError("symplectic pairing failed on a nondegenerate form");
        BitVector b = vecs[bi];
        result ^= q.value(a) & q.value(b);
        std::vector<BitVector> next;
        next.reserve(vecs.size() - 2);
        for (std::size_t i = 1; i < vecs.size(); ++i) {
            if (i == bi) continue;
            BitVector v = vecs[i];
            if (q.bil(v, b)) v ^= a;
            if (q.bil(v, a)) v ^= b;
            next.push_back(std::move(v));
        }
        vecs = std::move(next);
    }
    if (d <= 12) {
        long long sum = 0;
        BitVector v(d);
        int qv = q.value(v);  // 0
        sum += qv ? -1 : 1;
        // Gray-code walk: flipping bit i changes q by q(e_i) + l(v, e_i).
        std::vector<BitVector> basis;
        for (std::size_t i = 0; i < d; ++i) {
            BitVector e(d);
            e.set(i);
            basis.push_back(std::move(e));
        }
        for (std::uint64_t g = 1; g < (std::uint64_t(1) << d); ++g) {
            unsigned i = std::countr_zero(g);
            qv ^= q.basis_values().get(i) ^ q.bil(v, basis[i]);
            v.flip(i);
            sum += qv ? -1 : 1;
        }
        long long expect = (result ? -1 : 1) * (1LL << (d / 2));
        if (sum != expect)
            throw SelfCheckError("Arf invariant disagrees with the exponential sum");
    }
    return result;
}

}  // namespace dw
