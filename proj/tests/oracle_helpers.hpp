#pragma once

// Small brute-force reference implementations used to pin expected values in
// the unit tests. Everything here favors obviousness over speed: exhaustive
// enumeration and direct definitions only.

#include <cstdint>
#include <vector>

#include "dw/gf2.hpp"

namespace testutil {

inline dw::BitVector from_mask(std::uint64_t mask, std::size_t n) {
    dw::BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) v.set(i);
    return v;
}

inline std::uint64_t to_mask(const dw::BitVector& v) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) m |= std::uint64_t(1) << i;
    return m;
}

/** All v in GF(2)^cols with M v = 0, as masks, by trying every vector. */
inline std::vector<std::uint64_t> enumerate_kernel(const dw::BitMatrix& m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m.cols()); ++mask) {
        dw::BitVector v = from_mask(mask, m.cols());
        if (m.apply(v).none()) out.push_back(mask);
    }
    return out;
}

/** All v with M v = b, as masks. */
inline std::vector<std::uint64_t> enumerate_solutions(const dw::BitMatrix& m,
                                                      const dw::BitVector& b) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m.cols()); ++mask) {
        dw::BitVector v = from_mask(mask, m.cols());
        if (m.apply(v) == b) out.push_back(mask);
    }
    return out;
}

/** Rank via the size of the row span, enumerated as a set of masks. */
inline std::size_t enumerate_rank(const dw::BitMatrix& m) {
    std::vector<std::uint64_t> span{0};
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::uint64_t rm = to_mask(m.row(r));
        bool known = false;
        for (std::uint64_t s : span)
            if (s == rm) { known = true; break; }
        if (!known) {
            std::size_t old = span.size();
            for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ rm);
        }
    }
    std::size_t rank = 0;
    while ((std::size_t(1) << rank) < span.size()) ++rank;
    return rank;
}

/** Sum over all vectors of (-1)^{q(v)} from an explicit value table. */
inline long long gauss_sum(const std::vector<int>& table) {
    long long s = 0;
    for (int t : table) s += (t & 1) ? -1 : 1;
    return s;
}

}  // namespace testutil
