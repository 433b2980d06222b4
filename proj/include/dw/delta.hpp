#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dw/errors.hpp"
#include "dw/triangulation.hpp"

namespace dw {

/** Ordered Δ-complex: each k-simplex lists its k+1 facets, facet i being the
 *  (k-1)-simplex obtained by dropping vertex i. Vertex orders are globally
 *  compatible; audit() checks the simplicial facet identities. */
struct DeltaComplex {
    std::size_t n0 = 0;
    std::vector<std::array<int, 2>> s1;
    std::vector<std::array<int, 3>> s2;
    std::vector<std::array<int, 4>> s3;

    long long euler() const {
        return (long long)n0 - (long long)s1.size() + (long long)s2.size() -
               (long long)s3.size();
    }

    /** Check facet indices are in range and the ordered facet identities
     *  d_i d_j = d_{j-1} d_i (i < j) hold for every simplex. */
    void audit() const {
        for (const auto& e : s1)
            for (int i = 0; i < 2; ++i)
                if (e[i] < 0 || (std::size_t)e[i] >= n0)
                    throw SelfCheckError("edge facet out of range");
        for (const auto& f : s2) {
            for (int i = 0; i < 3; ++i)
                if (f[i] < 0 || (std::size_t)f[i] >= s1.size())
                    throw SelfCheckError("triangle facet out of range");
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (s1[f[j]][i] != s1[f[i]][j - 1])
                        throw SelfCheckError("triangle facets violate the ordered identities");
        }
        for (const auto& s : s3) {
            for (int i = 0; i < 4; ++i)
                if (s[i] < 0 || (std::size_t)s[i] >= s2.size())
                    throw SelfCheckError("tetrahedron facet out of range");
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (s2[s[j]][i] != s2[s[i]][j - 1])
                        throw SelfCheckError("tetrahedron facets violate the ordered identities");
        }
    }
};

namespace detail {

/** Static enumeration of strictly nested chains of nonempty subsets of
 *  {0,1,2,3}, the cells of the barycentric subdivision of one tetrahedron.
 *  A chain m_1 < m_2 < ... < m_{k+1} (proper inclusions) is one k-simplex;
 *  its vertices are the barycenters in inclusion order. */
struct ChainTables {
    // chains[k]: each entry is k+1 masks (rest zero), in enumeration order
    std::array<std::vector<std::array<std::uint16_t, 4>>, 4> chains;
    // key (4 nibbles) -> index within chains[k]; keys are unique per length
    std::vector<int> index = std::vector<int>(1 << 16, -1);
    // local chain ids whose top mask fits inside face f's vertex set
    std::array<std::array<std::vector<int>, 4>, 4> by_face;  // [f][k]

    static std::uint16_t key_of(const std::array<std::uint16_t, 4>& masks) {
        return std::uint16_t(masks[0] | (masks[1] << 4) | (masks[2] << 8) | (masks[3] << 12));
    }

    ChainTables() {
        std::array<std::uint16_t, 4> chain{};
        for (int m1 = 1; m1 < 16; ++m1) {
            chain = {std::uint16_t(m1), 0, 0, 0};
            push(0, chain);
            for (int m2 = 1; m2 < 16; ++m2) {
                if ((m1 & m2) != m1 || m1 == m2) continue;
                chain = {std::uint16_t(m1), std::uint16_t(m2), 0, 0};
                push(1, chain);
                for (int m3 = 1; m3 < 16; ++m3) {
                    if ((m2 & m3) != m2 || m2 == m3) continue;
                    chain = {std::uint16_t(m1), std::uint16_t(m2), std::uint16_t(m3), 0};
                    push(2, chain);
                    for (int m4 = 1; m4 < 16; ++m4) {
                        if ((m3 & m4) != m3 || m3 == m4) continue;
                        chain = {std::uint16_t(m1), std::uint16_t(m2), std::uint16_t(m3),
                                 std::uint16_t(m4)};
                        push(3, chain);
                    }
                }
            }
        }
        for (int f = 0; f < 4; ++f) {
            int fm = 15 ^ (1 << f);
            for (int k = 0; k < 4; ++k)
                for (std::size_t i = 0; i < chains[k].size(); ++i) {
                    int top = chains[k][i][k];
                    if ((top & fm) == top) by_face[f][k].push_back((int)i);
                }
        }
    }

    void push(int k, const std::array<std::uint16_t, 4>& chain) {
        index[key_of(chain)] = (int)chains[k].size();
        chains[k].push_back(chain);
    }
};

inline const ChainTables& chain_tables() {
    static const ChainTables t;
    return t;
}

inline std::uint16_t permute_mask(const Perm4& p, std::uint16_t m) {
    std::uint16_t out = 0;
    for (int v = 0; v < 4; ++v)
        if (m & (1 << v)) out |= std::uint16_t(1) << p(v);
    return out;
}

}  // namespace detail

/** Barycentric subdivision of a closed pseudo-triangulation as an ordered
 *  Δ-complex: one k-simplex per identified chain of nested cells, vertices
 *  ordered by cell dimension. Every input tetrahedron contributes exactly 24
 *  output tetrahedra; the Euler characteristic is preserved. */
inline DeltaComplex barycentric(const PseudoTriangulation& tri) {
    for (std::size_t t = 0; t < tri.size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (tri.is_boundary(t, f))
                throw ValidationError("barycentric subdivision requires a closed triangulation");
    const auto& ct = detail::chain_tables();
    std::size_t T = tri.size();
    std::array<std::size_t, 4> stride;
    for (int k = 0; k < 4; ++k) stride[k] = ct.chains[k].size();

    std::array<UnionFind, 4> uf{UnionFind(stride[0] * T), UnionFind(stride[1] * T),
                                UnionFind(stride[2] * T), UnionFind(stride[3] * T)};
    for (std::size_t t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            if (g.is_boundary()) continue;
            std::size_t t2 = (std::size_t)g.tet;
            for (int k = 0; k < 4; ++k)
                for (int ci : ct.by_face[f][k]) {
                    std::array<std::uint16_t, 4> img{};
                    for (int i = 0; i <= k; ++i)
                        img[i] = detail::permute_mask(g.perm, ct.chains[k][ci][i]);
                    int cj = ct.index[detail::ChainTables::key_of(img)];
                    uf[k].unite(stride[k] * t + ci, stride[k] * t2 + cj);
                }
        }

    std::array<std::vector<int>, 4> label;
    std::array<std::size_t, 4> count;
    for (int k = 0; k < 4; ++k) count[k] = uf[k].label(label[k]);

    // representative slot per class (first in slot order)
    std::array<std::vector<long long>, 4> rep;
    for (int k = 1; k < 4; ++k) {
        rep[k].assign(count[k], -1);
        for (std::size_t slot = 0; slot < stride[k] * T; ++slot) {
            int c = label[k][slot];
            if (rep[k][c] < 0) rep[k][c] = (long long)slot;
        }
    }

    auto facet_class = [&](int k, std::size_t slot, int drop) -> int {
        std::size_t t = slot / stride[k];
        const auto& chain = ct.chains[k][slot % stride[k]];
        std::array<std::uint16_t, 4> sub{};
        int w = 0;
        for (int i = 0; i <= k; ++i)
            if (i != drop) sub[w++] = chain[i];
        int ci = ct.index[detail::ChainTables::key_of(sub)];
        return label[k - 1][stride[k - 1] * t + ci];
    };

    DeltaComplex dc;
    dc.n0 = count[0];
    dc.s1.resize(count[1]);
    for (std::size_t c = 0; c < count[1]; ++c)
        for (int i = 0; i < 2; ++i)
            dc.s1[c][i] = facet_class(1, (std::size_t)rep[1][c], i);
    dc.s2.resize(count[2]);
    for (std::size_t c = 0; c < count[2]; ++c)
        for (int i = 0; i < 3; ++i)
            dc.s2[c][i] = facet_class(2, (std::size_t)rep[2][c], i);
    dc.s3.resize(count[3]);
    for (std::size_t c = 0; c < count[3]; ++c)
        for (int i = 0; i < 4; ++i)
            dc.s3[c][i] = facet_class(3, (std::size_t)rep[3][c], i);

    if (dc.s3.size() != 24 * T)
        throw SelfCheckError("barycentric subdivision must produce 24 tetrahedra per input");
    QuotientCells qc = quotient_cells(tri);
    long long chi_in = (long long)qc.vertex_count - (long long)qc.edge_count +
                       (long long)qc.face_count - (long long)T;
    if (dc.euler() != chi_in)
        throw SelfCheckError("barycentric subdivision changed the Euler characteristic");
    dc.audit();
    return dc;
}

}  // namespace dw
