#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dw/delta.hpp"
#include "dw/dyadic.hpp"
#include "dw/errors.hpp"
#include "dw/gf2.hpp"
#include "dw/quadratic.hpp"
#include "dw/triangulation.hpp"

namespace dw {

/** Mod-2 cochain complex of an ordered Δ-complex. Row r of d_k is the
 *  coboundary incidence of (k+1)-simplex r with the k-simplices. */
struct CochainComplex {
    std::size_t n0 = 0, n1 = 0, n2 = 0, n3 = 0;
    BitMatrix d0, d1, d2;
};

inline CochainComplex cochain_complex(const DeltaComplex& dc) {
    CochainComplex cc;
    cc.n0 = dc.n0;
    cc.n1 = dc.s1.size();
    cc.n2 = dc.s2.size();
    cc.n3 = dc.s3.size();
    cc.d0 = BitMatrix(cc.n1, cc.n0);
    for (std::size_t e = 0; e < cc.n1; ++e)
        for (int i = 0; i < 2; ++i) cc.d0.flip(e, (std::size_t)dc.s1[e][i]);
    cc.d1 = BitMatrix(cc.n2, cc.n1);
    for (std::size_t f = 0; f < cc.n2; ++f)
        for (int i = 0; i < 3; ++i) cc.d1.flip(f, (std::size_t)dc.s2[f][i]);
    cc.d2 = BitMatrix(cc.n3, cc.n2);
    for (std::size_t s = 0; s < cc.n3; ++s)
        for (int i = 0; i < 4; ++i) cc.d2.flip(s, (std::size_t)dc.s3[s][i]);
    if (!(cc.d1 * cc.d0).is_zero() || !(cc.d2 * cc.d1).is_zero())
        throw SelfCheckError("coboundary composition is nonzero");
    return cc;
}

/** Mod-2 fundamental 3-cycle: the sum of all 3-simplices. */
struct FundamentalCycle {
    BitVector chain;
};

inline FundamentalCycle fundamental_cycle(const CochainComplex& cc) {
    FundamentalCycle fc;
    fc.chain = BitVector(cc.n3);
    for (std::size_t s = 0; s < cc.n3; ++s) fc.chain.set(s, true);
    // boundary of the all-ones chain pairs each 2-simplex with its number of
    // tetrahedron incidences; on a closed complex every column count is even
    for (std::size_t f = 0; f < cc.n2; ++f) {
        std::size_t inc = 0;
        for (std::size_t s = 0; s < cc.n3; ++s) inc += cc.d2.at(s, f) ? 1 : 0;
        if (inc % 2 != 0)
            throw SelfCheckError("all-ones 3-chain is not a cycle: complex is not closed");
    }
    return fc;
}

namespace detail {

/** Per 3-simplex [v0v1v2v3], the edge classes ([v0v1],[v1v2],[v2v3]) used by
 *  the cup-product state sum, derived from the facet structure:
 *  [v0v1] = drop v3 then v2; [v1v2] = drop v3 then v0; [v2v3] = drop v0 twice. */
inline std::vector<std::array<int, 3>> cup_triples(const DeltaComplex& dc) {
    std::vector<std::array<int, 3>> out(dc.s3.size());
    for (std::size_t s = 0; s < dc.s3.size(); ++s) {
        const auto& front = dc.s2[dc.s3[s][3]];  // [v0v1v2]
        const auto& back = dc.s2[dc.s3[s][0]];   // [v1v2v3]
        out[s] = {front[2], front[0], back[0]};
    }
    return out;
}

}  // namespace detail

/** ⟨a ∪ b ∪ c, f⟩ for 1-cocycles a, b, c: over each 3-simplex in f, multiply
 *  a on the front edge, b on the middle edge, c on the back edge. */
inline int triple_product(const DeltaComplex& dc, const CochainComplex& cc, const BitVector& a,
                          const BitVector& b, const BitVector& c, const FundamentalCycle& f) {
    if (a.size() != cc.n1 || b.size() != cc.n1 || c.size() != cc.n1 || f.chain.size() != cc.n3)
        throw ValidationError("triple product arguments have mismatched dimensions");
    for (const BitVector* v : {&a, &b, &c})
        if (!cc.d1.apply(*v).none()) throw ValidationError("triple product requires 1-cocycles");
    auto triples = detail::cup_triples(dc);
    int acc = 0;
    for (std::size_t s = 0; s < cc.n3; ++s)
        if (f.chain.get(s))
            acc ^= (a.get((std::size_t)triples[s][0]) & b.get((std::size_t)triples[s][1]) &
                    c.get((std::size_t)triples[s][2]))
                       ? 1
                       : 0;
    return acc;
}

/** Basis of H^1 with mod-2 coefficients: cocycle representatives reduced
 *  against the coboundary space, in a deterministic order. */
struct H1Basis {
    std::size_t m = 0;
    std::size_t cocycle_dim = 0;       // dim ker d1
    std::vector<BitVector> reps;       // m cocycles of length n1
    Eliminator coboundaries;           // echelon basis of im d0
};

inline H1Basis h1_classes(const CochainComplex& cc) {
    H1Basis h;
    h.coboundaries = Eliminator(cc.n1);
    BitMatrix d0t = cc.d0.transposed();
    for (std::size_t v = 0; v < cc.n0; ++v) h.coboundaries.insert(d0t.row(v));
    Eliminator span(cc.n1);
    for (std::size_t r = 0; r < h.coboundaries.pivot_rows().size(); ++r)
        span.insert(h.coboundaries.pivot_rows()[r]);
    for (const BitVector& z : nullspace_basis(cc.d1)) {
        ++h.cocycle_dim;
        BitVector red = z;
        h.coboundaries.reduce(red);
        if (span.insert(red) != BitVector::npos) h.reps.push_back(red);
    }
    h.m = h.reps.size();
    return h;
}

/** Full definitional analysis of the three-fold cup-product form on H^1. */
struct CohomologyProfile {
    std::size_t m = 0;                       // dim H^1(M; Z/2)
    std::vector<BitVector> basis_reps;       // canonical cocycle representatives
    std::vector<std::uint8_t> q_table;       // q over all 2^m classes, index = coordinate mask
    BitMatrix ell;                           // polarized bilinear form on the basis
    std::vector<BitVector> annihilator;      // basis of the radical, in coordinates
    std::size_t dim_a = 0;                   // dim of the radical
    std::size_t k = 0;                       // half the rank of ell
    std::optional<int> arf_invariant;        // Arf of the induced form, when defined
    std::optional<std::uint64_t> essential_witness;  // class index with q=1 in the radical
    DWValue z_definition;                    // (#q=0 - #q=1) / 2
    DWValue z_theorem;                       // closed-form evaluation from the analysis
    std::size_t b1 = 0, b2 = 0;              // mod-2 Betti numbers (must agree)

    /** Cocycle representative of an arbitrary class index. */
    BitVector class_rep(std::uint64_t index, std::size_t n1) const {
        BitVector v(n1);
        for (std::size_t i = 0; i < m; ++i)
            if (index & (std::uint64_t(1) << i)) v ^= basis_reps[i];
        return v;
    }
};

inline constexpr std::size_t kDefaultMaxRank = 14;

/** Evaluate the cup-product state sum over every class of H^1 and analyze the
 *  resulting quadratic refinement. `orientable` enables the closed-orientable
 *  consistency check that the radical is everything. */
inline CohomologyProfile profile(const DeltaComplex& dc, const CochainComplex& cc,
                                 bool orientable, std::size_t max_m = kDefaultMaxRank) {
    // the state sum integrates against the all-ones fundamental cycle; build
    // it up front so the closedness check runs before any heavy work
    fundamental_cycle(cc);
    H1Basis h1 = h1_classes(cc);
    CohomologyProfile pr;
    pr.m = h1.m;
    pr.basis_reps = h1.reps;
    if (pr.m > max_m)
        throw BudgetError("H^1 rank " + std::to_string(pr.m) + " exceeds the limit of " +
                          std::to_string(max_m));

    // betti cross-check: b1 from the cohomology computation, b2 directly
    std::size_t rank_d1 = cc.n1 - h1.cocycle_dim;
    std::size_t rank_d2 = gf2_rank(cc.d2);
    pr.b1 = pr.m;
    pr.b2 = (cc.n2 - rank_d2) - rank_d1;
    if (pr.b1 != pr.b2) throw SelfCheckError("mod-2 Betti numbers b1 and b2 disagree");

    // state sum: walk all classes in Gray-code order, evaluating the triple
    // cup product of each representative against the fundamental cycle
    auto triples = detail::cup_triples(dc);
    auto evaluate = [&](const BitVector& x) -> int {
        int acc = 0;
        for (const auto& tr : triples)
            acc ^= (x.get((std::size_t)tr[0]) & x.get((std::size_t)tr[1]) &
                    x.get((std::size_t)tr[2]))
                       ? 1
                       : 0;
        return acc;
    };
    std::uint64_t total = std::uint64_t(1) << pr.m;
    pr.q_table.assign(total, 0);
    BitVector current(cc.n1);
    for (std::uint64_t step = 1; step < total; ++step) {
        unsigned bit = 0;
        while (!((step >> bit) & 1)) ++bit;
        current ^= pr.basis_reps[bit];
        pr.q_table[step ^ (step >> 1)] = (std::uint8_t)evaluate(current);
    }

    std::int64_t count1 = 0;
    for (std::uint8_t q : pr.q_table) count1 += q;
    std::int64_t diff = (std::int64_t)total - 2 * count1;  // (#0 - #1)
    if (pr.m == 0) {
        pr.z_definition = DWValue::half();
    } else {
        if (diff % 2 != 0) throw SelfCheckError("state sum is odd on a positive-rank space");
        pr.z_definition = DWValue{diff / 2, 1};
    }

    // polarization: ell(i,j) from the table, then verify bilinearity by
    // re-expanding every table entry
    pr.ell = BitMatrix(pr.m, pr.m);
    for (std::size_t i = 0; i < pr.m; ++i)
        for (std::size_t j = 0; j < pr.m; ++j) {
            if (i == j) continue;
            std::uint8_t v = pr.q_table[(std::uint64_t(1) << i) | (std::uint64_t(1) << j)] ^
                             pr.q_table[std::uint64_t(1) << i] ^
                             pr.q_table[std::uint64_t(1) << j];
            pr.ell.set(i, j, v != 0);
        }
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        int expect = 0;
        for (std::size_t i = 0; i < pr.m; ++i) {
            if (!((idx >> i) & 1)) continue;
            expect ^= pr.q_table[std::uint64_t(1) << i];
            for (std::size_t j = i + 1; j < pr.m; ++j)
                if ((idx >> j) & 1) expect ^= pr.ell.at(i, j) ? 1 : 0;
        }
        if (expect != (int)pr.q_table[idx])
            throw SelfCheckError("state sum is not a quadratic refinement of its polarization");
    }

    // radical of ell, with deterministic coordinate-mask members
    pr.annihilator = radical(pr.ell);
    pr.dim_a = pr.annihilator.size();
    if ((pr.m - pr.dim_a) % 2 != 0)
        throw SelfCheckError("polarized form has odd rank");
    pr.k = (pr.m - pr.dim_a) / 2;
    if (orientable && pr.dim_a != pr.m)
        throw SelfCheckError("closed orientable manifold must have trivial cup-square pairing");

    Eliminator rad(pr.m);
    for (const BitVector& v : pr.annihilator) rad.insert(v);
    auto vec_of = [&](std::uint64_t idx) {
        BitVector v(pr.m);
        for (std::size_t i = 0; i < pr.m; ++i)
            if ((idx >> i) & 1) v.set(i, true);
        return v;
    };

    // first essential witness: smallest class index inside the radical with q=1
    for (std::uint64_t idx = 1; idx < total && !pr.essential_witness; ++idx)
        if (pr.q_table[idx] && rad.contains(vec_of(idx))) pr.essential_witness = idx;

    if (pr.essential_witness) {
        pr.z_theorem = DWValue::zero();
    } else {
        // q vanishes on the radical, so it descends to a nondegenerate form on
        // the quotient; take a complement basis and its Arf invariant
        Eliminator grow(pr.m);
        for (const BitVector& v : pr.annihilator) grow.insert(v);
        std::vector<std::uint64_t> comp;
        for (std::size_t i = 0; i < pr.m; ++i) {
            BitVector e(pr.m);
            e.set(i, true);
            if (grow.insert(e) != BitVector::npos) comp.push_back(std::uint64_t(1) << i);
        }
        if (comp.size() != 2 * pr.k) throw SelfCheckError("complement dimension mismatch");
        QuadraticForm qbar = [&] {
            std::size_t d = comp.size();
            std::vector<int> table(std::size_t(1) << d, 0);
            for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << d); ++sub) {
                std::uint64_t idx = 0;
                for (std::size_t j = 0; j < d; ++j)
                    if ((sub >> j) & 1) idx ^= comp[j];
                table[sub] = pr.q_table[idx];
            }
            return QuadraticForm::from_table(table);
        }();
        int a = arf(qbar);
        pr.arf_invariant = a;
        long long exponent = (long long)pr.k + (long long)pr.dim_a - 1;
        DWValue mag = DWValue::pow2(exponent);
        pr.z_theorem = a ? mag.negated() : mag;
    }

    if (!(pr.z_definition == pr.z_theorem))
        throw SelfCheckError("definitional state sum disagrees with the closed-form evaluation");
    return pr;
}

/** End-to-end pipeline: validate a closed triangulation, subdivide, and run
 *  the definitional analysis. */
inline CohomologyProfile profile_triangulation(const PseudoTriangulation& tri,
                                               std::size_t max_m = kDefaultMaxRank) {
    ValidationReport rep = validate(tri);
    if (!rep.closed) throw ValidationError("triangulation has boundary faces");
    if (!rep.connected) throw ValidationError("triangulation is not connected");
    DeltaComplex dc = barycentric(tri);
    CochainComplex cc = cochain_complex(dc);
    return profile(dc, cc, rep.orientable, max_m);
}

}  // namespace dw
