#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dw/errors.hpp"
#include "dw/gf2.hpp"
#include "dw/intmat.hpp"

namespace dw {

/** One fiber of multiplicity p glued with parameter q; gcd(p, |q|) = 1. */
struct Fiber {
    long long p = 1;
    long long q = 0;
    bool operator==(const Fiber& o) const { return p == o.p && q == o.q; }
};

/** Seifert fibered space over an orientable genus-g base surface with the
 *  given exceptional fibers. Any integer obstruction term b is carried as a
 *  (1, b) fiber rather than as a separate field. */
struct SeifertData {
    long long genus = 0;
    std::vector<Fiber> fibers;
    bool operator==(const SeifertData& o) const {
        return genus == o.genus && fibers == o.fibers;
    }
};

/** First homology of the total space: Z^free_rank + sum Z/d_i with the d_i
 *  in divisibility order, plus the mod-2 dimension m = dim H_1(M; Z_2). */
struct H1Summary {
    long long free_rank = 0;
    std::vector<long long> torsion_divisors;
    long long mod2_dim = 0;
};

inline long long fiber_gcd(long long p, long long q) {
    return std::gcd(p, q < 0 ? -q : q);
}

constexpr long long kMaxFiberMagnitude = 1LL << 31;

/** Check invariants and apply the empty-list convention: no fibers means one
 *  (1,0) fiber. No sorting or sign normalization happens here. */
inline SeifertData canonicalize(SeifertData d) {
    if (d.genus < 0) throw ValidationError("genus must be non-negative");
    for (std::size_t i = 0; i < d.fibers.size(); ++i) {
        const Fiber& f = d.fibers[i];
        if (f.p <= 0)
            throw ValidationError("fiber " + std::to_string(i) + ": multiplicity must be positive");
        if (f.p >= kMaxFiberMagnitude || f.q >= kMaxFiberMagnitude || f.q <= -kMaxFiberMagnitude)
            throw ValidationError("fiber " + std::to_string(i) + ": parameter exceeds 2^31 cap");
        if (fiber_gcd(f.p, f.q) != 1)
            throw ValidationError("fiber " + std::to_string(i) + ": gcd(p, q) must be 1");
    }
    if (d.fibers.empty()) d.fibers.push_back(Fiber{1, 0});
    return d;
}

/** Integer presentation matrix of H_1 in generators x_1..x_n, h:
 *  rows p_i x_i + q_i h = 0 for each fiber, plus sum x_i = 0. The 2g surface
 *  generators contribute free summands handled separately. */
inline IntMat presentation_matrix(const SeifertData& d) {
    std::size_t n = d.fibers.size();
    IntMat m(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = d.fibers[i].p;
        m.at(i, n) = d.fibers[i].q;
    }
    for (std::size_t i = 0; i < n; ++i) m.at(n, i) = 1;
    return m;
}

/** Mod-2 reduction of the presentation matrix. */
inline BitMatrix presentation_matrix_mod2(const SeifertData& d) {
    std::size_t n = d.fibers.size();
    BitMatrix m(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (d.fibers[i].p & 1) m.set(i, i);
        if (d.fibers[i].q & 1) m.set(i, n);
    }
    for (std::size_t i = 0; i < n; ++i) m.set(n, i);
    return m;
}

/** First homology via Smith normal form, with the mod-2 dimension computed a
 *  second way (GF(2) corank) as a consistency check. */
inline H1Summary h1(const SeifertData& d) {
    std::size_t n = d.fibers.size();
    std::vector<long long> diag = smith_diagonal(presentation_matrix(d));
    H1Summary s;
    long long zero_count = 0;
    for (long long v : diag) {
        if (v == 0) ++zero_count;
        else if (v > 1) s.torsion_divisors.push_back(v);
    }
    s.free_rank = zero_count + 2 * d.genus;
    long long even_divisors = 0;
    for (long long v : s.torsion_divisors)
        if (v % 2 == 0) ++even_divisors;
    s.mod2_dim = s.free_rank + even_divisors;
    long long mod2_by_rank =
        2 * d.genus + (long long)(n + 1) - (long long)gf2_rank(presentation_matrix_mod2(d));
    if (s.mod2_dim != mod2_by_rank)
        throw SelfCheckError("mod-2 homology dimension: Smith normal form and GF(2) rank disagree");
    return s;
}

/** Count homomorphisms from the fundamental group to Z_2 by brute force over
 *  all generator assignments (x_1..x_n, h, a_1, b_1, .., a_g, b_g). */
inline std::uint64_t count_hom_z2(const SeifertData& d) {
    std::size_t n = d.fibers.size();
    std::size_t gens = n + 1 + 2 * (std::size_t)d.genus;
    if (gens > 24) throw BudgetError("homomorphism count: more than 24 generators");
    // Relations only involve x_i and h (commutators die in Z_2): bit masks.
    std::vector<std::uint32_t> rels;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t r = 0;
        if (d.fibers[i].p & 1) r |= std::uint32_t(1) << i;
        if (d.fibers[i].q & 1) r |= std::uint32_t(1) << n;
        rels.push_back(r);
    }
    std::uint32_t sum_rel = 0;
    for (std::size_t i = 0; i < n; ++i) sum_rel |= std::uint32_t(1) << i;
    rels.push_back(sum_rel);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << gens); ++mask) {
        bool ok = true;
        for (std::uint32_t r : rels)
            if (std::popcount(std::uint32_t(mask) & r) & 1) { ok = false; break; }
        if (ok) ++count;
    }
    return count;
}

/** Parameter trading: (p_i, q_i), (p_j, q_j) -> (p_i, q_i + p_i), (p_j, q_j - p_j).
 *  Preserves the manifold. */
inline SeifertData trade(SeifertData d, std::size_t i, std::size_t j) {
    if (i >= d.fibers.size() || j >= d.fibers.size())
        throw ValidationError("trade: fiber index out of range");
    if (i == j) throw ValidationError("trade: indices must differ");
    d.fibers[i].q = checked_add(d.fibers[i].q, d.fibers[i].p);
    d.fibers[j].q = checked_sub(d.fibers[j].q, d.fibers[j].p);
    return d;
}

/** Append a trivial (1,0) fiber (manifold-preserving). */
inline SeifertData insert_trivial(SeifertData d) {
    d.fibers.push_back(Fiber{1, 0});
    return d;
}

/** Remove fiber i, which must be (1,0), keeping at least one fiber. */
inline SeifertData remove_trivial(SeifertData d, std::size_t i) {
    if (i >= d.fibers.size())
        throw ValidationError("remove: fiber index out of range");
    if (d.fibers.size() < 2)
        throw ValidationError("remove: list must keep at least one fiber");
    if (!(d.fibers[i].p == 1 && d.fibers[i].q == 0))
        throw ValidationError("remove: fiber " + std::to_string(i) + " is not (1,0)");
    d.fibers.erase(d.fibers.begin() + (std::ptrdiff_t)i);
    return d;
}

/** Negate every q: the oppositely oriented manifold. */
inline SeifertData reverse_orientation(SeifertData d) {
    for (Fiber& f : d.fibers) f.q = -f.q;
    return d;
}

/** Reorder fibers by the given permutation (new position i takes old fiber
 *  perm[i]); the manifold does not depend on fiber order. */
inline SeifertData permute_fibers(SeifertData d, const std::vector<std::size_t>& perm) {
    if (perm.size() != d.fibers.size())
        throw ValidationError("permute: permutation size mismatch");
    std::vector<char> seen(perm.size(), 0);
    std::vector<Fiber> out;
    out.reserve(perm.size());
    for (std::size_t p : perm) {
        if (p >= perm.size() || seen[p])
            throw ValidationError("permute: not a permutation");
        seen[p] = 1;
        out.push_back(d.fibers[p]);
    }
    d.fibers = std::move(out);
    return d;
}

/** Parse "(p,q),(p,q),…" with optional whitespace; negative entries allowed. */
inline std::vector<Fiber> parse_fibers(const std::string& text) {
    std::vector<Fiber> out;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw ValidationError(std::string("fiber list: expected '") + c + "' at position " +
                                  std::to_string(i));
        ++i;
    };
    auto read_int = [&]() -> long long {
        skip_ws();
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        std::size_t digits = i;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
        if (i == digits)
            throw ValidationError("fiber list: expected integer at position " + std::to_string(start));
        return std::stoll(text.substr(start, i - start));
    };
    skip_ws();
    while (i < text.size()) {
        expect('(');
        long long p = read_int();
        expect(',');
        long long q = read_int();
        expect(')');
        out.push_back(Fiber{p, q});
        skip_ws();
        if (i < text.size()) {
            expect(',');
            skip_ws();
            if (i >= text.size()) throw ValidationError("fiber list: trailing comma");
        }
    }
    return out;
}

inline std::string format_fibers(const std::vector<Fiber>& fibers) {
    std::string s;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(fibers[i].p) + "," + std::to_string(fibers[i].q) + ")";
    }
    return s;
}

}  // namespace dw
