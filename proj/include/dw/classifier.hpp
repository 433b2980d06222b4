#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dw/dyadic.hpp"
#include "dw/errors.hpp"
#include "dw/seifert.hpp"

namespace dw {

/** Full output of the arithmetic decision procedure. */
struct Verdict {
    bool in_class_a = false;
    bool b_eligible = false;
    std::optional<int> xi_parity;  // defined only when b_eligible
    bool in_class_b = false;
    bool essential = false;
    long long m = 0;  // dim H^1(M; Z_2)
    DWValue z;
};

inline int parity(long long v) { return (int)(((v % 2) + 2) % 2); }

/** True iff some fiber has p divisible by 4 and another has p even but not
 *  divisible by 4. */
inline bool in_class_a(const SeifertData& d) {
    bool p0 = false, p2 = false;
    for (const Fiber& f : d.fibers) {
        long long r = f.p % 4;
        if (r == 0) p0 = true;
        if (r == 2) p2 = true;
    }
    return p0 && p2;
}

/** True iff all multiplicities are odd and the number of odd q is even. */
inline bool b_eligible(const SeifertData& d) {
    long long odd_q = 0;
    for (const Fiber& f : d.fibers) {
        if (f.p % 2 == 0) return false;
        if (f.q % 2 != 0) ++odd_q;
    }
    return odd_q % 2 == 0;
}

/** xi = (Q* + P*)/2 mod 2, where Q* is the sum of all q_i and P* is the
 *  balanced alternating sum (+,-,+,-,... in list order) of those p_i whose
 *  q_i is odd. Q* + P* is always even under the eligibility hypotheses. */
inline int xi_parity_direct(const SeifertData& d) {
    if (!b_eligible(d))
        throw ValidationError("xi parity requires all p odd and an even number of odd q");
    long long q_star = 0, p_star = 0;
    int sign = 1;
    for (const Fiber& f : d.fibers) {
        q_star = checked_add(q_star, f.q);
        if (f.q % 2 != 0) {
            p_star = checked_add(p_star, sign > 0 ? f.p : -f.p);
            sign = -sign;
        }
    }
    long long total = checked_add(q_star, p_star);
    if (parity(total) != 0)
        throw SelfCheckError("Q* + P* must be even for eligible data");
    return parity(total / 2);
}

/** Explicit trading sequence that makes every q except the last divisible by
 *  4. Returns every data set visited: the starting point (padded with a trivial
 *  fiber when the list has only one entry) followed by one entry per trade.
 *  Requires the same eligibility as xi itself. */
inline std::vector<SeifertData> normalize_trace(const SeifertData& d) {
    if (!b_eligible(d))
        throw ValidationError("xi parity requires all p odd and an even number of odd q");
    std::vector<SeifertData> out;
    SeifertData w = d;
    if (w.fibers.size() == 1) w = insert_trivial(w);
    out.push_back(w);
    std::size_t n = w.fibers.size();
    std::size_t last = n - 1;
    long long max_q = 2;
    for (const Fiber& f : d.fibers) {
        long long a = f.q < 0 ? -f.q : f.q;
        if (a > max_q) max_q = a;
    }
    long long guard = 16 * (long long)n * max_q;
    long long steps = 0;
    auto step = [&](std::size_t i) {
        w = trade(w, i, last);
        out.push_back(w);
        if (++steps > guard)
            throw SelfCheckError("normalization by trading failed to terminate");
    };
    for (std::size_t i = 0; i < last; ++i) {
        if (parity(w.fibers[i].q) == 1) step(i);  // odd p makes q even
        while (((w.fibers[i].q % 4) + 4) % 4 == 2) {  // a double trade adds 2 p_i
            step(i);
            step(i);
        }
    }
    for (std::size_t i = 0; i < last; ++i)
        if (((w.fibers[i].q % 4) + 4) % 4 != 0)
            throw SelfCheckError("normalization left a q not divisible by 4");
    if (parity(w.fibers[last].q) != 0)
        throw SelfCheckError("normalization left an odd final q");
    return out;
}

/** Same parity obtained by explicit parameter trading: normalize, then read
 *  off (q_n / 2) mod 2 from the final data set. */
inline int xi_parity_normalized(const SeifertData& d) {
    const SeifertData w = normalize_trace(d).back();
    return parity(w.fibers.back().q / 2);
}

/** Decide essentiality and the invariant value from the data alone:
 *  essential manifolds give z = 0; otherwise z = 2^(m-1), which for m = 0
 *  means 1/2. */
inline Verdict classify(const SeifertData& d) {
    Verdict v;
    v.in_class_a = in_class_a(d);
    v.b_eligible = b_eligible(d);
    if (v.b_eligible) {
        int xi = xi_parity_direct(d);
        int xi_n = xi_parity_normalized(d);
        if (xi != xi_n)
            throw SelfCheckError("xi parity: direct formula and trading normalization disagree");
        v.xi_parity = xi;
        v.in_class_b = (xi == 1);
    }
    v.essential = v.in_class_a || v.in_class_b;
    v.m = h1(d).mod2_dim;
    if (v.essential) {
        v.z = DWValue::zero();
    } else {
        v.z = DWValue::pow2((int)v.m - 1);
    }
    return v;
}

}  // namespace dw
