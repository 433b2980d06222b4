#pragma once

#include <cstdint>
#include <string>

#include "dw/errors.hpp"

namespace dw {

/** Exact dyadic value of an invariant: numerator / denominator with
 *  denominator 1 or 2. The only values that actually occur are 0, +-1/2 and
 *  +-2^(m-1); the sign is negative only for non-orientable inputs fed to the
 *  general state-sum formula. */
struct DWValue {
    std::int64_t numerator = 0;
    std::int32_t denominator = 1;

    static DWValue zero() { return {0, 1}; }
    static DWValue half() { return {1, 2}; }

    /** 2^e for e >= 0, or 1/2 for e == -1. */
    static DWValue pow2(int e) {
        if (e == -1) return half();
        if (e < -1 || e > 62) throw BudgetError("dyadic exponent out of range: " + std::to_string(e));
        return {std::int64_t(1) << e, 1};
    }

    DWValue negated() const { return {-numerator, denominator}; }

    bool operator==(const DWValue& o) const {
        return numerator * std::int64_t(o.denominator) == o.numerator * std::int64_t(denominator);
    }
    bool operator!=(const DWValue& o) const { return !(*this == o); }

    std::string str() const {
        if (denominator == 1) return std::to_string(numerator);
        return std::to_string(numerator) + "/" + std::to_string(denominator);
    }
};

}  // namespace dw
