#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "dw/intmat.hpp"

using dw::IntMat;

namespace {

IntMat from_rows(const std::vector<std::vector<long long>>& rows) {
    IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.at(r, c) = rows[r][c];
    return m;
}

// reference determinant by permutation expansion (k <= 4 in these tests)
long long det_reference(const IntMat& m, std::vector<std::size_t> rows,
                        std::vector<std::size_t> cols) {
    std::size_t k = rows.size();
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    long long acc = 0;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        long long term = sign;
        for (std::size_t i = 0; i < k; ++i) term *= m.at(rows[i], cols[perm[i]]);
        acc += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// reference rank: largest k with a nonzero k x k minor
std::size_t rank_reference(const IntMat& m) {
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t k = n; k >= 1; --k) {
        std::vector<char> rsel(m.rows(), 0), csel(m.cols(), 0);
        std::fill(rsel.begin(), rsel.begin() + k, 1);
        std::sort(rsel.begin(), rsel.end());
        do {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (rsel[i]) rows.push_back(i);
            std::fill(csel.begin(), csel.end(), 0);
            std::fill(csel.begin(), csel.begin() + k, 1);
            std::sort(csel.begin(), csel.end());
            do {
                std::vector<std::size_t> cols;
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (csel[j]) cols.push_back(j);
                if (det_reference(m, rows, cols) != 0) return k;
            } while (std::next_permutation(csel.begin(), csel.end()));
        } while (std::next_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

}  // namespace

TEST_CASE("smith diagonal of simple matrices") {
    REQUIRE(dw::smith_diagonal(from_rows({{1, 0}, {0, 1}})) ==
            std::vector<long long>{1, 1});
    REQUIRE(dw::smith_diagonal(IntMat(2, 3)) == std::vector<long long>{0, 0});
    // coprime diagonal merges: diag(2,3) ~ diag(1,6)
    REQUIRE(dw::smith_diagonal(from_rows({{2, 0}, {0, 3}})) ==
            std::vector<long long>{1, 6});
    // diag(4,2) reorders to the divisibility chain (2,4)
    REQUIRE(dw::smith_diagonal(from_rows({{4, 0}, {0, 2}})) ==
            std::vector<long long>{2, 4});
}

TEST_CASE("invariant factors from gcd structure") {
    // entries gcd 2, |det| 8: factors (2, 4)
    REQUIRE(dw::invariant_factors(from_rows({{2, 4}, {6, 8}})) ==
            std::vector<long long>{2, 4});
    REQUIRE(dw::invariant_factors(from_rows({{1, 0}, {0, 1}})).empty());
    REQUIRE(dw::int_rank(from_rows({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("diagonal entries form a divisibility chain") {
    std::mt19937 rng(314159);
    std::uniform_int_distribution<long long> entry(-6, 6);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m.at(i, j) = entry(rng);
        auto d = dw::smith_diagonal(m);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i] == 0) REQUIRE(d[i + 1] == 0);
            else REQUIRE(d[i + 1] % d[i] == 0);
        }
        std::size_t nonzero = 0;
        for (long long v : d)
            if (v != 0) ++nonzero;
        REQUIRE(nonzero == rank_reference(m));
    }
}

TEST_CASE("product of diagonal equals |det| for nonsingular square matrices") {
    std::mt19937 rng(2718);
    std::uniform_int_distribution<long long> entry(-5, 5);
    int done = 0;
    while (done < 40) {
        IntMat m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m.at(i, j) = entry(rng);
        long long det = det_reference(m, {0, 1, 2}, {0, 1, 2});
        if (det == 0) continue;
        auto d = dw::smith_diagonal(m);
        REQUIRE(d[0] * d[1] * d[2] == std::llabs(det));
        ++done;
    }
}

TEST_CASE("overflow in exact arithmetic is reported, not wrapped") {
    IntMat m(2, 2);
    m.at(0, 0) = (1LL << 62);
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = (1LL << 62);
    REQUIRE_THROWS_AS(dw::smith_diagonal(m), dw::BudgetError);
    REQUIRE(dw::checked_add(1, 2) == 3);
    REQUIRE_THROWS_AS(dw::checked_mul(1LL << 40, 1LL << 40), dw::BudgetError);
}
