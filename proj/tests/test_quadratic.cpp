#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dw/quadratic.hpp"
#include "oracle_helpers.hpp"

using dw::BitMatrix;
using dw::BitVector;
using dw::QuadraticForm;

namespace {

// q(x) = x_0 x_1 on two coordinates: values (00,10,01,11) -> (0,0,0,1)
const std::vector<int> kHyperbolic{0, 0, 0, 1};
// the other nondegenerate dim-2 form: value 1 on every nonzero vector
const std::vector<int> kAllOnes{0, 1, 1, 1};

std::vector<int> orthogonal_sum(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + a.size() * j] = (a[i] + b[j]) & 1;
    return out;
}

BitMatrix random_invertible(std::mt19937& rng, std::size_t d) {
    std::bernoulli_distribution coin(0.5);
    for (;;) {
        BitMatrix m(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                if (coin(rng)) m.set(r, c);
        if (dw::gf2_rank(m) == d) return m;
    }
}

std::vector<int> change_basis(const std::vector<int>& table, const BitMatrix& p) {
    std::size_t d = p.rows();
    std::vector<int> out(table.size());
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
        BitVector v = testutil::from_mask(mask, d);
        out[mask] = table[testutil::to_mask(p.apply(v))];
    }
    return out;
}

}  // namespace

TEST_CASE("table construction recovers values and polarization") {
    auto q = QuadraticForm::from_table(kHyperbolic);
    REQUIRE(q.dim() == 2);
    for (std::uint64_t mask = 0; mask < 4; ++mask)
        REQUIRE(q.value(testutil::from_mask(mask, 2)) == kHyperbolic[mask]);
    BitVector e0 = testutil::from_mask(1, 2), e1 = testutil::from_mask(2, 2);
    REQUIRE(q.bil(e0, e1) == 1);  // 1 + 0 + 0
    REQUIRE(q.bil(e0, e0) == 0);
}

TEST_CASE("table construction rejects malformed input") {
    REQUIRE_THROWS_AS(QuadraticForm::from_table({0, 1, 0}), dw::ValidationError);
    REQUIRE_THROWS_AS(QuadraticForm::from_table({1, 0, 0, 0}), dw::ValidationError);
    // value 1 only on (1,1,1): not induced by any bilinear polarization
    std::vector<int> bad(8, 0);
    bad[7] = 1;
    REQUIRE_THROWS_AS(QuadraticForm::from_table(bad), dw::ValidationError);
}

TEST_CASE("basis construction matches table construction") {
    std::mt19937 rng(42);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t d = 1 + (std::size_t)(rng() % 6);
        BitVector vals(d);
        BitMatrix bil(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            if (coin(rng)) vals.set(i);
            for (std::size_t j = i + 1; j < d; ++j)
                if (coin(rng)) { bil.set(i, j); bil.set(j, i); }
        }
        auto q = QuadraticForm::from_basis(vals, bil);
        std::vector<int> table(std::size_t(1) << d);
        for (std::uint64_t mask = 0; mask < table.size(); ++mask)
            table[mask] = q.value(testutil::from_mask(mask, d));
        auto q2 = QuadraticForm::from_table(table);  // verifies bilinearity exhaustively
        for (std::uint64_t mask = 0; mask < table.size(); ++mask)
            REQUIRE(q2.value(testutil::from_mask(mask, d)) == table[mask]);
    }
}

TEST_CASE("basis construction rejects non-alternating input") {
    BitMatrix diag(2, 2);
    diag.set(0, 0);
    REQUIRE_THROWS_AS(QuadraticForm::from_basis(BitVector(2), diag), dw::ValidationError);
    BitMatrix asym(2, 2);
    asym.set(0, 1);
    REQUIRE_THROWS_AS(QuadraticForm::from_basis(BitVector(2), asym), dw::ValidationError);
}

TEST_CASE("arf of the standard dim-2 forms") {
    REQUIRE(dw::arf(QuadraticForm::from_table(kHyperbolic)) == 0);
    REQUIRE(dw::arf(QuadraticForm::from_table(kAllOnes)) == 1);
    REQUIRE(testutil::gauss_sum(kHyperbolic) == 2);
    REQUIRE(testutil::gauss_sum(kAllOnes) == -2);
}

TEST_CASE("arf of an orthogonal sum adds") {
    auto sum = orthogonal_sum(kHyperbolic, kAllOnes);
    REQUIRE(testutil::gauss_sum(sum) == -4);  // sign says arf 1
    REQUIRE(dw::arf(QuadraticForm::from_table(sum)) == 1);
    auto sum2 = orthogonal_sum(kAllOnes, kAllOnes);
    REQUIRE(dw::arf(QuadraticForm::from_table(sum2)) == 0);
}

TEST_CASE("arf rejects degenerate or odd-dimensional forms") {
    // zero form on 2 coordinates: polarization identically zero
    REQUIRE_THROWS_AS(dw::arf(QuadraticForm::from_table({0, 0, 0, 0})), dw::ValidationError);
    REQUIRE_THROWS_AS(dw::arf(QuadraticForm::from_table({0, 1})), dw::ValidationError);
}

TEST_CASE("arf matches the sign of the exponential sum on random forms") {
    std::mt19937 rng(20240818);
    std::bernoulli_distribution coin(0.5);
    int accepted = 0;
    while (accepted < 40) {
        std::size_t d = 2 * (1 + rng() % 3);  // 2, 4, 6
        std::vector<int> table(std::size_t(1) << d, 0);
        BitVector vals(d);
        BitMatrix bil(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            if (coin(rng)) vals.set(i);
            for (std::size_t j = i + 1; j < d; ++j)
                if (coin(rng)) { bil.set(i, j); bil.set(j, i); }
        }
        if (dw::gf2_rank(bil) != d) continue;
        auto q = QuadraticForm::from_basis(vals, bil);
        for (std::uint64_t mask = 0; mask < table.size(); ++mask)
            table[mask] = q.value(testutil::from_mask(mask, d));
        long long gauss = testutil::gauss_sum(table);
        int a = dw::arf(q);
        REQUIRE((gauss == 1LL << (d / 2) || gauss == -(1LL << (d / 2))));
        REQUIRE((gauss < 0) == (a == 1));
        ++accepted;
    }
}

TEST_CASE("arf is invariant under change of basis") {
    std::mt19937 rng(5150);
    std::bernoulli_distribution coin(0.5);
    int done = 0;
    while (done < 20) {
        std::size_t d = 2 * (1 + rng() % 3);  // up to 6
        BitVector vals(d);
        BitMatrix bil(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            if (coin(rng)) vals.set(i);
            for (std::size_t j = i + 1; j < d; ++j)
                if (coin(rng)) { bil.set(i, j); bil.set(j, i); }
        }
        if (dw::gf2_rank(bil) != d) continue;
        auto q = QuadraticForm::from_basis(vals, bil);
        std::vector<int> table(std::size_t(1) << d);
        for (std::uint64_t mask = 0; mask < table.size(); ++mask)
            table[mask] = q.value(testutil::from_mask(mask, d));
        BitMatrix p = random_invertible(rng, d);
        auto conjugated = QuadraticForm::from_table(change_basis(table, p));
        REQUIRE(dw::arf(conjugated) == dw::arf(q));
        ++done;
    }
}

TEST_CASE("trivial zero-dimensional form") {
    auto q = QuadraticForm::from_table({0});
    REQUIRE(q.dim() == 0);
    REQUIRE(dw::arf(q) == 0);
}
