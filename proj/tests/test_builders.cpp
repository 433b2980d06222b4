#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dw/builders.hpp"
#include "dw/classifier.hpp"
#include "dw/cohomology.hpp"
#include "dw/intmat.hpp"
#include "dw/product.hpp"
#include "dw/seifert.hpp"
#include "dw/surface.hpp"
#include "dw/triangulation.hpp"

namespace testutil {

/** Union-find that tracks a sign (+1/-1) of each element relative to its
 *  class representative, for identifying directed edges up to reversal. */
class SignedUnionFind {
public:
    explicit SignedUnionFind(std::size_t n) : parent_(n), sign_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        if (parent_[x] == x) return x;
        std::size_t p = parent_[x];
        std::size_t root = find(p);
        sign_[x] *= sign_[p];
        parent_[x] = root;
        return root;
    }
    int sign_to_root(std::size_t x) {
        find(x);
        return sign_[x];
    }
    /** Impose a = rel * b; returns false on a sign conflict. */
    bool unite(std::size_t a, std::size_t b, int rel) {
        std::size_t ra = find(a), rb = find(b);
        int sa = sign_[a], sb = sign_[b];
        if (ra == rb) return sa == rel * sb;
        parent_[ra] = rb;
        sign_[ra] = sa * rel * sb;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> sign_;
};

struct IntegralH1 {
    long long free_rank = 0;
    std::vector<long long> torsion;  // invariant factors > 1
};

/** First integral homology of the quotient cell complex of a gluing table,
 *  computed with signed incidence matrices and Smith normal form. Fails if
 *  some edge is identified with itself reversed. */
inline IntegralH1 integral_h1(const dw::PseudoTriangulation& tri) {
    std::size_t T = tri.size();
    dw::UnionFind vuf(4 * T);
    SignedUnionFind euf(6 * T);
    for (std::size_t t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            const dw::Gluing& g = tri.gluing(t, f);
            if (g.is_boundary()) continue;
            std::size_t t2 = (std::size_t)g.tet;
            for (int v = 0; v < 4; ++v)
                if (v != f) vuf.unite(4 * t + (std::size_t)v, 4 * t2 + (std::size_t)g.perm(v));
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    if (a == f || b == f) continue;
                    int ia = g.perm(a), ib = g.perm(b);
                    int rel = ia < ib ? 1 : -1;
                    std::size_t src = 6 * t + (std::size_t)dw::edge_index(a, b);
                    std::size_t dst = 6 * t2 + (std::size_t)dw::edge_index(ia, ib);
                    if (!euf.unite(src, dst, rel))
                        throw std::runtime_error("edge identified with itself reversed");
                }
        }
    std::vector<int> vlabel;
    std::size_t V = vuf.label(vlabel);
    // label edge classes by representative order
    std::vector<long long> elabel(6 * T, -1);
    std::size_t E = 0;
    for (std::size_t i = 0; i < 6 * T; ++i) {
        std::size_t r = euf.find(i);
        if (elabel[r] < 0) elabel[r] = (long long)E++;
    }
    auto edge_class = [&](std::size_t slot) { return (std::size_t)elabel[euf.find(slot)]; };

    // Each edge class is oriented along its first slot (in slot order); any
    // slot's direction relative to that is the product of the two root signs.
    std::vector<int> rep_sign(E, 0);
    dw::IntMat d1(V, E);
    for (std::size_t t = 0; t < T; ++t)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                std::size_t slot = 6 * t + (std::size_t)dw::edge_index(a, b);
                std::size_t c = edge_class(slot);
                if (rep_sign[c] != 0) continue;
                rep_sign[c] = euf.sign_to_root(slot);
                d1.at((std::size_t)vlabel[4 * t + (std::size_t)b], c) += 1;
                d1.at((std::size_t)vlabel[4 * t + (std::size_t)a], c) -= 1;
            }

    // one column of d2 per face class (faces are never self-identified)
    std::vector<std::pair<std::size_t, int>> face_reps;
    for (std::size_t t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            const dw::Gluing& g = tri.gluing(t, f);
            if (!g.is_boundary()) {
                std::size_t t2 = (std::size_t)g.tet;
                int f2 = g.perm(f);
                if (t2 < t || (t2 == t && f2 < f)) continue;
            }
            face_reps.push_back({t, f});
        }
    dw::IntMat d2(E, face_reps.size());
    for (std::size_t c = 0; c < face_reps.size(); ++c) {
        auto [t, f] = face_reps[c];
        int vs[3], n = 0;
        for (int v = 0; v < 4; ++v)
            if (v != f) vs[n++] = v;
        const int pat[3][3] = {{vs[1], vs[2], +1}, {vs[0], vs[2], -1}, {vs[0], vs[1], +1}};
        for (const auto& e : pat) {
            std::size_t slot = 6 * t + (std::size_t)dw::edge_index(e[0], e[1]);
            std::size_t cls = edge_class(slot);
            d2.at(cls, c) += e[2] * euf.sign_to_root(slot) * rep_sign[cls];
        }
    }

    IntegralH1 out;
    std::size_t rank_d1 = dw::int_rank(d1);
    std::size_t rank_d2 = dw::int_rank(d2);
    out.free_rank = (long long)E - (long long)rank_d1 - (long long)rank_d2;
    out.torsion = dw::invariant_factors(d2);
    return out;
}

}  // namespace testutil

namespace {

dw::Surface projective_plane() {
    // square with opposite boundary sides identified in the same direction,
    // triangulated by a cone from an interior vertex
    dw::Surface s;
    for (int i = 0; i < 4; ++i) s.add_triangle();
    for (int i = 0; i < 4; ++i)
        s.glue((std::size_t)i, dw::side_index(0, 2), (std::size_t)((i + 1) % 4),
               dw::side_index(0, 1));
    s.glue(0, dw::side_index(1, 2), 2, dw::side_index(1, 2));
    s.glue(1, dw::side_index(1, 2), 3, dw::side_index(1, 2));
    return s;
}

}  // namespace

TEST_CASE("holed spheres have the right cells and closed boundary loops") {
    for (std::size_t n = 1; n <= 6; ++n) {
        dw::HoledSurface hs = dw::n_holed_sphere(n);
        REQUIRE(hs.holes.size() == n);
        dw::Surface::Cells c = hs.surface.cells();
        CHECK(c.euler() == 2 - (long long)n);
        CHECK(c.faces == (n == 1 ? 1 : 3 * n - 4));
        std::size_t boundary_sides = 0;
        for (std::size_t t = 0; t < hs.surface.size(); ++t)
            for (int s = 0; s < 3; ++s)
                if (hs.surface.is_boundary(t, s)) ++boundary_sides;
        CHECK(boundary_sides == n);
        for (auto [t, s] : hs.holes) {
            REQUIRE(hs.surface.is_boundary(t, s));
            CHECK(c.vertex_class[t][dw::SIDE_V[s][0]] == c.vertex_class[t][dw::SIDE_V[s][1]]);
        }
    }
}

TEST_CASE("closed surfaces have Euler characteristic 2 - 2g and no boundary") {
    for (std::size_t g = 0; g <= 4; ++g) {
        dw::Surface surf = dw::closed_surface(g);
        dw::Surface::Cells c = surf.cells();
        CHECK(c.euler() == 2 - 2 * (long long)g);
        CHECK(c.faces == (g == 0 ? 4 : 4 * g - 2));
        for (std::size_t t = 0; t < surf.size(); ++t)
            for (int s = 0; s < 3; ++s) CHECK_FALSE(surf.is_boundary(t, s));
    }
}

TEST_CASE("surface gluing rejects bad input") {
    dw::Surface s;
    s.add_triangle();
    s.add_triangle();
    CHECK_THROWS_AS(s.glue(0, 0, 0, 0), dw::ValidationError);
    CHECK_THROWS_AS(s.glue(0, 0, 2, 1), dw::ValidationError);
    CHECK_THROWS_AS(s.glue(0, 3, 1, 0), dw::ValidationError);
    s.glue(0, 0, 1, 1);
    CHECK_THROWS_AS(s.glue(0, 0, 1, 2), dw::ValidationError);
}

TEST_CASE("disc cross circle is a solid torus") {
    dw::HoledSurface hs = dw::n_holed_sphere(1);
    dw::ProductComplex pc = dw::product_with_circle(hs.surface);
    REQUIRE(pc.tri.size() == 9);
    dw::ValidationReport rep = dw::validate(pc.tri);
    CHECK_FALSE(rep.closed);
    CHECK(rep.connected);
    CHECK(rep.orientable);
    CHECK(rep.edges_valid);
    CHECK(rep.euler_characteristic == 0);
    std::size_t boundary_faces = 0;
    for (std::size_t t = 0; t < pc.tri.size(); ++t)
        for (int f = 0; f < 4; ++f)
            if (pc.tri.is_boundary(t, f)) ++boundary_faces;
    CHECK(boundary_faces == 6);
    CHECK(dw::cellular_betti1_mod2(pc.tri) == 1);
    testutil::IntegralH1 h = testutil::integral_h1(pc.tri);
    CHECK(h.free_rank == 1);
    CHECK(h.torsion.empty());
}

TEST_CASE("torus cross circle has first homology Z^3") {
    dw::PseudoTriangulation tri = dw::build_product(1);
    REQUIRE(tri.size() == 18);
    testutil::IntegralH1 h = testutil::integral_h1(tri);
    CHECK(h.free_rank == 3);
    CHECK(h.torsion.empty());
}

TEST_CASE("sphere cross circle from the product family") {
    dw::PseudoTriangulation tri = dw::build_product(0);
    REQUIRE(tri.size() == 36);
    testutil::IntegralH1 h = testutil::integral_h1(tri);
    CHECK(h.free_rank == 1);
    CHECK(h.torsion.empty());
}

TEST_CASE("higher genus products have first homology Z^(2g+1)") {
    for (std::size_t g = 2; g <= 3; ++g) {
        dw::PseudoTriangulation tri = dw::build_product(g);
        REQUIRE(tri.size() == 9 * (4 * g - 2));
        testutil::IntegralH1 h = testutil::integral_h1(tri);
        CHECK(h.free_rank == 2 * (long long)g + 1);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("one-tetrahedron solid torus baseline") {
    dw::SolidTorus st = dw::lst_base();
    dw::ValidationReport rep = dw::validate(st.tri);
    CHECK_FALSE(rep.closed);
    CHECK(rep.orientable);
    CHECK(rep.edges_valid);
    CHECK(dw::cellular_betti1_mod2(st.tri) == 1);
    testutil::IntegralH1 h = testutil::integral_h1(st.tri);
    CHECK(h.free_rank == 1);
    CHECK(h.torsion.empty());
}

TEST_CASE("filling the solid torus along the longitude gives a 2-tet sphere") {
    dw::PseudoTriangulation tri = dw::build_lens(1, 0);
    CHECK(tri.size() == 2);
    dw::ValidationReport rep = dw::validate(tri);
    CHECK(rep.closed);
    CHECK(rep.manifold_certificate());
    testutil::IntegralH1 h = testutil::integral_h1(tri);
    CHECK(h.free_rank == 0);
    CHECK(h.torsion.empty());
    dw::CohomologyProfile pr = dw::profile_triangulation(tri);
    CHECK(pr.m == 0);
    CHECK(pr.z_definition == dw::DWValue::half());
}

TEST_CASE("lens spaces of every order up to 16 have cyclic first homology") {
    for (long long p = 1; p <= 16; ++p)
        for (long long q = 0; q < std::max<long long>(p, 1); ++q) {
            if (std::gcd(p, q) != 1) continue;
            if (p == 1 && q != 0) continue;
            CAPTURE(p, q);
            dw::PseudoTriangulation tri = dw::build_lens(p, q);
            dw::ValidationReport rep = dw::validate(tri);
            REQUIRE(rep.closed);
            REQUIRE(rep.connected);
            REQUIRE(rep.orientable);
            REQUIRE(rep.manifold_certificate());
            testutil::IntegralH1 h = testutil::integral_h1(tri);
            CHECK(h.free_rank == 0);
            if (p == 1) {
                CHECK(h.torsion.empty());
            } else {
                REQUIRE(h.torsion.size() == 1);
                CHECK(h.torsion[0] == p);
            }
        }
}

TEST_CASE("real projective space: the cubed generator detects the point class") {
    dw::PseudoTriangulation tri = dw::build_lens(2, 1);
    dw::CohomologyProfile pr = dw::profile_triangulation(tri);
    REQUIRE(pr.m == 1);
    REQUIRE(pr.q_table.size() == 2);
    CHECK(pr.q_table[0] == 0);
    CHECK(pr.q_table[1] == 1);
    CHECK(pr.dim_a == 1);
    CHECK(pr.k == 0);
    REQUIRE(pr.essential_witness.has_value());
    CHECK(*pr.essential_witness == 1);
    CHECK(pr.z_definition == dw::DWValue::zero());
    CHECK(pr.z_theorem == dw::DWValue::zero());
}

TEST_CASE("lens space invariants depend on the order modulo 4") {
    struct Row {
        long long p, q;
        dw::DWValue z;
    };
    const Row rows[] = {
        {1, 0, dw::DWValue::half()}, {2, 1, dw::DWValue::zero()},
        {3, 1, dw::DWValue::half()}, {4, 1, dw::DWValue::pow2(0)},
        {4, 3, dw::DWValue::pow2(0)}, {5, 2, dw::DWValue::half()},
        {6, 1, dw::DWValue::zero()}, {7, 3, dw::DWValue::half()},
        {8, 3, dw::DWValue::pow2(0)}, {10, 3, dw::DWValue::zero()},
        {12, 5, dw::DWValue::pow2(0)}, {16, 7, dw::DWValue::pow2(0)},
    };
    for (const Row& r : rows) {
        CAPTURE(r.p, r.q);
        dw::CohomologyProfile pr = dw::profile_triangulation(dw::build_lens(r.p, r.q));
        CHECK(pr.z_definition == r.z);
        CHECK(pr.z_theorem == r.z);
    }
}

TEST_CASE("lens builder input checking") {
    CHECK_THROWS_AS(dw::build_lens(0, 1), dw::ValidationError);
    CHECK_THROWS_AS(dw::build_lens(-3, 1), dw::ValidationError);
    CHECK_THROWS_AS(dw::build_lens(4, 2), dw::ValidationError);
    CHECK_THROWS_AS(dw::build_lens(16, 7, 3), dw::BudgetError);
}

TEST_CASE("fibered construction matches the algebraic first homology") {
    struct Case {
        std::vector<dw::Fiber> fibers;
        long long free_rank;
        std::vector<long long> torsion;
    };
    const Case cases[] = {
        {{{1, 0}}, 1, {}},
        {{{1, 1}}, 0, {}},
        {{{2, 1}}, 0, {}},
        {{{1, 4}}, 0, {4}},
        {{{3, 2}}, 0, {2}},
        {{{5, 3}}, 0, {3}},
        {{{2, 1}, {2, 1}}, 0, {4}},
        {{{2, 1}, {2, -1}}, 1, {}},
        {{{2, 1}, {3, 1}}, 0, {5}},
        {{{3, 1}, {3, 1}, {3, 1}}, 0, {3, 9}},
        {{{2, 1}, {2, 1}, {2, 1}, {2, 1}}, 0, {2, 2, 8}},
    };
    for (const Case& c : cases) {
        CAPTURE(dw::format_fibers(c.fibers));
        dw::SeifertData d{0, c.fibers};
        dw::PseudoTriangulation tri = dw::build_seifert(d);
        testutil::IntegralH1 h = testutil::integral_h1(tri);
        CHECK(h.free_rank == c.free_rank);
        CHECK(h.torsion == c.torsion);
        // and the library's own integral answer agrees
        dw::H1Summary alg = dw::h1(dw::canonicalize(d));
        CHECK(alg.free_rank == c.free_rank);
        CHECK(alg.torsion_divisors == c.torsion);
    }
}

TEST_CASE("state sum agrees with the arithmetic rule across small fibered spaces") {
    const std::vector<std::vector<dw::Fiber>> inputs = {
        {{1, 0}},
        {{1, 1}},
        {{1, 2}},
        {{2, 1}},
        {{3, 1}},
        {{3, 2}},
        {{4, 1}},
        {{2, 1}, {2, 1}},
        {{2, 1}, {2, -1}},
        {{2, 1}, {3, 1}},
        {{2, 1}, {4, 1}},
        {{3, 1}, {3, 2}},
        {{3, 1}, {5, 2}},
        {{2, 1}, {2, 1}, {2, 1}},
        {{3, 1}, {3, 1}, {3, 1}},
        {{2, 1}, {2, 1}, {3, 1}},
    };
    for (const auto& fibers : inputs) {
        CAPTURE(dw::format_fibers(fibers));
        dw::SeifertData d{0, fibers};
        dw::Verdict v = dw::classify(d);
        dw::PseudoTriangulation tri = dw::build_seifert(d);
        dw::CohomologyProfile pr = dw::profile_triangulation(tri);
        CHECK(pr.m == (std::size_t)v.m);
        CHECK(pr.z_definition == v.z);
        CHECK(pr.z_theorem == v.z);
    }
}

TEST_CASE("fiber order does not change the built triangulation") {
    dw::PseudoTriangulation a =
        dw::build_seifert(dw::SeifertData{0, {{3, 1}, {2, 1}, {5, 2}}});
    dw::PseudoTriangulation b =
        dw::build_seifert(dw::SeifertData{0, {{5, 2}, {2, 1}, {3, 1}}});
    std::ostringstream sa, sb;
    dw::write_tri(a, sa);
    dw::write_tri(b, sb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("fibered builder input checking") {
    CHECK_THROWS_AS(dw::build_seifert(dw::SeifertData{1, {{2, 1}}}), dw::ValidationError);
    CHECK_THROWS_AS(dw::build_seifert(dw::SeifertData{0, {{4, 2}}}), dw::ValidationError);
    CHECK_THROWS_AS(dw::build_seifert(dw::SeifertData{0, {{2, 1}, {3, 1}}}, 12),
                    dw::BudgetError);
}

TEST_CASE("projective plane cross circle: nonorientable control case") {
    dw::Surface rp2 = projective_plane();
    dw::Surface::Cells cells = rp2.cells();
    REQUIRE(cells.euler() == 1);
    dw::ProductComplex pc = dw::product_with_circle(rp2);
    dw::ValidationReport rep = dw::validate(pc.tri);
    REQUIRE(rep.closed);
    REQUIRE(rep.connected);
    CHECK_FALSE(rep.orientable);
    REQUIRE(rep.edges_valid);
    REQUIRE(rep.manifold_certificate());
    testutil::IntegralH1 h = testutil::integral_h1(pc.tri);
    CHECK(h.free_rank == 1);
    CHECK(h.torsion == std::vector<long long>{2});

    dw::DeltaComplex dc = dw::barycentric(pc.tri);
    dw::CochainComplex cc = dw::cochain_complex(dc);
    dw::CohomologyProfile pr = dw::profile(dc, cc, /*orientable=*/false);
    REQUIRE(pr.m == 2);
    // exactly one of the three nonzero classes has nonzero cube
    int ones = 0;
    for (std::uint8_t v : pr.q_table) ones += v;
    CHECK(ones == 1);
    CHECK(pr.q_table[0] == 0);
    CHECK(pr.dim_a == 0);
    CHECK(pr.k == 1);
    REQUIRE(pr.arf_invariant.has_value());
    CHECK(*pr.arf_invariant == 0);
    CHECK_FALSE(pr.essential_witness.has_value());
    CHECK(pr.z_definition == dw::DWValue::pow2(0));
    CHECK(pr.z_theorem == dw::DWValue::pow2(0));
}
