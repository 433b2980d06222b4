#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "dw/errors.hpp"
#include "dw/product.hpp"
#include "dw/seifert.hpp"
#include "dw/surface.hpp"
#include "dw/triangulation.hpp"

namespace dw {

inline constexpr std::size_t kDefaultMaxTets = 20000;

/** Curve class on a torus boundary, written in a fixed ordered basis. */
struct Vec2 {
    long long x = 0, y = 0;
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
};

inline long long det2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/** One of the two free facets of a torus boundary, with the curve class of
 *  each directed edge of the facet. Slopes are stored for the low-to-high
 *  vertex pair; the reverse direction negates. */
struct CapSide {
    std::size_t tet = 0;
    int face = 0;
    std::array<Vec2, 6> by_edge{};

    Vec2 slope(int a, int b) const {
        Vec2 s = by_edge[(std::size_t)edge_index(a, b)];
        return a < b ? s : -s;
    }
    void set_slope(int a, int b, const Vec2& s) {
        by_edge[(std::size_t)edge_index(a, b)] = a < b ? s : -s;
    }
    std::array<int, 3> vertices() const {
        std::array<int, 3> v{};
        int n = 0;
        for (int i = 0; i < 4; ++i)
            if (i != face) v[n++] = i;
        return v;
    }
};

/** Two-facet boundary torus ready for layering and capping. */
struct CapState {
    CapSide a, b;
};

namespace detail {

inline void check_budget(const PseudoTriangulation& tri, std::size_t max_tets) {
    if (tri.size() >= max_tets) throw BudgetError("tetrahedron budget exceeded");
}

/** Directed vertex pair of the facet carrying the requested curve class. */
inline bool find_slot(const CapSide& side, const Vec2& s, int& u, int& v) {
    std::array<int, 3> vs = side.vertices();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            if (side.slope(vs[i], vs[j]) == s) {
                u = vs[i];
                v = vs[j];
                return true;
            }
        }
    return false;
}

}  // namespace detail

/** Layer a fresh tetrahedron across the boundary edge with curve class s.
 *  The new tetrahedron's (0,1) edge lands on that edge from both sides; its
 *  faces 3 = {0,1,2} and 2 = {0,1,3} attach to the two old facets, and its
 *  faces 1, 0 become the new boundary. The class s disappears from the
 *  boundary and the new (2,3) edge takes its place. */
inline CapState layer(PseudoTriangulation& tri, const CapState& st, const Vec2& s,
                      std::size_t max_tets) {
    int u1, v1, u2, v2;
    if (!detail::find_slot(st.a, s, u1, v1) || !detail::find_slot(st.b, s, u2, v2))
        throw SelfCheckError("layering slope is not on the boundary");
    auto third = [](const CapSide& side, int u, int v) {
        for (int i = 0; i < 4; ++i)
            if (i != side.face && i != u && i != v) return i;
        throw SelfCheckError("degenerate facet");
    };
    int w1 = third(st.a, u1, v1);
    int w2 = third(st.b, u2, v2);

    detail::check_budget(tri, max_tets);
    std::size_t D = tri.add_tet();
    {
        std::array<int, 4> img{};
        img[0] = u1, img[1] = v1, img[2] = w1, img[3] = st.a.face;
        tri.glue(D, 3, st.a.tet, Perm4::of(img[0], img[1], img[2], img[3]));
    }
    {
        std::array<int, 4> img{};
        img[0] = u2, img[1] = v2, img[3] = w2, img[2] = st.b.face;
        tri.glue(D, 2, st.b.tet, Perm4::of(img[0], img[1], img[2], img[3]));
    }

    CapState out;
    out.a.tet = D;
    out.a.face = 1;
    out.a.set_slope(0, 2, st.a.slope(u1, w1));
    out.a.set_slope(0, 3, st.b.slope(u2, w2));
    out.a.set_slope(2, 3, st.b.slope(u2, w2) - st.a.slope(u1, w1));
    out.b.tet = D;
    out.b.face = 0;
    out.b.set_slope(1, 2, st.a.slope(v1, w1));
    out.b.set_slope(1, 3, st.b.slope(v2, w2));
    out.b.set_slope(2, 3, st.b.slope(v2, w2) - st.a.slope(v1, w1));
    if (!(out.a.slope(2, 3) == out.b.slope(2, 3)))
        throw SelfCheckError("layered facets disagree on the new edge's class");
    return out;
}

/** Close the two-facet boundary book: both facets must sit on one
 *  tetrahedron; they fold onto each other across their common (hinge) edge.
 *  Returns the curve class that bounds a disc after the fold. */
inline Vec2 fold(PseudoTriangulation& tri, const CapState& st) {
    if (st.a.tet != st.b.tet || st.a.face == st.b.face)
        throw SelfCheckError("fold needs two distinct facets of one tetrahedron");
    int fa = st.a.face, fb = st.b.face;
    int hinge[2], n = 0;
    for (int i = 0; i < 4; ++i)
        if (i != fa && i != fb) hinge[n++] = i;
    Vec2 m0 = st.a.slope(fb, hinge[0]) - st.b.slope(fa, hinge[0]);
    Vec2 m1 = st.a.slope(fb, hinge[1]) - st.b.slope(fa, hinge[1]);
    if (!(m0 == m1)) throw SelfCheckError("fold meridian is not well defined");
    std::array<int, 4> img{0, 1, 2, 3};
    img[(std::size_t)fa] = fb;
    img[(std::size_t)fb] = fa;
    tri.glue(st.a.tet, fb, st.a.tet, Perm4::of(img[0], img[1], img[2], img[3]));
    return m0;
}

/** Fill the torus boundary with a solid torus whose meridian lands on the
 *  primitive curve v: walk by layering across the boundary edge whose class
 *  has the largest intersection number with v until v itself appears, then
 *  layer across v and fold. */
inline void cap_boundary(PseudoTriangulation& tri, CapState st, const Vec2& v,
                         std::size_t max_tets) {
    if (std::gcd(std::llabs(v.x), std::llabs(v.y)) != 1)
        throw ValidationError("cap curve must be primitive");
    long long prev_max = -1;
    while (true) {
        std::array<int, 3> vs = st.a.vertices();
        Vec2 sl[3] = {st.a.slope(vs[0], vs[1]), st.a.slope(vs[0], vs[2]),
                      st.a.slope(vs[1], vs[2])};
        long long d[3];
        bool hit = false;
        for (int i = 0; i < 3; ++i) {
            d[i] = std::llabs(det2(sl[i], v));
            if (d[i] == 0) hit = true;
        }
        if (hit) break;
        int pick = 0;
        for (int i = 1; i < 3; ++i)
            if (d[i] > d[pick]) pick = i;
        if (prev_max >= 0 && d[pick] >= prev_max)
            throw SelfCheckError("layering walk failed to make progress");
        prev_max = d[pick];
        st = layer(tri, st, sl[pick], max_tets);
    }
    st = layer(tri, st, v, max_tets);
    Vec2 m = fold(tri, st);
    if (!(m == v || m == -v)) throw SelfCheckError("cap killed the wrong curve");
}

/** One-tetrahedron solid torus: face 3 wraps onto face 2 by the odd
 *  permutation 1302. The boundary is the torus made of faces 0 and 1; edge
 *  classes are written in the (meridian, longitude) basis, the meridian
 *  bounding a disc in the solid torus and the longitude generating its
 *  first homology. */
struct SolidTorus {
    PseudoTriangulation tri;
    CapState boundary;
};

inline SolidTorus lst_base() {
    SolidTorus st;
    st.tri.add_tet();
    st.tri.glue(0, 3, 0, Perm4::of(1, 3, 0, 2));
    st.boundary.a.tet = 0;
    st.boundary.a.face = 0;
    st.boundary.a.set_slope(1, 2, {1, -2});
    st.boundary.a.set_slope(1, 3, {0, 1});
    st.boundary.a.set_slope(2, 3, {-1, 3});
    st.boundary.b.tet = 0;
    st.boundary.b.face = 1;
    st.boundary.b.set_slope(0, 2, {0, -1});
    st.boundary.b.set_slope(0, 3, {-1, 2});
    st.boundary.b.set_slope(2, 3, {-1, 3});
    return st;
}

/** Lens space of order p: solid torus filled so that q * meridian +
 *  p * longitude bounds a disc. Requires p >= 1 and gcd(p, q) = 1. */
inline PseudoTriangulation build_lens(long long p, long long q,
                                      std::size_t max_tets = kDefaultMaxTets) {
    if (p < 1) throw ValidationError("lens space needs p >= 1");
    if (std::gcd(std::llabs(p), std::llabs(q)) != 1)
        throw ValidationError("lens space needs gcd(p, q) = 1");
    SolidTorus st = lst_base();
    cap_boundary(st.tri, st.boundary, Vec2{q, p}, max_tets);
    return st.tri;
}

namespace detail {

/** Fold the hole torus over surface side (hole_tri, s) twice, reducing its
 *  six boundary triangles to two, and return the remaining facets with their
 *  slope tables in the (section, fiber) basis: the surface loop is (1,0)
 *  and the circle fiber (0,1). */
inline CapState close_hole_book(ProductComplex& pc, std::size_t hole_tri, int s) {
    auto book = [&](int k_upper, int k_lower) {
        const auto& U = WALL_UPPER_ROLES[(std::size_t)s];
        const auto& L = WALL_LOWER_ROLES[(std::size_t)s];
        std::array<int, 4> img{};
        img[(std::size_t)U[0]] = L[2];  // apex onto apex
        img[(std::size_t)U[1]] = L[0];  // hinge, pointwise
        img[(std::size_t)U[2]] = L[1];
        img[(std::size_t)U[3]] = L[3];
        pc.tri.glue(pc.tet(hole_tri, k_upper, WALL_UPPER[(std::size_t)s][0]),
                    WALL_UPPER[(std::size_t)s][1],
                    pc.tet(hole_tri, k_lower, WALL_LOWER[(std::size_t)s][0]),
                    Perm4::of(img[0], img[1], img[2], img[3]));
    };
    book(2, 0);  // close across the loop at circle vertex 0
    book(0, 1);  // close across the loop at circle vertex 1

    const Vec2 mu{1, 0}, diag_s{1, 1}, diag_t{2, 1};
    const auto& U = WALL_UPPER_ROLES[(std::size_t)s];
    const auto& L = WALL_LOWER_ROLES[(std::size_t)s];
    CapState out;
    out.a.tet = pc.tet(hole_tri, 1, WALL_UPPER[(std::size_t)s][0]);
    out.a.face = WALL_UPPER[(std::size_t)s][1];
    out.a.set_slope(U[0], U[1], diag_s);
    out.a.set_slope(U[1], U[2], mu);
    out.a.set_slope(U[0], U[2], diag_t);
    out.b.tet = pc.tet(hole_tri, 2, WALL_LOWER[(std::size_t)s][0]);
    out.b.face = WALL_LOWER[(std::size_t)s][1];
    out.b.set_slope(L[0], L[1], mu);
    out.b.set_slope(L[1], L[2], diag_s);
    out.b.set_slope(L[0], L[2], diag_t);
    return out;
}

}  // namespace detail

/** Closed orientable surface of the given genus crossed with a circle. */
inline PseudoTriangulation build_product(std::size_t genus,
                                         std::size_t max_tets = kDefaultMaxTets) {
    Surface surf = closed_surface(genus);
    if (9 * surf.size() > max_tets) throw BudgetError("tetrahedron budget exceeded");
    ProductComplex pc = product_with_circle(surf);
    ValidationReport rep = validate(pc.tri);
    if (!rep.closed || !rep.connected || !rep.orientable || !rep.manifold_certificate())
        throw SelfCheckError("constructed triangulation failed validation");
    if (cellular_betti1_mod2(pc.tri) != 2 * genus + 1)
        throw SelfCheckError("product has unexpected first Betti number");
    return pc.tri;
}

/** Closed manifold fibered in circles over the sphere with the given
 *  exceptional fibers: a holed-sphere block crossed with the circle, each
 *  hole torus folded down to two triangles and filled along p * section +
 *  q * fiber. The fiber list is assembled in sorted order, so inputs
 *  differing by a permutation yield byte-identical triangulations. */
inline PseudoTriangulation build_seifert(const SeifertData& data,
                                         std::size_t max_tets = kDefaultMaxTets) {
    SeifertData d = canonicalize(data);
    if (d.genus != 0)
        throw ValidationError("triangulation construction supports base genus 0 only");
    std::vector<Fiber> fibers = d.fibers;
    std::sort(fibers.begin(), fibers.end(), [](const Fiber& a, const Fiber& b) {
        return a.p != b.p ? a.p < b.p : a.q < b.q;
    });
    std::size_t n = fibers.size();
    HoledSurface hs = n_holed_sphere(n);
    if (9 * hs.surface.size() > max_tets) throw BudgetError("tetrahedron budget exceeded");
    ProductComplex pc = product_with_circle(hs.surface);
    for (std::size_t i = 0; i < n; ++i) {
        auto [t, s] = hs.holes[i];
        CapState st = detail::close_hole_book(pc, t, s);
        cap_boundary(pc.tri, st, Vec2{fibers[i].p, fibers[i].q}, max_tets);
    }
    ValidationReport rep = validate(pc.tri);
    if (!rep.closed || !rep.connected || !rep.orientable || !rep.manifold_certificate())
        throw SelfCheckError("constructed triangulation failed validation");
    std::size_t want = (std::size_t)h1(d).mod2_dim;
    if (cellular_betti1_mod2(pc.tri) != want)
        throw SelfCheckError("constructed triangulation has unexpected homology rank");
    return pc.tri;
}

}  // namespace dw
