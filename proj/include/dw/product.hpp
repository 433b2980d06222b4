#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dw/errors.hpp"
#include "dw/surface.hpp"
#include "dw/triangulation.hpp"

namespace dw {

/** Product of a triangulated surface with a circle carried by three directed
 *  edges c0->c1->c2->c0.
 *
 *  Over each (triangle, circle edge) the prism splits into three staircase
 *  tetrahedra; the tetrahedron of "path" p climbs from the bottom copy of the
 *  triangle after its p-th vertex:
 *      path 0: (u0,bot) (u0,top) (u1,top) (u2,top)
 *      path 1: (u0,bot) (u1,bot) (u1,top) (u2,top)
 *      path 2: (u0,bot) (u1,bot) (u2,bot) (u2,top)
 *  Tetrahedron vertex labels follow these chains in order, so every gluing
 *  below matches vertices by geometric identity.
 *
 *  Facets over an identified pair of surface sides are glued wall to wall
 *  (upper triangle of the vertical quadrilateral to upper, lower to lower);
 *  facets over a boundary side of the surface stay free, so each boundary
 *  loop of the surface contributes a six-triangle torus to the boundary. */
struct ProductComplex {
    PseudoTriangulation tri;
    std::size_t surface_tris = 0;

    /** Tetrahedron id for (triangle, circle edge k, staircase path p). */
    std::size_t tet(std::size_t triangle, int k, int path) const {
        return 9 * triangle + 3 * (std::size_t)k + (std::size_t)path;
    }
};

namespace detail {

/** Wall facets over surface side s of a prism, as (path, face). The wall
 *  quadrilateral over side (i,j) splits along the (i,bot)-(j,top) diagonal;
 *  the upper triangle is (i,bot)(i,top)(j,top), the lower (i,bot)(j,bot)(j,top). */
inline constexpr std::array<std::array<int, 2>, 3> WALL_UPPER{{{0, 3}, {0, 2}, {1, 0}}};
inline constexpr std::array<std::array<int, 2>, 3> WALL_LOWER{{{1, 3}, {2, 1}, {2, 0}}};

/** Tetrahedron vertex labels playing each role on a wall facet, per side.
 *  Roles for the upper wall: bottom-i, top-i, top-j, then the facet label;
 *  roles for the lower wall: bottom-i, bottom-j, top-j, then the facet label. */
inline constexpr std::array<std::array<int, 4>, 3> WALL_UPPER_ROLES{
    {{0, 1, 2, 3}, {0, 1, 3, 2}, {1, 2, 3, 0}}};
inline constexpr std::array<std::array<int, 4>, 3> WALL_LOWER_ROLES{
    {{0, 1, 2, 3}, {0, 2, 3, 1}, {1, 2, 3, 0}}};

/** Permutation gluing one wall facet onto another by matching roles. */
inline Perm4 wall_perm(const std::array<int, 4>& from, const std::array<int, 4>& to) {
    std::array<int, 4> img{};
    for (int r = 0; r < 4; ++r) img[from[r]] = to[r];
    return Perm4::of(img[0], img[1], img[2], img[3]);
}

}  // namespace detail

inline ProductComplex product_with_circle(const Surface& surf) {
    ProductComplex out;
    out.surface_tris = surf.size();
    for (std::size_t t = 0; t < 9 * surf.size(); ++t) out.tri.add_tet();

    for (std::size_t f = 0; f < surf.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            // staircase interiors
            out.tri.glue(out.tet(f, k, 0), 1, out.tet(f, k, 1), Perm4::identity());
            out.tri.glue(out.tet(f, k, 1), 2, out.tet(f, k, 2), Perm4::identity());
            // top of this prism onto bottom of the next one up the circle
            out.tri.glue(out.tet(f, k, 0), 0, out.tet(f, (k + 1) % 3, 2),
                         Perm4::of(3, 0, 1, 2));
        }
        // walls over the surface's identified sides
        for (int s = 0; s < 3; ++s) {
            const Surface::Pairing& p = surf.pairing(f, s);
            if (p.is_boundary()) continue;
            std::size_t f2 = (std::size_t)p.tri;
            int s2 = p.side;
            if (f2 < f || (f2 == f && s2 < s)) continue;  // each pair once
            for (int k = 0; k < 3; ++k) {
                out.tri.glue(out.tet(f, k, detail::WALL_UPPER[s][0]), detail::WALL_UPPER[s][1],
                             out.tet(f2, k, detail::WALL_UPPER[s2][0]),
                             detail::wall_perm(detail::WALL_UPPER_ROLES[s],
                                               detail::WALL_UPPER_ROLES[s2]));
                out.tri.glue(out.tet(f, k, detail::WALL_LOWER[s][0]), detail::WALL_LOWER[s][1],
                             out.tet(f2, k, detail::WALL_LOWER[s2][0]),
                             detail::wall_perm(detail::WALL_LOWER_ROLES[s],
                                               detail::WALL_LOWER_ROLES[s2]));
            }
        }
    }
    return out;
}

}  // namespace dw
