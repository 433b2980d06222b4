#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dw/errors.hpp"
#include "dw/triangulation.hpp"

namespace dw {

/** Local sides of a triangle with vertices ordered 0 < 1 < 2. Side s spans
 *  SIDE_V[s] and is directed from the lower to the higher local vertex. */
inline constexpr std::array<std::array<int, 2>, 3> SIDE_V{{{0, 1}, {0, 2}, {1, 2}}};

inline int side_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int s = 0; s < 3; ++s)
        if (SIDE_V[s][0] == a && SIDE_V[s][1] == b) return s;
    throw ValidationError("side_index: vertices must be distinct labels in 0..2");
}

/** Triangulated surface with ordered triangles: every identification of two
 *  sides matches their directions (tail to tail), which keeps the whole
 *  complex consistently ordered. Unpaired sides form the boundary. */
class Surface {
public:
    struct Pairing {
        long long tri = -1;  // -1 = boundary side
        int side = -1;
        bool is_boundary() const { return tri < 0; }
    };

    std::size_t size() const { return tris_.size(); }

    std::size_t add_triangle() {
        tris_.emplace_back();
        return tris_.size() - 1;
    }

    const Pairing& pairing(std::size_t t, int s) const { return tris_[t][s]; }
    bool is_boundary(std::size_t t, int s) const { return tris_[t][s].is_boundary(); }

    void glue(std::size_t t1, int s1, std::size_t t2, int s2) {
        if (t1 >= tris_.size() || t2 >= tris_.size())
            throw ValidationError("surface glue: triangle index out of range");
        if (s1 < 0 || s1 > 2 || s2 < 0 || s2 > 2)
            throw ValidationError("surface glue: side index out of range");
        if (t1 == t2 && s1 == s2)
            throw ValidationError("surface glue: a side may not be glued to itself");
        if (!tris_[t1][s1].is_boundary() || !tris_[t2][s2].is_boundary())
            throw ValidationError("surface glue: side already glued");
        tris_[t1][s1] = Pairing{(long long)t2, s2};
        tris_[t2][s2] = Pairing{(long long)t1, s1};
    }

    /** Quotient cell counts (vertex classes, edge classes, triangles). */
    struct Cells {
        std::size_t vertices = 0, edges = 0, faces = 0;
        std::vector<std::array<int, 3>> vertex_class;  // [tri][local vertex]
        long long euler() const {
            return (long long)vertices - (long long)edges + (long long)faces;
        }
    };

    Cells cells() const {
        std::size_t T = tris_.size();
        UnionFind vuf(3 * T), euf(3 * T);
        for (std::size_t t = 0; t < T; ++t)
            for (int s = 0; s < 3; ++s) {
                const Pairing& p = tris_[t][s];
                if (p.is_boundary()) continue;
                euf.unite(3 * t + s, 3 * p.tri + p.side);
                // direction-respecting: tail to tail, head to head
                vuf.unite(3 * t + SIDE_V[s][0], 3 * p.tri + SIDE_V[p.side][0]);
                vuf.unite(3 * t + SIDE_V[s][1], 3 * p.tri + SIDE_V[p.side][1]);
            }
        Cells c;
        std::vector<int> vl, el;
        c.vertices = vuf.label(vl);
        c.edges = euf.label(el);
        c.faces = T;
        c.vertex_class.resize(T);
        for (std::size_t t = 0; t < T; ++t)
            for (int v = 0; v < 3; ++v) c.vertex_class[t][v] = vl[3 * t + v];
        return c;
    }

private:
    std::vector<std::array<Pairing, 3>> tris_;
};

/** A surface together with its ordered list of boundary loops, one per hole;
 *  each loop is a single boundary side whose endpoints are identified. */
struct HoledSurface {
    Surface surface;
    std::vector<std::pair<std::size_t, int>> holes;  // (triangle, side) of each loop
};

/** Sphere with n >= 1 holes, every boundary loop a one-vertex circle.
 *
 *  n = 1: a single triangle with its (0,1) side folded onto its (0,2) side,
 *  a cone over the remaining (1,2) side.
 *
 *  n >= 2: a fan of a (3n-2)-gon whose side word is
 *  l1 x2 l2 x2' x3 l3 x3' ... xn ln xn'  (xi' pairing with xi in reverse),
 *  so each li becomes a one-vertex loop. Local triangle orders follow the
 *  side directions; the apex P0 is a source in every fan triangle. */
inline HoledSurface n_holed_sphere(std::size_t n) {
    if (n < 1) throw ValidationError("a holed sphere needs at least one hole");
    HoledSurface out;
    if (n == 1) {
        std::size_t t = out.surface.add_triangle();
        out.surface.glue(t, side_index(0, 1), t, side_index(0, 2));
        out.holes.push_back({t, side_index(1, 2)});
        return out;
    }
    std::size_t sides = 3 * n - 2;           // polygon corners P0..P_{sides-1}
    std::size_t tri_count = sides - 2;       // fan triangles T_1..T_{sides-2}
    // letter of polygon side k: 0 = boundary loop, +1 = xi forward, -1 = xi back
    // positions: l1 at 0; for i >= 2: xi at 3i-5, li at 3i-4, xi' at 3i-3
    std::vector<int> letter(sides, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        letter[3 * i - 5] = +1;
        letter[3 * i - 3] = -1;
    }
    for (std::size_t j = 0; j < tri_count; ++j) out.surface.add_triangle();

    // Triangle T_j (1-based j) covers corners {P0, Pj, Pj+1}. Its local order
    // is P0 first, then the middle side's tail: (P0,Pj,Pj+1) when polygon
    // side j runs forward, (P0,Pj+1,Pj) when it runs backward. Record, for
    // each polygon side and each diagonal, where it sits.
    struct Slot {
        long long tri = -1;
        int side = -1;
    };
    std::vector<Slot> side_slot(sides);      // polygon side k
    std::vector<Slot> diag_slot_low(sides);  // diagonal (P0,Pj) in T_{j-1}... filled per triangle
    std::vector<Slot> diag_slot_high(sides);
    out.holes.resize(n);
    for (std::size_t j = 1; j <= tri_count; ++j) {
        std::size_t t = j - 1;
        bool forward = letter[j] >= 0;  // middle side j direction
        // edge (P0,Pj): diagonal d_j for j >= 2, else polygon side 0
        // edge (P0,Pj+1): diagonal d_{j+1} for j+1 <= tri_count, else side sides-1
        int lo = forward ? 1 : 2;   // local index of Pj
        int hi = forward ? 2 : 1;   // local index of Pj+1
        int s_mid = side_index(lo, hi);
        int s_first = side_index(0, lo);
        int s_last = side_index(0, hi);
        side_slot[j] = Slot{(long long)t, s_mid};
        if (j == 1)
            side_slot[0] = Slot{(long long)t, s_first};
        else
            diag_slot_high[j] = Slot{(long long)t, s_first};
        if (j == tri_count)
            side_slot[sides - 1] = Slot{(long long)t, s_last};
        else
            diag_slot_low[j + 1] = Slot{(long long)t, s_last};
    }
    // glue diagonals
    for (std::size_t j = 2; j <= tri_count; ++j)
        out.surface.glue((std::size_t)diag_slot_low[j].tri, diag_slot_low[j].side,
                         (std::size_t)diag_slot_high[j].tri, diag_slot_high[j].side);
    // glue the xi pairs, collect the boundary loops
    for (std::size_t i = 2; i <= n; ++i)
        out.surface.glue((std::size_t)side_slot[3 * i - 5].tri, side_slot[3 * i - 5].side,
                         (std::size_t)side_slot[3 * i - 3].tri, side_slot[3 * i - 3].side);
    out.holes[0] = {(std::size_t)side_slot[0].tri, side_slot[0].side};
    for (std::size_t i = 2; i <= n; ++i)
        out.holes[i - 1] = {(std::size_t)side_slot[3 * i - 4].tri, side_slot[3 * i - 4].side};

    // every boundary loop must close up at a single vertex
    Surface::Cells c = out.surface.cells();
    if (c.euler() != 2 - (long long)n)
        throw SelfCheckError("holed sphere has wrong Euler characteristic");
    for (auto [t, s] : out.holes)
        if (c.vertex_class[t][SIDE_V[s][0]] != c.vertex_class[t][SIDE_V[s][1]])
            throw SelfCheckError("boundary loop does not close at one vertex");
    return out;
}

/** Closed orientable surface of the given genus. Genus 0 is the boundary of
 *  a tetrahedron; genus >= 1 is the fan of a 4g-gon with the standard
 *  commutator side word (for g = 1 this is the two-triangle torus). */
inline Surface closed_surface(std::size_t genus) {
    Surface surf;
    if (genus == 0) {
        // triangles = faces of a tetrahedron, vertices in ascending order;
        // the side spanning a vertex pair {a,b} sits in the two faces that
        // keep both, and directions agree with the global order
        for (int f = 0; f < 4; ++f) surf.add_triangle();
        auto local = [](int f, int v) {  // local index of global vertex v in face f
            int idx = 0;
            for (int w = 0; w < 4; ++w) {
                if (w == f) continue;
                if (w == v) return idx;
                ++idx;
            }
            throw ValidationError("vertex not in face");
        };
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                int faces[2], nf = 0;
                for (int f = 0; f < 4; ++f)
                    if (f != a && f != b) faces[nf++] = f;
                surf.glue((std::size_t)faces[0], side_index(local(faces[0], a), local(faces[0], b)),
                          (std::size_t)faces[1], side_index(local(faces[1], a), local(faces[1], b)));
            }
        return surf;
    }
    std::size_t sides = 4 * genus;
    std::size_t tri_count = sides - 2;
    // side word: for each handle i (0-based): a_i at 4i, b_i at 4i+1,
    // a_i reversed at 4i+2, b_i reversed at 4i+3
    auto forward = [](std::size_t k) { return k % 4 <= 1; };
    struct Slot {
        long long tri = -1;
        int side = -1;
    };
    std::vector<Slot> side_slot(sides), diag_low(sides + 1), diag_high(sides + 1);
    for (std::size_t j = 0; j < tri_count; ++j) surf.add_triangle();
    for (std::size_t j = 1; j <= tri_count; ++j) {
        std::size_t t = j - 1;
        bool fwd = forward(j);
        int lo = fwd ? 1 : 2;
        int hi = fwd ? 2 : 1;
        side_slot[j] = Slot{(long long)t, side_index(lo, hi)};
        if (j == 1)
            side_slot[0] = Slot{(long long)t, side_index(0, lo)};
        else
            diag_high[j] = Slot{(long long)t, side_index(0, lo)};
        if (j == tri_count)
            side_slot[sides - 1] = Slot{(long long)t, side_index(0, hi)};
        else
            diag_low[j + 1] = Slot{(long long)t, side_index(0, hi)};
    }
    for (std::size_t j = 2; j <= tri_count; ++j)
        surf.glue((std::size_t)diag_low[j].tri, diag_low[j].side, (std::size_t)diag_high[j].tri,
                  diag_high[j].side);
    for (std::size_t i = 0; i < genus; ++i) {
        surf.glue((std::size_t)side_slot[4 * i].tri, side_slot[4 * i].side,
                  (std::size_t)side_slot[4 * i + 2].tri, side_slot[4 * i + 2].side);
        surf.glue((std::size_t)side_slot[4 * i + 1].tri, side_slot[4 * i + 1].side,
                  (std::size_t)side_slot[4 * i + 3].tri, side_slot[4 * i + 3].side);
    }
    Surface::Cells c = surf.cells();
    if (c.euler() != 2 - 2 * (long long)genus)
        throw SelfCheckError("closed surface has wrong Euler characteristic");
    for (std::size_t t = 0; t < surf.size(); ++t)
        for (int s = 0; s < 3; ++s)
            if (surf.is_boundary(t, s)) throw SelfCheckError("closed surface has boundary");
    return surf;
}

}  // namespace dw
