#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "dw/errors.hpp"
#include "dw/gf2.hpp"

namespace dw {

/** Permutation of {0,1,2,3}; image(i) is where vertex label i is sent. */
struct Perm4 {
    std::array<std::uint8_t, 4> img{0, 1, 2, 3};

    static Perm4 identity() { return Perm4{}; }

    static Perm4 of(int a, int b, int c, int d) {
        Perm4 p;
        p.img = {std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)};
        if (!p.is_valid()) throw ValidationError("not a permutation of {0,1,2,3}");
        return p;
    }

    bool is_valid() const {
        int seen = 0;
        for (int i = 0; i < 4; ++i) {
            if (img[i] > 3) return false;
            seen |= 1 << img[i];
        }
        return seen == 0b1111;
    }

    int operator()(int i) const { return img[i]; }

    Perm4 inverse() const {
        Perm4 p;
        for (int i = 0; i < 4; ++i) p.img[img[i]] = std::uint8_t(i);
        return p;
    }

    /** this after other: (a * b)(i) = a(b(i)). */
    Perm4 operator*(const Perm4& o) const {
        Perm4 p;
        for (int i = 0; i < 4; ++i) p.img[i] = img[o.img[i]];
        return p;
    }

    int sign() const {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img[i] > img[j]) ++inv;
        return (inv % 2 == 0) ? 1 : -1;
    }

    bool operator==(const Perm4& o) const { return img == o.img; }
    bool operator!=(const Perm4& o) const { return img != o.img; }

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[i] = char('0' + img[i]);
        return s;
    }
};

/** Tetrahedron edges in a fixed order; edge e spans EDGE_V[e]. */
inline constexpr std::array<std::array<int, 2>, 6> EDGE_V{{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int e = 0; e < 6; ++e)
        if (EDGE_V[e][0] == a && EDGE_V[e][1] == b) return e;
    throw ValidationError("edge_index: vertices must be distinct labels in 0..3");
}

/** One side of a face pairing: target tetrahedron and the vertex
 *  correspondence (image of labels 0..3; image of the face's opposite vertex
 *  is the target face's opposite vertex). */
struct Gluing {
    long long tet = -1;  // -1 = boundary face
    Perm4 perm;
    bool is_boundary() const { return tet < 0; }
};

/** Tetrahedra with pairwise face identifications (self-identifications of a
 *  tetrahedron to itself via distinct faces allowed; a face glued to itself
 *  is not). The involution property is enforced at construction. */
class PseudoTriangulation {
public:
    PseudoTriangulation() = default;
    explicit PseudoTriangulation(std::size_t tets) : glu_(tets) {}

    std::size_t size() const { return glu_.size(); }

    std::size_t add_tet() {
        glu_.emplace_back();
        return glu_.size() - 1;
    }

    const Gluing& gluing(std::size_t t, int f) const { return glu_[t][f]; }
    bool is_boundary(std::size_t t, int f) const { return glu_[t][f].is_boundary(); }

    /** Glue face f of tet t to face perm(f) of tet t2; records both sides. */
    void glue(std::size_t t, int f, std::size_t t2, const Perm4& perm) {
        if (t >= glu_.size() || t2 >= glu_.size())
            throw ValidationError("glue: tetrahedron index out of range");
        int f2 = perm(f);
        if (t == t2 && f == f2)
            throw ValidationError("glue: a face may not be glued to itself");
        if (!glu_[t][f].is_boundary() || !glu_[t2][f2].is_boundary())
            throw ValidationError("glue: face already glued");
        glu_[t][f] = Gluing{(long long)t2, perm};
        glu_[t2][f2] = Gluing{(long long)t, perm.inverse()};
    }

    void unglue(std::size_t t, int f) {
        if (glu_[t][f].is_boundary()) return;
        long long t2 = glu_[t][f].tet;
        int f2 = glu_[t][f].perm(f);
        glu_[t2][f2] = Gluing{};
        glu_[t][f] = Gluing{};
    }

    /** Build from a raw table, checking the involution property. */
    static PseudoTriangulation from_table(const std::vector<std::array<Gluing, 4>>& table) {
        PseudoTriangulation tri;
        tri.glu_ = table;
        tri.check();
        return tri;
    }

    void check() const {
        for (std::size_t t = 0; t < glu_.size(); ++t)
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = glu_[t][f];
                if (g.is_boundary()) continue;
                if (g.tet < 0 || g.tet >= (long long)glu_.size())
                    throw ValidationError("gluing of tet " + std::to_string(t) + " face " +
                                          std::to_string(f) + ": target out of range");
                if (!g.perm.is_valid())
                    throw ValidationError("gluing of tet " + std::to_string(t) + " face " +
                                          std::to_string(f) + ": invalid permutation");
                int f2 = g.perm(f);
                if ((std::size_t)g.tet == t && f2 == f)
                    throw ValidationError("tet " + std::to_string(t) + " face " +
                                          std::to_string(f) + " glued to itself");
                const Gluing& back = glu_[g.tet][f2];
                if (back.is_boundary() || (std::size_t)back.tet != t ||
                    back.perm != g.perm.inverse())
                    throw ValidationError("gluing table not involutive at tet " +
                                          std::to_string(t) + " face " + std::to_string(f) +
                                          " <-> tet " + std::to_string(g.tet) + " face " +
                                          std::to_string(f2));
            }
    }

private:
    std::vector<std::array<Gluing, 4>> glu_;
};

/** Disjoint-set forest over a fixed universe. */
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
    /** Compact class ids in order of first appearance; returns class count. */
    std::size_t label(std::vector<int>& out) {
        out.assign(parent_.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            std::size_t r = find(i);
            if (out[r] < 0) out[r] = next++;
            out[i] = out[r];
        }
        return (std::size_t)next;
    }

private:
    std::vector<std::size_t> parent_;
};

/** Cells of the quotient space: class ids for every vertex/edge/face slot. */
struct QuotientCells {
    std::size_t tets = 0;
    std::size_t vertex_count = 0, edge_count = 0, face_count = 0;
    std::vector<std::array<int, 4>> vertex_class;  // [t][v]
    std::vector<std::array<int, 6>> edge_class;    // [t][edge]
    std::vector<std::array<int, 4>> face_class;    // [t][f]
};

inline QuotientCells quotient_cells(const PseudoTriangulation& tri) {
    std::size_t T = tri.size();
    UnionFind vuf(4 * T), euf(6 * T), fuf(4 * T);
    for (std::size_t t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            if (g.is_boundary()) continue;
            std::size_t t2 = (std::size_t)g.tet;
            fuf.unite(4 * t + f, 4 * t2 + g.perm(f));
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                vuf.unite(4 * t + v, 4 * t2 + g.perm(v));
                for (int u = v + 1; u < 4; ++u) {
                    if (u == f) continue;
                    euf.unite(6 * t + edge_index(v, u),
                              6 * t2 + edge_index(g.perm(v), g.perm(u)));
                }
            }
        }
    QuotientCells qc;
    qc.tets = T;
    std::vector<int> vl, el, fl;
    qc.vertex_count = vuf.label(vl);
    qc.edge_count = euf.label(el);
    qc.face_count = fuf.label(fl);
    qc.vertex_class.resize(T);
    qc.edge_class.resize(T);
    qc.face_class.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        for (int v = 0; v < 4; ++v) qc.vertex_class[t][v] = vl[4 * t + v];
        for (int e = 0; e < 6; ++e) qc.edge_class[t][e] = el[6 * t + e];
        for (int f = 0; f < 4; ++f) qc.face_class[t][f] = fl[4 * t + f];
    }
    return qc;
}

/** Outcome of the structural checks on a pseudo-triangulation. */
struct ValidationReport {
    bool closed = false;
    bool connected = false;
    bool orientable = false;
    bool edges_valid = false;  // no edge identified with itself in reverse
    std::vector<long long> vertex_link_chi;  // per vertex class
    long long euler_characteristic = 0;

    /** Closed 3-manifold certificate: closed, every vertex link a sphere,
     *  and global Euler characteristic zero. */
    bool manifold_certificate() const {
        if (!closed || euler_characteristic != 0) return false;
        for (long long chi : vertex_link_chi)
            if (chi != 2) return false;
        return true;
    }
};

inline ValidationReport validate(const PseudoTriangulation& tri) {
    tri.check();
    std::size_t T = tri.size();
    ValidationReport rep;
    if (T == 0) return rep;

    rep.closed = true;
    for (std::size_t t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f)
            if (tri.is_boundary(t, f)) rep.closed = false;

    // connectedness by traversal over face gluings
    std::vector<char> seen(T, 0);
    std::queue<std::size_t> work;
    work.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!work.empty()) {
        std::size_t t = work.front();
        work.pop();
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            if (g.is_boundary()) continue;
            if (!seen[g.tet]) {
                seen[g.tet] = 1;
                ++reached;
                work.push((std::size_t)g.tet);
            }
        }
    }
    rep.connected = (reached == T);

    // orientations: a gluing preserves orientation iff its permutation is odd
    std::vector<int> orient(T, 0);
    rep.orientable = true;
    for (std::size_t start = 0; start < T; ++start) {
        if (orient[start] != 0) continue;
        orient[start] = 1;
        std::queue<std::size_t> q;
        q.push(start);
        while (!q.empty()) {
            std::size_t t = q.front();
            q.pop();
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = tri.gluing(t, f);
                if (g.is_boundary()) continue;
                int want = -g.perm.sign() * orient[t];
                if (orient[g.tet] == 0) {
                    orient[g.tet] = want;
                    q.push((std::size_t)g.tet);
                } else if (orient[g.tet] != want) {
                    rep.orientable = false;
                }
            }
        }
    }

    QuotientCells qc = quotient_cells(tri);
    rep.euler_characteristic = (long long)qc.vertex_count - (long long)qc.edge_count +
                               (long long)qc.face_count - (long long)T;

    // Directed edge ends (t, v, u), v != u: the corner of the vertex link of v
    // cut out along edge {v,u}. Gluings act on them; an edge class is invalid
    // if some directed end meets its own reverse.
    auto dir_id = [&](std::size_t t, int v, int u) { return 12 * t + 3 * v + (u > v ? u - 1 : u); };
    UnionFind duf(12 * T);
    for (std::size_t t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            if (g.is_boundary()) continue;
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                for (int u = 0; u < 4; ++u) {
                    if (u == f || u == v) continue;
                    duf.unite(dir_id(t, v, u), dir_id((std::size_t)g.tet, g.perm(v), g.perm(u)));
                }
            }
        }
    rep.edges_valid = true;
    for (std::size_t t = 0; t < T; ++t)
        for (int e = 0; e < 6; ++e) {
            int a = EDGE_V[e][0], b = EDGE_V[e][1];
            if (duf.find(dir_id(t, a, b)) == duf.find(dir_id(t, b, a)))
                rep.edges_valid = false;
        }

    // Vertex links: for a closed triangulation every link is a closed surface
    // with triangles = corners of the class and edges = 3/2 triangles, so
    // chi(link) = (number of (t,v,u) end classes) - (number of corners)/2 ...
    // computed as V_link - F_link/2 with V_link counted per vertex class.
    if (rep.closed) {
        std::vector<long long> v_link(qc.vertex_count, 0), f_link(qc.vertex_count, 0);
        // count distinct directed-end classes per vertex class
        std::vector<char> done(12 * T, 0);
        for (std::size_t t = 0; t < T; ++t)
            for (int v = 0; v < 4; ++v)
                for (int u = 0; u < 4; ++u) {
                    if (u == v) continue;
                    std::size_t id = duf.find(dir_id(t, v, u));
                    if (!done[id]) {
                        done[id] = 1;
                        ++v_link[qc.vertex_class[t][v]];
                    }
                }
        for (std::size_t t = 0; t < T; ++t)
            for (int v = 0; v < 4; ++v) ++f_link[qc.vertex_class[t][v]];
        rep.vertex_link_chi.resize(qc.vertex_count);
        for (std::size_t c = 0; c < qc.vertex_count; ++c) {
            if (f_link[c] % 2 != 0)
                throw SelfCheckError("vertex link of a closed triangulation has odd corner count");
            rep.vertex_link_chi[c] = v_link[c] - f_link[c] / 2;
        }
    }
    return rep;
}

/** Mod-2 cellular first Betti number of the quotient complex. Valid when
 *  edge classes are embedded (validate().edges_valid). */
inline std::size_t cellular_betti1_mod2(const PseudoTriangulation& tri) {
    QuotientCells qc = quotient_cells(tri);
    std::size_t T = tri.size();
    // boundary of an edge class: sum of endpoint vertex classes (mod 2)
    BitMatrix d1(qc.vertex_count, qc.edge_count);
    std::vector<char> edge_done(qc.edge_count, 0);
    std::vector<char> face_done(qc.face_count, 0);
    BitMatrix d2(qc.edge_count, qc.face_count);
    for (std::size_t t = 0; t < T; ++t) {
        for (int e = 0; e < 6; ++e) {
            int c = qc.edge_class[t][e];
            if (edge_done[c]) continue;
            edge_done[c] = 1;
            int a = qc.vertex_class[t][EDGE_V[e][0]];
            int b = qc.vertex_class[t][EDGE_V[e][1]];
            if (a != b) {
                d1.set(a, c);
                d1.set(b, c);
            }
        }
        for (int f = 0; f < 4; ++f) {
            int c = qc.face_class[t][f];
            if (face_done[c]) continue;
            face_done[c] = 1;
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                for (int u = v + 1; u < 4; ++u) {
                    if (u == f) continue;
                    d2.flip(qc.edge_class[t][edge_index(v, u)], c);
                }
            }
        }
    }
    std::size_t rank_d1 = gf2_rank(d1);
    std::size_t rank_d2 = gf2_rank(d2);
    return qc.edge_count - rank_d1 - rank_d2;
}

/** Write the line-based gluing table format. */
inline void write_tri(const PseudoTriangulation& tri, std::ostream& out) {
    out << "tets " << tri.size() << "\n";
    for (std::size_t t = 0; t < tri.size(); ++t) {
        out << t;
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            if (g.is_boundary()) out << " b";
            else out << " " << g.tet << ":" << g.perm.str();
        }
        out << "\n";
    }
}

inline void write_tri_file(const PseudoTriangulation& tri, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    write_tri(tri, out);
    if (!out) throw ValidationError("write failed: " + path);
}

inline PseudoTriangulation read_tri(std::istream& in) {
    std::string line;
    long long lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t i = 0;
            while (i < line.size() && std::isspace((unsigned char)line[i])) ++i;
            if (i == line.size() || line[i] == '#') continue;
            return true;
        }
        return false;
    };
    auto parse_error = [&](const std::string& msg) -> ValidationError {
        return ValidationError("parse error at line " + std::to_string(lineno) + ": " + msg);
    };
    if (!next_line()) throw parse_error("missing header");
    std::istringstream head(line);
    std::string word;
    long long T = -1;
    if (!(head >> word >> T) || word != "tets" || T < 0)
        throw parse_error("expected 'tets <count>'");
    std::string trailing;
    if (head >> trailing) throw parse_error("unexpected token after tet count");
    std::vector<std::array<Gluing, 4>> table((std::size_t)T);
    for (long long t = 0; t < T; ++t) {
        if (!next_line()) throw parse_error("expected gluing line for tet " + std::to_string(t));
        std::istringstream ls(line);
        long long idx = -1;
        if (!(ls >> idx) || idx != t)
            throw parse_error("expected tet index " + std::to_string(t));
        for (int f = 0; f < 4; ++f) {
            std::string tok;
            if (!(ls >> tok)) throw parse_error("missing gluing for face " + std::to_string(f));
            if (tok == "b") continue;
            std::size_t colon = tok.find(':');
            if (colon == std::string::npos)
                throw parse_error("expected '<tet>:<perm>' or 'b', got '" + tok + "'");
            long long target = -1;
            try {
                std::size_t used = 0;
                target = std::stoll(tok.substr(0, colon), &used);
                if (used != colon) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw parse_error("bad target tet in '" + tok + "'");
            }
            std::string ps = tok.substr(colon + 1);
            if (ps.size() != 4) throw parse_error("permutation must have 4 characters");
            Perm4 perm;
            for (int i = 0; i < 4; ++i) {
                if (ps[i] < '0' || ps[i] > '3')
                    throw parse_error("permutation characters must be 0..3");
                perm.img[i] = std::uint8_t(ps[i] - '0');
            }
            if (!perm.is_valid()) throw parse_error("not a permutation: " + ps);
            if (target < 0 || target >= T)
                throw parse_error("target tet out of range in '" + tok + "'");
            table[(std::size_t)t][f] = Gluing{target, perm};
        }
        std::string extra;
        if (ls >> extra) throw parse_error("unexpected token '" + extra + "'");
    }
    if (next_line()) throw parse_error("unexpected extra line");
    return PseudoTriangulation::from_table(table);  // involution check
}

inline PseudoTriangulation read_tri_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open: " + path);
    return read_tri(in);
}

}  // namespace dw
