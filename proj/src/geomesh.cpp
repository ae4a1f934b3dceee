#include "polyreal/geomesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace polyreal {

const char* family_name(Family f) {
    switch (f) {
        case Family::Spherical: return "spherical";
        case Family::Convex: return "convex";
        case Family::Star: return "star";
        default: return "skew";
    }
}

const char* family_code(Family f) {
    switch (f) {
        case Family::Spherical: return "sp";
        case Family::Convex: return "co";
        case Family::Star: return "st";
        default: return "sk";
    }
}

Family family_from_code(const std::string& code) {
    if (code == "sp" || code == "spherical") return Family::Spherical;
    if (code == "co" || code == "convex") return Family::Convex;
    if (code == "st" || code == "star") return Family::Star;
    if (code == "sk" || code == "skew") return Family::Skew;
    throw std::invalid_argument("unknown family: " + code);
}

namespace {

struct P2 {
    QSqrt5 x, y;
};

std::vector<Vec3> cycle_coords(const RealizationSkeleton& skel, int facet) {
    std::vector<Vec3> out;
    for (int v : skel.facet_vertices[facet]) out.push_back(skel.vertices[v]);
    return out;
}

// First nonzero cross product of boundary spokes; zero vector if degenerate.
Vec3 cycle_normal(const std::vector<Vec3>& cyc) {
    Vec3 e1 = vsub(cyc[1], cyc[0]);
    for (std::size_t k = 2; k < cyc.size(); ++k) {
        Vec3 n = vcross(e1, vsub(cyc[k], cyc[0]));
        if (!vec_is_zero(n)) return n;
    }
    return Vec3{};
}

// Axis of largest squared component, decided exactly.
int drop_axis(const Vec3& n) {
    QSqrt5 sx = qmul(n.x, n.x), sy = qmul(n.y, n.y), sz = qmul(n.z, n.z);
    if (sx >= sy && sx >= sz) return 0;
    if (sy >= sz) return 1;
    return 2;
}

P2 proj2(const Vec3& v, int ax) {
    switch (ax) {
        case 0: return {v.y, v.z};
        case 1: return {v.x, v.z};
        default: return {v.x, v.y};
    }
}

int orient2(const P2& a, const P2& b, const P2& c) {
    return qsign(qsub(qmul(qsub(b.x, a.x), qsub(c.y, a.y)), qmul(qsub(b.y, a.y), qsub(c.x, a.x))));
}

bool seg_proper_cross2(const P2& a, const P2& b, const P2& c, const P2& d) {
    return orient2(a, b, c) * orient2(a, b, d) < 0 && orient2(c, d, a) * orient2(c, d, b) < 0;
}

bool on_boundary2(const std::vector<P2>& P, const P2& pt) {
    std::size_t m = P.size();
    for (std::size_t i = 0; i < m; ++i) {
        const P2 &a = P[i], &b = P[(i + 1) % m];
        if (orient2(a, b, pt) != 0) continue;
        QSqrt5 lo0 = std::min(a.x, b.x), hi0 = std::max(a.x, b.x);
        QSqrt5 lo1 = std::min(a.y, b.y), hi1 = std::max(a.y, b.y);
        if (pt.x >= lo0 && pt.x <= hi0 && pt.y >= lo1 && pt.y <= hi1) return true;
    }
    return false;
}

// Even-odd test with a +x ray and the half-open crossing rule; points on the
// boundary count as outside.
bool strictly_inside2(const std::vector<P2>& P, const P2& pt) {
    if (on_boundary2(P, pt)) return false;
    int cnt = 0;
    std::size_t m = P.size();
    for (std::size_t i = 0; i < m; ++i) {
        const P2 &a = P[i], &b = P[(i + 1) % m];
        bool above_a = qsign(qsub(a.y, pt.y)) > 0;
        bool above_b = qsign(qsub(b.y, pt.y)) > 0;
        if (above_a == above_b) continue;
        QSqrt5 dy = qsub(b.y, a.y);
        QSqrt5 num = qadd(qmul(qsub(b.x, a.x), qsub(pt.y, a.y)), qmul(dy, qsub(a.x, pt.x)));
        if (qsign(num) * qsign(dy) > 0) ++cnt;
    }
    return cnt % 2 == 1;
}

}  // namespace

bool facet_coplanar(const RealizationSkeleton& skel, int facet) {
    std::vector<Vec3> cyc = cycle_coords(skel, facet);
    Vec3 n = cycle_normal(cyc);
    if (vec_is_zero(n)) return true;  // collinear cycle: trivially planar
    for (const Vec3& v : cyc)
        if (qsign(vdot(n, vsub(v, cyc[0]))) != 0) return false;
    return true;
}

bool facet_self_intersects(const RealizationSkeleton& skel, int facet) {
    if (!facet_coplanar(skel, facet)) return false;  // meaningful for planar facets only
    std::vector<Vec3> cyc = cycle_coords(skel, facet);
    Vec3 n = cycle_normal(cyc);
    if (vec_is_zero(n)) return false;
    int ax = drop_axis(n);
    std::vector<P2> P;
    for (const Vec3& v : cyc) P.push_back(proj2(v, ax));
    std::size_t m = P.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i + 1 || (i == 0 && j == m - 1)) continue;
            if (seg_proper_cross2(P[i], P[(i + 1) % m], P[j], P[(j + 1) % m])) return true;
        }
    return false;
}

bool edges_properly_cross(const RealizationSkeleton& skel, int ea, int eb) {
    const auto &A = skel.edges[ea], &B = skel.edges[eb];
    if (A[0] == B[0] || A[0] == B[1] || A[1] == B[0] || A[1] == B[1]) return false;
    Vec3 a = skel.vertices[A[0]], d1 = vsub(skel.vertices[A[1]], a);
    Vec3 c = skel.vertices[B[0]], d2 = vsub(skel.vertices[B[1]], c);
    Vec3 r = vsub(c, a);
    Vec3 n = vcross(d1, d2);
    if (vec_is_zero(n)) {
        if (!vec_is_zero(vcross(d1, r))) return false;  // parallel, different lines
        // collinear: overlap of open parameter intervals along d1
        int ax = drop_axis(d1);
        auto comp = [&](const Vec3& v) { return ax == 0 ? v.x : (ax == 1 ? v.y : v.z); };
        QSqrt5 inv = qinv(comp(d1));
        QSqrt5 t0 = qmul(qsub(comp(c), comp(a)), inv);
        QSqrt5 t1 = qmul(qsub(comp(skel.vertices[B[1]]), comp(a)), inv);
        QSqrt5 lo = std::min(t0, t1), hi = std::max(t0, t1);
        return std::max(lo, QSqrt5(0)) < std::min(hi, QSqrt5(1));
    }
    if (qsign(vdot(r, n)) != 0) return false;  // skew lines
    QSqrt5 nn = vdot(n, n);
    QSqrt5 t = qdiv(vdot(vcross(r, d2), n), nn);
    QSqrt5 u = qdiv(vdot(vcross(r, d1), n), nn);
    QSqrt5 zero(0), one(1);
    return t > zero && t < one && u > zero && u < one;
}

namespace {

// Point x0 on both planes plus the direction of their intersection line.
bool line_of_planes(const Vec3& nA, const QSqrt5& dA, const Vec3& nB, const QSqrt5& dB, Vec3& x0,
                    Vec3& dir) {
    dir = vcross(nA, nB);
    if (vec_is_zero(dir)) return false;
    QSqrt5 rows[3][4] = {{nA.x, nA.y, nA.z, dA}, {nB.x, nB.y, nB.z, dB}, {dir.x, dir.y, dir.z, QSqrt5(0)}};
    for (int c = 0; c < 3; ++c) {
        int pr = c;
        while (pr < 3 && rows[pr][c].is_zero()) ++pr;
        if (pr == 3) throw std::logic_error("plane intersection system is singular");
        for (int j = 0; j < 4; ++j) std::swap(rows[c][j], rows[pr][j]);
        QSqrt5 inv = qinv(rows[c][c]);
        for (int j = 0; j < 4; ++j) rows[c][j] = qmul(inv, rows[c][j]);
        for (int i = 0; i < 3; ++i) {
            if (i == c || rows[i][c].is_zero()) continue;
            QSqrt5 f = rows[i][c];
            for (int j = 0; j < 4; ++j) rows[i][j] = qsub(rows[i][j], qmul(f, rows[c][j]));
        }
    }
    x0 = {rows[0][3], rows[1][3], rows[2][3]};
    return true;
}

// Parameters t where the line x0 + t*dir crosses the facet's boundary, worked
// in the facet's plane. Collinear boundary edges contribute both endpoints.
void line_events_on_facet(const Vec3& x0, const Vec3& dir, const std::vector<Vec3>& cyc,
                          const Vec3& n, std::vector<QSqrt5>& ts) {
    int ax = drop_axis(n);
    P2 o2 = proj2(x0, ax), d2 = proj2(dir, ax);
    std::size_t m = cyc.size();
    for (std::size_t i = 0; i < m; ++i) {
        P2 a = proj2(cyc[i], ax), b = proj2(cyc[(i + 1) % m], ax);
        P2 e{qsub(b.x, a.x), qsub(b.y, a.y)};
        P2 w{qsub(a.x, o2.x), qsub(a.y, o2.y)};
        QSqrt5 den = qsub(qmul(d2.x, e.y), qmul(d2.y, e.x));
        if (!den.is_zero()) {
            // o2 + t d2 = a + u e: t = (w x e)/(d2 x e), u = (w x d2)/(d2 x e)
            QSqrt5 t = qdiv(qsub(qmul(w.x, e.y), qmul(w.y, e.x)), den);
            QSqrt5 u = qdiv(qsub(qmul(w.x, d2.y), qmul(w.y, d2.x)), den);
            if (u >= QSqrt5(0) && u <= QSqrt5(1)) ts.push_back(t);
        } else if (qsub(qmul(w.x, d2.y), qmul(w.y, d2.x)).is_zero()) {
            bool use_x = qmul(d2.x, d2.x) >= qmul(d2.y, d2.y);
            QSqrt5 dd = use_x ? d2.x : d2.y;
            QSqrt5 inv = qinv(dd);
            ts.push_back(qmul(qsub(use_x ? a.x : a.y, use_x ? o2.x : o2.y), inv));
            ts.push_back(qmul(qsub(use_x ? b.x : b.y, use_x ? o2.x : o2.y), inv));
        }
    }
}

}  // namespace

bool facets_properly_cross(const RealizationSkeleton& skel, int fa, int fb) {
    std::vector<Vec3> A = cycle_coords(skel, fa), B = cycle_coords(skel, fb);
    Vec3 nA = cycle_normal(A), nB = cycle_normal(B);
    if (vec_is_zero(nA) || vec_is_zero(nB)) return false;
    Vec3 x0, dir;
    // Parallel planes never cross properly; coincident-plane facet pairs do
    // not occur for these groups and are reported as non-crossing.
    if (!line_of_planes(nA, vdot(nA, A[0]), nB, vdot(nB, B[0]), x0, dir)) return false;
    std::vector<QSqrt5> ts;
    line_events_on_facet(x0, dir, A, nA, ts);
    line_events_on_facet(x0, dir, B, nB, ts);
    if (ts.size() < 2) return false;
    std::sort(ts.begin(), ts.end(), [](const QSqrt5& a, const QSqrt5& b) { return a < b; });
    ts.erase(std::unique(ts.begin(), ts.end(), [](const QSqrt5& a, const QSqrt5& b) { return a == b; }),
             ts.end());
    int axA = drop_axis(nA), axB = drop_axis(nB);
    std::vector<P2> PA, PB;
    for (const Vec3& v : A) PA.push_back(proj2(v, axA));
    for (const Vec3& v : B) PB.push_back(proj2(v, axB));
    QSqrt5 half(Rational(1, 2));
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        QSqrt5 tm = qmul(half, qadd(ts[i], ts[i + 1]));
        Vec3 pt = vadd(x0, vscale(tm, dir));
        if (strictly_inside2(PA, proj2(pt, axA)) && strictly_inside2(PB, proj2(pt, axB))) return true;
    }
    return false;
}

Family classify_family(const RealizationSkeleton& skel, ExecMode mode) {
    int nf = static_cast<int>(skel.facet_vertices.size());
    for (int f = 0; f < nf; ++f)
        if (!facet_coplanar(skel, f)) return Family::Skew;
    for (int f = 0; f < nf; ++f)
        if (facet_self_intersects(skel, f)) return Family::Star;
    int ne = static_cast<int>(skel.edges.size());
    for (int a = 0; a < ne; ++a)
        for (int b = a + 1; b < ne; ++b)
            if (edges_properly_cross(skel, a, b)) return Family::Star;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < nf; ++a)
        for (int b = a + 1; b < nf; ++b) pairs.emplace_back(a, b);
    std::vector<char> crossing(pairs.size(), 0);
    parallel_for(pairs.size(), mode, [&](std::size_t k) {
        crossing[k] = facets_properly_cross(skel, pairs[k].first, pairs[k].second) ? 1 : 0;
    });
    bool any = std::find(crossing.begin(), crossing.end(), 1) != crossing.end();
    return any ? Family::Star : Family::Convex;
}

namespace {

// Ear-clip a simple polygon traced counterclockwise; indices address pts.
void ear_clip(std::vector<int> loop, const std::vector<P2>& pts,
              std::vector<std::array<int, 3>>& out) {
    auto blocked = [&](int a, int b, int c) {
        for (int t : loop) {
            if (t == a || t == b || t == c) continue;
            if (orient2(pts[a], pts[b], pts[t]) >= 0 && orient2(pts[b], pts[c], pts[t]) >= 0 &&
                orient2(pts[c], pts[a], pts[t]) >= 0)
                return true;
        }
        return false;
    };
    while (loop.size() > 3) {
        std::size_t n = loop.size();
        bool clipped = false;
        for (std::size_t k = 0; k < n; ++k) {
            int prev = loop[(k + n - 1) % n], cur = loop[k], nxt = loop[(k + 1) % n];
            if (orient2(pts[prev], pts[cur], pts[nxt]) <= 0) continue;
            if (blocked(prev, cur, nxt)) continue;
            out.push_back({prev, cur, nxt});
            loop.erase(loop.begin() + static_cast<long>(k));
            clipped = true;
            break;
        }
        if (!clipped) throw std::logic_error("ear clipping failed on an arrangement face");
    }
    if (orient2(pts[loop[0]], pts[loop[1]], pts[loop[2]]) <= 0)
        throw std::logic_error("degenerate arrangement face");
    out.push_back({loop[0], loop[1], loop[2]});
}

}  // namespace

FacetRegions star_facet_regions(const std::vector<Vec3>& cycle) {
    std::size_t m = cycle.size();
    if (m < 3) throw std::invalid_argument("facet cycle needs at least 3 vertices");
    Vec3 n = cycle_normal(cycle);
    if (vec_is_zero(n)) throw std::invalid_argument("degenerate facet cycle");
    for (const Vec3& v : cycle)
        if (qsign(vdot(n, vsub(v, cycle[0]))) != 0)
            throw std::invalid_argument("facet cycle is not planar");
    int ax = drop_axis(n);

    FacetRegions R;
    std::map<Vec3, int, Vec3Less> node_of;
    auto node = [&](const Vec3& p) {
        auto [it, fresh] = node_of.emplace(p, static_cast<int>(R.points.size()));
        if (fresh) R.points.push_back(p);
        return it->second;
    };
    std::vector<int> corner(m);
    for (std::size_t i = 0; i < m; ++i) corner[i] = node(cycle[i]);

    std::vector<P2> C;
    for (const Vec3& v : cycle) C.push_back(proj2(v, ax));

    // Proper pairwise crossings split the boundary edges; any touching
    // configuration is outside this mesher's contract.
    std::vector<std::vector<std::pair<QSqrt5, int>>> cuts(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i + 1 || (i == 0 && j == m - 1)) continue;
            const P2 &a = C[i], &b = C[(i + 1) % m], &c = C[j], &d = C[(j + 1) % m];
            int o1 = orient2(a, b, c), o2 = orient2(a, b, d);
            int o3 = orient2(c, d, a), o4 = orient2(c, d, b);
            if (o1 * o2 < 0 && o3 * o4 < 0) {
                P2 e1{qsub(b.x, a.x), qsub(b.y, a.y)};
                P2 e2{qsub(d.x, c.x), qsub(d.y, c.y)};
                P2 r{qsub(c.x, a.x), qsub(c.y, a.y)};
                QSqrt5 den = qsub(qmul(e1.x, e2.y), qmul(e1.y, e2.x));
                QSqrt5 u = qdiv(qsub(qmul(r.x, e2.y), qmul(r.y, e2.x)), den);
                QSqrt5 w = qdiv(qsub(qmul(r.x, e1.y), qmul(r.y, e1.x)), den);
                Vec3 p3 = vadd(cycle[i], vscale(u, vsub(cycle[(i + 1) % m], cycle[i])));
                int id = node(p3);
                cuts[i].emplace_back(u, id);
                cuts[j].emplace_back(w, id);
            } else if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
                P2 ends[4] = {c, d, a, b};
                const P2* segs[4][2] = {{&a, &b}, {&a, &b}, {&c, &d}, {&c, &d}};
                int os[4] = {o1, o2, o3, o4};
                for (int k = 0; k < 4; ++k) {
                    if (os[k] != 0) continue;
                    QSqrt5 lo0 = std::min(segs[k][0]->x, segs[k][1]->x);
                    QSqrt5 hi0 = std::max(segs[k][0]->x, segs[k][1]->x);
                    QSqrt5 lo1 = std::min(segs[k][0]->y, segs[k][1]->y);
                    QSqrt5 hi1 = std::max(segs[k][0]->y, segs[k][1]->y);
                    if (ends[k].x >= lo0 && ends[k].x <= hi0 && ends[k].y >= lo1 && ends[k].y <= hi1)
                        throw std::logic_error("boundary segments touch without crossing properly");
                }
            }
        }

    std::vector<std::array<int, 2>> segs;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::pair<QSqrt5, int>> pieces = cuts[i];
        pieces.emplace_back(QSqrt5(0), corner[i]);
        pieces.emplace_back(QSqrt5(1), corner[(i + 1) % m]);
        std::sort(pieces.begin(), pieces.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t k = 0; k + 1 < pieces.size(); ++k)
            if (pieces[k].second != pieces[k + 1].second)
                segs.push_back({pieces[k].second, pieces[k + 1].second});
    }

    std::vector<P2> PP;
    for (const Vec3& p : R.points) PP.push_back(proj2(p, ax));

    // Half-edges 2k (forward) and 2k+1 (backward) per sub-segment; at each
    // node the outgoing half-edges are sorted counterclockwise, exactly.
    int nh = static_cast<int>(segs.size()) * 2;
    auto from_of = [&](int h) { return h % 2 == 0 ? segs[h / 2][0] : segs[h / 2][1]; };
    auto to_of = [&](int h) { return h % 2 == 0 ? segs[h / 2][1] : segs[h / 2][0]; };
    std::vector<std::vector<int>> outgoing(R.points.size());
    for (int h = 0; h < nh; ++h) outgoing[from_of(h)].push_back(h);
    auto angle_less = [&](int h1, int h2) {
        const P2 &f1 = PP[from_of(h1)], &t1 = PP[to_of(h1)];
        const P2 &f2 = PP[from_of(h2)], &t2 = PP[to_of(h2)];
        P2 d1{qsub(t1.x, f1.x), qsub(t1.y, f1.y)};
        P2 d2{qsub(t2.x, f2.x), qsub(t2.y, f2.y)};
        auto half = [](const P2& d) {
            int sy = qsign(d.y);
            return (sy > 0 || (sy == 0 && qsign(d.x) > 0)) ? 0 : 1;
        };
        int h1h = half(d1), h2h = half(d2);
        if (h1h != h2h) return h1h < h2h;
        return qsign(qsub(qmul(d1.x, d2.y), qmul(d1.y, d2.x))) > 0;
    };
    std::vector<std::vector<int>> pos(R.points.size());
    for (std::size_t v = 0; v < outgoing.size(); ++v) {
        std::sort(outgoing[v].begin(), outgoing[v].end(), angle_less);
        pos[v].assign(nh, -1);
        for (std::size_t k = 0; k < outgoing[v].size(); ++k) pos[v][outgoing[v][k]] = static_cast<int>(k);
    }
    auto next_he = [&](int h) {
        int v = to_of(h);
        int twin = h ^ 1;
        const auto& L = outgoing[v];
        int k = pos[v][twin];
        return L[(k + L.size() - 1) % L.size()];
    };

    std::vector<int> face_of(nh, -1);
    std::vector<std::vector<int>> loops;
    for (int h0 = 0; h0 < nh; ++h0) {
        if (face_of[h0] != -1) continue;
        int id = static_cast<int>(loops.size());
        std::vector<int> loop;
        int h = h0;
        do {
            face_of[h] = id;
            loop.push_back(from_of(h));
            h = next_he(h);
        } while (h != h0);
        loops.push_back(std::move(loop));
    }

    std::vector<int> area_sign(loops.size());
    int outer = -1;
    for (std::size_t f = 0; f < loops.size(); ++f) {
        QSqrt5 s2;
        const auto& L = loops[f];
        for (std::size_t k = 0; k < L.size(); ++k) {
            const P2 &p = PP[L[k]], &q = PP[L[(k + 1) % L.size()]];
            s2 = qadd(s2, qsub(qmul(p.x, q.y), qmul(p.y, q.x)));
        }
        area_sign[f] = qsign(s2);
        if (area_sign[f] == 0) throw std::logic_error("arrangement face with zero area");
        if (area_sign[f] < 0) {
            if (outer != -1) throw std::logic_error("facet boundary arrangement is disconnected");
            outer = static_cast<int>(f);
        }
    }
    if (outer == -1) throw std::logic_error("no outer face in boundary arrangement");

    // Crossing any sub-segment flips even-odd parity; the outer face is even.
    std::vector<int> parity(loops.size(), -1);
    parity[outer] = 0;
    std::vector<int> stack{outer};
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int h = 0; h < nh; ++h) {
            if (face_of[h] != f) continue;
            int g = face_of[h ^ 1];
            if (parity[g] == -1) {
                parity[g] = 1 - parity[f];
                stack.push_back(g);
            }
        }
    }

    for (std::size_t f = 0; f < loops.size(); ++f) {
        if (parity[f] != 1) continue;
        ++R.region_count;
        ear_clip(loops[f], PP, R.triangles);
    }
    return R;
}

namespace {

double fdot(const F3& a, const F3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
F3 fcross(const F3& a, const F3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
F3 fsub(const F3& a, const F3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
F3 fscale(double c, const F3& a) { return {c * a[0], c * a[1], c * a[2]}; }
double fnorm(const F3& a) { return std::sqrt(fdot(a, a)); }
F3 fnormalize(const F3& a) {
    double n = fnorm(a);
    if (n == 0.0) throw std::domain_error("cannot normalize a zero vector");
    return fscale(1.0 / n, a);
}

F3 to_f3(const Vec3& v) { return {to_float(v.x), to_float(v.y), to_float(v.z)}; }

std::array<double, 9> to_f9(const Mat3& M) {
    std::array<double, 9> out;
    for (int k = 0; k < 9; ++k) out[k] = to_float(M.m[k]);
    return out;
}

F3 apply9(const std::array<double, 9>& T, const F3& v) {
    return {T[0] * v[0] + T[1] * v[1] + T[2] * v[2], T[3] * v[0] + T[4] * v[1] + T[5] * v[2],
            T[6] * v[0] + T[7] * v[1] + T[8] * v[2]};
}

std::vector<F3> arc_points(const F3& a, const F3& b, int samples) {
    double d = std::clamp(fdot(a, b), -1.0, 1.0);
    double omega = std::acos(d);
    std::vector<F3> pts;
    pts.reserve(samples + 1);
    if (omega < 1e-14) {
        for (int k = 0; k <= samples; ++k) pts.push_back(a);
        return pts;
    }
    double so = std::sin(omega);
    for (int k = 0; k <= samples; ++k) {
        double t = static_cast<double>(k) / samples;
        F3 p = {(std::sin((1 - t) * omega) * a[0] + std::sin(t * omega) * b[0]) / so,
                (std::sin((1 - t) * omega) * a[1] + std::sin(t * omega) * b[1]) / so,
                (std::sin((1 - t) * omega) * a[2] + std::sin(t * omega) * b[2]) / so};
        pts.push_back(fnormalize(p));
    }
    return pts;
}

void fill_classification(const RealizationSkeleton& skel, RealizedPolyhedron& rp) {
    int nf = static_cast<int>(skel.facet_vertices.size());
    rp.coplanar.resize(nf);
    rp.self_intersecting.resize(nf);
    for (int f = 0; f < nf; ++f) {
        rp.coplanar[f] = facet_coplanar(skel, f);
        rp.self_intersecting[f] = facet_self_intersects(skel, f);
    }
}

}  // namespace

RealizedPolyhedron realize_spherical(const RealizationSkeleton& skel, int samples_per_arc) {
    if (samples_per_arc < 1) throw std::invalid_argument("samples_per_arc must be positive");
    for (const Vec3& v : skel.vertices)
        if (vec_is_zero(v)) throw std::domain_error("vertex at the origin cannot be projected");
    for (const auto& e : skel.edges) {
        const Vec3 &a = skel.vertices[e[0]], &b = skel.vertices[e[1]];
        if (vec_is_zero(vcross(a, b)) && qsign(vdot(a, b)) < 0)
            throw std::domain_error("antipodal edge endpoints: great-circle arc undefined");
    }

    std::vector<F3> unit;
    for (const Vec3& v : skel.vertices) unit.push_back(fnormalize(to_f3(v)));

    RealizedPolyhedron rp;
    rp.skeleton = &skel;
    rp.family = Family::Spherical;
    fill_classification(skel, rp);

    for (const auto& e : skel.edges)
        rp.edge_geometry.push_back(arc_points(unit[e[0]], unit[e[1]], samples_per_arc));

    int nf = static_cast<int>(skel.facet_vertices.size());
    for (int f = 0; f < nf; ++f) {
        const std::vector<int>& cyc = skel.facet_vertices[f];
        int p = static_cast<int>(cyc.size());
        F3 sum{0, 0, 0};
        for (int v : cyc) {
            sum[0] += unit[v][0];
            sum[1] += unit[v][1];
            sum[2] += unit[v][2];
        }
        if (fnorm(sum) < 1e-12) throw std::domain_error("facet centroid projects to the origin");
        F3 c = fnormalize(sum);

        FacetGeometry G;
        G.kind = Family::Spherical;
        G.mesh.vertices.push_back(c);
        std::vector<std::vector<F3>> arcs;
        for (int k = 0; k < p; ++k)
            arcs.push_back(arc_points(unit[cyc[k]], unit[cyc[(k + 1) % p]], samples_per_arc));
        for (int k = 0; k < p; ++k)
            for (int t = 0; t < samples_per_arc; ++t) {
                G.mesh.vertices.push_back(arcs[k][t]);
                G.boundary.push_back(arcs[k][t]);
            }
        int bn = p * samples_per_arc;
        for (int i = 0; i < bn; ++i) G.mesh.triangles.push_back({0, 1 + i, 1 + (i + 1) % bn});
        rp.facets.push_back(std::move(G));
    }
    return rp;
}

RealizedPolyhedron realize_classical(const RealizationSkeleton& skel, ExecMode mode) {
    int nf = static_cast<int>(skel.facet_vertices.size());
    for (int f = 0; f < nf; ++f)
        if (!facet_coplanar(skel, f))
            throw std::invalid_argument("facet " + std::to_string(f + 1) +
                                        " is non-coplanar: use the skew realization");

    RealizedPolyhedron rp;
    rp.skeleton = &skel;
    fill_classification(skel, rp);

    bool any_self =
        std::find(rp.self_intersecting.begin(), rp.self_intersecting.end(), true) !=
        rp.self_intersecting.end();
    int ne = static_cast<int>(skel.edges.size());
    bool edge_cross = false;
    for (int a = 0; a < ne && !edge_cross; ++a)
        for (int b = a + 1; b < ne && !edge_cross; ++b)
            if (edges_properly_cross(skel, a, b)) edge_cross = true;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < nf; ++a)
        for (int b = a + 1; b < nf; ++b) pairs.emplace_back(a, b);
    std::vector<char> crossing(pairs.size(), 0);
    parallel_for(pairs.size(), mode, [&](std::size_t k) {
        crossing[k] = facets_properly_cross(skel, pairs[k].first, pairs[k].second) ? 1 : 0;
    });
    rp.any_crossing =
        edge_cross || std::find(crossing.begin(), crossing.end(), 1) != crossing.end();
    rp.family = (any_self || rp.any_crossing) ? Family::Star : Family::Convex;

    FacetRegions base = star_facet_regions(cycle_coords(skel, 0));
    // Orient outward when the base plane misses the origin.
    {
        const auto& t = base.triangles[0];
        Vec3 nrm = vcross(vsub(base.points[t[1]], base.points[t[0]]),
                          vsub(base.points[t[2]], base.points[t[0]]));
        if (qsign(vdot(nrm, base.points[t[0]])) < 0)
            for (auto& tr : base.triangles) std::swap(tr[1], tr[2]);
    }

    const AbstractPolyhedron& P = *skel.poly;
    rp.facets.resize(nf);
    parallel_for(static_cast<std::size_t>(nf), mode, [&](std::size_t f) {
        int rep = P.cosets(2).reps[f];
        Mat3 T = mat_transpose(skel.images[rep]);
        bool flip = qsign(mat_det(skel.images[rep])) < 0;
        FacetGeometry G;
        G.kind = rp.self_intersecting[f] ? Family::Star : Family::Convex;
        G.region_count = base.region_count;
        for (const Vec3& pt : base.points) G.mesh.vertices.push_back(to_f3(mat_apply(T, pt)));
        for (auto tr : base.triangles) {
            if (flip) std::swap(tr[1], tr[2]);
            G.mesh.triangles.push_back(tr);
        }
        for (int v : skel.facet_vertices[f]) G.boundary.push_back(to_f3(skel.vertices[v]));
        rp.facets[f] = std::move(G);
    });

    for (const auto& e : skel.edges)
        rp.edge_geometry.push_back({to_f3(skel.vertices[e[0]]), to_f3(skel.vertices[e[1]])});
    return rp;
}

RealizedPolyhedron realize_skew(const RealizationSkeleton& skel, const PlateauParams& params,
                                ExecMode mode) {
    int nf = static_cast<int>(skel.facet_vertices.size());
    bool any_noncop = false;
    for (int f = 0; f < nf && !any_noncop; ++f)
        if (!facet_coplanar(skel, f)) any_noncop = true;
    if (!any_noncop)
        throw std::invalid_argument("all facets are coplanar: use a planar realization");

    std::vector<F3> corners;
    for (int v : skel.facet_vertices[0]) corners.push_back(to_f3(skel.vertices[v]));
    PlateauSolution sol = solve_plateau(corners, params);
    int bn = static_cast<int>(corners.size()) * params.samples_per_edge;

    RealizedPolyhedron rp;
    rp.skeleton = &skel;
    rp.family = Family::Skew;
    fill_classification(skel, rp);
    rp.plateau = sol.stats;

    const AbstractPolyhedron& P = *skel.poly;
    rp.facets.resize(nf);
    parallel_for(static_cast<std::size_t>(nf), mode, [&](std::size_t f) {
        int rep = P.cosets(2).reps[f];
        std::array<double, 9> T = to_f9(mat_transpose(skel.images[rep]));
        bool flip = qsign(mat_det(skel.images[rep])) < 0;
        FacetGeometry G;
        G.kind = Family::Skew;
        for (const F3& v : sol.mesh.vertices) G.mesh.vertices.push_back(apply9(T, v));
        for (auto tr : sol.mesh.triangles) {
            if (flip) std::swap(tr[1], tr[2]);
            G.mesh.triangles.push_back(tr);
        }
        for (int i = 0; i < bn; ++i) G.boundary.push_back(G.mesh.vertices[i]);
        rp.facets[f] = std::move(G);
    });

    for (const auto& e : skel.edges)
        rp.edge_geometry.push_back({to_f3(skel.vertices[e[0]]), to_f3(skel.vertices[e[1]])});
    return rp;
}

double triangle_solid_angle(const F3& a, const F3& b, const F3& c) {
    double det = fdot(a, fcross(b, c));
    double denom = 1.0 + fdot(a, b) + fdot(b, c) + fdot(c, a);
    return 2.0 * std::atan2(det, denom);
}

double spherical_facet_area(const RealizedPolyhedron& rp, int facet) {
    const TriMesh& M = rp.facets[facet].mesh;
    double sum = 0.0;
    for (const auto& t : M.triangles)
        sum += triangle_solid_angle(fnormalize(M.vertices[t[0]]), fnormalize(M.vertices[t[1]]),
                                    fnormalize(M.vertices[t[2]]));
    return std::abs(sum);
}

double enclosed_volume(const RealizedPolyhedron& rp) {
    double six_v = 0.0;
    for (const FacetGeometry& G : rp.facets)
        for (const auto& t : G.mesh.triangles)
            six_v += fdot(G.mesh.vertices[t[0]], fcross(G.mesh.vertices[t[1]], G.mesh.vertices[t[2]]));
    return six_v / 6.0;
}

namespace {

void append_float(std::string& s, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    s += buf;
}

}  // namespace

std::string export_obj(const RealizedPolyhedron& rp) {
    std::string s;
    for (const FacetGeometry& G : rp.facets)
        for (const F3& v : G.mesh.vertices) {
            s += "v ";
            append_float(s, v[0]);
            s += ' ';
            append_float(s, v[1]);
            s += ' ';
            append_float(s, v[2]);
            s += '\n';
        }
    int offset = 1;
    for (std::size_t f = 0; f < rp.facets.size(); ++f) {
        const TriMesh& M = rp.facets[f].mesh;
        s += "g facet_" + std::to_string(f + 1) + "\n";
        for (const auto& t : M.triangles)
            s += "f " + std::to_string(offset + t[0]) + " " + std::to_string(offset + t[1]) + " " +
                 std::to_string(offset + t[2]) + "\n";
        offset += static_cast<int>(M.vertices.size());
    }
    return s;
}

std::string export_ply(const RealizedPolyhedron& rp) {
    std::size_t nv = 0, nt = 0;
    for (const FacetGeometry& G : rp.facets) {
        nv += G.mesh.vertices.size();
        nt += G.mesh.triangles.size();
    }
    std::string s = "ply\nformat ascii 1.0\nelement vertex " + std::to_string(nv) +
                    "\nproperty double x\nproperty double y\nproperty double z\nelement face " +
                    std::to_string(nt) +
                    "\nproperty list uchar int vertex_indices\nend_header\n";
    for (const FacetGeometry& G : rp.facets)
        for (const F3& v : G.mesh.vertices) {
            append_float(s, v[0]);
            s += ' ';
            append_float(s, v[1]);
            s += ' ';
            append_float(s, v[2]);
            s += '\n';
        }
    int offset = 0;
    for (const FacetGeometry& G : rp.facets) {
        for (const auto& t : G.mesh.triangles)
            s += "3 " + std::to_string(offset + t[0]) + " " + std::to_string(offset + t[1]) + " " +
                 std::to_string(offset + t[2]) + "\n";
        offset += static_cast<int>(G.mesh.vertices.size());
    }
    return s;
}

nlohmann::json realization_metadata(const RealizedPolyhedron& rp) {
    const RealizationSkeleton& skel = *rp.skeleton;
    const AbstractPolyhedron& P = *skel.poly;
    nlohmann::json j;
    j["family"] = family_name(rp.family);
    j["representation"] = skel.rep_name;
    j["schlafli"] = {{"p", skel.p()}, {"q", skel.q()}};
    j["counts"] = {{"vertices", P.vertex_count()},
                   {"edges", P.edge_count()},
                   {"facets", P.facet_count()}};
    nlohmann::json facets = nlohmann::json::array();
    for (std::size_t f = 0; f < rp.facets.size(); ++f)
        facets.push_back({{"j", f + 1},
                          {"kind", family_name(rp.facets[f].kind)},
                          {"coplanar", static_cast<bool>(rp.coplanar[f])},
                          {"self_intersects", static_cast<bool>(rp.self_intersecting[f])},
                          {"regions", rp.facets[f].region_count},
                          {"triangles", rp.facets[f].mesh.triangles.size()}});
    j["facets"] = std::move(facets);
    if (rp.family == Family::Convex || rp.family == Family::Star)
        j["any_crossing"] = rp.any_crossing;
    if (rp.family == Family::Spherical) {
        nlohmann::json angles = nlohmann::json::array();
        double total = 0.0;
        for (std::size_t f = 0; f < rp.facets.size(); ++f) {
            double a = spherical_facet_area(rp, static_cast<int>(f));
            angles.push_back(a);
            total += a;
        }
        j["solid_angles"] = std::move(angles);
        j["total_solid_angle"] = total;
    }
    if (rp.family == Family::Skew) {
        bool monotone = true;
        for (std::size_t i = 1; i < rp.plateau.area_log.size(); ++i)
            if (rp.plateau.area_log[i] > rp.plateau.area_log[i - 1]) monotone = false;
        j["plateau"] = {{"converged", rp.plateau.converged},
                        {"iterations", rp.plateau.iterations},
                        {"final_area", rp.plateau.final_area},
                        {"final_displacement", rp.plateau.final_displacement},
                        {"max_gradient", rp.plateau.max_gradient},
                        {"mean_edge_length", rp.plateau.mean_edge_length},
                        {"area_monotone", monotone}};
        j["enclosed_volume"] = enclosed_volume(rp);
    }
    return j;
}

}  // namespace polyreal
