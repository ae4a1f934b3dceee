#include "polyreal/wythoff.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace polyreal {

namespace {

Mat3 half_scaled(std::array<long, 9> numer, std::array<int, 9> kind) {
    // kind: 0 -> numer/2, 1 -> numer*tau/2, 2 -> numer*sigma/2
    Mat3 M;
    QSqrt5 half(Rational(1, 2));
    for (int k = 0; k < 9; ++k) {
        QSqrt5 unit = kind[k] == 0 ? QSqrt5(1) : (kind[k] == 1 ? golden_tau() : golden_sigma());
        M.m[k] = qmul(qmul(QSqrt5(numer[k]), unit), half);
    }
    return M;
}

}  // namespace

Representation builtin_representation(const std::string& name) {
    Representation rep;
    rep.name = name;
    rep.gens[0] = mat_diag(QSqrt5(-1), QSqrt5(1), QSqrt5(1));
    rep.gens[2] = mat_diag(QSqrt5(1), QSqrt5(-1), QSqrt5(1));
    if (name == "phi1") {
        // 1/2 [[1, -tau, -sigma], [-tau, sigma, 1], [-sigma, 1, tau]]
        rep.gens[1] = half_scaled({1, -1, -1, -1, 1, 1, -1, 1, 1},
                                  {0, 1, 2, 1, 2, 0, 2, 0, 1});
    } else if (name == "phi2") {
        // 1/2 [[1, -sigma, -tau], [-sigma, tau, 1], [-tau, 1, sigma]]
        rep.gens[1] = half_scaled({1, -1, -1, -1, 1, 1, -1, 1, 1},
                                  {0, 2, 1, 2, 1, 0, 1, 0, 2});
    } else {
        throw std::invalid_argument("unknown representation: " + name);
    }
    return rep;
}

std::vector<Mat3> representation_images(const FiniteGroup& G, const Representation& rep) {
    if (G.num_generators() != 3)
        throw std::invalid_argument("representation_images: group must have 3 generators");
    int n = G.size();
    std::vector<Mat3> images(n);
    std::vector<char> known(n, 0);
    images[0] = mat_identity();
    known[0] = 1;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier) {
            for (int k = 0; k < 3; ++k) {
                int y = G.mul(x, G.generator(k));
                Mat3 m = mat_mul(images[x], rep.gens[k]);
                if (known[y]) {
                    if (!(images[y] == m))
                        throw std::invalid_argument("generator images do not define a homomorphism");
                } else {
                    images[y] = m;
                    known[y] = 1;
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    std::set<Mat3, Mat3Less> distinct(images.begin(), images.end());
    if (static_cast<int>(distinct.size()) != n)
        throw std::invalid_argument("representation is not faithful");
    return images;
}

Vec3 act_point(const std::vector<Mat3>& images, int g, const Vec3& x) {
    return mat_apply(mat_transpose(images[g]), x);
}

int wythoff_dimension(const std::vector<Mat3>& images, const StringCGroup& S) {
    Subgroup H = subgroup_generated(*S.group, {S.triple.t1, S.triple.t2});
    QSqrt5 sum;
    for (int g : H.members) sum = qadd(sum, mat_trace(images[g]));
    if (sum.b != 0) throw std::logic_error("trace sum has an irrational part");
    Rational d = sum.a / Rational(H.order());
    if (d.get_den() != 1) throw std::logic_error("trace formula gave a non-integer");
    return static_cast<int>(d.get_num().get_si());
}

namespace {

std::vector<Vec3> common_fixed_basis(const Mat3& A, const Mat3& B) {
    // Kernel of the 6x3 stack [A - I; B - I] by Gauss-Jordan over Q(sqrt5).
    std::vector<std::array<QSqrt5, 3>> rows;
    Mat3 I = mat_identity();
    for (const Mat3* M : {&A, &B})
        for (int i = 0; i < 3; ++i)
            rows.push_back({qsub(M->at(i, 0), I.at(i, 0)), qsub(M->at(i, 1), I.at(i, 1)),
                            qsub(M->at(i, 2), I.at(i, 2))});
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < 3; ++c) {
        std::size_t pr = r;
        while (pr < rows.size() && rows[pr][c].is_zero()) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[r], rows[pr]);
        QSqrt5 inv = qinv(rows[r][c]);
        for (auto& e : rows[r]) e = qmul(inv, e);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            QSqrt5 f = rows[i][c];
            for (int j = 0; j < 3; ++j) rows[i][j] = qsub(rows[i][j], qmul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<Vec3> basis;
    for (int fc = 0; fc < 3; ++fc) {
        if (std::find(pivots.begin(), pivots.end(), fc) != pivots.end()) continue;
        std::array<QSqrt5, 3> v{QSqrt5(0), QSqrt5(0), QSqrt5(0)};
        v[fc] = QSqrt5(1);
        for (std::size_t ri = 0; ri < pivots.size(); ++ri) v[pivots[ri]] = qneg(rows[ri][fc]);
        int lead = 0;
        while (v[lead].is_zero()) ++lead;
        QSqrt5 li = qinv(v[lead]);
        basis.push_back({qmul(li, v[0]), qmul(li, v[1]), qmul(li, v[2])});
    }
    return basis;
}

}  // namespace

WythoffSpace wythoff_space(const std::vector<Mat3>& images, const StringCGroup& S) {
    WythoffSpace W;
    W.basis = common_fixed_basis(images[S.triple.t1], images[S.triple.t2]);
    W.dimension = static_cast<int>(W.basis.size());
    if (W.dimension != wythoff_dimension(images, S))
        throw std::logic_error("fixed-space dimension disagrees with the trace formula");
    return W;
}

std::vector<int> incident_lower_faces(const AbstractPolyhedron& P, int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("incident_lower_faces: i must be 1, 2, or 3");
    std::set<int> idx;
    if (i == 3) {
        for (int j = 0; j < P.facet_count(); ++j) idx.insert(j);
    } else {
        for (int g : P.stabilizer(i).members) idx.insert(P.cosets(i - 1).coset_of[g]);
    }
    return std::vector<int>(idx.begin(), idx.end());
}

RealizationSkeleton build_skeleton(const AbstractPolyhedron& P, const std::vector<Mat3>& images,
                                   const std::string& rep_name, const Vec3& base) {
    if (vec_is_zero(base)) throw std::domain_error("base point must be nonzero");
    const FiniteGroup& G = P.group();
    const GeneratorTriple& T = P.source().triple;

    RealizationSkeleton skel;
    skel.poly = &P;
    skel.rep_name = rep_name;
    skel.images = images;
    skel.base = base;

    skel.vertices.reserve(P.vertex_count());
    std::map<Vec3, int, Vec3Less> seen;
    for (int j = 0; j < P.vertex_count(); ++j) {
        Vec3 pt = act_point(images, P.cosets(0).reps[j], base);
        if (!seen.emplace(pt, j).second)
            throw std::logic_error("distinct vertex cosets map to the same point");
        skel.vertices.push_back(pt);
    }

    const CosetDecomposition& D0 = P.cosets(0);
    for (int j = 0; j < P.edge_count(); ++j) {
        int rep = P.cosets(1).reps[j];
        skel.edges.push_back({D0.coset_of[rep], D0.coset_of[G.mul(T.t0, rep)]});
    }

    int rho = G.mul(T.t0, T.t1);
    int p = P.source().p;
    for (int j = 0; j < P.facet_count(); ++j) {
        std::vector<int> cycle;
        int x = P.cosets(2).reps[j];
        for (int k = 0; k < p; ++k) {
            cycle.push_back(D0.coset_of[x]);
            x = G.mul(rho, x);
        }
        if (D0.coset_of[x] != cycle[0]) throw std::logic_error("facet boundary walk did not close");
        std::set<int> uniq(cycle.begin(), cycle.end());
        if (static_cast<int>(uniq.size()) != p)
            throw std::logic_error("facet boundary walk repeats a vertex");

        std::vector<int> ecycle(p, -1);
        const RankedPoset& R = P.poset();
        for (int k = 0; k < p; ++k) {
            int a = cycle[k], b = cycle[(k + 1) % p];
            for (int e : R.down(3, j)) {
                auto [u, v] = std::pair{skel.edges[e][0], skel.edges[e][1]};
                if ((u == a && v == b) || (u == b && v == a)) {
                    if (ecycle[k] != -1) throw std::logic_error("ambiguous boundary edge");
                    ecycle[k] = e;
                }
            }
            if (ecycle[k] == -1) throw std::logic_error("boundary step is not a poset edge");
        }

        int start = static_cast<int>(std::min_element(ecycle.begin(), ecycle.end()) - ecycle.begin());
        std::vector<int> vcyc(p), ecyc(p);
        for (int k = 0; k < p; ++k) {
            vcyc[k] = cycle[(start + k) % p];
            ecyc[k] = ecycle[(start + k) % p];
        }
        skel.facet_vertices.push_back(std::move(vcyc));
        skel.facet_edges.push_back(std::move(ecyc));
    }
    return skel;
}

RealizationSkeleton build_skeleton(const AbstractPolyhedron& P, const std::vector<Mat3>& images,
                                   const std::string& rep_name) {
    WythoffSpace W = wythoff_space(images, P.source());
    if (W.dimension == 0)
        throw std::domain_error("Wythoff space is zero-dimensional: no realization from this pair");
    return build_skeleton(P, images, rep_name, W.basis[0]);
}

namespace {

std::multiset<Vec3, Vec3Less> coord_set(const RealizationSkeleton& s, const std::vector<int>& idx) {
    std::multiset<Vec3, Vec3Less> out;
    for (int v : idx) out.insert(s.vertices[v]);
    return out;
}

}  // namespace

bool skeleton_equivariant(const RealizationSkeleton& skel) {
    const AbstractPolyhedron& P = *skel.poly;
    const FiniteGroup& G = P.group();
    for (int g = 0; g < G.size(); ++g) {
        for (int j = 0; j < P.vertex_count(); ++j) {
            int img = P.cosets(0).coset_of[G.mul(P.cosets(0).reps[j], g)];
            if (!(skel.vertices[img] == act_point(skel.images, g, skel.vertices[j]))) return false;
        }
        for (int j = 0; j < P.edge_count(); ++j) {
            int img = P.cosets(1).coset_of[G.mul(P.cosets(1).reps[j], g)];
            std::multiset<Vec3, Vec3Less> want;
            for (int v : skel.edges[j]) want.insert(act_point(skel.images, g, skel.vertices[v]));
            if (coord_set(skel, {skel.edges[img][0], skel.edges[img][1]}) != want) return false;
        }
        for (int j = 0; j < P.facet_count(); ++j) {
            int img = P.cosets(2).coset_of[G.mul(P.cosets(2).reps[j], g)];
            std::multiset<Vec3, Vec3Less> want;
            for (int v : skel.facet_vertices[j]) want.insert(act_point(skel.images, g, skel.vertices[v]));
            if (coord_set(skel, skel.facet_vertices[img]) != want) return false;
        }
    }
    return true;
}

bool skeleton_stabilizers_match(const RealizationSkeleton& skel) {
    const AbstractPolyhedron& P = *skel.poly;
    const FiniteGroup& G = P.group();

    std::multiset<Vec3, Vec3Less> base_edge =
        coord_set(skel, {skel.edges[0][0], skel.edges[0][1]});
    std::multiset<Vec3, Vec3Less> base_facet = coord_set(skel, skel.facet_vertices[0]);

    for (int g = 0; g < G.size(); ++g) {
        bool fix_v = act_point(skel.images, g, skel.vertices[0]) == skel.vertices[0];
        if (fix_v != P.stabilizer(0).contains(g)) return false;

        std::multiset<Vec3, Vec3Less> eimg;
        for (const Vec3& pt : base_edge) eimg.insert(act_point(skel.images, g, pt));
        if ((eimg == base_edge) != P.stabilizer(1).contains(g)) return false;

        std::multiset<Vec3, Vec3Less> fimg;
        for (const Vec3& pt : base_facet) fimg.insert(act_point(skel.images, g, pt));
        if ((fimg == base_facet) != P.stabilizer(2).contains(g)) return false;
    }
    return true;
}

bool skeleton_equal_norms(const RealizationSkeleton& skel) {
    if (skel.vertices.empty()) return true;
    QSqrt5 n0 = vdot(skel.vertices[0], skel.vertices[0]);
    for (const Vec3& v : skel.vertices)
        if (!(vdot(v, v) == n0)) return false;
    return true;
}

bool skeleton_equal_edge_lengths(const RealizationSkeleton& skel) {
    if (skel.edges.empty()) return true;
    auto sq_len = [&](const std::array<int, 2>& e) {
        Vec3 d = vsub(skel.vertices[e[0]], skel.vertices[e[1]]);
        return vdot(d, d);
    };
    QSqrt5 l0 = sq_len(skel.edges[0]);
    for (const auto& e : skel.edges)
        if (!(sq_len(e) == l0)) return false;
    return true;
}

namespace {

nlohmann::json exact_quad(const QSqrt5& v) {
    return {v.a.get_num().get_str(), v.a.get_den().get_str(), v.b.get_num().get_str(),
            v.b.get_den().get_str()};
}

nlohmann::json vec_json(const Vec3& v) {
    return {{"exact", {exact_quad(v.x), exact_quad(v.y), exact_quad(v.z)}},
            {"float", {to_float(v.x), to_float(v.y), to_float(v.z)}}};
}

}  // namespace

nlohmann::json skeleton_json(const RealizationSkeleton& skel) {
    const AbstractPolyhedron& P = *skel.poly;
    nlohmann::json j;
    j["representation"] = skel.rep_name;
    j["schlafli"] = {{"p", skel.p()}, {"q", skel.q()}};
    j["base_point"] = vec_json(skel.base);
    j["counts"] = {{"vertices", P.vertex_count()},
                   {"edges", P.edge_count()},
                   {"facets", P.facet_count()}};
    nlohmann::json verts = nlohmann::json::array();
    for (int i = 0; i < P.vertex_count(); ++i) {
        nlohmann::json v = vec_json(skel.vertices[i]);
        v["j"] = i + 1;
        verts.push_back(std::move(v));
    }
    j["vertices"] = std::move(verts);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : skel.edges) edges.push_back({e[0] + 1, e[1] + 1});
    j["edges"] = std::move(edges);
    nlohmann::json facets = nlohmann::json::array();
    for (std::size_t f = 0; f < skel.facet_vertices.size(); ++f) {
        nlohmann::json vc = nlohmann::json::array(), ec = nlohmann::json::array();
        for (int v : skel.facet_vertices[f]) vc.push_back(v + 1);
        for (int e : skel.facet_edges[f]) ec.push_back(e + 1);
        facets.push_back({{"j", f + 1}, {"vertices", std::move(vc)}, {"edges", std::move(ec)}});
    }
    j["facets"] = std::move(facets);
    return j;
}

}  // namespace polyreal
