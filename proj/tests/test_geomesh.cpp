#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace polyreal;
using testfix::qvec;

namespace {

RealizationSkeleton bare_skeleton(std::vector<Vec3> verts,
                                  std::vector<std::array<int, 2>> edges,
                                  std::vector<std::vector<int>> facets = {}) {
    RealizationSkeleton s;
    s.vertices = std::move(verts);
    s.edges = std::move(edges);
    s.facet_vertices = std::move(facets);
    s.facet_edges.resize(s.facet_vertices.size());
    return s;
}

std::vector<Vec3> facet_cycle(const RealizationSkeleton& skel, int f) {
    std::vector<Vec3> out;
    for (int v : skel.facet_vertices[f]) out.push_back(skel.vertices[v]);
    return out;
}

double fdist(const F3& a, const F3& b) {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                     (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace

TEST_CASE("family codes") {
    for (Family f : {Family::Spherical, Family::Convex, Family::Star, Family::Skew}) {
        CHECK(family_from_code(family_code(f)) == f);
        CHECK(family_from_code(family_name(f)) == f);
    }
    CHECK_THROWS_AS(family_from_code("xx"), std::invalid_argument);
}

TEST_CASE("edge crossing predicate on synthetic segments") {
    auto skel = bare_skeleton(
        {qvec(0, 0, 0), qvec(2, 2, 0), qvec(0, 2, 0), qvec(2, 0, 0), qvec(0, 0, 1),
         qvec(1, 0, 0), qvec(3, 0, 0), qvec(4, 0, 0), qvec(5, 0, 0)},
        {{0, 1}, {2, 3}, {1, 2}, {0, 4}, {5, 6}, {7, 8}});
    CHECK(edges_properly_cross(skel, 0, 1));    // X crossing at (1,1,0)
    CHECK(!edges_properly_cross(skel, 0, 2));   // shared vertex
    CHECK(!edges_properly_cross(skel, 1, 3));   // skew lines
    CHECK(edges_properly_cross(skel, 4, 5) == false);  // collinear, disjoint
    // collinear, overlapping open intervals
    auto skel2 = bare_skeleton({qvec(0, 0, 0), qvec(2, 0, 0), qvec(1, 0, 0), qvec(3, 0, 0)},
                               {{0, 1}, {2, 3}});
    CHECK(edges_properly_cross(skel2, 0, 1));
}

TEST_CASE("facet crossing predicate on synthetic triangles") {
    // A in z=0; B stands in the y=1 plane and pokes through A's interior
    auto crossing = bare_skeleton(
        {qvec(0, 0, 0), qvec(4, 0, 0), qvec(0, 4, 0), qvec(1, 1, -1), qvec(3, 1, -1),
         qvec(1, 1, 2)},
        {}, {{0, 1, 2}, {3, 4, 5}});
    CHECK(facets_properly_cross(crossing, 0, 1));

    // same planes, B moved far away along x
    auto apart = bare_skeleton(
        {qvec(0, 0, 0), qvec(4, 0, 0), qvec(0, 4, 0), qvec(11, 1, -1), qvec(13, 1, -1),
         qvec(11, 1, 2)},
        {}, {{0, 1, 2}, {3, 4, 5}});
    CHECK(!facets_properly_cross(apart, 0, 1));

    // parallel planes never cross
    auto parallel = bare_skeleton(
        {qvec(0, 0, 0), qvec(4, 0, 0), qvec(0, 4, 0), qvec(0, 0, 1), qvec(4, 0, 1),
         qvec(0, 4, 1)},
        {}, {{0, 1, 2}, {3, 4, 5}});
    CHECK(!facets_properly_cross(parallel, 0, 1));
}

TEST_CASE("coplanarity and self-intersection flags on the library rows") {
    const testfix::BuiltSkeleton& dodeca1 = testfix::published_skeleton(5, 3, "", "phi1");
    const testfix::BuiltSkeleton& dodeca2 = testfix::published_skeleton(5, 3, "", "phi2");
    const testfix::BuiltSkeleton& icosa1 = testfix::published_skeleton(3, 5, "", "phi1");
    const testfix::BuiltSkeleton& skew1 = testfix::published_skeleton(10, 5, "b", "phi1");

    CHECK(facet_coplanar(dodeca1.skel, 0));
    CHECK(!facet_self_intersects(dodeca1.skel, 0));
    CHECK(facet_coplanar(dodeca2.skel, 0));
    CHECK(facet_self_intersects(dodeca2.skel, 0));  // pentagram facet
    CHECK(facet_coplanar(icosa1.skel, 0));
    CHECK(!facet_self_intersects(icosa1.skel, 0));
    CHECK(!facet_coplanar(skew1.skel, 0));
}

TEST_CASE("family classification for the twelve realizable skeletons") {
    const struct {
        int p, q;
        const char* letter;
        Family phi1, phi2;
    } rows[] = {
        {3, 5, "", Family::Convex, Family::Star},
        {5, 3, "", Family::Convex, Family::Star},
        {5, 5, "", Family::Star, Family::Star},
        {6, 5, "c", Family::Skew, Family::Skew},
        {10, 3, "b", Family::Skew, Family::Skew},
        {10, 5, "b", Family::Skew, Family::Skew},
    };
    for (const auto& row : rows) {
        CAPTURE(row.p);
        CAPTURE(row.q);
        const testfix::BuiltSkeleton& b1 = testfix::published_skeleton(row.p, row.q, row.letter, "phi1");
        const testfix::BuiltSkeleton& b2 = testfix::published_skeleton(row.p, row.q, row.letter, "phi2");
        CHECK(classify_family(b1.skel) == row.phi1);
        CHECK(classify_family(b2.skel) == row.phi2);
        CHECK(classify_family(b1.skel, ExecMode::Serial) == row.phi1);
    }
}

TEST_CASE("even-odd regions of planar facet boundaries") {
    SUBCASE("pentagon") {
        const testfix::BuiltSkeleton& B = testfix::published_skeleton(5, 3, "", "phi1");
        FacetRegions R = star_facet_regions(facet_cycle(B.skel, 0));
        CHECK(R.region_count == 1);
        CHECK(R.points.size() == 5);
        CHECK(R.triangles.size() == 3);
    }
    SUBCASE("pentagram") {
        const testfix::BuiltSkeleton& B = testfix::published_skeleton(5, 3, "", "phi2");
        FacetRegions R = star_facet_regions(facet_cycle(B.skel, 0));
        CHECK(R.region_count == 5);
        CHECK(R.points.size() == 10);  // 5 corners + 5 crossings
        CHECK(R.triangles.size() == 5);
        for (const auto& t : R.triangles)
            for (int k = 0; k < 3; ++k) CHECK(t[k] < static_cast<int>(R.points.size()));
    }
    SUBCASE("bowtie quadrilateral gives two regions") {
        FacetRegions R = star_facet_regions(
            {qvec(0, 0, 0), qvec(2, 2, 0), qvec(2, 0, 0), qvec(0, 2, 0)});
        CHECK(R.region_count == 2);
        CHECK(R.points.size() == 5);
        CHECK(R.triangles.size() == 2);
    }
    SUBCASE("rejects degenerate and non-planar cycles") {
        CHECK_THROWS_AS(star_facet_regions({qvec(0, 0, 0), qvec(1, 0, 0), qvec(2, 0, 0)}),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            star_facet_regions({qvec(0, 0, 0), qvec(1, 0, 0), qvec(1, 1, 1), qvec(0, 1, 2)}),
            std::invalid_argument);
    }
    SUBCASE("rejects non-proper touching") {
        CHECK_THROWS_AS(star_facet_regions(
                            {qvec(0, 0, 0), qvec(4, 0, 0), qvec(4, 4, 0), qvec(2, 0, 0)}),
                        std::logic_error);
    }
}

TEST_CASE("classical realization of the convex rows") {
    const testfix::BuiltSkeleton& B = testfix::published_skeleton(3, 5, "", "phi1");
    RealizedPolyhedron rp = realize_classical(B.skel);
    CHECK(rp.family == Family::Convex);
    CHECK(!rp.any_crossing);
    CHECK(rp.facets.size() == 20);
    for (const FacetGeometry& G : rp.facets) {
        CHECK(G.kind == Family::Convex);
        CHECK(G.region_count == 1);
        CHECK(G.mesh.triangles.size() == 1);
        CHECK(G.boundary.size() == 3);
    }
    CHECK(rp.edge_geometry.size() == 30);

    // every edge has squared length 4, so the known icosahedron volume applies
    for (const auto& e : B.skel.edges) {
        Vec3 d = vsub(B.skel.vertices[e[0]], B.skel.vertices[e[1]]);
        CHECK(vdot(d, d) == QSqrt5(4));
    }
    double vol = enclosed_volume(rp);
    CHECK(vol == doctest::Approx((10.0 / 3.0) * (3.0 + std::sqrt(5.0))).epsilon(1e-9));

    // exact convexity: all vertices weakly on one side of each facet plane
    for (int f = 0; f < 20; ++f) {
        std::vector<Vec3> cyc = facet_cycle(B.skel, f);
        Vec3 n = vcross(vsub(cyc[1], cyc[0]), vsub(cyc[2], cyc[0]));
        QSqrt5 d = vdot(n, cyc[0]);
        int side = 0;
        for (const Vec3& w : B.skel.vertices) {
            int s = qsign(qsub(vdot(n, w), d));
            if (s == 0) continue;
            if (side == 0) side = s;
            CHECK(s == side);
        }
    }
}

TEST_CASE("classical realization of a star row") {
    const testfix::BuiltSkeleton& B = testfix::published_skeleton(5, 3, "", "phi2");
    RealizedPolyhedron rp = realize_classical(B.skel);
    CHECK(rp.family == Family::Star);
    CHECK(rp.facets.size() == 12);
    for (int f = 0; f < 12; ++f) {
        CHECK(rp.facets[f].kind == Family::Star);
        CHECK(rp.facets[f].region_count == 5);
        CHECK(rp.facets[f].mesh.triangles.size() == 5);
        CHECK(rp.self_intersecting[f]);
        CHECK(rp.coplanar[f]);
    }

    // copies are the base facet pushed through the facet representatives
    const AbstractPolyhedron& P = *B.poly;
    const testfix::H3& h = testfix::H3::get();
    for (int f = 0; f < 12; ++f) {
        int rep = P.cosets(2).reps[f];
        Mat3 T = mat_transpose(h.phi2[rep]);
        double t[9];
        for (int k = 0; k < 9; ++k) t[k] = to_float(T.m[k]);
        REQUIRE(rp.facets[f].mesh.vertices.size() == rp.facets[0].mesh.vertices.size());
        for (std::size_t k = 0; k < rp.facets[0].mesh.vertices.size(); ++k) {
            const F3& b = rp.facets[0].mesh.vertices[k];
            F3 expect = {t[0] * b[0] + t[1] * b[1] + t[2] * b[2],
                         t[3] * b[0] + t[4] * b[1] + t[5] * b[2],
                         t[6] * b[0] + t[7] * b[1] + t[8] * b[2]};
            CHECK(fdist(expect, rp.facets[f].mesh.vertices[k]) < 1e-9);
        }
    }

    // a skew row refuses the planar path
    const testfix::BuiltSkeleton& S = testfix::published_skeleton(10, 5, "b", "phi1");
    CHECK_THROWS_AS(realize_classical(S.skel), std::invalid_argument);
}

TEST_CASE("spherical realization covers the sphere once for the dodecahedron") {
    const testfix::BuiltSkeleton& B = testfix::published_skeleton(5, 3, "", "phi1");
    RealizedPolyhedron rp = realize_spherical(B.skel);
    CHECK(rp.family == Family::Spherical);
    CHECK(rp.facets.size() == 12);

    double total = 0.0, first = spherical_facet_area(rp, 0);
    for (int f = 0; f < 12; ++f) {
        double a = spherical_facet_area(rp, f);
        CHECK(a == doctest::Approx(first).epsilon(1e-9));
        total += a;
        CHECK(rp.facets[f].boundary.size() == 5 * 16);
        for (const F3& v : rp.facets[f].mesh.vertices)
            CHECK(std::abs(fdist(v, {0, 0, 0}) - 1.0) < 1e-12);
    }
    CHECK(total == doctest::Approx(4.0 * 3.14159265358979323846).epsilon(1e-6 / 12.0));

    nlohmann::json meta = realization_metadata(rp);
    CHECK(meta["family"] == "spherical");
    CHECK(meta["total_solid_angle"].get<double>() ==
          doctest::Approx(4.0 * 3.14159265358979323846).epsilon(1e-6));

    // antipodal endpoints cannot span an arc
    auto anti = bare_skeleton({qvec(1, 0, 0), qvec(-1, 0, 0)}, {{0, 1}});
    CHECK_THROWS_AS(realize_spherical(anti), std::domain_error);
}

TEST_CASE("minimal surface solver") {
    PlateauParams quick;
    quick.samples_per_edge = 4;
    quick.refinement_levels = 2;

    SUBCASE("planar boundary stays planar") {
        std::vector<F3> square{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
        PlateauSolution sol = solve_plateau(square, quick);
        CHECK(sol.stats.converged);
        CHECK(sol.stats.final_area == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sol.stats.max_gradient < 1e-8);
        for (std::size_t i = 1; i < sol.stats.area_log.size(); ++i)
            CHECK(sol.stats.area_log[i] <= sol.stats.area_log[i - 1] + 1e-15);
        for (const F3& v : sol.mesh.vertices) CHECK(std::abs(v[2]) < 1e-9);
    }

    SUBCASE("saddle boundary relaxes below the initial fan") {
        std::vector<F3> saddle{{0, 0, 0}, {1, 0, 1}, {1, 1, 0}, {0, 1, 1}};
        PlateauSolution sol = solve_plateau(saddle, quick);
        CHECK(sol.stats.converged);
        CHECK(sol.stats.final_displacement < quick.tolerance);
        CHECK(sol.stats.final_area < sol.stats.area_log.front());
        for (std::size_t i = 1; i < sol.stats.area_log.size(); ++i)
            CHECK(sol.stats.area_log[i] <= sol.stats.area_log[i - 1] + 1e-15);

        // boundary samples never move
        int bn = 4 * quick.samples_per_edge;
        for (int k = 0; k < 4; ++k) {
            const F3& corner = sol.mesh.vertices[k * quick.samples_per_edge];
            CHECK(fdist(corner, saddle[k]) < 1e-13);
        }
        for (int i = 0; i < bn; ++i) CHECK(sol.is_boundary[i] == 1);
    }

    SUBCASE("parameter validation") {
        std::vector<F3> square{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
        PlateauParams bad = quick;
        bad.step = 0.0;
        CHECK_THROWS_AS(solve_plateau(square, bad), std::invalid_argument);
        CHECK_THROWS_AS(solve_plateau({{0, 0, 0}, {1, 0, 0}}, quick), std::invalid_argument);
    }
}

TEST_CASE("skew realization spans non-planar facets") {
    PlateauParams quick;
    quick.samples_per_edge = 4;
    quick.refinement_levels = 2;

    const testfix::BuiltSkeleton& B = testfix::published_skeleton(10, 5, "b", "phi1");
    RealizedPolyhedron rp = realize_skew(B.skel, quick);
    CHECK(rp.family == Family::Skew);
    CHECK(rp.facets.size() == 6);
    CHECK(rp.plateau.converged);
    CHECK(rp.plateau.iterations <= quick.max_iterations);
    CHECK(std::abs(enclosed_volume(rp)) > 0.1);

    // facet boundaries pass through the skeleton corners
    for (int f = 0; f < 6; ++f) {
        CHECK(rp.facets[f].kind == Family::Skew);
        const std::vector<int>& cyc = B.skel.facet_vertices[f];
        REQUIRE(rp.facets[f].boundary.size() ==
                cyc.size() * static_cast<std::size_t>(quick.samples_per_edge));
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const Vec3& cv = B.skel.vertices[cyc[k]];
            F3 corner{to_float(cv.x), to_float(cv.y), to_float(cv.z)};
            CHECK(fdist(rp.facets[f].boundary[k * quick.samples_per_edge], corner) < 1e-9);
        }
    }

    nlohmann::json meta = realization_metadata(rp);
    CHECK(meta["family"] == "skew");
    CHECK(meta["plateau"]["converged"] == true);
    CHECK(meta["plateau"]["area_monotone"] == true);

    // planar rows refuse the skew path
    const testfix::BuiltSkeleton& D = testfix::published_skeleton(5, 3, "", "phi1");
    CHECK_THROWS_AS(realize_skew(D.skel, quick), std::invalid_argument);
}

TEST_CASE("mesh exports") {
    const testfix::BuiltSkeleton& B = testfix::published_skeleton(5, 3, "", "phi1");
    RealizedPolyhedron rp = realize_classical(B.skel);

    std::string obj = export_obj(rp);
    CHECK(obj == export_obj(rp));  // deterministic
    std::size_t v_lines = 0, f_lines = 0, g_lines = 0;
    std::istringstream stream(obj);
    std::string line;
    int max_index = 0;
    while (std::getline(stream, line)) {
        if (line.rfind("v ", 0) == 0) ++v_lines;
        if (line.rfind("g ", 0) == 0) ++g_lines;
        if (line.rfind("f ", 0) == 0) {
            ++f_lines;
            std::istringstream ls(line.substr(2));
            int a, b, c;
            ls >> a >> b >> c;
            CHECK(a >= 1);
            max_index = std::max({max_index, a, b, c});
        }
    }
    CHECK(v_lines == 12 * 5);
    CHECK(f_lines == 12 * 3);
    CHECK(g_lines == 12);
    CHECK(max_index == static_cast<int>(v_lines));

    std::string ply = export_ply(rp);
    CHECK(ply.find("element vertex 60") != std::string::npos);
    CHECK(ply.find("element face 36") != std::string::npos);
    CHECK(ply.rfind("ply\nformat ascii 1.0\n", 0) == 0);

    nlohmann::json meta = realization_metadata(rp);
    CHECK(meta["family"] == "convex");
    CHECK(meta["facets"].size() == 12);
    CHECK(meta["facets"][0]["regions"] == 1);
    CHECK(meta["any_crossing"] == false);
}
