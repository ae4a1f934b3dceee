#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace polyreal;

namespace {

// Square pyramid: apex 0, base 1-4. Satisfies all axioms but has two facet
// shapes, so it cannot be flag-transitive.
RankedPoset square_pyramid() {
    RankedPoset P({1, 5, 8, 5, 1});
    for (int v = 0; v < 5; ++v) P.add_cover(0, 0, v);
    const int edges[8][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {0, 1}, {0, 2}, {0, 3}, {0, 4}};
    for (int e = 0; e < 8; ++e) {
        P.add_cover(1, edges[e][0], e);
        P.add_cover(1, edges[e][1], e);
    }
    const int facets[5][4] = {{4, 0, 5, -1}, {5, 1, 6, -1}, {6, 2, 7, -1}, {7, 3, 4, -1},
                              {0, 1, 2, 3}};
    for (int f = 0; f < 5; ++f)
        for (int k = 0; k < 4; ++k)
            if (facets[f][k] >= 0) P.add_cover(2, facets[f][k], f);
    for (int f = 0; f < 5; ++f) P.add_cover(3, f, 0);
    return P;
}

}  // namespace

TEST_CASE("ranked poset plumbing") {
    RankedPoset P({1, 2, 1, 1, 1});
    P.add_cover(0, 0, 0);
    P.add_cover(0, 0, 1);
    P.add_cover(1, 0, 0);
    CHECK(P.up(0, 0).size() == 2);
    CHECK(P.down(2, 0) == std::vector<int>{0});
    P.add_cover(1, 1, 0);
    P.remove_cover(1, 1, 0);
    CHECK(P.down(2, 0) == std::vector<int>{0});
    int added = P.add_face(1);
    CHECK(added == 2);
    CHECK(P.count(1) == 3);
}

TEST_CASE("square pyramid passes the axioms but is not flag-transitive") {
    RankedPoset P = square_pyramid();
    AxiomReport r = verify_axioms(P);
    CHECK(r.p1);
    CHECK(r.p2);
    CHECK(r.p3);
    CHECK(r.p4);
    CHECK(r.all_pass());
    CHECK(r.flag_count == 32);
    CHECK(!poset_flag_transitive(P));
}

TEST_CASE("mutated fixtures fail the intended axiom") {
    SUBCASE("second greatest face breaks P1") {
        RankedPoset P = square_pyramid();
        int extra_top = P.add_face(4);
        P.add_cover(3, 0, extra_top);
        AxiomReport r = verify_axioms(P);
        CHECK(!r.p1);
        CHECK(!r.all_pass());
        CHECK(!r.failures.empty());
    }
    SUBCASE("isolated vertex breaks P2") {
        RankedPoset P = square_pyramid();
        P.add_face(1);
        AxiomReport r = verify_axioms(P);
        CHECK(r.p1);
        CHECK(!r.p2);
        CHECK(!r.all_pass());
    }
    SUBCASE("two glued copies break P3") {
        RankedPoset P({1, 10, 16, 10, 1});
        for (int copy = 0; copy < 2; ++copy) {
            int vo = copy * 5, eo = copy * 8, fo = copy * 5;
            for (int v = 0; v < 5; ++v) P.add_cover(0, 0, vo + v);
            const int edges[8][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 1},
                                     {0, 1}, {0, 2}, {0, 3}, {0, 4}};
            for (int e = 0; e < 8; ++e) {
                P.add_cover(1, vo + edges[e][0], eo + e);
                P.add_cover(1, vo + edges[e][1], eo + e);
            }
            const int facets[5][4] = {{4, 0, 5, -1}, {5, 1, 6, -1}, {6, 2, 7, -1},
                                      {7, 3, 4, -1}, {0, 1, 2, 3}};
            for (int f = 0; f < 5; ++f)
                for (int k = 0; k < 4; ++k)
                    if (facets[f][k] >= 0) P.add_cover(2, eo + facets[f][k], fo + f);
            for (int f = 0; f < 5; ++f) P.add_cover(3, fo + f, 0);
        }
        AxiomReport r = verify_axioms(P);
        CHECK(r.p1);
        CHECK(r.p2);
        CHECK(!r.p3);
        CHECK(r.p4);
    }
    SUBCASE("deleted cover breaks the diamond condition P4") {
        const testfix::H3& h = testfix::H3::get();
        AbstractPolyhedron poly(h.classes[h.class_index(5, 3)]);
        RankedPoset P = poly.poset();
        int v = P.down(2, 0)[0];
        P.remove_cover(1, v, 0);
        AxiomReport r = verify_axioms(P);
        CHECK(r.p1);
        CHECK(!r.p4);
        CHECK(!r.all_pass());
    }
}

TEST_CASE("coset polyhedron for the dodecahedral class") {
    const testfix::H3& h = testfix::H3::get();
    AbstractPolyhedron P(h.classes[h.class_index(5, 3)]);
    CHECK(P.vertex_count() == 20);
    CHECK(P.edge_count() == 30);
    CHECK(P.facet_count() == 12);
    CHECK(P.stabilizer(0).order() == 6);
    CHECK(P.stabilizer(1).order() == 4);
    CHECK(P.stabilizer(2).order() == 10);

    AxiomReport r = verify_axioms(P.poset(), ExecMode::Serial);
    CHECK(r.all_pass());
    CHECK(r.flag_count == 120);
    AxiomReport rp = verify_axioms(P.poset(), ExecMode::OpenMP);
    CHECK(rp.all_pass());

    CHECK(flag_transitive(P));
    CHECK(poset_flag_transitive(P.poset()));
    CHECK(P.flags().size() == 120);

    // every flag is realized by exactly one group element
    std::set<std::array<int, 3>> from_group;
    for (int g = 0; g < h.group.size(); ++g) from_group.insert(P.flag_of(g));
    CHECK(from_group.size() == 120);
}

TEST_CASE("sections") {
    const testfix::H3& h = testfix::H3::get();
    AbstractPolyhedron poly(h.classes[h.class_index(5, 3)]);
    const RankedPoset& P = poly.poset();

    SectionPoset whole = section(P, {0, 0}, {4, 0});
    CHECK(whole.rank() == 3);
    CHECK(whole.level_faces[0].size() == 1);
    CHECK(whole.level_faces[1].size() == 20);
    CHECK(whole.level_faces[4].size() == 1);

    // a vertex-facet section of a polyhedron is a 1-section with two edges
    int f = 0;
    int e = P.down(3, f)[0];
    int v = P.down(2, e)[0];
    SectionPoset vf = section(P, {1, v}, {3, f});
    CHECK(vf.rank() == 1);
    CHECK(vf.level_faces[0].size() == 1);
    CHECK(vf.level_faces[1].size() == 2);
    CHECK(vf.level_faces[2].size() == 1);

    // a vertex not incident to the facet gives no section
    int far_v = -1;
    for (int vv = 0; vv < P.count(1) && far_v < 0; ++vv) {
        bool incident = false;
        for (int ee : P.up(1, vv))
            for (int ff : P.up(2, ee)) incident = incident || ff == f;
        if (!incident) far_v = vv;
    }
    REQUIRE(far_v >= 0);
    CHECK_THROWS_AS(section(P, {1, far_v}, {3, f}), std::invalid_argument);
    CHECK_THROWS_AS(section(P, {3, f}, {1, v}), std::invalid_argument);
}

TEST_CASE("hasse and json exports") {
    const testfix::H3& h = testfix::H3::get();
    AbstractPolyhedron P(h.classes[h.class_index(5, 3)]);

    std::string dot = export_hasse(P);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    std::size_t arrows = 0;
    for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2))
        ++arrows;
    // 20 + 2*30 + 5*12 + 12 cover relations
    CHECK(arrows == 152);

    nlohmann::json pj = poset_json(P);
    CHECK(pj["counts"]["vertices"] == 20);
    CHECK(pj["counts"]["edges"] == 30);
    CHECK(pj["counts"]["facets"] == 12);
    CHECK(pj["faces"]["vertices"].size() == 20);
    CHECK(pj["covers"]["vertex_edge"].size() == 60);
    CHECK(pj["covers"]["edge_facet"].size() == 60);

    AxiomReport r = verify_axioms(P.poset());
    nlohmann::json aj = axiom_report_json(r);
    CHECK(aj["p1"] == true);
    CHECK(aj["p3"] == true);
    CHECK(aj["flag_count"] == 120);
}

TEST_CASE("face counts for every class match the coset indices") {
    const testfix::H3& h = testfix::H3::get();
    for (const StringCGroup& S : h.classes) {
        AbstractPolyhedron P(S);
        CHECK(P.vertex_count() == 120 / P.stabilizer(0).order());
        CHECK(P.edge_count() == 30);  // edge stabilizer is always a Klein four-group
        CHECK(P.facet_count() == 120 / P.stabilizer(2).order());
        CHECK(P.stabilizer(2).order() == 2 * S.p);
    }
}
