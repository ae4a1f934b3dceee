#include "doctest.h"
#include "helpers.hpp"

using namespace polyreal;

TEST_CASE("group closure from the reflection generators") {
    const FiniteGroup& G = testfix::H3::get().group;
    CHECK(G.size() == 120);
    CHECK(G.num_generators() == 3);
    CHECK(G.element(0).matrix == mat_identity());
    CHECK(G.involutions().size() == 31);

    int s0 = G.generator(0), s1 = G.generator(1), s2 = G.generator(2);
    CHECK(G.element_order(s0) == 2);
    CHECK(G.element_order(G.mul(s0, s1)) == 5);
    CHECK(G.element_order(G.mul(s1, s2)) == 3);
    CHECK(G.element_order(G.mul(s0, s2)) == 2);
    CHECK(G.mul(s0, s2) == G.mul(s2, s0));
}

TEST_CASE("multiplication, inverses, and words") {
    const FiniteGroup& G = testfix::H3::get().group;
    for (int g = 0; g < G.size(); ++g) {
        CHECK(G.mul(g, G.inv(g)) == 0);
        CHECK(G.mul(G.inv(g), g) == 0);
        CHECK(G.word_eval(G.element(g).word) == g);
        CHECK(G.index_of(G.element(g).matrix) == g);
    }
    CHECK(G.word_name(0) == "e");
    CHECK(G.word_name(G.generator(1)) == "s1");
    CHECK(G.word_name(G.word_eval({0, 2})) == "s0s2");
    Mat3 two = mat_diag(QSqrt5(2), QSqrt5(2), QSqrt5(2));
    CHECK(G.index_of(two) == -1);

    // associativity spot check on the table
    int a = G.generator(0), b = G.generator(1), c = G.generator(2);
    CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
}

TEST_CASE("subgroups and right cosets") {
    const FiniteGroup& G = testfix::H3::get().group;
    int s0 = G.generator(0), s1 = G.generator(1), s2 = G.generator(2);

    Subgroup D3 = subgroup_generated(G, {s1, s2});
    CHECK(D3.order() == 6);
    CHECK(D3.contains(0));
    CHECK(D3.contains(G.mul(s1, s2)));
    CHECK(!D3.contains(s0));

    Subgroup D5 = subgroup_generated(G, {s0, s1});
    CHECK(D5.order() == 10);
    Subgroup V = subgroup_generated(G, {s0, s2});
    CHECK(V.order() == 4);
    CHECK(subgroup_generated(G, {s0, s1, s2}).order() == 120);

    CosetDecomposition cos = right_cosets(G, D3);
    CHECK(cos.count() == 20);
    CHECK(cos.reps[0] == 0);
    for (int g = 0; g < G.size(); ++g)
        for (int h : D3.members) CHECK(cos.coset_of[G.mul(h, g)] == cos.coset_of[g]);
    // representatives are least members of their cosets
    for (int j = 0; j < cos.count(); ++j) {
        CHECK(cos.coset_of[cos.reps[j]] == j);
        for (int g = 0; g < cos.reps[j]; ++g) CHECK(cos.coset_of[g] != j);
    }
}

TEST_CASE("automorphism extension") {
    const FiniteGroup& G = testfix::H3::get().group;
    int s0 = G.generator(0), s1 = G.generator(1), s2 = G.generator(2);

    CHECK(extends_to_automorphism(G, {{s0, s0}, {s1, s1}, {s2, s2}}));
    // conjugation is an automorphism
    int w = G.mul(s0, G.mul(s1, s2));
    auto conj = [&](int g) { return G.mul(G.inv(w), G.mul(g, w)); };
    CHECK(extends_to_automorphism(G, {{s0, conj(s0)}, {s1, conj(s1)}, {s2, conj(s2)}}));
    // swapping the diagram ends breaks the braid orders (5 vs 3)
    CHECK(!extends_to_automorphism(G, {{s0, s2}, {s1, s1}, {s2, s0}}));
    // sources must generate
    CHECK_THROWS_AS(extends_to_automorphism(G, {{s0, s0}, {s1, s1}}), std::invalid_argument);
}
