#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace polyreal;

TEST_CASE("direct validation of involution triples") {
    const FiniteGroup& G = testfix::H3::get().group;
    int s0 = G.generator(0), s1 = G.generator(1), s2 = G.generator(2);

    auto ok = check_string_cgroup(G, {s0, s1, s2});
    REQUIRE(std::holds_alternative<StringCGroup>(ok));
    StringCGroup S = std::get<StringCGroup>(ok);
    CHECK(S.p == 3);
    CHECK(S.q == 5);

    auto dual = check_string_cgroup(G, {s2, s1, s0});
    REQUIRE(std::holds_alternative<StringCGroup>(dual));
    CHECK(std::get<StringCGroup>(dual).p == 5);
    CHECK(std::get<StringCGroup>(dual).q == 3);

    CHECK(std::get<CGroupReject>(check_string_cgroup(G, {0, s1, s2})) ==
          CGroupReject::NotInvolution);
    CHECK(std::get<CGroupReject>(check_string_cgroup(G, {s0, s1, s0})) ==
          CGroupReject::NotDistinct);
    // t0 and t2 must commute
    CHECK(std::get<CGroupReject>(check_string_cgroup(G, {s0, s2, s1})) ==
          CGroupReject::StringFails);
    // commuting but generating only a Klein four-group
    int s0s2 = G.mul(s0, s2);
    CHECK(std::get<CGroupReject>(check_string_cgroup(G, {s0, s0s2, s2})) ==
          CGroupReject::NotGenerating);
}

TEST_CASE("census of all ordered involution triples") {
    const FiniteGroup& G = testfix::H3::get().group;
    std::vector<int> inv = G.involutions();
    REQUIRE(inv.size() == 31);

    std::map<CGroupReject, int> rejects;
    int valid = 0;
    for (int a : inv)
        for (int b : inv)
            for (int c : inv) {
                auto r = check_string_cgroup(G, {a, b, c});
                if (std::holds_alternative<StringCGroup>(r))
                    ++valid;
                else
                    ++rejects[std::get<CGroupReject>(r)];
            }
    CHECK(valid == 1800);
    CHECK(rejects[CGroupReject::NotDistinct] > 0);
    CHECK(rejects[CGroupReject::StringFails] > 0);
    CHECK(rejects[CGroupReject::NotGenerating] > 0);
    CHECK(rejects[CGroupReject::IntersectionFails] > 0);
    CHECK(reject_name(CGroupReject::IntersectionFails) != nullptr);
}

TEST_CASE("enumeration collapses to 15 classes with the published type counts") {
    const testfix::H3& h = testfix::H3::get();
    REQUIRE(h.classes.size() == 15);

    std::map<std::pair<int, int>, int> types;
    for (const StringCGroup& S : h.classes) ++types[{S.p, S.q}];
    std::map<std::pair<int, int>, int> expected{
        {{3, 5}, 1},  {{5, 3}, 1},  {{5, 5}, 1},  {{3, 10}, 2}, {{5, 6}, 2},
        {{5, 10}, 2}, {{6, 5}, 2},  {{10, 3}, 2}, {{10, 5}, 2},
    };
    CHECK(types == expected);

    // classes are sorted by type, then by representative triple
    for (std::size_t i = 1; i < h.classes.size(); ++i) {
        auto key = [](const StringCGroup& S) {
            return std::make_tuple(S.p, S.q, S.triple.t0, S.triple.t1, S.triple.t2);
        };
        CHECK(key(h.classes[i - 1]) < key(h.classes[i]));
    }

    // representatives really belong to distinct automorphism classes: all 15
    // re-validate and the set of (p, q, triple) keys has no duplicates
    std::set<std::tuple<int, int, int, int, int>> seen;
    for (const StringCGroup& S : h.classes) {
        auto r = check_string_cgroup(h.group, S.triple);
        CHECK(std::holds_alternative<StringCGroup>(r));
        seen.insert({S.p, S.q, S.triple.t0, S.triple.t1, S.triple.t2});
    }
    CHECK(seen.size() == 15);
}

TEST_CASE("serial and parallel enumeration agree") {
    const testfix::H3& h = testfix::H3::get();
    std::vector<StringCGroup> serial = enumerate_string_cgroups(h.group, ExecMode::Serial);
    REQUIRE(serial.size() == h.classes.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].p == h.classes[i].p);
        CHECK(serial[i].q == h.classes[i].q);
        CHECK(serial[i].triple.t0 == h.classes[i].triple.t0);
        CHECK(serial[i].triple.t1 == h.classes[i].triple.t1);
        CHECK(serial[i].triple.t2 == h.classes[i].triple.t2);
    }
}

TEST_CASE("row letters") {
    const testfix::H3& h = testfix::H3::get();
    auto pub = h3_row_letters(h.group, h.classes);
    REQUIRE(pub.has_value());
    REQUIRE(pub->size() == 15);

    std::map<std::pair<int, int>, std::set<std::string>> by_type;
    for (std::size_t i = 0; i < h.classes.size(); ++i)
        by_type[{h.classes[i].p, h.classes[i].q}].insert((*pub)[i]);
    CHECK(by_type[{3, 5}] == std::set<std::string>{""});
    CHECK(by_type[{5, 3}] == std::set<std::string>{""});
    CHECK(by_type[{5, 5}] == std::set<std::string>{""});
    CHECK(by_type[{3, 10}] == std::set<std::string>({"a", "b"}));
    CHECK(by_type[{5, 6}] == std::set<std::string>({"b", "c"}));
    CHECK(by_type[{5, 10}] == std::set<std::string>({"a", "b"}));
    CHECK(by_type[{6, 5}] == std::set<std::string>({"b", "c"}));
    CHECK(by_type[{10, 3}] == std::set<std::string>({"b", "c"}));
    CHECK(by_type[{10, 5}] == std::set<std::string>({"a", "b"}));

    // the fallback labeling letters classes a, b within each doubled type
    std::vector<std::string> canon = canonical_letters(h.classes);
    std::map<std::pair<int, int>, std::set<std::string>> canon_by_type;
    for (std::size_t i = 0; i < h.classes.size(); ++i)
        canon_by_type[{h.classes[i].p, h.classes[i].q}].insert(canon[i]);
    CHECK(canon_by_type[{3, 5}] == std::set<std::string>{""});
    CHECK(canon_by_type[{10, 3}] == std::set<std::string>({"a", "b"}));
}
