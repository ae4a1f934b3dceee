#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "polyreal/geomesh.hpp"

namespace testfix {

using namespace polyreal;

// One shared H3 instance per test binary: the group, its enumerated classes
// with published row letters, and the element images under both
// representations.
struct H3 {
    FiniteGroup group;
    std::vector<StringCGroup> classes;
    std::vector<std::string> letters;
    std::vector<Mat3> phi1, phi2;

    static const H3& get() {
        static H3* h = [] {
            Representation r2 = builtin_representation("phi2");
            auto* p = new H3{FiniteGroup::generate({r2.gens[0], r2.gens[1], r2.gens[2]}),
                             {},
                             {},
                             {},
                             {}};
            p->classes = enumerate_string_cgroups(p->group);
            auto pub = h3_row_letters(p->group, p->classes);
            p->letters = pub ? *pub : canonical_letters(p->classes);
            p->phi1 = representation_images(p->group, builtin_representation("phi1"));
            p->phi2 = representation_images(p->group, builtin_representation("phi2"));
            return p;
        }();
        return *h;
    }

    const std::vector<Mat3>& images(const std::string& rep) const {
        return rep == "phi1" ? phi1 : phi2;
    }

    int class_index(int p, int q, const std::string& letter = "") const {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (classes[i].p == p && classes[i].q == q && letters[i] == letter)
                return static_cast<int>(i);
        throw std::runtime_error("no such class in fixture");
    }
};

// The published generator-word triples of the six realizable rows.
inline StringCGroup published_class(int p, int q, const std::string& letter = "") {
    const H3& h = H3::get();
    static const std::map<std::tuple<int, int, std::string>,
                          std::array<std::vector<int>, 3>>
        words{
            {{3, 5, ""}, {{{0}, {1}, {2}}}},
            {{5, 3, ""}, {{{2}, {1}, {0}}}},
            {{5, 5, ""}, {{{0}, {1, 2, 1}, {2}}}},
            {{6, 5, "c"}, {{{0, 2}, {1, 2, 1}, {0}}}},
            {{10, 3, "b"}, {{{0, 2}, {1}, {0}}}},
            {{10, 5, "b"}, {{{0, 2}, {1}, {2}}}},
        };
    auto it = words.find({p, q, letter});
    if (it == words.end()) throw std::runtime_error("no published triple recorded");
    GeneratorTriple T{h.group.word_eval(it->second[0]), h.group.word_eval(it->second[1]),
                      h.group.word_eval(it->second[2])};
    auto chk = check_string_cgroup(h.group, T);
    return std::get<StringCGroup>(chk);
}

struct BuiltSkeleton {
    std::unique_ptr<AbstractPolyhedron> poly;
    RealizationSkeleton skel;
};

// Skeleton over the published triple of a realizable row, cached per binary.
inline const BuiltSkeleton& published_skeleton(int p, int q, const std::string& letter,
                                               const std::string& rep) {
    static std::map<std::tuple<int, int, std::string, std::string>,
                    std::unique_ptr<BuiltSkeleton>>
        cache;
    auto key = std::make_tuple(p, q, letter, rep);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const H3& h = H3::get();
        auto built = std::make_unique<BuiltSkeleton>();
        built->poly = std::make_unique<AbstractPolyhedron>(published_class(p, q, letter));
        built->skel = build_skeleton(*built->poly, h.images(rep), rep);
        it = cache.emplace(key, std::move(built)).first;
    }
    return *it->second;
}

inline Vec3 qvec(long x, long y, long z) { return Vec3{QSqrt5(x), QSqrt5(y), QSqrt5(z)}; }

}  // namespace testfix
