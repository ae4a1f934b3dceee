#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyreal/groups.hpp"
#include "polyreal/parallel.hpp"

namespace polyreal {

struct GeneratorTriple {
    int t0, t1, t2;  // element indices
};

enum class CGroupReject {
    NotInvolution,
    NotDistinct,
    StringFails,
    NotGenerating,
    IntersectionFails,
};

const char* reject_name(CGroupReject r);

struct StringCGroup {
    const FiniteGroup* group = nullptr;
    GeneratorTriple triple{};
    int p = 0, q = 0;  // Schlafli type {p, q}
};

using CGroupCheck = std::variant<StringCGroup, CGroupReject>;

// Validates the string property t0t2 = t2t0, generation, and the intersection
// property <t0,t1> n <t1,t2> = <t1>; computes p = ord(t0t1), q = ord(t1t2).
CGroupCheck check_string_cgroup(const FiniteGroup& G, GeneratorTriple T);

// All string C-group triples up to automorphisms of G, one representative per
// class (the shortlex-least member). Sorted by (p, q, representative triple).
std::vector<StringCGroup> enumerate_string_cgroups(const FiniteGroup& G,
                                                   ExecMode mode = ExecMode::OpenMP);

// Display labels for enumerated classes: letters a, b, c, ... within each type,
// in canonical sort order. Types with a single class get an empty letter.
std::vector<std::string> canonical_letters(const std::vector<StringCGroup>& classes);

// When G is the standard H3 matrix group (generators s0, s1, s2 with the
// Coxeter relations), relabel classes with the published row letters, matched
// by resolving each published generator-word triple to its class. Returns
// nullopt when G is not that group.
std::optional<std::vector<std::string>> h3_row_letters(const FiniteGroup& G,
                                                       const std::vector<StringCGroup>& classes);

}  // namespace polyreal
