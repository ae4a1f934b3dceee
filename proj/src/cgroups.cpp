#include "polyreal/cgroups.hpp"

#include <algorithm>
#include <tuple>

namespace polyreal {

const char* reject_name(CGroupReject r) {
    switch (r) {
        case CGroupReject::NotInvolution: return "not-involution";
        case CGroupReject::NotDistinct: return "not-distinct";
        case CGroupReject::StringFails: return "string-fails";
        case CGroupReject::NotGenerating: return "not-generating";
        case CGroupReject::IntersectionFails: return "intersection-fails";
    }
    return "?";
}

CGroupCheck check_string_cgroup(const FiniteGroup& G, GeneratorTriple T) {
    if (!G.is_involution(T.t0) || !G.is_involution(T.t1) || !G.is_involution(T.t2))
        return CGroupReject::NotInvolution;
    if (T.t0 == T.t1 || T.t1 == T.t2 || T.t0 == T.t2) return CGroupReject::NotDistinct;
    if (G.mul(T.t0, T.t2) != G.mul(T.t2, T.t0)) return CGroupReject::StringFails;

    Subgroup whole = subgroup_generated(G, {T.t0, T.t1, T.t2});
    if (whole.order() != G.size()) return CGroupReject::NotGenerating;

    Subgroup left = subgroup_generated(G, {T.t0, T.t1});
    Subgroup right = subgroup_generated(G, {T.t1, T.t2});
    for (int g : left.members)
        if (right.contains(g) && g != 0 && g != T.t1) return CGroupReject::IntersectionFails;

    StringCGroup S;
    S.group = &G;
    S.triple = T;
    S.p = G.element_order(G.mul(T.t0, T.t1));
    S.q = G.element_order(G.mul(T.t1, T.t2));
    return S;
}

std::vector<StringCGroup> enumerate_string_cgroups(const FiniteGroup& G, ExecMode mode) {
    std::vector<int> invols = G.involutions();
    std::vector<GeneratorTriple> cand;
    cand.reserve(invols.size() * invols.size());
    for (int a : invols)
        for (int b : invols) {
            if (b == a) continue;
            for (int c : invols) {
                if (c == a || c == b) continue;
                cand.push_back({a, b, c});
            }
        }

    std::vector<char> ok(cand.size(), 0);
    std::vector<std::array<int, 2>> type(cand.size());
    parallel_for(cand.size(), mode, [&](std::size_t i) {
        CGroupCheck res = check_string_cgroup(G, cand[i]);
        if (const StringCGroup* s = std::get_if<StringCGroup>(&res)) {
            ok[i] = 1;
            type[i] = {s->p, s->q};
        }
    });

    // Dedup in candidate order: the first member seen of each class is its
    // shortlex-least triple and becomes the representative.
    std::vector<StringCGroup> classes;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (!ok[i]) continue;
        bool placed = false;
        for (const StringCGroup& c : classes) {
            if (c.p != type[i][0] || c.q != type[i][1]) continue;
            if (extends_to_automorphism(G, {{c.triple.t0, cand[i].t0},
                                            {c.triple.t1, cand[i].t1},
                                            {c.triple.t2, cand[i].t2}})) {
                placed = true;
                break;
            }
        }
        if (!placed) {
            StringCGroup S;
            S.group = &G;
            S.triple = cand[i];
            S.p = type[i][0];
            S.q = type[i][1];
            classes.push_back(S);
        }
    }

    std::stable_sort(classes.begin(), classes.end(), [](const StringCGroup& x, const StringCGroup& y) {
        return std::tuple(x.p, x.q, x.triple.t0, x.triple.t1, x.triple.t2) <
               std::tuple(y.p, y.q, y.triple.t0, y.triple.t1, y.triple.t2);
    });
    return classes;
}

std::vector<std::string> canonical_letters(const std::vector<StringCGroup>& classes) {
    std::vector<std::string> letters(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::size_t first = i;
        while (first > 0 && classes[first - 1].p == classes[i].p && classes[first - 1].q == classes[i].q)
            --first;
        std::size_t count = 0;
        for (const StringCGroup& c : classes)
            if (c.p == classes[i].p && c.q == classes[i].q) ++count;
        if (count > 1) letters[i] = std::string(1, static_cast<char>('a' + (i - first)));
    }
    return letters;
}

namespace {

struct PaperRow {
    int p, q;
    const char* letter;
    std::vector<int> w0, w1, w2;
};

std::vector<PaperRow> paper_rows() {
    auto rep3 = [](std::initializer_list<int> block, int times, std::initializer_list<int> tail) {
        std::vector<int> w;
        for (int i = 0; i < times; ++i) w.insert(w.end(), block.begin(), block.end());
        w.insert(w.end(), tail.begin(), tail.end());
        return w;
    };
    return {
        {3, 5, "", {0}, {1}, {2}},
        {3, 10, "a", {0}, {1}, {0, 2}},
        {3, 10, "b", {0, 2}, {1, 2, 1, 2, 0, 1, 2, 1}, {0}},
        {5, 3, "", {2}, {1}, {0}},
        {5, 5, "", {0}, {1, 2, 1}, {2}},
        {5, 6, "b", {0}, {1, 2, 1}, {0, 2}},
        {5, 6, "c", {0, 2}, {1, 0, 2, 1}, {2}},
        {5, 10, "a", {0}, {1, 2, 1}, rep3({1, 0, 2}, 4, {1, 0})},
        {5, 10, "b", {0, 2}, {1, 0, 2, 1}, {0}},
        {6, 5, "b", {0}, rep3({1, 0, 2}, 3, {1}), {0, 2}},
        {6, 5, "c", {0, 2}, {1, 2, 1}, {0}},
        {10, 3, "b", {0, 2}, {1}, {0}},
        {10, 3, "c", {0}, {1, 0, 2, 1}, rep3({1, 0, 2}, 4, {1, 0})},
        {10, 5, "a", {0}, {1, 0, 2, 1}, {0, 2}},
        {10, 5, "b", {0, 2}, {1}, {2}},
    };
}

}  // namespace

std::optional<std::vector<std::string>> h3_row_letters(const FiniteGroup& G,
                                                       const std::vector<StringCGroup>& classes) {
    if (G.size() != 120 || G.num_generators() < 3) return std::nullopt;
    int s0 = G.generator(0), s1 = G.generator(1), s2 = G.generator(2);
    if (!G.is_involution(s0) || !G.is_involution(s1) || !G.is_involution(s2)) return std::nullopt;
    if (G.element_order(G.mul(s0, s1)) != 3 || G.element_order(G.mul(s1, s2)) != 5 ||
        G.element_order(G.mul(s0, s2)) != 2)
        return std::nullopt;

    std::vector<std::string> letters(classes.size());
    std::vector<char> used(classes.size(), 0);
    for (const PaperRow& row : paper_rows()) {
        GeneratorTriple T{G.word_eval(row.w0), G.word_eval(row.w1), G.word_eval(row.w2)};
        CGroupCheck res = check_string_cgroup(G, T);
        const StringCGroup* s = std::get_if<StringCGroup>(&res);
        if (!s || s->p != row.p || s->q != row.q) return std::nullopt;
        int hit = -1;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i].p != row.p || classes[i].q != row.q) continue;
            if (extends_to_automorphism(G, {{classes[i].triple.t0, T.t0},
                                            {classes[i].triple.t1, T.t1},
                                            {classes[i].triple.t2, T.t2}})) {
                hit = static_cast<int>(i);
                break;
            }
        }
        if (hit < 0 || used[hit]) return std::nullopt;
        used[hit] = 1;
        letters[hit] = row.letter;
    }
    if (std::find(used.begin(), used.end(), 0) != used.end()) return std::nullopt;
    return letters;
}

}  // namespace polyreal
