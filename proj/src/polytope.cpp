#include "polyreal/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace polyreal {

RankedPoset::RankedPoset(std::array<int, 5> counts) : counts_(counts) {
    for (int L = 0; L < 4; ++L) {
        up_[L].resize(counts_[L]);
        down_[L].resize(counts_[L + 1]);
    }
}

void RankedPoset::add_cover(int lower_level, int lower, int upper) {
    if (lower_level < 0 || lower_level > 3) throw std::out_of_range("add_cover: level");
    if (lower < 0 || lower >= counts_[lower_level] || upper < 0 || upper >= counts_[lower_level + 1])
        throw std::out_of_range("add_cover: face index");
    up_[lower_level][lower].push_back(upper);
    down_[lower_level][upper].push_back(lower);
}

void RankedPoset::remove_cover(int lower_level, int lower, int upper) {
    auto& u = up_[lower_level][lower];
    auto& d = down_[lower_level][upper];
    u.erase(std::remove(u.begin(), u.end(), upper), u.end());
    d.erase(std::remove(d.begin(), d.end(), lower), d.end());
}

int RankedPoset::add_face(int level) {
    int idx = counts_[level]++;
    if (level < 4) up_[level].resize(counts_[level]);
    if (level > 0) down_[level - 1].resize(counts_[level]);
    return idx;
}

SectionPoset section(const RankedPoset& P, Face F, Face G) {
    if (F.level > G.level) throw std::invalid_argument("section: incomparable faces");

    int lo = F.level, hi = G.level;
    std::vector<std::vector<char>> up_reach(hi - lo + 1), down_reach(hi - lo + 1);
    for (int L = lo; L <= hi; ++L) {
        up_reach[L - lo].assign(P.count(L), 0);
        down_reach[L - lo].assign(P.count(L), 0);
    }
    up_reach[0][F.index] = 1;
    for (int L = lo; L < hi; ++L)
        for (int i = 0; i < P.count(L); ++i)
            if (up_reach[L - lo][i])
                for (int j : P.up(L, i)) up_reach[L - lo + 1][j] = 1;
    if (!up_reach[hi - lo][G.index]) throw std::invalid_argument("section: incomparable faces");
    down_reach[hi - lo][G.index] = 1;
    for (int L = hi; L > lo; --L)
        for (int i = 0; i < P.count(L); ++i)
            if (down_reach[L - lo][i])
                for (int j : P.down(L, i)) down_reach[L - lo - 1][j] = 1;

    SectionPoset S;
    S.lo_level = lo;
    S.level_faces.resize(hi - lo + 1);
    std::vector<std::vector<int>> local(hi - lo + 1);
    for (int L = lo; L <= hi; ++L) {
        local[L - lo].assign(P.count(L), -1);
        for (int i = 0; i < P.count(L); ++i)
            if (up_reach[L - lo][i] && down_reach[L - lo][i]) {
                local[L - lo][i] = static_cast<int>(S.level_faces[L - lo].size());
                S.level_faces[L - lo].push_back(i);
            }
    }
    S.up.resize(hi - lo);
    for (int L = lo; L < hi; ++L) {
        S.up[L - lo].resize(S.level_faces[L - lo].size());
        for (std::size_t k = 0; k < S.level_faces[L - lo].size(); ++k)
            for (int j : P.up(L, S.level_faces[L - lo][k]))
                if (local[L - lo + 1][j] >= 0) S.up[L - lo][k].push_back(local[L - lo + 1][j]);
    }
    return S;
}

namespace {

// Maximal bottom-to-top chains of a section, as local indices per level.
std::vector<std::vector<int>> section_chains(const SectionPoset& S) {
    int levels = static_cast<int>(S.level_faces.size());
    std::vector<std::vector<int>> chains;
    if (levels == 1) return {{0}};
    std::vector<int> cur(levels, -1);
    cur[0] = 0;
    auto dfs = [&](auto&& self, int L) -> void {
        if (L == levels - 1) {
            chains.push_back(cur);
            return;
        }
        for (int j : S.up[L][cur[L]]) {
            if (L + 1 == levels - 1 && j != 0) continue;  // top is local index 0
            cur[L + 1] = j;
            self(self, L + 1);
        }
    };
    dfs(dfs, 0);
    return chains;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool section_flag_connected(const SectionPoset& S) {
    int levels = static_cast<int>(S.level_faces.size());
    if (levels <= 3) return true;  // rank <= 1: at most one proper level
    auto chains = section_chains(S);
    if (chains.size() <= 1) return true;
    UnionFind uf(static_cast<int>(chains.size()));
    for (int L = 1; L < levels - 1; ++L) {
        std::map<std::vector<int>, int> first;
        for (std::size_t c = 0; c < chains.size(); ++c) {
            std::vector<int> key = chains[c];
            key[L] = -1;
            auto [it, fresh] = first.emplace(std::move(key), static_cast<int>(c));
            if (!fresh) uf.unite(static_cast<int>(c), it->second);
        }
    }
    int root = uf.find(0);
    for (std::size_t c = 1; c < chains.size(); ++c)
        if (uf.find(static_cast<int>(c)) != root) return false;
    return true;
}

}  // namespace

AxiomReport verify_axioms(const RankedPoset& P, ExecMode mode) {
    AxiomReport r;

    r.p1 = P.count(0) == 1 && P.count(4) == 1;
    if (!r.p1) r.failures.push_back("P1: least/greatest face not unique");

    r.p2 = true;
    for (int L = 0; L <= 3 && r.p2; ++L)
        for (int i = 0; i < P.count(L); ++i)
            if (P.up(L, i).empty()) {
                r.p2 = false;
                r.failures.push_back("P2: face without upper cover at rank " + std::to_string(L - 1));
                break;
            }
    for (int L = 1; L <= 4 && r.p2; ++L)
        for (int i = 0; i < P.count(L); ++i)
            if (P.down(L, i).empty()) {
                r.p2 = false;
                r.failures.push_back("P2: face without lower cover at rank " + std::to_string(L - 1));
                break;
            }

    r.flag_count = 0;
    for (int b = 0; b < P.count(0); ++b)
        for (int v : P.up(0, b))
            for (int e : P.up(1, v))
                for (int f : P.up(2, e)) r.flag_count += static_cast<long>(P.up(3, f).size());

    r.p4 = true;
    for (int M = 1; M <= 3 && r.p4; ++M) {
        std::map<std::pair<int, int>, int> middles;
        for (int m = 0; m < P.count(M); ++m)
            for (int lo : P.down(M, m))
                for (int hi : P.up(M, m)) ++middles[{lo, hi}];
        for (const auto& [key, cnt] : middles)
            if (cnt != 2) {
                r.p4 = false;
                r.failures.push_back("P4: diamond has " + std::to_string(cnt) + " middle faces at rank " +
                                     std::to_string(M - 1));
                break;
            }
    }

    // P3: the whole poset plus every rank-2 section (vertex figures and facet
    // boundaries) must have a connected flag graph.
    std::vector<SectionPoset> sections;
    for (int b = 0; b < P.count(0); ++b)
        for (int t = 0; t < P.count(4); ++t) {
            try {
                sections.push_back(section(P, {0, b}, {4, t}));
            } catch (const std::invalid_argument&) {
            }
        }
    for (int v = 0; v < P.count(1); ++v)
        for (int t = 0; t < P.count(4); ++t) {
            try {
                sections.push_back(section(P, {1, v}, {4, t}));
            } catch (const std::invalid_argument&) {
            }
        }
    for (int f = 0; f < P.count(3); ++f)
        for (int b = 0; b < P.count(0); ++b) {
            try {
                sections.push_back(section(P, {0, b}, {3, f}));
            } catch (const std::invalid_argument&) {
            }
        }
    std::vector<char> connected(sections.size(), 0);
    parallel_for(sections.size(), mode, [&](std::size_t i) {
        connected[i] = section_flag_connected(sections[i]) ? 1 : 0;
    });
    r.p3 = std::find(connected.begin(), connected.end(), 0) == connected.end();
    if (!r.p3) r.failures.push_back("P3: some section's flag graph is disconnected");

    return r;
}

bool poset_flag_transitive(const RankedPoset& P) {
    if (P.count(0) != 1 || P.count(4) != 1) return false;
    std::vector<std::array<int, 3>> flags;
    for (int v : P.up(0, 0))
        for (int e : P.up(1, v))
            for (int f : P.up(2, e))
                if (!P.up(3, f).empty()) flags.push_back({v, e, f});
    int n = static_cast<int>(flags.size());
    if (n == 0) return false;

    // adj[slot][flag] = the unique flag differing only in that slot (P4).
    std::array<std::vector<int>, 3> adj;
    for (int slot = 0; slot < 3; ++slot) {
        adj[slot].assign(n, -1);
        std::map<std::pair<int, int>, int> first;
        for (int c = 0; c < n; ++c) {
            std::pair<int, int> key{flags[c][(slot + 1) % 3], flags[c][(slot + 2) % 3]};
            auto [it, fresh] = first.emplace(key, c);
            if (!fresh) {
                if (adj[slot][it->second] != -1) return false;  // more than two middles
                adj[slot][c] = it->second;
                adj[slot][it->second] = c;
            }
        }
        for (int c = 0; c < n; ++c)
            if (adj[slot][c] == -1) return false;
    }

    std::array<int, 3> sizes{P.count(1), P.count(2), P.count(3)};
    for (int target = 0; target < n; ++target) {
        std::array<std::vector<int>, 3> fmap;
        for (int s = 0; s < 3; ++s) fmap[s].assign(sizes[s], -1);
        std::vector<int> pair_of(n, -1);
        pair_of[0] = target;
        std::vector<int> queue{0};
        bool good = true;
        for (std::size_t qi = 0; qi < queue.size() && good; ++qi) {
            int c = queue[qi];
            int d = pair_of[c];
            for (int s = 0; s < 3 && good; ++s) {
                int src = flags[c][s], dst = flags[d][s];
                if (fmap[s][src] == -1)
                    fmap[s][src] = dst;
                else if (fmap[s][src] != dst)
                    good = false;
            }
            for (int s = 0; s < 3 && good; ++s) {
                int cn = adj[s][c], dn = adj[s][d];
                if (pair_of[cn] == -1) {
                    pair_of[cn] = dn;
                    queue.push_back(cn);
                } else if (pair_of[cn] != dn) {
                    good = false;
                }
            }
        }
        if (!good) return false;
        for (int s = 0; s < 3 && good; ++s) {
            std::vector<char> hit(sizes[s], 0);
            for (int v : fmap[s]) {
                if (v == -1 || hit[v]) {
                    good = false;
                    break;
                }
                hit[v] = 1;
            }
        }
        if (!good) return false;
    }
    return true;
}

namespace {

RankedPoset coset_poset(const FiniteGroup& G, const std::array<CosetDecomposition, 3>& D) {
    RankedPoset P({1, D[0].count(), D[1].count(), D[2].count(), 1});
    for (int v = 0; v < D[0].count(); ++v) P.add_cover(0, 0, v);
    for (int f = 0; f < D[2].count(); ++f) P.add_cover(3, f, 0);
    std::set<std::pair<int, int>> ve, ef;
    for (int g = 0; g < G.size(); ++g) {
        ve.insert({D[0].coset_of[g], D[1].coset_of[g]});
        ef.insert({D[1].coset_of[g], D[2].coset_of[g]});
    }
    for (const auto& [v, e] : ve) P.add_cover(1, v, e);
    for (const auto& [e, f] : ef) P.add_cover(2, e, f);
    return P;
}

}  // namespace

AbstractPolyhedron::AbstractPolyhedron(const StringCGroup& S)
    : source_(S),
      stab_{subgroup_generated(*S.group, {S.triple.t1, S.triple.t2}),
            subgroup_generated(*S.group, {S.triple.t0, S.triple.t2}),
            subgroup_generated(*S.group, {S.triple.t0, S.triple.t1})},
      cosets_{right_cosets(*S.group, stab_[0]), right_cosets(*S.group, stab_[1]),
              right_cosets(*S.group, stab_[2])},
      poset_(coset_poset(*S.group, cosets_)) {}

AbstractPolyhedron build_polyhedron(const StringCGroup& S) { return AbstractPolyhedron(S); }

std::vector<std::array<int, 3>> AbstractPolyhedron::flags() const {
    std::vector<std::array<int, 3>> out;
    for (int v = 0; v < poset_.count(1); ++v)
        for (int e : poset_.up(1, v))
            for (int f : poset_.up(2, e)) out.push_back({v, e, f});
    return out;
}

std::array<int, 3> AbstractPolyhedron::flag_of(int g) const {
    return {cosets_[0].coset_of[g], cosets_[1].coset_of[g], cosets_[2].coset_of[g]};
}

bool flag_transitive(const AbstractPolyhedron& P) {
    auto chains = P.flags();
    const FiniteGroup& G = P.group();
    if (static_cast<int>(chains.size()) != G.size()) return false;
    std::set<std::array<int, 3>> from_poset(chains.begin(), chains.end());
    std::set<std::array<int, 3>> from_group;
    for (int g = 0; g < G.size(); ++g) from_group.insert(P.flag_of(g));
    return from_group == from_poset && static_cast<int>(from_group.size()) == G.size();
}

std::string export_hasse(const AbstractPolyhedron& P) {
    const RankedPoset& R = P.poset();
    std::string s = "digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n";
    auto name = [](int level, int i) {
        switch (level) {
            case 0: return std::string("Fm1");
            case 1: return "v" + std::to_string(i + 1);
            case 2: return "e" + std::to_string(i + 1);
            case 3: return "f" + std::to_string(i + 1);
            default: return std::string("F3");
        }
    };
    for (int L = 0; L <= 4; ++L) {
        s += "  { rank=same;";
        for (int i = 0; i < R.count(L); ++i) s += " " + name(L, i) + ";";
        s += " }\n";
    }
    for (int L = 0; L <= 3; ++L)
        for (int i = 0; i < R.count(L); ++i)
            for (int j : R.up(L, i)) s += "  " + name(L, i) + " -> " + name(L + 1, j) + ";\n";
    s += "}\n";
    return s;
}

nlohmann::json poset_json(const AbstractPolyhedron& P) {
    const FiniteGroup& G = P.group();
    nlohmann::json j;
    j["schlafli"] = {{"p", P.source().p}, {"q", P.source().q}};
    j["counts"] = {{"vertices", P.vertex_count()},
                   {"edges", P.edge_count()},
                   {"facets", P.facet_count()}};
    const char* rank_names[3] = {"vertices", "edges", "facets"};
    for (int r = 0; r < 3; ++r) {
        nlohmann::json faces = nlohmann::json::array();
        const CosetDecomposition& D = P.cosets(r);
        for (int i = 0; i < D.count(); ++i)
            faces.push_back({{"j", i + 1}, {"rep", G.word_name(D.reps[i])}});
        j["faces"][rank_names[r]] = std::move(faces);
    }
    nlohmann::json ve = nlohmann::json::array(), ef = nlohmann::json::array();
    const RankedPoset& R = P.poset();
    for (int v = 0; v < R.count(1); ++v)
        for (int e : R.up(1, v)) ve.push_back({v + 1, e + 1});
    for (int e = 0; e < R.count(2); ++e)
        for (int f : R.up(2, e)) ef.push_back({e + 1, f + 1});
    j["covers"] = {{"vertex_edge", std::move(ve)}, {"edge_facet", std::move(ef)}};
    return j;
}

nlohmann::json axiom_report_json(const AxiomReport& r) {
    return {{"P1", r.p1},       {"P2", r.p2},          {"P3", r.p3},         {"P4", r.p4},
            {"flags", r.flag_count}, {"all_pass", r.all_pass()}, {"failures", r.failures}};
}

}  // namespace polyreal
