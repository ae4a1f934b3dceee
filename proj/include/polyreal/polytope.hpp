#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyreal/cgroups.hpp"
#include "polyreal/parallel.hpp"

namespace polyreal {

// Graded poset with levels 0..4 standing for ranks -1..3. Cover relations are
// stored only between consecutive levels; the general order is their
// transitive closure. Mutable so tests can build broken fixtures.
class RankedPoset {
public:
    explicit RankedPoset(std::array<int, 5> counts);

    int count(int level) const { return counts_[level]; }
    void add_cover(int lower_level, int lower, int upper);
    void remove_cover(int lower_level, int lower, int upper);
    int add_face(int level);  // returns new index at that level

    const std::vector<int>& up(int level, int i) const { return up_[level][i]; }
    const std::vector<int>& down(int level, int i) const { return down_[level - 1][i]; }

private:
    std::array<int, 5> counts_;
    // up_[L][i]: indices at level L+1 covering face i of level L; down_ mirrors.
    std::array<std::vector<std::vector<int>>, 4> up_;
    std::array<std::vector<std::vector<int>>, 4> down_;
};

struct Face {
    int level;  // 0..4, level = rank + 1
    int index;
};

// Faces H with F <= H <= G, presented per level with original indices and
// restricted cover lists (local indices into the next level's list).
struct SectionPoset {
    int lo_level = 0;
    std::vector<std::vector<int>> level_faces;
    std::vector<std::vector<std::vector<int>>> up;

    int rank() const { return static_cast<int>(level_faces.size()) - 2; }
};

SectionPoset section(const RankedPoset& P, Face F, Face G);

struct AxiomReport {
    bool p1 = false, p2 = false, p3 = false, p4 = false;
    long flag_count = 0;
    std::vector<std::string> failures;

    bool all_pass() const { return p1 && p2 && p3 && p4; }
};

// P1 unique least/greatest, P2 every maximal chain hits every rank, P3 every
// section's flag-adjacency graph is connected, P4 diamond condition.
AxiomReport verify_axioms(const RankedPoset& P, ExecMode mode = ExecMode::OpenMP);

// Whether Aut(P) is transitive on flags, by propagating flag pairings through
// the properly colored flag graph. Requires the axioms to hold.
bool poset_flag_transitive(const RankedPoset& P);

// Regular abstract polyhedron from the coset construction: rank-i faces are
// the right cosets of Gamma_i, incidence is nonempty coset intersection.
class AbstractPolyhedron {
public:
    explicit AbstractPolyhedron(const StringCGroup& S);

    const StringCGroup& source() const { return source_; }
    const FiniteGroup& group() const { return *source_.group; }
    const Subgroup& stabilizer(int rank) const { return stab_[rank]; }
    const CosetDecomposition& cosets(int rank) const { return cosets_[rank]; }
    const RankedPoset& poset() const { return poset_; }

    int vertex_count() const { return cosets_[0].count(); }
    int edge_count() const { return cosets_[1].count(); }
    int facet_count() const { return cosets_[2].count(); }

    // All maximal chains (vertex, edge, facet), in lexicographic order.
    std::vector<std::array<int, 3>> flags() const;
    // Flag carried by a group element: its coset at each rank.
    std::array<int, 3> flag_of(int g) const;

private:
    StringCGroup source_;
    std::array<Subgroup, 3> stab_;
    std::array<CosetDecomposition, 3> cosets_;
    RankedPoset poset_;
};

AbstractPolyhedron build_polyhedron(const StringCGroup& S);

// True when the right multiplication action of the group on coset-label flags
// is transitive, which also requires flag count = |group|.
bool flag_transitive(const AbstractPolyhedron& P);

std::string export_hasse(const AbstractPolyhedron& P);
nlohmann::json poset_json(const AbstractPolyhedron& P);
nlohmann::json axiom_report_json(const AxiomReport& r);

}  // namespace polyreal
