#pragma once

#include <map>
#include <utility>
#include <vector>

#include "polyreal/exactnum.hpp"

namespace polyreal {

struct GroupElement {
    Mat3 matrix;
    std::vector<int> word;  // shortest generator word found (breadth-first)
};

// Finite group of orthogonal 3x3 matrices, closed by breadth-first search from
// generators. Element 0 is the identity; element order is shortlex on words,
// which makes every derived listing deterministic.
class FiniteGroup {
public:
    static FiniteGroup generate(const std::vector<Mat3>& gens, std::size_t bound = 100000);

    int size() const { return static_cast<int>(elems_.size()); }
    const GroupElement& element(int i) const { return elems_[i]; }
    int num_generators() const { return static_cast<int>(gen_idx_.size()); }
    int generator(int k) const { return gen_idx_[k]; }

    int mul(int a, int b) const;
    int inv(int a) const { return inv_[a]; }
    int index_of(const Mat3& m) const;  // -1 when absent
    int element_order(int g) const;
    bool is_involution(int g) const { return g != 0 && mul(g, g) == 0; }
    std::vector<int> involutions() const;
    int word_eval(const std::vector<int>& word) const;  // generator indices -> element
    std::string word_name(int g) const;                 // "e" or "s0s1..."

private:
    FiniteGroup() = default;

    std::vector<GroupElement> elems_;
    std::vector<int> gen_idx_;
    std::map<Mat3, int, Mat3Less> index_;
    std::vector<int> mul_table_;  // size*size when small enough, else empty
    std::vector<int> inv_;
};

struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members;  // ascending element indices, starts with 0
    std::vector<char> mask;    // size |G|

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const { return mask[g] != 0; }
};

Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<int>& gens);

struct CosetDecomposition {
    std::vector<int> reps;      // reps[j] = least element of coset j; reps[0] = identity
    std::vector<int> coset_of;  // element index -> coset index

    int count() const { return static_cast<int>(reps.size()); }
};

// Right cosets H*g. Representatives are the least elements in group order, so
// the coset containing the identity comes first and is represented by it.
CosetDecomposition right_cosets(const FiniteGroup& G, const Subgroup& H);

// Whether mapping pairs[i].first -> pairs[i].second extends to an automorphism
// of G. Throws std::invalid_argument when the sources do not generate G.
bool extends_to_automorphism(const FiniteGroup& G, const std::vector<std::pair<int, int>>& pairs);

}  // namespace polyreal
