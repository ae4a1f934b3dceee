#include "polyreal/groups.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace polyreal {

namespace {
constexpr std::size_t kMulTableLimit = 4096;  // build the full table below this order
}

FiniteGroup FiniteGroup::generate(const std::vector<Mat3>& gens, std::size_t bound) {
    for (const Mat3& g : gens)
        if (!is_orthogonal(g)) throw std::invalid_argument("generate_group: generator not orthogonal");

    FiniteGroup G;
    G.elems_.push_back({mat_identity(), {}});
    G.index_.emplace(mat_identity(), 0);

    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int ei : frontier) {
            for (std::size_t k = 0; k < gens.size(); ++k) {
                Mat3 m = mat_mul(G.elems_[ei].matrix, gens[k]);
                auto [it, fresh] = G.index_.emplace(m, static_cast<int>(G.elems_.size()));
                if (fresh) {
                    if (G.elems_.size() >= bound)
                        throw std::runtime_error("generate_group: element bound exceeded");
                    std::vector<int> w = G.elems_[ei].word;
                    w.push_back(static_cast<int>(k));
                    G.elems_.push_back({std::move(m), std::move(w)});
                    next.push_back(it->second);
                }
            }
        }
        frontier = std::move(next);
    }

    for (const Mat3& g : gens) G.gen_idx_.push_back(G.index_.at(g));

    int n = G.size();
    G.inv_.resize(n);
    for (int i = 0; i < n; ++i) G.inv_[i] = G.index_.at(mat_transpose(G.elems_[i].matrix));

    if (static_cast<std::size_t>(n) <= kMulTableLimit) {
        G.mul_table_.resize(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                G.mul_table_[static_cast<std::size_t>(a) * n + b] =
                    G.index_.at(mat_mul(G.elems_[a].matrix, G.elems_[b].matrix));
    }
    return G;
}

int FiniteGroup::mul(int a, int b) const {
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * size() + b];
    return index_.at(mat_mul(elems_[a].matrix, elems_[b].matrix));
}

int FiniteGroup::index_of(const Mat3& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::element_order(int g) const {
    int k = 1, x = g;
    while (x != 0) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

std::vector<int> FiniteGroup::involutions() const {
    std::vector<int> out;
    for (int i = 1; i < size(); ++i)
        if (mul(i, i) == 0) out.push_back(i);
    return out;
}

int FiniteGroup::word_eval(const std::vector<int>& word) const {
    int x = 0;
    for (int k : word) {
        if (k < 0 || k >= num_generators()) throw std::out_of_range("word_eval: bad generator index");
        x = mul(x, gen_idx_[k]);
    }
    return x;
}

std::string FiniteGroup::word_name(int g) const {
    const auto& w = elems_[g].word;
    if (w.empty()) return "e";
    std::string s;
    for (int k : w) s += "s" + std::to_string(k);
    return s;
}

Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<int>& gens) {
    Subgroup H;
    H.parent = &G;
    H.mask.assign(G.size(), 0);
    H.mask[0] = 1;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int g : gens) {
                int y = G.mul(x, g);
                if (!H.mask[y]) {
                    H.mask[y] = 1;
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    for (int i = 0; i < G.size(); ++i)
        if (H.mask[i]) H.members.push_back(i);
    return H;
}

CosetDecomposition right_cosets(const FiniteGroup& G, const Subgroup& H) {
    CosetDecomposition D;
    D.coset_of.assign(G.size(), -1);
    for (int x = 0; x < G.size(); ++x) {
        if (D.coset_of[x] != -1) continue;
        int j = static_cast<int>(D.reps.size());
        D.reps.push_back(x);
        for (int h : H.members) D.coset_of[G.mul(h, x)] = j;
    }
    return D;
}

bool extends_to_automorphism(const FiniteGroup& G, const std::vector<std::pair<int, int>>& pairs) {
    int n = G.size();
    std::vector<int> image(n, -1);
    image[0] = 0;
    std::vector<int> frontier{0};
    int assigned = 1;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (const auto& [s, d] : pairs) {
                int y = G.mul(x, s);
                int fy = G.mul(image[x], d);
                if (image[y] == -1) {
                    image[y] = fy;
                    ++assigned;
                    next.push_back(y);
                } else if (image[y] != fy) {
                    return false;
                }
            }
        frontier = std::move(next);
    }
    if (assigned != n)
        throw std::invalid_argument("extends_to_automorphism: sources do not generate the group");
    std::vector<char> hit(n, 0);
    for (int v : image) {
        if (hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

}  // namespace polyreal
