#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyreal/polytope.hpp"

namespace polyreal {

struct Representation {
    std::string name;          // "phi1" or "phi2"
    std::array<Mat3, 3> gens;  // images of the three group generators
};

// The two faithful irreducible degree-3 representations of H3, with exact
// entries in {0, +-1, +-1/2, +-tau/2, +-sigma/2}.
Representation builtin_representation(const std::string& name);

// phi(g) for every element, by propagating the generator images over the
// Cayley graph. Verifies the images define a homomorphism and that it is
// faithful; throws std::invalid_argument otherwise. Requires G to have
// exactly as many generators as rep.gens.
std::vector<Mat3> representation_images(const FiniteGroup& G, const Representation& rep);

// Points transform by x -> phi(g)^T x. Faces are right cosets, so the group
// acts on them by right multiplication, and the transpose makes the two
// actions match: act(gh) = act(h) after act(g).
Vec3 act_point(const std::vector<Mat3>& images, int g, const Vec3& x);

// Trace formula: (1 / |<t1,t2>|) * sum over the vertex stabilizer of
// Tr phi(gamma). Throws std::logic_error if the sum is not an integer
// multiple of the subgroup order.
int wythoff_dimension(const std::vector<Mat3>& images, const StringCGroup& S);

struct WythoffSpace {
    int dimension = 0;
    std::vector<Vec3> basis;  // each scaled so its first nonzero coordinate is 1
};

// Exact common fixed space of phi(t1) and phi(t2): the kernel of the stacked
// system [phi(t1) - I; phi(t2) - I], by Gaussian elimination over Q(sqrt5).
// Cross-checked against the trace formula.
WythoffSpace wythoff_space(const std::vector<Mat3>& images, const StringCGroup& S);

// Indices of (i-1)-faces incident to the base i-face (the identity coset),
// i in {1, 2, 3}. Rank 3 is the unique cell, incident to every facet.
std::vector<int> incident_lower_faces(const AbstractPolyhedron& P, int i);

struct RealizationSkeleton {
    const AbstractPolyhedron* poly = nullptr;
    std::string rep_name;
    std::vector<Mat3> images;  // per group element
    Vec3 base;

    std::vector<Vec3> vertices;                    // coordinates per vertex coset
    std::vector<std::array<int, 2>> edges;         // endpoint vertex indices per edge coset
    std::vector<std::vector<int>> facet_vertices;  // boundary vertex cycle per facet coset
    std::vector<std::vector<int>> facet_edges;     // boundary edge cycle, aligned with vertices

    int p() const { return poly->source().p; }
    int q() const { return poly->source().q; }
};

// Coset-orbit construction: vertex j sits at phi(rep_j)^T base; edge j joins
// the images of the base edge's endpoints; facet j's boundary walks powers of
// t0 t1 applied to its representative, rotated so the cycle starts at its
// lowest incident edge index. Throws std::domain_error on a zero base and
// std::logic_error if distinct vertex cosets collide geometrically.
RealizationSkeleton build_skeleton(const AbstractPolyhedron& P, const std::vector<Mat3>& images,
                                   const std::string& rep_name, const Vec3& base);

// Same with the default base point: the first Wythoff basis vector. Throws
// std::domain_error when the Wythoff space is zero-dimensional.
RealizationSkeleton build_skeleton(const AbstractPolyhedron& P, const std::vector<Mat3>& images,
                                   const std::string& rep_name);

// Realize-then-transform equals transform-then-realize, exactly, for every
// group element, on vertex coordinates, edge endpoint sets, and facet cycles.
bool skeleton_equivariant(const RealizationSkeleton& skel);

// The stabilizer inside the acting group of the base vertex point / base edge
// endpoint pair / base facet vertex cycle equals phi(Gamma_i) setwise.
bool skeleton_stabilizers_match(const RealizationSkeleton& skel);

// All vertices exactly equidistant from the origin.
bool skeleton_equal_norms(const RealizationSkeleton& skel);
// All edges of exactly equal squared length.
bool skeleton_equal_edge_lengths(const RealizationSkeleton& skel);

// Exact coordinates as per-component [a-num, a-den, b-num, b-den] string
// quadruples (value = a + b*sqrt5) plus float renderings, with edge and facet
// incidence lists, all 1-based.
nlohmann::json skeleton_json(const RealizationSkeleton& skel);

}  // namespace polyreal
