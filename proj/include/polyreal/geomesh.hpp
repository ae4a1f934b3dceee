#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyreal/wythoff.hpp"

namespace polyreal {

// The four realization families. classify_family never returns Spherical:
// the spherical figure is additionally available for every skeleton.
enum class Family { Spherical, Convex, Star, Skew };

const char* family_name(Family f);  // "spherical" / "convex" / "star" / "skew"
const char* family_code(Family f);  // "sp" / "co" / "st" / "sk"
Family family_from_code(const std::string& code);  // throws std::invalid_argument

using F3 = std::array<double, 3>;

struct TriMesh {
    std::vector<F3> vertices;
    std::vector<std::array<int, 3>> triangles;
};

struct FacetGeometry {
    Family kind = Family::Convex;  // planar-convex, planar-star, spherical, minimal-surface
    TriMesh mesh;
    std::vector<F3> boundary;  // closed boundary polyline, last point != first
    int region_count = 1;      // even-odd regions meshed (planar facets)
};

struct PlateauParams {
    int samples_per_edge = 8;
    double step = 0.3;           // damping of each implicit relaxation move
    double tolerance = 1e-10;    // max interior displacement to declare convergence
    int max_iterations = 20000;  // total budget across all phases
    int refinement_levels = 3;
};

struct PlateauStats {
    bool converged = false;
    int iterations = 0;
    double final_displacement = 0.0;
    double final_area = 0.0;
    double max_gradient = 0.0;      // largest interior area-gradient norm at the end
    double mean_edge_length = 0.0;
    std::vector<double> area_log;   // area after each accepted step, non-increasing
};

struct RealizedPolyhedron {
    const RealizationSkeleton* skeleton = nullptr;
    Family family = Family::Convex;
    std::vector<FacetGeometry> facets;
    std::vector<std::vector<F3>> edge_geometry;  // polyline per skeleton edge
    std::vector<bool> coplanar;                  // per facet, decided exactly
    std::vector<bool> self_intersecting;         // per facet, decided exactly
    bool any_crossing = false;                   // some facet pair crosses (exact)
    PlateauStats plateau;                        // meaningful when family == Skew
};

// Exact predicates on skeleton coordinates.
bool facet_coplanar(const RealizationSkeleton& skel, int facet);
// Two non-adjacent boundary edges of the facet cross properly (planar facet).
bool facet_self_intersects(const RealizationSkeleton& skel, int facet);
// Open line segments of two skeleton edges share a point.
bool edges_properly_cross(const RealizationSkeleton& skel, int ea, int eb);
// The facets' plane-intersection line passes strictly inside both facet
// regions somewhere (even-odd interiors; both facets planar).
bool facets_properly_cross(const RealizationSkeleton& skel, int fa, int fb);

// Skew if any facet is non-coplanar; otherwise star if any two non-incident
// edges or any two facets intersect; otherwise convex.
Family classify_family(const RealizationSkeleton& skel, ExecMode mode = ExecMode::OpenMP);

// Even-odd interior of one planar facet: the arrangement of its boundary
// cycle, faces selected by crossing parity, each triangulated by ear clipping.
// Points carry exact 3D coordinates; triangles index into points.
struct FacetRegions {
    std::vector<Vec3> points;
    std::vector<std::array<int, 3>> triangles;
    int region_count = 0;
};
FacetRegions star_facet_regions(const std::vector<Vec3>& cycle);

// Discrete Plateau solution for one boundary loop: corners sampled into a
// polyline, disk initialized as a fan from the boundary centroid, midpoint
// refined, then relaxed by damped implicit mean-curvature steps (umbrella
// weights first, cotangent after the first refinement) with the boundary
// fixed. Every accepted step has non-increasing area. Throws
// std::runtime_error when the budget ends before convergence.
struct PlateauSolution {
    TriMesh mesh;
    std::vector<char> is_boundary;  // per mesh vertex
    PlateauStats stats;
};
PlateauSolution solve_plateau(const std::vector<F3>& corners, const PlateauParams& params);

// Vertices radially projected to the unit sphere, edges as sampled
// great-circle arcs, facets as spherical fans. Exact antipodal endpoints are
// an error (std::domain_error).
RealizedPolyhedron realize_spherical(const RealizationSkeleton& skel, int samples_per_arc = 16);
// Planar facets meshed from their even-odd regions; family convex or star.
// Throws std::invalid_argument when some facet is non-coplanar.
RealizedPolyhedron realize_classical(const RealizationSkeleton& skel,
                                     ExecMode mode = ExecMode::OpenMP);
// Base facet spanned by a discrete minimal surface, copies transformed by the
// facet representatives. Throws std::invalid_argument when all facets are
// coplanar.
RealizedPolyhedron realize_skew(const RealizationSkeleton& skel, const PlateauParams& params = {},
                                ExecMode mode = ExecMode::OpenMP);

// Signed solid angle of the geodesic triangle with the given unit vertices.
double triangle_solid_angle(const F3& a, const F3& b, const F3& c);
// Total solid angle of one spherical facet's mesh (absolute value).
double spherical_facet_area(const RealizedPolyhedron& rp, int facet);
// Signed volume enclosed by all facet triangles (divergence theorem).
double enclosed_volume(const RealizedPolyhedron& rp);

std::string export_obj(const RealizedPolyhedron& rp);
std::string export_ply(const RealizedPolyhedron& rp);
nlohmann::json realization_metadata(const RealizedPolyhedron& rp);

}  // namespace polyreal
