#include "polyreal/geomesh.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace polyreal {

namespace {

double fdot3(const F3& a, const F3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
F3 fcross3(const F3& a, const F3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
F3 fsub3(const F3& a, const F3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double fnorm3(const F3& a) { return std::sqrt(fdot3(a, a)); }

double mesh_area(const TriMesh& M) {
    double a = 0.0;
    for (const auto& t : M.triangles)
        a += 0.5 * fnorm3(fcross3(fsub3(M.vertices[t[1]], M.vertices[t[0]]),
                                  fsub3(M.vertices[t[2]], M.vertices[t[0]])));
    return a;
}

std::map<std::pair<int, int>, int> edge_use_counts(const TriMesh& M) {
    std::map<std::pair<int, int>, int> cnt;
    for (const auto& t : M.triangles)
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            ++cnt[{std::min(a, b), std::max(a, b)}];
        }
    return cnt;
}

// Midpoint (1:4) subdivision. A midpoint is a boundary vertex exactly when
// its parent edge borders a single triangle.
void refine(TriMesh& M, std::vector<char>& bnd) {
    auto uses = edge_use_counts(M);
    std::map<std::pair<int, int>, int> mid;
    for (const auto& [e, n] : uses) {
        F3 p = {(M.vertices[e.first][0] + M.vertices[e.second][0]) / 2,
                (M.vertices[e.first][1] + M.vertices[e.second][1]) / 2,
                (M.vertices[e.first][2] + M.vertices[e.second][2]) / 2};
        mid[e] = static_cast<int>(M.vertices.size());
        M.vertices.push_back(p);
        bnd.push_back(n == 1 ? 1 : 0);
    }
    std::vector<std::array<int, 3>> tris;
    tris.reserve(M.triangles.size() * 4);
    for (const auto& t : M.triangles) {
        int m01 = mid[{std::min(t[0], t[1]), std::max(t[0], t[1])}];
        int m12 = mid[{std::min(t[1], t[2]), std::max(t[1], t[2])}];
        int m20 = mid[{std::min(t[2], t[0]), std::max(t[2], t[0])}];
        tris.push_back({t[0], m01, m20});
        tris.push_back({t[1], m12, m01});
        tris.push_back({t[2], m20, m12});
        tris.push_back({m01, m12, m20});
    }
    M.triangles = std::move(tris);
}

// One implicit smoothing step: solve the weighted Laplace system on the
// interior with boundary values fixed, then blend toward the solution.
// Returns false when no damping level reduces the surface area.
bool relax_step(TriMesh& M, const std::vector<char>& bnd, bool cotangent, double step,
                double& area_cur, double& displacement) {
    int nv = static_cast<int>(M.vertices.size());
    std::vector<int> interior_id(nv, -1);
    int ni = 0;
    for (int v = 0; v < nv; ++v)
        if (!bnd[v]) interior_id[v] = ni++;
    if (ni == 0) {
        displacement = 0.0;
        return true;
    }

    std::map<std::pair<int, int>, double> w;
    if (cotangent) {
        for (const auto& t : M.triangles)
            for (int k = 0; k < 3; ++k) {
                int i = t[k], j = t[(k + 1) % 3], o = t[(k + 2) % 3];
                F3 u = fsub3(M.vertices[i], M.vertices[o]);
                F3 v = fsub3(M.vertices[j], M.vertices[o]);
                double cr = fnorm3(fcross3(u, v));
                double cot = fdot3(u, v) / std::max(cr, 1e-12);
                cot = std::clamp(cot, -1e6, 1e6);
                w[{std::min(i, j), std::max(i, j)}] += 0.5 * cot;
            }
    } else {
        for (const auto& [e, n] : edge_use_counts(M)) {
            (void)n;
            w[e] = 1.0;
        }
    }

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::MatrixX3d rhs = Eigen::MatrixX3d::Zero(ni, 3);
    std::vector<double> diag(ni, 0.0);
    for (const auto& [e, wt] : w) {
        int a = e.first, b = e.second;
        for (int pass = 0; pass < 2; ++pass) {
            int p = pass == 0 ? a : b, q = pass == 0 ? b : a;
            if (bnd[p]) continue;
            int r = interior_id[p];
            diag[r] += wt;
            if (bnd[q])
                for (int c = 0; c < 3; ++c) rhs(r, c) += wt * M.vertices[q][c];
            else
                trips.emplace_back(r, interior_id[q], -wt);
        }
    }
    for (int r = 0; r < ni; ++r) trips.emplace_back(r, r, diag[r]);

    Eigen::SparseMatrix<double> A(ni, ni);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(A);
    if (solver.info() != Eigen::Success) throw std::runtime_error("weighted Laplace solve failed");
    Eigen::MatrixX3d target(ni, 3);
    for (int c = 0; c < 3; ++c) target.col(c) = solver.solve(rhs.col(c));
    if (solver.info() != Eigen::Success) throw std::runtime_error("weighted Laplace solve failed");

    double s = step;
    for (int attempt = 0; attempt < 40; ++attempt) {
        TriMesh cand = M;
        double disp = 0.0;
        for (int v = 0; v < nv; ++v) {
            if (bnd[v]) continue;
            int r = interior_id[v];
            F3 nv3;
            for (int c = 0; c < 3; ++c) nv3[c] = M.vertices[v][c] + s * (target(r, c) - M.vertices[v][c]);
            disp = std::max(disp, fnorm3(fsub3(nv3, M.vertices[v])));
            cand.vertices[v] = nv3;
        }
        double a = mesh_area(cand);
        if (a <= area_cur) {
            M = std::move(cand);
            area_cur = a;
            displacement = disp;
            return true;
        }
        s *= 0.5;
    }
    displacement = 0.0;
    return false;
}

struct PhaseResult {
    bool converged = false;
    bool stalled = false;
};

PhaseResult run_phase(TriMesh& M, const std::vector<char>& bnd, bool cotangent,
                      const PlateauParams& p, double tol, int cap, int& used, double& area_cur,
                      PlateauStats& st) {
    PhaseResult res;
    for (int it = 0; it < cap && used < p.max_iterations; ++it) {
        ++used;
        ++st.iterations;
        double disp = 0.0;
        if (!relax_step(M, bnd, cotangent, p.step, area_cur, disp)) {
            res.stalled = true;  // at the numerical area floor
            return res;
        }
        st.area_log.push_back(area_cur);
        st.final_displacement = disp;
        if (disp < tol) {
            res.converged = true;
            return res;
        }
    }
    return res;
}

}  // namespace

PlateauSolution solve_plateau(const std::vector<F3>& corners, const PlateauParams& params) {
    if (corners.size() < 3) throw std::invalid_argument("boundary needs at least 3 corners");
    if (params.samples_per_edge < 1 || params.step <= 0.0 || params.step > 1.0 ||
        params.tolerance <= 0.0 || params.max_iterations < 1 || params.refinement_levels < 0)
        throw std::invalid_argument("invalid solver parameters");

    int p = static_cast<int>(corners.size());
    int s = params.samples_per_edge;
    PlateauSolution sol;

    // Boundary loop first (corner k sits at index k*s), then the centroid fan.
    for (int k = 0; k < p; ++k)
        for (int t = 0; t < s; ++t) {
            double f = static_cast<double>(t) / s;
            const F3 &a = corners[k], &b = corners[(k + 1) % p];
            sol.mesh.vertices.push_back(
                {a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]), a[2] + f * (b[2] - a[2])});
        }
    int bn = p * s;
    F3 centroid{0, 0, 0};
    for (int i = 0; i < bn; ++i)
        for (int c = 0; c < 3; ++c) centroid[c] += sol.mesh.vertices[i][c] / bn;
    sol.mesh.vertices.push_back(centroid);
    for (int i = 0; i < bn; ++i) sol.mesh.triangles.push_back({i, (i + 1) % bn, bn});
    sol.is_boundary.assign(bn, 1);
    sol.is_boundary.push_back(0);

    double area_cur = mesh_area(sol.mesh);
    sol.stats.area_log.push_back(area_cur);
    int used = 0;
    bool converged = false;

    // Uniform weights stabilize the coarse fan; cotangent weights after each
    // refinement drive the area down (Pinkall-Polthier style).
    run_phase(sol.mesh, sol.is_boundary, false, params, 1e-8, 200, used, area_cur, sol.stats);
    for (int level = 0; level < params.refinement_levels; ++level) {
        refine(sol.mesh, sol.is_boundary);
        area_cur = mesh_area(sol.mesh);
        sol.stats.area_log.push_back(area_cur);
        bool final_level = level + 1 == params.refinement_levels;
        double tol = final_level ? params.tolerance : 1e-8;
        int cap = final_level ? params.max_iterations : 500;
        PhaseResult r = run_phase(sol.mesh, sol.is_boundary, true, params, tol, cap, used,
                                  area_cur, sol.stats);
        if (final_level) converged = r.converged || (r.stalled && sol.stats.final_displacement < 1e-6);
    }
    if (params.refinement_levels == 0) {
        PhaseResult r = run_phase(sol.mesh, sol.is_boundary, false, params, params.tolerance,
                                  params.max_iterations, used, area_cur, sol.stats);
        converged = r.converged;
    }
    sol.stats.converged = converged;
    sol.stats.final_area = area_cur;

    // Interior area gradient: for triangle (v, a, b) the derivative of its
    // area by v is 0.5 * nhat x (b - a).
    std::vector<F3> grad(sol.mesh.vertices.size(), {0, 0, 0});
    for (const auto& t : sol.mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            int v = t[k], a = t[(k + 1) % 3], b = t[(k + 2) % 3];
            F3 n = fcross3(fsub3(sol.mesh.vertices[a], sol.mesh.vertices[v]),
                           fsub3(sol.mesh.vertices[b], sol.mesh.vertices[v]));
            double nn = fnorm3(n);
            if (nn < 1e-300) continue;
            F3 g = fcross3({n[0] / nn, n[1] / nn, n[2] / nn},
                           fsub3(sol.mesh.vertices[b], sol.mesh.vertices[a]));
            for (int c = 0; c < 3; ++c) grad[v][c] += 0.5 * g[c];
        }
    double gmax = 0.0;
    for (std::size_t v = 0; v < grad.size(); ++v)
        if (!sol.is_boundary[v]) gmax = std::max(gmax, fnorm3(grad[v]));
    sol.stats.max_gradient = gmax;

    double elen = 0.0;
    auto uses = edge_use_counts(sol.mesh);
    for (const auto& [e, n] : uses) {
        (void)n;
        elen += fnorm3(fsub3(sol.mesh.vertices[e.first], sol.mesh.vertices[e.second]));
    }
    sol.stats.mean_edge_length = uses.empty() ? 0.0 : elen / static_cast<double>(uses.size());

    if (!sol.stats.converged)
        throw std::runtime_error("minimal surface iteration did not converge: last displacement " +
                                 std::to_string(sol.stats.final_displacement));
    return sol;
}

}  // namespace polyreal
