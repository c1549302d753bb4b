#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hqe/eigendata.hpp"
#include "hqe/fuchsian.hpp"

namespace hqe {

// P1 triangulation of a closed surface.  Each triangle keeps its corner
// coordinates in its own chart; corners on paired sides share a degree of
// freedom.
struct SurfaceMesh {
    std::string surface_id;
    bool hyperbolic = true;  // conformal factor 4/(1-|z|^2)^2, else flat
    double h = 0.0;
    int n_dof = 0;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<cplx, 3>> corners;
    std::vector<cplx> dof_point;  // chart position of one representative
    std::vector<int> dof_sheet;
};

// Fan triangulation of the Dirichlet domain on every sheet.  Nodes are placed
// uniformly in hyperbolic arclength along the sides and along rays from the
// centre; paired side nodes are snapped within 0.3 h.  Throws
// MeshPairingFailure when a node finds no partner or a vertex cycle does not
// close up to angle 2 pi.
SurfaceMesh build_surface_mesh(const CoverSurface& surface, double h);
// Unit square with opposite sides identified.
SurfaceMesh build_torus_mesh(double h);

struct FemOptions {
    int n_modes = 10;
    double shift = -1.0;        // factorise K - shift M
    int block = 8;
    double residual_tol = 1e-6;  // relative to 1 + nu
    int max_restarts = 3;
    std::uint64_t seed = 1;
};

// Lowest eigenpairs of K x = nu M x by block Lanczos on (K - shift M)^{-1} M
// with full reorthogonalisation.  SolverNotConverged when residuals stay
// above tolerance.
EigenData fem_eigensolve(const SurfaceMesh& mesh, const FemOptions& opt);
EigenData fem_eigensolve(const CoverSurface& surface, double h, int n_modes);
EigenData torus_selftest(double h, int n_modes);

// 4 pi^2 (m^2 + n^2) in ascending order with multiplicity.
std::vector<double> torus_exact_eigenvalues(int count);

}  // namespace hqe
