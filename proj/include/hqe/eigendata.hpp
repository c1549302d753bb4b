#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace hqe {

// Eigenpairs of a surface Laplacian sampled on a mesh of the fundamental
// domain (one copy per sheet for covers).  Columns of `eigenvectors` are
// orthonormal under the quadrature weights.
struct EigenData {
    std::string surface_id;
    Eigen::VectorXd x, y, weight;
    Eigen::VectorXi sheet;
    Eigen::VectorXd eigenvalues;      // ascending
    Eigen::MatrixXd eigenvectors;     // n_mesh x n_modes
    std::vector<double> residuals;    // per mode, ||(Delta_h + nu) psi||
    double ortho_tol = 1e-8;
    double residual_tol = 1e-6;

    Eigen::Index n_mesh() const { return x.size(); }
    Eigen::Index n_modes() const { return eigenvalues.size(); }
};

// Throws FormatError, OrthonormalityViolation or ResidualViolation.
void validate(const EigenData& data);

// First line: JSON header.  Then sections "#mesh" (x,y,weight,sheet),
// "#eigenvalues" (one per line) and "#eigenvectors" (one row per mode).
std::string to_csv(const EigenData& data);
EigenData parse_eigendata(const std::string& text);

void export_eigendata(const EigenData& data, const std::string& path);
EigenData ingest_eigendata(const std::string& path);

}  // namespace hqe
