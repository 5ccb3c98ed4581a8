#pragma once

#include <Eigen/Dense>

namespace credlink {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Lower-triangular Cholesky factor L with L * L^T == m.
// Requires m symmetric (checked to 1e-10 relative) and positive definite;
// throws NotPositiveDefinite otherwise.
Matrix cholesky_lower(const Matrix& m);

// Smallest eigenvalue of a symmetric matrix.
double min_symmetric_eigenvalue(const Matrix& m);

// Spectral radius (largest |eigenvalue|) of a general square matrix.
double spectral_radius(const Matrix& m);

}  // namespace credlink
