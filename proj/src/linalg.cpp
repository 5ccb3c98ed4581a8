#include "credlink/linalg.hpp"

#include <cmath>

#include "credlink/errors.hpp"

namespace credlink {

Matrix cholesky_lower(const Matrix& m) {
    const auto n = m.rows();
    if (n == 0 || m.cols() != n) {
        throw NotPositiveDefinite("cholesky: matrix must be square and non-empty");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0)) {
        throw NotPositiveDefinite("cholesky: matrix is not symmetric");
    }

    Matrix l = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double diag = m(j, j);
        for (Eigen::Index k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0)) {
            throw NotPositiveDefinite("cholesky: matrix is not positive definite");
        }
        l(j, j) = std::sqrt(diag);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double sum = m(i, j);
            for (Eigen::Index k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            l(i, j) = sum / l(j, j);
        }
    }
    return l;
}

double min_symmetric_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    return es.eigenvalues().minCoeff();
}

double spectral_radius(const Matrix& m) {
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace credlink
