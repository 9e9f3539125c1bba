#pragma once

#include <vector>

#include "qconv/complex_matrix.hpp"

namespace qconv {

struct SvdResult {
    ComplexMatrix u;                  // left singular vectors
    std::vector<double> sigma;        // singular values, descending
    ComplexMatrix v;                  // right singular vectors (M = U diag(sigma) V^dag)
};

SvdResult svd(const ComplexMatrix& m);

// Nearest unitary in Frobenius norm: W = U V^dag from the SVD. SingularError
// when sigma_min < 1e-14 * sigma_max.
ComplexMatrix polar_factor(const ComplexMatrix& m);

struct EighResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
};

// Eigendecomposition of a Hermitian matrix (input is symmetrized internally).
EighResult eigh(const ComplexMatrix& m);

double min_eigenvalue_hermitian(const ComplexMatrix& m);

// Fourier matrix (F_d)_{jk} = exp(2 pi i j k / d) / sqrt(d).
ComplexMatrix fourier_matrix(std::size_t d);

// Swap operator S = sum |ij><ji| on C^d x C^d.
ComplexMatrix swap_matrix(std::size_t d);

// S^kappa for kappa in [0,1] through the spectral split S = P+ - P-:
// S^kappa = P+ + e^{i pi kappa} P-.
ComplexMatrix swap_power(std::size_t d, double kappa);

// Numerical rank of a Hermitian PSD matrix: eigenvalues above `threshold`.
int rank_above(const ComplexMatrix& hermitian, double threshold);

}  // namespace qconv
