#include "qconv/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qconv {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    return e;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
    ComplexMatrix m(e.rows(), e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
    return m;
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(to_eigen(m),
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult out;
    out.u = from_eigen(dec.matrixU());
    out.v = from_eigen(dec.matrixV());
    out.sigma.assign(dec.singularValues().data(),
                     dec.singularValues().data() + dec.singularValues().size());
    return out;
}

ComplexMatrix polar_factor(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("polar factor needs a square matrix");
    const auto dec = svd(m);
    const double smax = dec.sigma.front();
    const double smin = dec.sigma.back();
    if (smax == 0.0 || smin < 1e-14 * smax)
        throw SingularError("polar factor of a (near-)singular matrix, sigma_min/sigma_max = " +
                            std::to_string(smax == 0.0 ? 0.0 : smin / smax));
    return matmul(dec.u, dec.v.adjoint());
}

EighResult eigh(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("eigh needs a square matrix");
    Eigen::MatrixXcd e = to_eigen(m);
    e = (e + e.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> dec(e);
    EighResult out;
    out.values.assign(dec.eigenvalues().data(),
                      dec.eigenvalues().data() + dec.eigenvalues().size());
    out.vectors = from_eigen(dec.eigenvectors());
    return out;
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
    Eigen::MatrixXcd e = to_eigen(m);
    e = (e + e.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> dec(e, Eigen::EigenvaluesOnly);
    return dec.eigenvalues().minCoeff();
}

ComplexMatrix fourier_matrix(std::size_t d) {
    if (d < 1) throw DimensionError("fourier matrix needs d >= 1");
    ComplexMatrix f(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            const double phi = 2.0 * M_PI * static_cast<double>((j * k) % d) / d;
            f(j, k) = cplx(std::cos(phi) * s, std::sin(phi) * s);
        }
    return f;
}

ComplexMatrix swap_matrix(std::size_t d) {
    ComplexMatrix s(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
    return s;
}

ComplexMatrix swap_power(std::size_t d, double kappa) {
    if (kappa < 0.0 || kappa > 1.0) throw InputError("swap power exponent must be in [0,1]");
    const ComplexMatrix s = swap_matrix(d);
    const ComplexMatrix id = ComplexMatrix::identity(d * d);
    const cplx phase(std::cos(M_PI * kappa), std::sin(M_PI * kappa));
    // S = P+ - P- with P± = (I ± S)/2, so S^kappa = P+ + e^{i pi kappa} P-.
    ComplexMatrix out(d * d, d * d);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const cplx pp = (id.data()[i] + s.data()[i]) / 2.0;
        const cplx pm = (id.data()[i] - s.data()[i]) / 2.0;
        out.data()[i] = pp + phase * pm;
    }
    return out;
}

int rank_above(const ComplexMatrix& hermitian, double threshold) {
    const auto eg = eigh(hermitian);
    int r = 0;
    for (double v : eg.values)
        if (v > threshold) ++r;
    return r;
}

}  // namespace qconv
