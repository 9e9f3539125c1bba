#include "qconv/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qconv {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("matrix data length " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix t(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) t.data_[i] = std::conj(data_[i]);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("matrix add shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("matrix sub shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix diff shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    return m;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::unitarity_residual() const {
    if (!is_square()) throw DimensionError("unitarity residual of non-square matrix");
    const std::size_t n = rows_;
    double m = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += (*this)(r, k) * std::conj((*this)(c, k));
            if (r == c) s -= 1.0;
            m = std::max(m, std::abs(s));
        }
    }
    return m;
}

int max_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("QCONV_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
#else
    return 1;
#endif
}

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul shape mismatch");
    const std::size_t n = a.rows(), m = b.cols(), k = a.cols();
    ComplexMatrix c(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        cplx* crow = &c.data()[i * m];
        for (std::size_t p = 0; p < k; ++p) {
            const cplx av = a(i, p);
            if (av == cplx(0.0)) continue;
            const cplx* brow = &b.data()[p * m];
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

ComplexMatrix matmul_omp(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul shape mismatch");
    const std::size_t n = a.rows(), m = b.cols(), k = a.cols();
    ComplexMatrix c(n, m);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        cplx* crow = &c.data()[i * m];
        for (std::size_t p = 0; p < k; ++p) {
            const cplx av = a(i, p);
            if (av == cplx(0.0)) continue;
            const cplx* brow = &b.data()[p * m];
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    // Below ~64x64 the parallel kernel loses to thread startup.
    if (a.rows() * a.cols() * b.cols() < 64 * 64 * 64 || max_threads() == 1)
        return matmul_serial(a, b);
    return matmul_omp(a, b);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& x) {
    if (a.cols() != x.size()) throw DimensionError("matvec shape mismatch");
    std::vector<cplx> y(a.rows(), cplx(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        const cplx* row = &a.data()[i * a.cols()];
        for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx av = a(i, j);
            if (av == cplx(0.0)) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = av * b(p, q);
        }
    return c;
}

ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

void normalize(std::vector<cplx>& v) {
    double n = norm2(v);
    if (n == 0.0) throw SingularError("cannot normalize zero vector");
    for (auto& x : v) x /= n;
}

cplx inner(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    if (u.size() != v.size()) throw DimensionError("inner product size mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

std::size_t bipartite_local_dim(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("bipartite matrix must be square");
    const std::size_t n = m.rows();
    std::size_t d = static_cast<std::size_t>(std::llround(std::sqrt(double(n))));
    if (d * d != n)
        throw DimensionError("dimension " + std::to_string(n) + " is not a perfect square");
    return d;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Dimension: return "DIMENSION";
        case ErrorCode::Label: return "LABEL";
        case ErrorCode::Singular: return "SINGULAR";
        case ErrorCode::NoConstruction: return "NO_CONSTRUCTION";
        case ErrorCode::Orthogonality: return "ORTHOGONALITY";
        case ErrorCode::Basis: return "BASIS";
        case ErrorCode::Structure: return "STRUCTURE";
        case ErrorCode::Input: return "INPUT";
        case ErrorCode::Unitarity: return "UNITARITY";
        case ErrorCode::Budget: return "BUDGET";
        case ErrorCode::SearchFailed: return "SEARCH_FAILED";
        case ErrorCode::Io: return "IO";
        case ErrorCode::Parse: return "PARSE";
    }
    return "UNKNOWN";
}

}  // namespace qconv
