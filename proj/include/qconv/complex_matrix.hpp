#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qconv/errors.hpp"

namespace qconv {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Value type: cheap to copy at the sizes this
// library works with (d^2 <= 81, occasionally a few thousand).
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    ComplexMatrix transpose() const;
    ComplexMatrix adjoint() const;
    ComplexMatrix conj() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    // Max |entry| of (this - other); DimensionError on shape mismatch.
    double max_abs_diff(const ComplexMatrix& other) const;
    double max_abs() const;
    double frobenius_norm() const;
    cplx trace() const;

    // sup-norm deviation from unitarity, max |(M M^dag - I)_{ij}|
    double unitarity_residual() const;
    bool is_unitary(double tol) const { return is_square() && unitarity_residual() < tol; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// Matrix product kernels. matmul dispatches to the OpenMP kernel when the
// problem is large enough to pay for it; matmul_serial is the reference
// implementation the tests and benchmark compare against.
ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul_omp(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& x);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

double norm2(const std::vector<cplx>& v);
void normalize(std::vector<cplx>& v);
cplx inner(const std::vector<cplx>& u, const std::vector<cplx>& v);  // <u|v>

// Bipartite index helpers. Flattening is row-major: (k,i) -> k*d + i, fixed
// across the whole project.
struct BipartiteIndex {
    std::size_t d;
    std::size_t flatten(std::size_t k, std::size_t i) const { return k * d + i; }
    std::pair<std::size_t, std::size_t> unflatten(std::size_t f) const { return {f / d, f % d}; }
};

// Local dimension of a d^2 x d^2 matrix; DimensionError when the dimension is
// not a perfect square.
std::size_t bipartite_local_dim(const ComplexMatrix& m);

// Number of threads honored by the OpenMP kernels (QCONV_THREADS env var caps
// it; 0 = library default).
int max_threads();

}  // namespace qconv
