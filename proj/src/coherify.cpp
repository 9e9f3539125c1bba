#include "qconv/coherify.hpp"

#include <cmath>

#include "qconv/linalg.hpp"
#include "qconv/tensor_ops.hpp"

namespace qconv {

double BasisFamily::orthonormality_residual() const {
    double worst = 0.0;
    for (const auto& m : v) worst = std::max(worst, m.unitarity_residual());
    return worst;
}

void BasisFamily::require_valid(double tol) const {
    if (v.size() != d) throw BasisError("basis family must hold d matrices");
    for (const auto& m : v)
        if (m.rows() != d || m.cols() != d)
            throw BasisError("basis family matrices must be d x d");
    const double r = orthonormality_residual();
    if (r >= tol)
        throw BasisError("basis family orthonormality residual " + std::to_string(r) +
                         " exceeds tolerance");
}

BasisFamily BasisFamily::computational(std::size_t d) {
    BasisFamily b;
    b.d = d;
    b.v.assign(d, ComplexMatrix::identity(d));
    return b;
}

BasisFamily BasisFamily::random(std::size_t d, Rng& rng) {
    BasisFamily b;
    b.d = d;
    for (std::size_t k = 0; k < d; ++k) b.v.push_back(haar_unitary(d, rng));
    return b;
}

double MultiBasisFamily::orthonormality_residual() const {
    double worst = 0.0;
    for (const auto& slice : vectors) {
        for (std::size_t p = 0; p < slice.size(); ++p)
            for (std::size_t q = 0; q < slice.size(); ++q) {
                const cplx g = inner(slice[p], slice[q]);
                worst = std::max(worst, std::abs(g - (p == q ? cplx(1.0) : cplx(0.0))));
            }
    }
    return worst;
}

void MultiBasisFamily::require_valid(double tol) const {
    std::size_t block = 1;
    for (std::size_t i = 0; i + 2 < arity; ++i) block *= d;  // d^{m-2}
    if (vectors.size() != d) throw BasisError("multibasis must have d first-index slices");
    for (const auto& slice : vectors) {
        if (slice.size() != block)
            throw BasisError("multibasis slice must hold d^{m-2} vectors");
        for (const auto& vec : slice)
            if (vec.size() != block) throw BasisError("multibasis vector dimension mismatch");
    }
    const double r = orthonormality_residual();
    if (r >= tol)
        throw BasisError("multibasis orthonormality residual " + std::to_string(r) +
                         " exceeds tolerance");
}

MultiBasisFamily MultiBasisFamily::computational(std::size_t d, std::size_t arity) {
    MultiBasisFamily b;
    b.d = d;
    b.arity = arity;
    std::size_t block = 1;
    for (std::size_t i = 0; i + 2 < arity; ++i) block *= d;
    b.vectors.assign(d, std::vector<std::vector<cplx>>(block, std::vector<cplx>(block, 0.0)));
    for (std::size_t i1 = 0; i1 < d; ++i1)
        for (std::size_t r = 0; r < block; ++r) b.vectors[i1][r][r] = 1.0;
    return b;
}

MultiBasisFamily MultiBasisFamily::random(std::size_t d, std::size_t arity, Rng& rng) {
    MultiBasisFamily b;
    b.d = d;
    b.arity = arity;
    std::size_t block = 1;
    for (std::size_t i = 0; i + 2 < arity; ++i) block *= d;
    for (std::size_t i1 = 0; i1 < d; ++i1) {
        const ComplexMatrix u = haar_unitary(block, rng);
        std::vector<std::vector<cplx>> slice(block, std::vector<cplx>(block));
        for (std::size_t r = 0; r < block; ++r)
            for (std::size_t c = 0; c < block; ++c) slice[r][c] = u(r, c);
        b.vectors.push_back(std::move(slice));
    }
    return b;
}

MultiBasisFamily MultiBasisFamily::from_bipartite(const BasisFamily& b) {
    MultiBasisFamily mb;
    mb.d = b.d;
    mb.arity = 3;
    for (std::size_t k = 0; k < b.d; ++k) {
        std::vector<std::vector<cplx>> slice;
        for (std::size_t l = 0; l < b.d; ++l) {
            std::vector<cplx> vec(b.d);
            for (std::size_t i = 0; i < b.d; ++i) vec[i] = b.amp(k, l, i);
            slice.push_back(std::move(vec));
        }
        mb.vectors.push_back(std::move(slice));
    }
    return mb;
}

ComplexMatrix build_unitary(const PermutationTensor& a, const BasisFamily& bases) {
    if (a.arity != 3) throw DimensionError("build_unitary expects an arity-3 tensor");
    if (a.d != bases.d) throw DimensionError("tensor and basis dimension mismatch");
    bases.require_valid();
    const std::size_t d = a.d;
    ComplexMatrix u(d * d, d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            const std::size_t j = a.j_of(k, l);
            for (std::size_t i = 0; i < d; ++i) u(k * d + i, l * d + j) = bases.amp(k, l, i);
        }
    return u;
}

DynamicalMatrix dynamical_matrix(const ComplexMatrix& u, const PermutationTensor& a) {
    if (a.arity != 3) throw DimensionError("dynamical_matrix expects an arity-3 tensor");
    const std::size_t d = a.d;
    if (u.rows() != d * d || u.cols() != d * d)
        throw DimensionError("dynamical_matrix: unitary size mismatch");
    // sparsity consistency: row-block k may touch column (l,j) only when A_{klj}=1
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t j = 0; j < d; ++j) {
                if (a.at3(k, l, j)) continue;
                for (std::size_t i = 0; i < d; ++i)
                    if (std::abs(u(k * d + i, l * d + j)) > 1e-12)
                        throw StructureError("unitary support violates the tensor sparsity");
            }
    DynamicalMatrix dm;
    dm.d = d;
    dm.arity = 3;
    dm.matrix = ComplexMatrix(d * d * d, d * d * d);
    // D_{(klj),(k'l'j')} = sum_i U_{ki,lj} conj(U_{k'i,l'j'})
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k2 = 0; k2 < d; ++k2)
                    for (std::size_t l2 = 0; l2 < d; ++l2)
                        for (std::size_t j2 = 0; j2 < d; ++j2) {
                            cplx s = 0.0;
                            for (std::size_t i = 0; i < d; ++i)
                                s += u(k * d + i, l * d + j) *
                                     std::conj(u(k2 * d + i, l2 * d + j2));
                            dm.matrix((k * d + l) * d + j, (k2 * d + l2) * d + j2) = s;
                        }
    return dm;
}

double DynamicalMatrix::min_eigenvalue() const { return min_eigenvalue_hermitian(matrix); }

ComplexMatrix DynamicalMatrix::trace_out_first() const {
    const std::size_t rest = matrix.rows() / d;
    ComplexMatrix out(rest, rest);
    for (std::size_t a = 0; a < rest; ++a)
        for (std::size_t b = 0; b < rest; ++b) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < d; ++k) s += matrix(k * rest + a, k * rest + b);
            out(a, b) = s;
        }
    return out;
}

std::vector<double> DynamicalMatrix::diagonal() const {
    std::vector<double> diag(matrix.rows());
    for (std::size_t i = 0; i < matrix.rows(); ++i) diag[i] = matrix(i, i).real();
    return diag;
}

TristochResult is_tristochastic_channel(const ComplexMatrix& u, const PermutationTensor& a,
                                        double tol) {
    if (a.arity != 3) throw DimensionError("is_tristochastic_channel expects arity 3");
    const std::size_t d = a.d;
    // recover the basis vectors from U through the sparsity pattern
    std::vector<std::vector<std::vector<cplx>>> vec(d,
        std::vector<std::vector<cplx>>(d, std::vector<cplx>(d)));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            const std::size_t j = a.j_of(k, l);
            for (std::size_t i = 0; i < d; ++i) vec[k][l][i] = u(k * d + i, l * d + j);
        }
    TristochResult res;
    // condition 1: sum over k != k' of |<a_{k,l}|a_{k',l'}>|^2 for pairs with
    // A_{klj} = A_{k'l'j} = 1 (same j)
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l) {
            const std::size_t k = a.k_of(l, j);
            for (std::size_t l2 = 0; l2 < d; ++l2) {
                const std::size_t k2 = a.k_of(l2, j);
                if (k == k2) continue;
                const double term = std::norm(inner(vec[k][l], vec[k2][l2]));
                res.max_residual = std::max(res.max_residual, term);
                res.total_residual += term;
            }
        }
    // condition 2: sum over k != k' of |<a_{k,l}|a_{k',l}>|^2 (same l)
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t k2 = 0; k2 < d; ++k2) {
                if (k == k2) continue;
                const double term = std::norm(inner(vec[k][l], vec[k2][l]));
                res.max_residual = std::max(res.max_residual, term);
                res.total_residual += term;
            }
    res.is_tristochastic = res.max_residual < tol;
    return res;
}

CoherificationEntanglements coherification_entanglements(const PermutationTensor& a,
                                                         const BasisFamily& bases) {
    const std::size_t d = a.d;
    const double d4 = std::pow(static_cast<double>(d), 4);
    double sum_u = 0.0, sum_us = 0.0;
    std::vector<cplx> va(d), vb(d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l) {
            const std::size_t k = a.k_of(l, j);
            for (std::size_t l2 = 0; l2 < d; ++l2) {
                const std::size_t k2 = a.k_of(l2, j);
                for (std::size_t i = 0; i < d; ++i) {
                    va[i] = bases.amp(k, l, i);
                    vb[i] = bases.amp(k2, l2, i);
                }
                sum_u += std::norm(inner(va, vb));
            }
        }
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t k2 = 0; k2 < d; ++k2) {
                for (std::size_t i = 0; i < d; ++i) {
                    va[i] = bases.amp(k, l, i);
                    vb[i] = bases.amp(k2, l, i);
                }
                sum_us += std::norm(inner(va, vb));
            }
    return {1.0 - sum_u / d4, 1.0 - sum_us / d4};
}

ComplexMatrix multistoch_build(const PermutationTensor& a, const MultiBasisFamily& bases) {
    if (a.arity < 3) throw DimensionError("multistoch_build expects arity >= 3");
    if (a.arity != bases.arity || a.d != bases.d)
        throw DimensionError("tensor and multibasis shape mismatch");
    bases.require_valid();
    const std::size_t d = a.d;
    const std::size_t m = a.arity;
    std::size_t n = 1;
    for (std::size_t i = 0; i + 1 < m; ++i) n *= d;  // d^{m-1}
    const std::size_t block = n / d;                 // d^{m-2}
    // rows (i1, j1..j_{m-2}), cols (i2..i_m); vector index within the slice is
    // (i2..i_{m-1}), i.e. the column index divided by its last digit i_m.
    ComplexMatrix u(n, n);
    std::vector<std::size_t> idx(m - 1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t rem = col;
        for (std::size_t t = m - 1; t-- > 0;) {
            idx[t] = rem % d;
            rem /= d;
        }
        // find i1 with A_{i1, i2..i_m} = 1
        std::size_t block_idx = 0;
        for (std::size_t t = 0; t + 1 < m - 1; ++t) block_idx = block_idx * d + idx[t];
        std::size_t i1 = d;
        std::size_t stride = n;  // stride of the first index in the tensor
        for (std::size_t cand = 0; cand < d; ++cand)
            if (a.entries[cand * stride + col]) {
                i1 = cand;
                break;
            }
        if (i1 == d) throw StructureError("multistoch_build: empty tensor line");
        const auto& vec = bases.vectors[i1][block_idx];
        for (std::size_t r = 0; r < block; ++r) u(i1 * block + r, col) = vec[r];
    }
    return u;
}

double c2_coherence(const DynamicalMatrix& dm) {
    double all = 0.0, diag = 0.0;
    const std::size_t n = dm.matrix.rows();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double t = std::norm(dm.matrix(r, c));
            all += t;
            if (r == c) diag += t;
        }
    const double norm = std::pow(static_cast<double>(dm.d), 2.0 * (dm.arity - 1));
    return (all - diag) / norm;
}

MultistochResult is_multistochastic_channel(const ComplexMatrix& u, const PermutationTensor& a,
                                            double tol, int trials, std::uint64_t seed) {
    const std::size_t d = a.d;
    const std::size_t m = a.arity;
    const std::size_t num_inputs = m - 1;  // the unitary acts on m-1 parties
    MultistochResult res;
    Rng rng(seed);
    const double inv_d = 1.0 / static_cast<double>(d);
    for (int t = 0; t < trials; ++t) {
        for (std::size_t slot = 0; slot < num_inputs; ++slot) {
            std::vector<ComplexMatrix> inputs;
            for (std::size_t s = 0; s < num_inputs; ++s) {
                if (s == slot) {
                    ComplexMatrix mixed(d, d);
                    for (std::size_t i = 0; i < d; ++i) mixed(i, i) = inv_d;
                    inputs.push_back(mixed);
                } else {
                    const auto psi = haar_state(d, rng);
                    inputs.push_back(outer(psi, psi));
                }
            }
            const ComplexMatrix out = apply_channel(u, inputs);
            double dev = 0.0;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    dev = std::max(dev, std::abs(out(r, c) - (r == c ? cplx(inv_d) : cplx(0.0))));
            res.max_residual = std::max(res.max_residual, dev);
        }
    }
    res.is_multistochastic = res.max_residual < tol;
    return res;
}

}  // namespace qconv
