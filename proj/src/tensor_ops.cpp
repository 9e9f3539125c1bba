#include "qconv/tensor_ops.hpp"

#include <algorithm>
#include <cmath>

#include "qconv/linalg.hpp"

namespace qconv {

ComplexMatrix reshuffle(const ComplexMatrix& u) {
    const std::size_t d = bipartite_local_dim(u);
    ComplexMatrix r(d * d, d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t j = 0; j < d; ++j)
                    r(k * d + i, l * d + j) = u(k * d + l, i * d + j);
    return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& u) {
    const std::size_t d = bipartite_local_dim(u);
    ComplexMatrix g(d * d, d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t j = 0; j < d; ++j)
                    g(k * d + i, l * d + j) = u(l * d + i, k * d + j);
    return g;
}

namespace {

std::size_t total_dim(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (auto d : dims) n *= d;
    return n;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& keep,
                            const std::vector<std::size_t>& dims) {
    const std::size_t n = total_dim(dims);
    if (!rho.is_square() || rho.rows() != n)
        throw DimensionError("partial trace: state dimension does not match dims product");
    const int npar = static_cast<int>(dims.size());
    std::vector<bool> kept(npar, false);
    for (int lab : keep) {
        if (lab < 0 || lab >= npar)
            throw LabelError("partial trace: unknown party label " + std::to_string(lab));
        kept[lab] = true;
    }

    std::vector<int> keep_sorted, traced;
    for (int p = 0; p < npar; ++p) (kept[p] ? keep_sorted : traced).push_back(p);

    std::size_t dim_keep = 1, dim_tr = 1;
    for (int p : keep_sorted) dim_keep *= dims[p];
    for (int p : traced) dim_tr *= dims[p];

    // strides of each party in the flat index
    std::vector<std::size_t> stride(npar, 1);
    for (int p = npar - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];

    auto flat = [&](std::size_t ik, std::size_t it) {
        std::size_t f = 0;
        std::size_t rem = ik;
        for (int idx = static_cast<int>(keep_sorted.size()) - 1; idx >= 0; --idx) {
            const int p = keep_sorted[idx];
            f += (rem % dims[p]) * stride[p];
            rem /= dims[p];
        }
        rem = it;
        for (int idx = static_cast<int>(traced.size()) - 1; idx >= 0; --idx) {
            const int p = traced[idx];
            f += (rem % dims[p]) * stride[p];
            rem /= dims[p];
        }
        return f;
    };

    ComplexMatrix out(dim_keep, dim_keep);
    for (std::size_t a = 0; a < dim_keep; ++a)
        for (std::size_t b = 0; b < dim_keep; ++b) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < dim_tr; ++t) s += rho(flat(a, t), flat(b, t));
            out(a, b) = s;
        }
    return out;
}

ComplexMatrix ChoiState::reduced_density(const std::vector<int>& keep) const {
    const int npar = static_cast<int>(parties.size());
    std::vector<bool> kept(npar, false);
    for (int lab : keep) {
        if (lab < 0 || lab >= npar)
            throw LabelError("reduced density: unknown party position " + std::to_string(lab));
        kept[lab] = true;
    }
    std::vector<int> ks, tr;
    for (int p = 0; p < npar; ++p) (kept[p] ? ks : tr).push_back(p);
    std::size_t dim_keep = 1, dim_tr = 1;
    for (std::size_t i = 0; i < ks.size(); ++i) dim_keep *= local_dim;
    for (std::size_t i = 0; i < tr.size(); ++i) dim_tr *= local_dim;

    std::vector<std::size_t> stride(npar, 1);
    for (int p = npar - 2; p >= 0; --p) stride[p] = stride[p + 1] * local_dim;

    // M[a,t] = psi at (keep=a, traced=t); rho = M M^dag
    ComplexMatrix m(dim_keep, dim_tr);
    std::vector<std::size_t> digit(npar, 0);
    const std::size_t n = amplitudes.size();
    for (std::size_t f = 0; f < n; ++f) {
        std::size_t rem = f, a = 0, t = 0;
        for (int p = 0; p < npar; ++p) {
            digit[p] = rem / stride[p];
            rem %= stride[p];
        }
        for (int p : ks) a = a * local_dim + digit[p];
        for (int p : tr) t = t * local_dim + digit[p];
        m(a, t) = amplitudes[f];
    }
    ComplexMatrix rho(dim_keep, dim_keep);
    for (std::size_t a = 0; a < dim_keep; ++a)
        for (std::size_t b = 0; b < dim_keep; ++b) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < dim_tr; ++t) s += m(a, t) * std::conj(m(b, t));
            rho(a, b) = s;
        }
    return rho;
}

double ChoiState::reduced_purity(const std::vector<int>& keep) const {
    // Tr[(M M^dag)^2] = ||M^dag M||_F^2 through the smaller Gram matrix.
    const int npar = static_cast<int>(parties.size());
    std::vector<bool> kept(npar, false);
    for (int lab : keep) {
        if (lab < 0 || lab >= npar)
            throw LabelError("reduced purity: unknown party position " + std::to_string(lab));
        kept[lab] = true;
    }
    std::vector<int> ks, tr;
    for (int p = 0; p < npar; ++p) (kept[p] ? ks : tr).push_back(p);
    if (tr.size() < ks.size()) std::swap(ks, tr);  // purity of rho_K equals purity of complement
    std::size_t dim_keep = 1, dim_tr = 1;
    for (std::size_t i = 0; i < ks.size(); ++i) dim_keep *= local_dim;
    for (std::size_t i = 0; i < tr.size(); ++i) dim_tr *= local_dim;

    std::vector<std::size_t> stride(npar, 1);
    for (int p = npar - 2; p >= 0; --p) stride[p] = stride[p + 1] * local_dim;

    ComplexMatrix m(dim_keep, dim_tr);
    std::vector<std::size_t> digit(npar, 0);
    for (std::size_t f = 0; f < amplitudes.size(); ++f) {
        std::size_t rem = f, a = 0, t = 0;
        for (int p = 0; p < npar; ++p) {
            digit[p] = rem / stride[p];
            rem %= stride[p];
        }
        for (int p : ks) a = a * local_dim + digit[p];
        for (int p : tr) t = t * local_dim + digit[p];
        m(a, t) = amplitudes[f];
    }
    ComplexMatrix gram(dim_keep, dim_keep);
    for (std::size_t a = 0; a < dim_keep; ++a)
        for (std::size_t b = 0; b < dim_keep; ++b) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < dim_tr; ++t) s += m(a, t) * std::conj(m(b, t));
            gram(a, b) = s;
        }
    double p2 = 0.0;
    for (const auto& v : gram.data()) p2 += std::norm(v);
    return p2;
}

ChoiState choi_state(const ComplexMatrix& u, std::size_t d, std::size_t num_out_parties) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < num_out_parties; ++i) n *= d;
    if (!u.is_square() || u.rows() != n)
        throw DimensionError("choi state: matrix dimension does not match d^m");
    ChoiState psi;
    psi.local_dim = d;
    for (std::size_t p = 1; p <= num_out_parties; ++p) psi.parties.push_back(std::to_string(p));
    for (std::size_t p = 1; p <= num_out_parties; ++p)
        psi.parties.push_back(std::to_string(p) + "'");
    // amplitudes[(out, in)] = U[out, in] / d^{(m-1)/2}; parties are ordered
    // out_1..out_{m-1}, in_1..in_{m-1}.
    psi.amplitudes.resize(n * n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t out = 0; out < n; ++out)
        for (std::size_t in = 0; in < n; ++in)
            psi.amplitudes[out * n + in] = u(out, in) * scale;
    return psi;
}

ChoiState choi_state_bipartite(const ComplexMatrix& u) {
    const std::size_t d = bipartite_local_dim(u);
    ChoiState psi = choi_state(u, d, 2);
    psi.parties = {"A", "B", "A'", "B'"};
    return psi;
}

double linear_entropy(const ChoiState& psi, const std::vector<int>& keep) {
    return 1.0 - psi.reduced_purity(keep);
}

namespace {

void validate_density(const ComplexMatrix& rho) {
    if (!rho.is_square()) throw InputError("density matrix must be square");
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-8)
        throw InputError("density matrix trace deviates from 1 by more than 1e-8");
    if (min_eigenvalue_hermitian(rho) < -1e-8)
        throw InputError("density matrix has eigenvalue below -1e-8");
}

}  // namespace

ComplexMatrix apply_channel(const ComplexMatrix& u, const std::vector<ComplexMatrix>& inputs) {
    if (inputs.empty()) throw InputError("channel needs at least one input state");
    for (const auto& rho : inputs) validate_density(rho);
    ComplexMatrix joint = inputs[0];
    for (std::size_t i = 1; i < inputs.size(); ++i) joint = kron(joint, inputs[i]);
    return apply_channel_joint(u, joint, inputs[0].rows());
}

ComplexMatrix apply_channel_joint(const ComplexMatrix& u, const ComplexMatrix& rho_joint,
                                  std::size_t d_out) {
    if (u.rows() != rho_joint.rows())
        throw DimensionError("channel: unitary and input dimension mismatch");
    const std::size_t n = u.rows();
    if (n % d_out != 0) throw DimensionError("channel: output dim does not divide total dim");
    const std::size_t rest = n / d_out;
    const ComplexMatrix evolved = matmul(matmul(u, rho_joint), u.adjoint());
    ComplexMatrix out(d_out, d_out);
    for (std::size_t a = 0; a < d_out; ++a)
        for (std::size_t b = 0; b < d_out; ++b) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < rest; ++t) s += evolved(a * rest + t, b * rest + t);
            out(a, b) = s;
        }
    return out;
}

double purity(const ComplexMatrix& rho) {
    double p = 0.0;
    const ComplexMatrix r2 = matmul(rho, rho);
    for (std::size_t i = 0; i < rho.rows(); ++i) p += r2(i, i).real();
    return p;
}

}  // namespace qconv
