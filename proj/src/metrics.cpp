#include "qconv/metrics.hpp"

#include <cmath>

#include "qconv/linalg.hpp"
#include "qconv/rng.hpp"
#include "qconv/tensor_ops.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qconv {

namespace {

void require_unitary(const ComplexMatrix& u, double tol) {
    const double r = u.unitarity_residual();
    if (r >= tol)
        throw UnitarityError("matrix fails unitarity: residual " + std::to_string(r));
}

// E across (A,A')|(B,B') of the Choi state of a bipartite gate, computed from
// the Gram matrix of the (a,a') x (b,b') reshaping of U/d.
double choi_linear_entropy(const ComplexMatrix& u) {
    const std::size_t d = bipartite_local_dim(u);
    ComplexMatrix m(d * d, d * d);  // rows (a,a'), cols (b,b')
    const double scale = 1.0 / static_cast<double>(d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t ap = 0; ap < d; ++ap)
                for (std::size_t bp = 0; bp < d; ++bp)
                    m(a * d + ap, b * d + bp) = u(a * d + b, ap * d + bp) * scale;
    double p = 0.0;
    const std::size_t n = d * d;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            cplx g = 0.0;
            for (std::size_t t = 0; t < n; ++t) g += m(r, t) * std::conj(m(c, t));
            p += std::norm(g);
        }
    return 1.0 - p;
}

}  // namespace

double op_entanglement(const ComplexMatrix& u, double tol) {
    require_unitary(u, tol);
    return choi_linear_entropy(u);
}

double entangling_power(const ComplexMatrix& u, double tol) {
    require_unitary(u, tol);
    const std::size_t d = bipartite_local_dim(u);
    const double es = 1.0 - 1.0 / static_cast<double>(d * d);
    const double eu = choi_linear_entropy(u);
    const double eus = choi_linear_entropy(matmul(u, swap_matrix(d)));
    return (eu + eus - es) / es;
}

double gate_typicality(const ComplexMatrix& u, double tol) {
    require_unitary(u, tol);
    const std::size_t d = bipartite_local_dim(u);
    const double es = 1.0 - 1.0 / static_cast<double>(d * d);
    const double eu = choi_linear_entropy(u);
    const double eus = choi_linear_entropy(matmul(u, swap_matrix(d)));
    return (eu - eus + es) / (2.0 * es);
}

GateMetrics gate_metrics(const ComplexMatrix& u, double tol) {
    require_unitary(u, tol);
    const std::size_t d = bipartite_local_dim(u);
    const double es = 1.0 - 1.0 / static_cast<double>(d * d);
    GateMetrics gm;
    gm.e_choi_u = choi_linear_entropy(u);
    gm.e_choi_us = choi_linear_entropy(matmul(u, swap_matrix(d)));
    gm.e_p = (gm.e_choi_u + gm.e_choi_us - es) / es;
    gm.g_t = (gm.e_choi_u - gm.e_choi_us + es) / (2.0 * es);
    gm.d_p = gm.e_p / static_cast<double>(d - 1);
    gm.residual_r = reshuffle(u).unitarity_residual();
    gm.residual_gamma = partial_transpose(u).unitarity_residual();
    return gm;
}

double TwoUnitaryResult::max_residual() const {
    return std::max(residual_u, std::max(residual_r, residual_gamma));
}

TwoUnitaryResult is_2unitary(const ComplexMatrix& u, double tol) {
    TwoUnitaryResult res;
    res.residual_u = u.unitarity_residual();
    res.residual_r = reshuffle(u).unitarity_residual();
    res.residual_gamma = partial_transpose(u).unitarity_residual();
    res.is_2unitary = res.max_residual() < tol;
    return res;
}

BasisFamily mub_bases(std::size_t d) {
    if (d < 3 || d % 2 == 0)
        throw NoConstructionError("mub_bases needs an odd prime dimension");
    for (std::size_t f = 2; f * f <= d; ++f)
        if (d % f == 0)
            throw NoConstructionError("mub_bases: " + std::to_string(d) + " is not prime");
    BasisFamily b;
    b.d = d;
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix m(d, d);
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t i = 0; i < d; ++i) {
                const std::size_t e = (k * i * i + l * i) % d;
                const double phi = 2.0 * M_PI * static_cast<double>(e) / d;
                m(l, i) = cplx(std::cos(phi) * s, std::sin(phi) * s);
            }
        b.v.push_back(std::move(m));
    }
    return b;
}

namespace {

double one_sample_entropy(const ComplexMatrix& u, std::size_t d, Rng& rng) {
    const auto pa = haar_state(d, rng);
    const auto pb = haar_state(d, rng);
    std::vector<cplx> prod(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) prod[i * d + j] = pa[i] * pb[j];
    const auto out = matvec(u, prod);
    // purity of the first-party reduction of |out>
    double p = 0.0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            cplx g = 0.0;
            for (std::size_t t = 0; t < d; ++t) g += out[a * d + t] * std::conj(out[b * d + t]);
            p += std::norm(g);
        }
    return 1.0 - p;
}

MonteCarloEstimate finalize_ep(const std::vector<double>& vals, std::size_t d) {
    MonteCarloEstimate est;
    est.n = vals.size();
    double sum = 0.0, sum2 = 0.0;
    for (double v : vals) {
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / est.n;
    const double var = std::max(0.0, sum2 / est.n - mean * mean);
    const double scale = static_cast<double>(d + 1) / static_cast<double>(d - 1);
    est.mean = scale * mean;
    est.stderr_ = scale * std::sqrt(var / est.n);
    return est;
}

}  // namespace

MonteCarloEstimate ep_monte_carlo_serial(const ComplexMatrix& u, std::size_t n_samples,
                                         std::uint64_t seed) {
    const std::size_t d = bipartite_local_dim(u);
    const Rng master(seed);
    std::vector<double> vals(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        Rng r = master.child(i);
        vals[i] = one_sample_entropy(u, d, r);
    }
    return finalize_ep(vals, d);
}

MonteCarloEstimate ep_monte_carlo_omp(const ComplexMatrix& u, std::size_t n_samples,
                                      std::uint64_t seed) {
    const std::size_t d = bipartite_local_dim(u);
    const Rng master(seed);
    std::vector<double> vals(n_samples);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
    for (long long i = 0; i < static_cast<long long>(n_samples); ++i) {
        Rng r = master.child(static_cast<std::uint64_t>(i));
        vals[static_cast<std::size_t>(i)] = one_sample_entropy(u, d, r);
    }
    return finalize_ep(vals, d);
}

MonteCarloEstimate ep_monte_carlo(const ComplexMatrix& u, std::size_t n_samples,
                                  std::uint64_t seed) {
    if (n_samples < 256 || max_threads() == 1) return ep_monte_carlo_serial(u, n_samples, seed);
    return ep_monte_carlo_omp(u, n_samples, seed);
}

namespace {

double purity_of_kept(const std::vector<cplx>& amps, std::size_t d, std::size_t npar,
                      unsigned keep_mask) {
    // amps over npar parties of dim d, row-major; purity of the kept subset
    std::vector<int> ks, tr;
    for (std::size_t p = 0; p < npar; ++p)
        ((keep_mask >> p) & 1u ? ks : tr).push_back(static_cast<int>(p));
    if (tr.size() < ks.size()) std::swap(ks, tr);
    std::size_t dim_k = 1, dim_t = 1;
    for (std::size_t i = 0; i < ks.size(); ++i) dim_k *= d;
    for (std::size_t i = 0; i < tr.size(); ++i) dim_t *= d;
    std::vector<std::size_t> stride(npar, 1);
    for (std::size_t p = npar - 1; p-- > 0;) stride[p] = stride[p + 1] * d;
    ComplexMatrix m(dim_k, dim_t);
    for (std::size_t f = 0; f < amps.size(); ++f) {
        std::size_t a = 0, t = 0;
        for (int p : ks) a = a * d + (f / stride[p]) % d;
        for (int p : tr) t = t * d + (f / stride[p]) % d;
        m(a, t) = amps[f];
    }
    double p2 = 0.0;
    for (std::size_t r = 0; r < dim_k; ++r)
        for (std::size_t c = 0; c < dim_k; ++c) {
            cplx g = 0.0;
            for (std::size_t t = 0; t < dim_t; ++t) g += m(r, t) * std::conj(m(c, t));
            p2 += std::norm(g);
        }
    return p2;
}

}  // namespace

double multipartite_ep(const ComplexMatrix& u, std::size_t d, std::size_t m, double tol) {
    const std::size_t m1 = m - 1;
    std::size_t n = 1;
    for (std::size_t i = 0; i < m1; ++i) n *= d;
    if (!u.is_square() || u.rows() != n)
        throw DimensionError("multipartite_ep: matrix is not d^{m-1} square");
    require_unitary(u, tol);
    const std::size_t npar = 2 * m1;  // outputs 0..m1-1, inputs m1..2m1-1
    std::vector<cplx> amps(n * n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t out = 0; out < n; ++out)
        for (std::size_t in = 0; in < n; ++in) amps[out * n + in] = u(out, in) * scale;

    const double dfac = std::pow(static_cast<double>(d) / (d + 1), static_cast<double>(m1));
    double e_sum = 0.0, e_max_sum = 0.0;
    for (unsigned pmask = 1; pmask + 1 < (1u << m1); ++pmask) {
        const unsigned comp = (~pmask) & ((1u << m1) - 1);
        if (pmask > comp) continue;  // unordered output bipartition
        double tot = 0.0, tot_max = 0.0;
        const std::size_t psize = static_cast<std::size_t>(__builtin_popcount(pmask));
        for (unsigned xmask = 0; xmask < (1u << m1); ++xmask) {
            const unsigned keep = pmask | (xmask << m1);
            tot += purity_of_kept(amps, d, npar, keep);
            const std::size_t s_keep =
                psize + static_cast<std::size_t>(__builtin_popcount(xmask));
            tot_max += std::pow(static_cast<double>(d),
                                -static_cast<double>(std::min(s_keep, npar - s_keep)));
        }
        e_sum += 2.0 * (1.0 - dfac * tot);
        e_max_sum += 2.0 * (1.0 - dfac * tot_max);
    }
    return e_sum / e_max_sum;
}

bool ep_bounds_check(const ComplexMatrix& u, std::size_t d) {
    const double ep = entangling_power(u);
    const double lo = 1.0 - 1.0 / static_cast<double>(d + 1);
    return ep >= lo - 1e-10 && ep <= 1.0 + 1e-10;
}

}  // namespace qconv
