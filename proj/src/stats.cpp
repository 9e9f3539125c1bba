#include "qconv/stats.hpp"

#include <algorithm>
#include <cmath>

#include "qconv/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qconv {

namespace {

double one_draw(const ComplexMatrix& u, std::size_t d, Rng& rng) {
    const auto pa = haar_state(d, rng);
    const auto pb = haar_state(d, rng);
    std::vector<cplx> prod(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) prod[i * d + j] = pa[i] * pb[j];
    const auto out = matvec(u, prod);
    double p = 0.0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            cplx g = 0.0;
            for (std::size_t t = 0; t < d; ++t) g += out[a * d + t] * std::conj(out[b * d + t]);
            p += std::norm(g);
        }
    return 1.0 - p;
}

}  // namespace

EntanglementSample sample_entanglement_serial(const ComplexMatrix& u, std::size_t n,
                                              std::uint64_t seed) {
    const std::size_t d = bipartite_local_dim(u);
    if (u.unitarity_residual() > 1e-10)
        throw UnitarityError("sample_entanglement needs a unitary gate");
    EntanglementSample s;
    s.seed = seed;
    s.values.resize(n);
    const Rng master(seed);
    for (std::size_t i = 0; i < n; ++i) {
        Rng r = master.child(i);
        s.values[i] = one_draw(u, d, r);
    }
    return s;
}

EntanglementSample sample_entanglement_omp(const ComplexMatrix& u, std::size_t n,
                                           std::uint64_t seed) {
    const std::size_t d = bipartite_local_dim(u);
    if (u.unitarity_residual() > 1e-10)
        throw UnitarityError("sample_entanglement needs a unitary gate");
    EntanglementSample s;
    s.seed = seed;
    s.values.resize(n);
    const Rng master(seed);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        Rng r = master.child(static_cast<std::uint64_t>(i));
        s.values[static_cast<std::size_t>(i)] = one_draw(u, d, r);
    }
    return s;
}

EntanglementSample sample_entanglement(const ComplexMatrix& u, std::size_t n,
                                       std::uint64_t seed) {
    if (n < 256 || max_threads() == 1) return sample_entanglement_serial(u, n, seed);
    return sample_entanglement_omp(u, n, seed);
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * lambda * lambda * k * k);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-320) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
    if (x.empty() || y.empty()) throw InputError("ks_two_sample needs nonempty samples");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t ix = 0, iy = 0;
    double dmax = 0.0;
    while (ix < x.size() && iy < y.size()) {
        const double vx = x[ix], vy = y[iy];
        const double v = std::min(vx, vy);
        while (ix < x.size() && x[ix] <= v) ++ix;
        while (iy < y.size() && y[iy] <= v) ++iy;
        dmax = std::max(dmax, std::abs(ix / nx - iy / ny));
    }
    KsResult res;
    res.statistic = dmax;
    const double ne = nx * ny / (nx + ny);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * dmax;
    res.p_value = kolmogorov_q(lambda);
    if (res.p_value < 1e-300) {
        res.p_underflow = true;
        res.p_value = 0.0;
    }
    return res;
}

Histogram histogram(const std::vector<double>& values, double lo, double hi,
                    std::size_t bins) {
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (double v : values) {
        if (v < lo || v > hi) continue;
        std::size_t b = static_cast<std::size_t>((v - lo) / w);
        if (b >= bins) b = bins - 1;
        ++h.counts[b];
    }
    return h;
}

}  // namespace qconv
