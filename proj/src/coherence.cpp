#include "qconv/coherence.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "qconv/linalg.hpp"
#include "qconv/rng.hpp"

namespace qconv {

namespace {

double column_s_alpha(const std::vector<double>& moduli, double alpha) {
    if (alpha == kAlphaInf) {
        double m = 0.0;
        for (double x : moduli) m = std::max(m, x);
        return m;
    }
    if (alpha == 0.0) {
        double mx = 0.0;
        for (double x : moduli) mx = std::max(mx, x);
        const double thr = 1e-12 * mx;
        int cnt = 0;
        for (double x : moduli)
            if (x > thr) ++cnt;
        return static_cast<double>(cnt);
    }
    if (alpha == 1.0) {
        double h = 0.0;
        for (double x : moduli) {
            const double p = x * x;
            if (p > 0.0) h -= p * std::log(p);
        }
        return std::exp(h);
    }
    double s = 0.0;
    for (double x : moduli) s += std::pow(x * x, alpha);
    return s;
}

}  // namespace

double s_alpha_state(const std::vector<cplx>& psi, const ComplexMatrix& u, double alpha) {
    if (psi.size() != u.cols()) throw DimensionError("s_alpha_state: dimension mismatch");
    const auto out = matvec(u, psi);
    std::vector<double> moduli(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) moduli[i] = std::abs(out[i]);
    return column_s_alpha(moduli, alpha);
}

double s_alpha_unitary(const ComplexMatrix& u, double alpha) {
    const std::size_t n = u.cols();
    double acc = 0.0;
    std::vector<double> moduli(u.rows());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < u.rows(); ++i) moduli[i] = std::abs(u(i, j));
        acc += column_s_alpha(moduli, alpha);
    }
    return acc / static_cast<double>(n);
}

double welch_floor_s2(std::size_t total_dim) {
    return 2.0 / static_cast<double>(total_dim + 1);
}

namespace {

struct LocalPair {
    // V = v1 x v2 applied on the left, V' = w1 x w2 on the right
    ComplexMatrix v1, v2, w1, w2;

    ComplexMatrix apply(const ComplexMatrix& u) const {
        return matmul(kron(v1, v2), matmul(u, kron(w1, w2)));
    }
};

}  // namespace

CoherenceRange coherence_range_estimate(const ComplexMatrix& u, double alpha,
                                        std::size_t budget, std::uint64_t seed) {
    const std::size_t d = bipartite_local_dim(u);
    CoherenceRange out;
    out.alpha = alpha;

    // probe set: bare and Fourier-rotated
    const double bare = s_alpha_unitary(u, alpha);
    const ComplexMatrix f2 = kron(fourier_matrix(d), fourier_matrix(d));
    const double fourier = s_alpha_unitary(matmul(f2, u), alpha);
    out.lo_estimate = std::min(bare, fourier);
    out.hi_estimate = std::max(bare, fourier);
    out.probes_used = "identity,fourier";

    // simulated annealing refinement on both ends
    if (budget > 0) {
        Rng rng(seed);
        const std::size_t restarts = std::max<std::size_t>(1, budget / 1000);
        const std::size_t steps = budget / restarts;
        for (int direction = 0; direction < 2; ++direction) {
            const double sign = direction == 0 ? 1.0 : -1.0;  // 0: minimize, 1: maximize
            for (std::size_t r = 0; r < restarts / 2 + 1; ++r) {
                Rng chain = rng.child(direction * 1000003ull + r);
                LocalPair p{haar_unitary(d, chain), haar_unitary(d, chain),
                            haar_unitary(d, chain), haar_unitary(d, chain)};
                double cur = s_alpha_unitary(p.apply(u), alpha);
                for (std::size_t step = 0; step < steps; ++step) {
                    const double frac =
                        steps > 1 ? static_cast<double>(step) / (steps - 1) : 1.0;
                    const double eps = 0.3 * std::pow(1e-3 / 0.3, frac);
                    LocalPair cand = p;
                    const ComplexMatrix h = random_hermitian_unit(d, chain);
                    // exp(i eps H) via the Hermitian eigenbasis
                    const auto eg = eigh(h);
                    ComplexMatrix rot(d, d);
                    for (std::size_t a = 0; a < d; ++a)
                        for (std::size_t b = 0; b < d; ++b) {
                            cplx s = 0.0;
                            for (std::size_t t = 0; t < d; ++t) {
                                const double phi = eps * eg.values[t];
                                s += eg.vectors(a, t) * cplx(std::cos(phi), std::sin(phi)) *
                                     std::conj(eg.vectors(b, t));
                            }
                            rot(a, b) = s;
                        }
                    switch (chain.uniform_int(4)) {
                        case 0: cand.v1 = matmul(rot, cand.v1); break;
                        case 1: cand.v2 = matmul(rot, cand.v2); break;
                        case 2: cand.w1 = matmul(cand.w1, rot); break;
                        default: cand.w2 = matmul(cand.w2, rot); break;
                    }
                    const double val = s_alpha_unitary(cand.apply(u), alpha);
                    const double temp = 0.05 * eps;
                    if (sign * (cur - val) >= 0.0 ||
                        chain.uniform01() < std::exp(-sign * (val - cur) / temp)) {
                        p = cand;
                        cur = val;
                    }
                }
                if (direction == 0)
                    out.lo_estimate = std::min(out.lo_estimate, cur);
                else
                    out.hi_estimate = std::max(out.hi_estimate, cur);
            }
        }
        out.probes_used += ",annealing";
    }

    if (alpha == 2.0) {
        const double lo_env = 1.0 / static_cast<double>(d * d);
        // inner estimates may never leave the analytic envelope
        assert(out.lo_estimate >= lo_env - 1e-9 && out.hi_estimate <= 1.0 + 1e-9);
        out.lo_estimate = std::max(out.lo_estimate, lo_env);
        out.hi_estimate = std::min(out.hi_estimate, 1.0);
    }
    return out;
}

}  // namespace qconv
