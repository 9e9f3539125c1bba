#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qconv/complex_matrix.hpp"

namespace qconv {

struct EntanglementSample {
    std::string gate_id;
    std::uint64_t seed = 0;
    std::vector<double> values;  // linear entropies in [0, 1 - 1/d]
};

// n i.i.d. draws of E(U(|psi_A> x |psi_B>)) with Haar-random product inputs.
// Serial and OpenMP variants produce bit-identical samples (per-draw derived
// seeds).
EntanglementSample sample_entanglement(const ComplexMatrix& u, std::size_t n,
                                       std::uint64_t seed);
EntanglementSample sample_entanglement_serial(const ComplexMatrix& u, std::size_t n,
                                              std::uint64_t seed);
EntanglementSample sample_entanglement_omp(const ComplexMatrix& u, std::size_t n,
                                           std::uint64_t seed);

struct KsResult {
    double statistic = 0.0;  // sup |F_x - F_y|
    double p_value = 1.0;
    bool p_underflow = false;  // p below 1e-300, reported as "< 1e-300"
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
// distribution at effective size n m/(n+m).
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

// Survival function Q(lambda) = 2 sum_k (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

struct Histogram {
    double lo = 0.0, hi = 0.0;
    std::vector<std::size_t> counts;
};

Histogram histogram(const std::vector<double>& values, double lo, double hi,
                    std::size_t bins);

}  // namespace qconv
