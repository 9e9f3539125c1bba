#pragma once

#include <cstdint>
#include <vector>

#include "qconv/coherify.hpp"
#include "qconv/complex_matrix.hpp"

namespace qconv {

struct GateMetrics {
    double e_p = 0.0;
    double g_t = 0.0;
    double d_p = 0.0;
    double e_choi_u = 0.0;   // E(|U>)
    double e_choi_us = 0.0;  // E(|US>)
    double residual_r = 0.0;
    double residual_gamma = 0.0;
};

// E(|U>): linear entropy of the Choi state across the (A,A')|(B,B') cut.
// UnitarityError when U fails unitarity at `tol`.
double op_entanglement(const ComplexMatrix& u, double tol = 1e-10);

// e_p(U) = [E(|U>) + E(|US>) - E(|S>)] / E(|S>)
double entangling_power(const ComplexMatrix& u, double tol = 1e-10);

// g_t(U) = [E(|U>) - E(|US>) + E(|S>)] / (2 E(|S>)). The sign of the E(|US>)
// term differs from the printed source display, which would force
// g_t = e_p / 2; this form reproduces g_t(I) = 0, g_t(S) = 1 and the MUB value
// 1/2, all of which the source states.
double gate_typicality(const ComplexMatrix& u, double tol = 1e-10);

GateMetrics gate_metrics(const ComplexMatrix& u, double tol = 1e-10);

struct TwoUnitaryResult {
    bool is_2unitary = false;
    double residual_u = 0.0;
    double residual_r = 0.0;
    double residual_gamma = 0.0;
    double max_residual() const;
};

TwoUnitaryResult is_2unitary(const ComplexMatrix& u, double tol = 1e-10);

// d mutually unbiased bases of an odd prime dimension,
// (a^{(k)}_l)_i = omega^{k i^2 + l i} / sqrt(d). NoConstructionError otherwise.
BasisFamily mub_bases(std::size_t d);

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

// Monte Carlo estimate of e_p by Haar sampling of product inputs:
// (d+1)/(d-1) * mean linear entropy of U(|psi_A> x |psi_B>). The `_serial`
// and `_omp` variants are bit-identical (per-sample derived seeds).
MonteCarloEstimate ep_monte_carlo(const ComplexMatrix& u, std::size_t n_samples,
                                  std::uint64_t seed);
MonteCarloEstimate ep_monte_carlo_serial(const ComplexMatrix& u, std::size_t n_samples,
                                         std::uint64_t seed);
MonteCarloEstimate ep_monte_carlo_omp(const ComplexMatrix& u, std::size_t n_samples,
                                      std::uint64_t seed);

// Multipartite entangling power of an (m-1)-partite unitary, normalized so
// that AME-grade constructions give 1 and it reduces to entangling_power for
// m = 3.
double multipartite_ep(const ComplexMatrix& u, std::size_t d, std::size_t m,
                       double tol = 1e-10);

// Coherification bound check: e_p within [1 - 1/(d+1), 1] with 1e-10 slack.
bool ep_bounds_check(const ComplexMatrix& u, std::size_t d);

}  // namespace qconv
