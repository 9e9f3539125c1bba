#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qconv/complex_matrix.hpp"

namespace qconv {

// Renyi-type coherence of |psi> with respect to the basis defined by U:
//   alpha finite, != 1 : S_alpha = sum_i |<i|U|psi>|^{2 alpha}
//   alpha = 0          : number of entries with modulus > 1e-12 * column max
//   alpha = 1          : exp(-sum p log p) (Shannon exponential)
//   alpha = inf        : max modulus (not squared)
double s_alpha_state(const std::vector<cplx>& psi, const ComplexMatrix& u, double alpha);

// Average of s_alpha_state over the computational basis columns.
double s_alpha_unitary(const ComplexMatrix& u, double alpha);

constexpr double kAlphaInf = -1.0;  // sentinel accepted by both functions

struct CoherenceRange {
    double alpha = 2.0;
    double lo_estimate = 0.0;
    double hi_estimate = 0.0;
    std::string probes_used;
};

// Inner estimate of range(S_alpha(U)) over local rotations V U V' with
// V, V' in U(d) x U(d). Probes (I,I) and (F_d x F_d, I) are evaluated first;
// the remaining budget drives simulated annealing on both ends. For alpha = 2
// the endpoints are asserted inside the analytic envelope [1/d^2, 1].
CoherenceRange coherence_range_estimate(const ComplexMatrix& u, double alpha,
                                        std::size_t budget, std::uint64_t seed);

// Welch-type floor for the conjugation slice: S_2(V U V^dag) >= 2/(D+1).
double welch_floor_s2(std::size_t total_dim);

}  // namespace qconv
