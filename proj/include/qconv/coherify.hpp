#pragma once

#include <vector>

#include "qconv/complex_matrix.hpp"
#include "qconv/latin.hpp"
#include "qconv/rng.hpp"

namespace qconv {

// The d*d vectors a_{k,l} defining a coherification, stored as d stacked d x d
// matrices V_k with row l holding a_{k,l}. For each k the rows must be
// orthonormal.
struct BasisFamily {
    std::size_t d = 0;
    std::vector<ComplexMatrix> v;  // d matrices, each d x d

    const cplx& amp(std::size_t k, std::size_t l, std::size_t i) const { return v[k](l, i); }
    cplx& amp(std::size_t k, std::size_t l, std::size_t i) { return v[k](l, i); }

    double orthonormality_residual() const;
    void require_valid(double tol = 1e-12) const;  // BasisError beyond tol

    static BasisFamily computational(std::size_t d);
    static BasisFamily random(std::size_t d, Rng& rng);
    static BasisFamily random(std::size_t d, std::uint64_t seed) {
        Rng r(seed);
        return random(d, r);
    }
};

// Bases of the multipartite construction: for each first index i1, the d^{m-2}
// vectors a_{(i1; i2..i_{m-1})} of dimension d^{m-2} form an orthonormal set.
struct MultiBasisFamily {
    std::size_t d = 0;
    std::size_t arity = 0;  // m
    // vectors[i1][rest] with rest = flat (i2..i_{m-1}) over d^{m-3+1}; each a
    // vector of dimension d^{m-2}
    std::vector<std::vector<std::vector<cplx>>> vectors;

    double orthonormality_residual() const;
    void require_valid(double tol = 1e-12) const;

    static MultiBasisFamily computational(std::size_t d, std::size_t arity);
    static MultiBasisFamily random(std::size_t d, std::size_t arity, Rng& rng);
    static MultiBasisFamily from_bipartite(const BasisFamily& b);
};

// U_{ki,lj} = A_{klj} (a_{k,l})_i. BasisError when the family is invalid,
// DimensionError on shape mismatch.
ComplexMatrix build_unitary(const PermutationTensor& a, const BasisFamily& bases);

// Dynamical matrix of the coherified channel, a d^m x d^m Hermitian matrix
// D_{(k,l,j),(k',l',j')} = A_{klj} A_{k'l'j'} <a_{k,l}|a_{k',l'}>.
struct DynamicalMatrix {
    std::size_t d = 0;
    std::size_t arity = 0;  // m
    ComplexMatrix matrix;   // d^m x d^m

    double min_eigenvalue() const;
    // Trace over the output (first) party; identity for a CPTP channel.
    ComplexMatrix trace_out_first() const;
    std::vector<double> diagonal() const;
};

DynamicalMatrix dynamical_matrix(const ComplexMatrix& u, const PermutationTensor& a);

// Tristochasticity certificate: evaluates the two overlap sums whose vanishing
// is equivalent to e_p = 1. Returns the max single-term residual and the total
// sum, which satisfies total = (1 - e_p) d^2 (d^2 - 1).
struct TristochResult {
    bool is_tristochastic = false;
    double max_residual = 0.0;
    double total_residual = 0.0;
};

TristochResult is_tristochastic_channel(const ComplexMatrix& u, const PermutationTensor& a,
                                        double tol = 1e-10);

// Closed-form operator entanglements of a coherification:
// E(|U>) = 1 - (1/d^4) sum A A |<a|a>|^2 (same-j pairs),
// E(|US>) = 1 - (1/d^4) sum_{k,k',l} |<a_{k,l}|a_{k',l}>|^2.
struct CoherificationEntanglements {
    double e_choi_u = 0.0;
    double e_choi_us = 0.0;
};
CoherificationEntanglements coherification_entanglements(const PermutationTensor& a,
                                                         const BasisFamily& bases);

// U for an arity-m permutation tensor and multipartite basis family:
// U^{i2..i_m}_{i1 j1..j_{m-2}} = A_{i1..i_m} (a_{(i1; i2..i_{m-1})})_{j1..j_{m-2}}.
ComplexMatrix multistoch_build(const PermutationTensor& a, const MultiBasisFamily& bases);

// 2-norm coherence C2 = (sum |D|^2 - sum |diag D|^2) / d^{2(m-1)}.
double c2_coherence(const DynamicalMatrix& d);

// Multistochasticity probe: inserting the maximally mixed state at any input
// slot must give the maximally mixed output for `trials` random other inputs.
struct MultistochResult {
    bool is_multistochastic = false;
    double max_residual = 0.0;
};
MultistochResult is_multistochastic_channel(const ComplexMatrix& u, const PermutationTensor& a,
                                            double tol = 1e-10, int trials = 50,
                                            std::uint64_t seed = 0);

}  // namespace qconv
