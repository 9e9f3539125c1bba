#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qconv/coherify.hpp"
#include "qconv/complex_matrix.hpp"
#include "qconv/invariants.hpp"
#include "qconv/sinkhorn.hpp"

namespace qconv {

// Circulant 3x3 unitary F_3 diag(1, e^{i a1}, e^{i a2}) F_3^dag; two phases
// cover every circulant unitary up to global phase.
ComplexMatrix circulant_unitary(double alpha1, double alpha2);

struct U81Params {
    double a21 = 0.0, a22 = 0.0;  // eigenphases of B_2
    double a31 = 0.0, a32 = 0.0;  // eigenphases of B_3

    ComplexMatrix b2() const { return circulant_unitary(a21, a22); }
    ComplexMatrix b3() const { return circulant_unitary(a31, a32); }

    // all |B_k| entries equal 1/sqrt(3)
    static U81Params symmetric_point();
    // B_2 = B_3 = cyclic shift, so the gate degenerates to a permutation
    static U81Params permutation_point();
    static U81Params random(std::uint64_t seed);
};

// The 81 x 81 two-parameter-per-block family: V_1 = I,
// V_k = P_{pi_k} (B_k + B_k + B_k) P_sigma for k = 2,3 with
// sigma = (24)(37)(68), pi_2 = (123456789)sigma, pi_3 = (135792468)sigma,
// V_{k+3} = P_{(147)(258)(369)} V_k, assembled over the cyclic tensor.
ComplexMatrix build_u81(const U81Params& p);
BasisFamily u81_basis_family(const U81Params& p);

// 36 x 36 real orthogonal coherification with e_p = (208 + sqrt(3))/210.
ComplexMatrix build_d6_candidate();
double d6_candidate_ep_exact();

// Two-ququart 2-unitary permutation from the fixed d = 4 square pair.
ComplexMatrix build_p16();

struct CnotGate {
    int control = 0;  // qubits 1..4, qubit 1 is the most significant
    int target = 0;
};
struct CircuitGateList {
    std::vector<std::vector<CnotGate>> layers;
    std::size_t gate_count() const;
    std::size_t depth() const { return layers.size(); }
};

// 18 nearest-neighbour CNOTs in 11 layers implementing build_p16 exactly
// under the encoding ququart = 2 q_hi + q_lo.
CircuitGateList p16_circuit();
ComplexMatrix circuit_to_unitary(const CircuitGateList& c);

// 16 maximally entangled two-ququart vectors mapped by P16 onto product
// states; row index fixes the first-ququart image, column index the second.
std::vector<std::vector<cplx>> magic_basis_16();

struct BasisMappingReport {
    double gram_residual = 0.0;          // max |Gram - I|
    double max_second_schmidt = 0.0;     // across all 16 images
    bool rows_map_to_basis = false;      // first-ququart factors are |row>
    bool cols_map_to_hadamard = false;   // second factors are the sign vectors
};
BasisMappingReport verify_basis_mapping(const ComplexMatrix& u);

// Max observed output rank of the channel Tr_2[P16 rho P16^dag] over random
// superpositions drawn from m rows x n cols of the magic basis.
int rank_theorem_check(const ComplexMatrix& u, int m_rows, int n_cols, int trials,
                       std::uint64_t seed);

// 64 GHZ-pair vectors of three ququarts and the 3-unitary from three
// mutually orthogonal Latin cubes at d = 4.
std::vector<std::vector<cplx>> ghz_basis_64();
ComplexMatrix build_3unitary_d4();

struct GhzMappingReport {
    double gram_residual = 0.0;
    double max_cross_purity_deficit = 0.0;  // distance from product across every cut
    bool all_images_product = false;
};
GhzMappingReport ghz_mapping_report(const ComplexMatrix& u64);

// |AME(4,d)> = (1/d) sum_{ij} |i,j> x U|i,j>; returns the worst deviation of
// the six two-party marginals from I/d^2.
std::vector<cplx> ame_state(const ComplexMatrix& u);
double ame_worst_marginal_deviation(const std::vector<cplx>& psi, std::size_t d);

struct U49Certificate {
    bool converged = false;
    double residual = 0.0;
    double e_p = 0.0;
    double s2 = 0.0;
    bool amplitudes_match = false;
    double invariant = 0.0;  // table normalization, after gauge alignment
    bool invariant_in_window = false;
    int restarts_used = 0;
    bool certified() const;
};

struct U49SearchOutcome {
    BasisFamily bases;        // gauge-aligned solution
    SearchState state;
    U49Certificate certificate;
};

// Cyclic-ansatz search at d = 7: runs restarts until one converged solution
// passes the full family certificate (e_p, S2 = 115/343, amplitude multiset
// {sqrt(1/7) x3, sqrt(2/7) x2}, invariant window). Column phases are a free
// gauge of the construction; the invariant check samples that gauge until the
// value lands in the published window. SearchFailed when no restart certifies.
U49SearchOutcome u49_ansatz_search(std::uint64_t seed, int restarts,
                                   std::size_t max_sweeps = 20000);

extern const double kU49InvariantLo;      // published interval
extern const double kU49InvariantHi;
extern const double kU49InvariantSlack;   // acceptance widens by this much

}  // namespace qconv
