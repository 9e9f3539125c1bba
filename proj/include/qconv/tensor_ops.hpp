#pragma once

#include <string>
#include <vector>

#include "qconv/complex_matrix.hpp"

namespace qconv {

// Index shuffles of a bipartite d^2 x d^2 matrix. Both maps are pure
// permutations of flat indices, so they are linear, involutive and
// Frobenius-norm preserving.

// (U^R)_{ki,lj} = U_{kl,ij}
ComplexMatrix reshuffle(const ComplexMatrix& u);

// (U^Gamma)_{ki,lj} = U_{li,kj}
ComplexMatrix partial_transpose(const ComplexMatrix& u);

// Partial trace over the parties NOT listed in `keep`. `dims` are the local
// dimensions in order; labels are indices into `dims`. LabelError for an
// unknown label.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& keep,
                            const std::vector<std::size_t>& dims);

// Pure multipartite state with labeled parties.
struct ChoiState {
    std::size_t local_dim = 0;
    std::vector<std::string> parties;  // 2(m-1) labels, outputs then inputs
    std::vector<cplx> amplitudes;      // flat, row-major over parties in order

    std::size_t num_parties() const { return parties.size(); }

    // rho_K for the subset K of party positions (Gram-matrix route, never
    // materializes |psi><psi|).
    ComplexMatrix reduced_density(const std::vector<int>& keep) const;
    double reduced_purity(const std::vector<int>& keep) const;
};

// |U> = (U x I)|Psi+> for an (m-1)-partite unitary U of size d^{m-1}.
// Parties are labeled "1".."m-1" (outputs) then "1'".."m-1'" (inputs); the
// bipartite case gives (A,B,A',B').
ChoiState choi_state(const ComplexMatrix& u, std::size_t d, std::size_t num_out_parties);
ChoiState choi_state_bipartite(const ComplexMatrix& u);

// Linear entropy 1 - Tr(rho^2) of |psi> across the given party subset.
double linear_entropy(const ChoiState& psi, const std::vector<int>& keep);

// Channel application Phi(rho) = Tr_rest[U (rho1 x ... x rho_{m-1}) U^dag],
// keeping the first output party. Inputs are validated as density matrices
// (trace within 1e-8 of one, min eigenvalue > -1e-8).
ComplexMatrix apply_channel(const ComplexMatrix& u, const std::vector<ComplexMatrix>& inputs);

// Same but for an arbitrary (possibly entangled) joint input state.
ComplexMatrix apply_channel_joint(const ComplexMatrix& u, const ComplexMatrix& rho_joint,
                                  std::size_t d_out);

double purity(const ComplexMatrix& rho);

}  // namespace qconv
