#pragma once

#include <string>
#include <vector>

#include "qconv/complex_matrix.hpp"

namespace qconv {

// Four permutations of [1..n] defining a degree-2n local-unitary invariant of
// a bipartite gate: one permutation per index family (A out, B out, A in,
// B in) applied to the conjugated factors.
struct PermQuadruple {
    std::size_t n = 0;
    std::vector<int> sigma, tau, rho, lambda;  // 0-based images

    static PermQuadruple identity(std::size_t n);
    // Parses "id,(12)(34),(13)(24),(14)(23)" (1-based cycle notation).
    static PermQuadruple parse(const std::string& text);
    void require_valid() const;
};

// The quadruple the source uses to separate gate families:
// sigma = id, tau = (12)(34), rho = (13)(24), lambda = (14)(23).
PermQuadruple klein_quadruple();

// I_{sigma,tau,rho,lambda}(U) = sum prod_t U^{i_t j_t}_{k_t l_t}
//   prod_s conj(U)^{i_sigma(s) j_tau(s)}_{k_rho(s) l_lambda(s)}.
// The all-identity quadruple gives (d^2)^n. Cost grows as d^{2n}; BudgetError
// when the index space exceeds `budget` points.
cplx local_invariant(const ComplexMatrix& u, const PermQuadruple& q,
                     std::size_t budget = 1ull << 28);

// The published comparison values for this invariant carry one extra factor of
// the local dimension over the definitional contraction (the permutation
// baseline is printed as d^3 where the contraction gives d^2); this helper
// applies that normalization so results are comparable with the printed
// tables and intervals.
cplx local_invariant_table_norm(const ComplexMatrix& u, const PermQuadruple& q,
                                std::size_t budget = 1ull << 28);

// Exact integer path for 0/1 permutation gates: counts contributing index
// assignments. StructureError when U is not a permutation matrix.
long long local_invariant_permutation(const ComplexMatrix& u, const PermQuadruple& q);

}  // namespace qconv
