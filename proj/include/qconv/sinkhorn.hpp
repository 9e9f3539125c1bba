#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qconv/coherify.hpp"
#include "qconv/latin.hpp"

namespace qconv {

enum class Constraint { None, Cyclic };

struct SearchState {
    PermutationTensor tensor;  // arity 3
    BasisFamily bases;         // rows of bases.v[k] are the a_{k,l}
    double residual_v = 0.0;
    double residual_vprime = 0.0;
    double residual_vsecond = 0.0;
    std::size_t iteration = 0;
    std::vector<double> history;  // max residual per sweep

    double max_residual() const;
};

// The three matrix families whose joint unitarity is the 2-unitarity
// condition. V_k rows are a_{k,l}; V'_j rows (indexed by k) are a_{k,l(k,j)};
// V''_l rows (indexed by j) are a_{k(l,j),l}.
std::vector<ComplexMatrix> assemble_v(const SearchState& s);
std::vector<ComplexMatrix> assemble_vprime(const SearchState& s);
std::vector<ComplexMatrix> assemble_vsecond(const SearchState& s);

double family_residual(const std::vector<ComplexMatrix>& family);

// One sweep: polar-orthonormalize the V family, then V', then V'', writing
// entries back through the index maps after each family; residuals refreshed.
SearchState sinkhorn_sweep(SearchState s);

// Amplitude projection onto the cyclic constraint
// |<i|a_{k,l}>|^2 = |<i+n|a_{k,l+n}>|^2: RMS-average the amplitudes along each
// orbit, keep phases, renormalize rows.
BasisFamily cyclic_project(const BasisFamily& bases, std::size_t d);

struct SearchOptions {
    Constraint constraint = Constraint::None;
    double tol = 1e-12;
    std::size_t max_sweeps = 20000;
    std::size_t stall_window = 50;
    double stall_eps = 1e-14;
    bool pin_first_basis = false;  // force V_1 = I after each sweep
};

struct SearchResult {
    bool converged = false;
    SearchState state;
};

// Alternating polar-decomposition search from the given bases; with the
// cyclic constraint the projection runs after each sweep and the first basis
// is pinned to the computational one.
SearchResult search(const PermutationTensor& a, const BasisFamily& init,
                    const SearchOptions& opt);
SearchResult search(const PermutationTensor& a, std::uint64_t seed, const SearchOptions& opt);

// Dimension count of the solution manifold at `state`, from the SVD of the
// numerical Jacobian of the stacked three-family unitarity residuals over the
// full real basis space. Returns {raw nullity, structure-direction count},
// where structure directions are the analytic tangents (common left rotation
// and per-vector phases).
struct NullityReport {
    int raw_nullity = 0;
    int structure_rank = 0;
    int beyond_structure() const { return raw_nullity - structure_rank; }
};
NullityReport solution_nullity(const SearchState& state, double sv_threshold = 1e-6);

}  // namespace qconv
