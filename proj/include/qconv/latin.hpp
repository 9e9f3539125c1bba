#pragma once

#include <cstdint>
#include <vector>

#include "qconv/complex_matrix.hpp"

namespace qconv {

// Arithmetic in GF(p^k) for the prime powers this project needs (d <= 9 in
// practice, but the table construction is generic). Elements are integers
// 0..q-1 encoding coefficient vectors base p. Fixed irreducible polynomials:
// x^2+x+1 over GF(2), x^3+x+1 over GF(2), x^2+1 over GF(3).
class GaloisField {
  public:
    explicit GaloisField(std::size_t q);  // NoConstructionError unless q is a prime power

    std::size_t size() const { return q_; }
    std::size_t add(std::size_t a, std::size_t b) const { return add_[a * q_ + b]; }
    std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * q_ + b]; }
    std::size_t neg(std::size_t a) const { return neg_[a]; }
    std::size_t inv(std::size_t a) const;  // SingularError for a = 0

    static bool is_prime_power(std::size_t q, std::size_t* p = nullptr, std::size_t* k = nullptr);

  private:
    std::size_t q_;
    std::vector<std::size_t> add_, mul_, neg_;
};

// Latin square of order d; cells hold 1-based symbols to match printed tables,
// all arithmetic happens 0-based internally.
struct LatinSquare {
    std::size_t d = 0;
    std::vector<int> cells;  // row-major, values in 1..d

    int at(std::size_t r, std::size_t c) const { return cells[r * d + c]; }
    int& at(std::size_t r, std::size_t c) { return cells[r * d + c]; }
    bool valid() const;
};

// Latin hypercube: `arity` indices, every axis-aligned line is a permutation
// of 1..d.
struct LatinHypercube {
    std::size_t d = 0;
    std::size_t arity = 0;
    std::vector<int> cells;  // row-major over the arity indices, values 1..d

    std::size_t flat(const std::vector<std::size_t>& idx) const;
    int at(const std::vector<std::size_t>& idx) const { return cells[flat(idx)]; }
    bool valid() const;

    LatinSquare as_square() const;  // arity 2 only
    static LatinHypercube from_square(const LatinSquare& s);
};

// 0/1 multistochastic tensor of arity m: every single-index sum is 1.
struct PermutationTensor {
    std::size_t d = 0;
    std::size_t arity = 0;  // m
    std::vector<std::uint8_t> entries;  // flat row-major, first index major

    std::size_t flat(const std::vector<std::size_t>& idx) const;
    std::uint8_t at(const std::vector<std::size_t>& idx) const { return entries[flat(idx)]; }
    bool valid() const;

    // arity-3 accessor A_{klj}
    std::uint8_t at3(std::size_t k, std::size_t l, std::size_t j) const {
        return entries[(k * d + l) * d + j];
    }
    // For arity 3: the unique j with A_{klj} = 1.
    std::size_t j_of(std::size_t k, std::size_t l) const;
    // For arity 3: the unique k with A_{klj} = 1.
    std::size_t k_of(std::size_t l, std::size_t j) const;
    // For arity 3: the unique l with A_{klj} = 1.
    std::size_t l_of(std::size_t k, std::size_t j) const;
};

// Cyclic tensor A_{klj} = delta_{k, l+j mod d} (the "convolution" skeleton).
PermutationTensor cyclic_tensor(std::size_t d);

// d-1 pairwise orthogonal Latin squares L^(alpha)_{ij} = alpha*i + j over
// GF(d). NoConstructionError for d in {1,2,6} and for non-prime-powers.
std::vector<LatinSquare> mols(std::size_t d);

bool are_orthogonal(const LatinSquare& l, const LatinSquare& m);

// A_{ijk} = delta_{i, L_{jk}}
PermutationTensor tensor_from_square(const LatinSquare& l);
LatinSquare square_from_tensor(const PermutationTensor& a);
PermutationTensor tensor_from_hypercube(const LatinHypercube& l);
LatinHypercube hypercube_from_tensor(const PermutationTensor& a);

// P_{d^2} = sum |L_{lj}, M_{lj}><l, j|. OrthogonalityError unless L ⟂ M.
ComplexMatrix perm_2unitary_from_mols(const LatinSquare& l, const LatinSquare& m);

// `how_many` mutually orthogonal Latin hypercubes of the given arity over
// GF(d), drawn from the linear-form family c_2 i_2 + ... + c_m i_m (all
// coefficients nonzero, first normalized to 1) by exact clique search.
// NoConstructionError when no such set exists among linear forms.
std::vector<LatinHypercube> latin_hypercubes(std::size_t d, std::size_t arity,
                                             std::size_t how_many);

// True iff every aligned pair of 2-index subsquares is orthogonal.
bool are_orthogonal_hypercubes(const LatinHypercube& a, const LatinHypercube& b);
bool all_mutually_orthogonal(const std::vector<LatinHypercube>& cubes);

// U = sum |L^(1)...L^(m-1)><i_2...i_m| for m-1 mutually orthogonal hypercubes.
ComplexMatrix multipartite_unitary_from_hypercubes(const std::vector<LatinHypercube>& cubes);

// Orthogonal-array column rotation: moves the symbol columns of the OA to the
// front and re-sorts, producing cubes M^(k) with
// U(cubes) = U(oa_transform(cubes))^T.
std::vector<LatinHypercube> oa_transform(const std::vector<LatinHypercube>& cubes);

// Minimum Hamming distance between rows of the orthogonal array
// (i_2..i_m, L^(1)..L^(m-1)); equals m for an MDS-grade set.
std::size_t oa_min_distance(const std::vector<LatinHypercube>& cubes);

}  // namespace qconv
