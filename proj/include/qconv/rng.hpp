#pragma once

#include <cstdint>
#include <vector>

#include "qconv/complex_matrix.hpp"

namespace qconv {

// Splittable counter-based generator (SplitMix64 core). Every stochastic
// operation in the library takes an explicit seed and derives sub-streams via
// child(), so runs are reproducible no matter how work is sharded across
// threads.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix_seed(seed)) {}

    // Independent stream for shard `i` of this generator's seed.
    Rng child(std::uint64_t i) const;

    std::uint64_t next_u64();
    // Uniform in [0,1) with 53 random mantissa bits.
    double uniform01();
    double uniform(double lo, double hi);
    std::uint64_t uniform_int(std::uint64_t n);  // [0, n)
    // Standard normal via Box-Muller (explicit, platform-independent).
    double normal();
    cplx complex_normal();  // (N(0,1) + i N(0,1)) / sqrt(2)

  private:
    static std::uint64_t mix_seed(std::uint64_t s);
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

// Haar-random unitary via QR of a complex Ginibre matrix with the phase fix
// that makes the distribution exactly invariant.
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);
inline ComplexMatrix haar_unitary(std::size_t d, std::uint64_t seed) {
    Rng r(seed);
    return haar_unitary(d, r);
}

// Haar-random pure state (normalized complex Gaussian vector).
std::vector<cplx> haar_state(std::size_t d, Rng& rng);
inline std::vector<cplx> haar_state(std::size_t d, std::uint64_t seed) {
    Rng r(seed);
    return haar_state(d, r);
}

// Random Hermitian with unit spectral norm (annealing proposal directions).
ComplexMatrix random_hermitian_unit(std::size_t d, Rng& rng);

}  // namespace qconv
