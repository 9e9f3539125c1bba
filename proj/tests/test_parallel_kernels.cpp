#include <doctest.h>

#include "qconv/latin.hpp"
#include "qconv/metrics.hpp"
#include "qconv/rng.hpp"
#include "qconv/stats.hpp"

using namespace qconv;

// the OpenMP kernels must agree with their serial references bit for bit:
// every parallel loop draws its randomness from per-item derived seeds

TEST_CASE("matmul omp kernel equals the serial reference") {
    Rng rng(2);
    for (std::size_t n : {7, 64, 81, 130}) {
        ComplexMatrix a(n, n), b(n, n);
        for (auto& v : a.data()) v = rng.complex_normal();
        for (auto& v : b.data()) v = rng.complex_normal();
        const auto s = matmul_serial(a, b);
        const auto p = matmul_omp(a, b);
        CHECK(s.max_abs_diff(p) == 0.0);
    }
}

TEST_CASE("entanglement sampling is shard-invariant") {
    const auto squares = mols(3);
    const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
    const auto serial = sample_entanglement_serial(p9, 3000, 17);
    const auto parallel = sample_entanglement_omp(p9, 3000, 17);
    CHECK(serial.values == parallel.values);
}

TEST_CASE("monte carlo entangling power is shard-invariant") {
    const auto squares = mols(3);
    const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
    const auto serial = ep_monte_carlo_serial(p9, 2000, 23);
    const auto parallel = ep_monte_carlo_omp(p9, 2000, 23);
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.stderr_ == parallel.stderr_);
}
