#include <doctest.h>

#include <cmath>

#include "qconv/coherify.hpp"
#include "qconv/linalg.hpp"
#include "qconv/metrics.hpp"
#include "qconv/rng.hpp"

using namespace qconv;

TEST_CASE("canonical gate values at d = 2, 3, 4") {
    for (std::size_t d : {2, 3, 4}) {
        const auto id = ComplexMatrix::identity(d * d);
        const auto s = swap_matrix(d);
        CHECK(std::abs(entangling_power(id)) < 1e-12);
        CHECK(std::abs(entangling_power(s)) < 1e-12);
        CHECK(std::abs(gate_typicality(id)) < 1e-12);
        CHECK(std::abs(gate_typicality(s) - 1.0) < 1e-12);
        CHECK(std::abs(op_entanglement(s) - (1.0 - 1.0 / (d * d))) < 1e-12);
        CHECK(std::abs(op_entanglement(id)) < 1e-12);
    }
}

TEST_CASE("op_entanglement of P9 is 8/9") {
    const auto squares = mols(3);
    const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
    CHECK(op_entanglement(p9) == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("op_entanglement rejects non-unitary input") {
    ComplexMatrix m = ComplexMatrix::identity(9);
    m(0, 0) = 2.0;
    CHECK_THROWS_AS(op_entanglement(m), UnitarityError);
}

TEST_CASE("entangling power of MOLS gates is 1") {
    for (std::size_t d : {3, 4, 5}) {
        const auto squares = mols(d);
        const auto p = perm_2unitary_from_mols(squares[0], squares[1]);
        CHECK(entangling_power(p) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(gate_typicality(p) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("2-unitarity classification") {
    const auto squares = mols(3);
    const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
    CHECK(is_2unitary(p9, 1e-12).is_2unitary);
    const auto s = swap_matrix(3);
    const auto res = is_2unitary(s, 1e-10);
    CHECK_FALSE(res.is_2unitary);
    CHECK(res.residual_u < 1e-15);
    CHECK(res.residual_gamma > 0.5);  // S^Gamma is rank deficient
}

TEST_CASE("mub bases") {
    SUBCASE("defining overlaps at d=3") {
        const auto b = mub_bases(3);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t k2 = 0; k2 < 3; ++k2)
                for (std::size_t l = 0; l < 3; ++l)
                    for (std::size_t l2 = 0; l2 < 3; ++l2) {
                        std::vector<cplx> va(3), vb(3);
                        for (std::size_t i = 0; i < 3; ++i) {
                            va[i] = b.amp(k, l, i);
                            vb[i] = b.amp(k2, l2, i);
                        }
                        const double ov = std::norm(inner(va, vb));
                        if (k == k2)
                            CHECK(std::abs(ov - (l == l2 ? 1.0 : 0.0)) < 1e-12);
                        else
                            CHECK(std::abs(ov - 1.0 / 3.0) < 1e-12);
                    }
    }
    SUBCASE("MUB coherification values at odd primes") {
        for (std::size_t d : {3, 5, 7}) {
            const auto u = build_unitary(cyclic_tensor(d), mub_bases(d));
            const double want = 1.0 - 2.0 / double(d * d + d);
            CHECK(entangling_power(u) == doctest::Approx(want).epsilon(1e-10));
            CHECK(gate_typicality(u) == doctest::Approx(0.5).epsilon(1e-10));
        }
    }
    SUBCASE("non-prime and even dimensions are refused") {
        CHECK_THROWS_AS(mub_bases(2), NoConstructionError);
        CHECK_THROWS_AS(mub_bases(4), NoConstructionError);
        CHECK_THROWS_AS(mub_bases(9), NoConstructionError);
    }
}

TEST_CASE("monte carlo entangling power") {
    SUBCASE("identity gives exactly zero") {
        const auto est = ep_monte_carlo(ComplexMatrix::identity(9), 500, 4);
        CHECK(est.mean == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("P9 estimate is 1 within 3 standard errors") {
        const auto squares = mols(3);
        const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
        const auto est = ep_monte_carlo(p9, 10000, 5);
        CHECK(std::abs(est.mean - 1.0) < 3.0 * est.stderr_);
    }
    SUBCASE("closed formula matches the Haar average for random coherifications") {
        Rng rng(23);
        for (int t = 0; t < 3; ++t) {
            const auto u = build_unitary(cyclic_tensor(3), BasisFamily::random(3, rng));
            const double closed = entangling_power(u);
            const auto est = ep_monte_carlo(u, 10000, 50 + t);
            CHECK(std::abs(est.mean - closed) < 3.0 * est.stderr_);
        }
    }
}

TEST_CASE("local invariance of e_p, g_t, d_p") {
    Rng rng(64);
    for (int t = 0; t < 10; ++t) {
        const auto u = haar_unitary(9, rng);
        const auto gm = gate_metrics(u);
        const auto rot = matmul(kron(haar_unitary(3, rng), haar_unitary(3, rng)),
                                matmul(u, kron(haar_unitary(3, rng), haar_unitary(3, rng))));
        const auto gm2 = gate_metrics(rot);
        CHECK(std::abs(gm.e_p - gm2.e_p) < 1e-10);
        CHECK(std::abs(gm.g_t - gm2.g_t) < 1e-10);
        CHECK(std::abs(gm.d_p - gm2.d_p) < 1e-10);
    }
}

TEST_CASE("d_p is e_p/(d-1)") {
    Rng rng(3);
    const auto u = haar_unitary(16, rng);
    const auto gm = gate_metrics(u);
    CHECK(gm.d_p == doctest::Approx(gm.e_p / 3.0).epsilon(1e-12));
}

TEST_CASE("coherification bounds at d=3") {
    const std::size_t d = 3;
    const auto a = cyclic_tensor(d);
    SUBCASE("random coherifications stay inside") {
        Rng rng(15);
        for (int t = 0; t < 100; ++t) {
            const auto u = build_unitary(a, BasisFamily::random(d, rng));
            CHECK(ep_bounds_check(u, d));
            const double gt = gate_typicality(u);
            CHECK(gt >= 0.5 - 1.0 / (2.0 * d + 2.0) - 1e-10);
            CHECK(gt <= 0.5 + 1.0 / (2.0 * d + 2.0) + 1e-10);
        }
    }
    SUBCASE("both extremal constructions attain e_p = 1 - 1/(d+1)") {
        BasisFamily same = BasisFamily::computational(d);  // a_{k,l} independent of k
        const auto u1 = build_unitary(a, same);
        CHECK(entangling_power(u1) == doctest::Approx(0.75).epsilon(1e-12));
        BasisFamily from_tensor;
        from_tensor.d = d;
        from_tensor.v.assign(d, ComplexMatrix(d, d));
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t i = 0; i < d; ++i)
                    from_tensor.v[k](l, i) = double(a.at3(k, l, i));
        const auto u2 = build_unitary(a, from_tensor);
        CHECK(entangling_power(u2) == doctest::Approx(0.75).epsilon(1e-12));
        // the two extremes sit at opposite ends of the g_t window
        const double g1 = gate_typicality(u1);
        const double g2 = gate_typicality(u2);
        CHECK(std::abs(std::max(g1, g2) - 0.625) < 1e-12);
        CHECK(std::abs(std::min(g1, g2) - 0.375) < 1e-12);
    }
}

TEST_CASE("multipartite entangling power") {
    SUBCASE("reduces to entangling_power for two parties") {
        Rng rng(19);
        for (int t = 0; t < 20; ++t) {
            const auto u = haar_unitary(9, rng);
            CHECK(std::abs(multipartite_ep(u, 3, 3) - entangling_power(u)) < 1e-10);
        }
    }
    SUBCASE("identity on three parties gives zero") {
        CHECK(std::abs(multipartite_ep(ComplexMatrix::identity(64), 4, 4)) < 1e-12);
    }
    SUBCASE("three orthogonal cubes give the maximum") {
        const auto u = multipartite_unitary_from_hypercubes(latin_hypercubes(4, 3, 3));
        CHECK(multipartite_ep(u, 4, 4) == doctest::Approx(1.0).epsilon(1e-10));
    }
}
