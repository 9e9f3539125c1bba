#include <doctest.h>

#include <cmath>

#include "qconv/linalg.hpp"
#include "qconv/rng.hpp"
#include "qconv/tensor_ops.hpp"

using namespace qconv;

namespace {

// naive 4-loop reference for the index shuffles
ComplexMatrix reshuffle_naive(const ComplexMatrix& u, std::size_t d) {
    ComplexMatrix r(d * d, d * d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t j = 0; j < d; ++j)
                    r(k * d + i, l * d + j) = u(k * d + l, i * d + j);
    return r;
}

ComplexMatrix random_matrix(std::size_t n, Rng& rng) {
    ComplexMatrix m(n, n);
    for (auto& v : m.data()) v = rng.complex_normal();
    return m;
}

}  // namespace

TEST_CASE("reshuffle of the swap") {
    // (S^R)_{ki,lj} = S_{kl,ij} = delta_{kj} delta_{li}, which is the swap
    // itself; the delta pattern is unitary, so S passes the R-side of the
    // 2-unitarity check and fails only on the Gamma side.
    const auto s = swap_matrix(2);
    CHECK(reshuffle(s).max_abs_diff(s) == 0.0);
    CHECK(reshuffle(s).unitarity_residual() == 0.0);
}

TEST_CASE("reshuffle is an involution and matches the naive loop") {
    Rng rng(11);
    for (std::size_t d : {2, 3, 5}) {
        const auto u = haar_unitary(d * d, rng);
        const auto r = reshuffle(u);
        CHECK(r.max_abs_diff(reshuffle_naive(u, d)) == 0.0);
        CHECK(reshuffle(r).max_abs_diff(u) == 0.0);
        CHECK(r.frobenius_norm() == doctest::Approx(u.frobenius_norm()).epsilon(1e-13));
    }
}

TEST_CASE("reshuffle of the identity has the rank-one delta pattern") {
    // (I^R)_{ki,lj} = delta_{ki} delta_{lj}: ones exactly on the |mm><nn|
    // grid, i.e. 3 |Psi+><Psi+|
    const std::size_t d = 3;
    const auto r = reshuffle(ComplexMatrix::identity(9));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t j = 0; j < d; ++j) {
                    const double want = (k == i && l == j) ? 1.0 : 0.0;
                    CHECK(r(k * d + i, l * d + j).real() == want);
                }
    const auto eg = eigh(r);
    int nonzero = 0;
    for (double v : eg.values)
        if (std::abs(v) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);
    CHECK(eg.values.back() == doctest::Approx(3.0));
}

TEST_CASE("partial transpose of the swap is rank one") {
    const auto g = partial_transpose(swap_matrix(2));
    // 2 |Psi+><Psi+|: ones exactly where k=i, l=j
    const auto eg = eigh(g);
    int nonzero = 0;
    for (double v : eg.values)
        if (std::abs(v) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);
    CHECK(eg.values.back() == doctest::Approx(2.0));
}

TEST_CASE("partial transpose involution, identity fixed point") {
    Rng rng(5);
    const auto u = haar_unitary(9, rng);
    CHECK(partial_transpose(partial_transpose(u)).max_abs_diff(u) == 0.0);
    const auto id = ComplexMatrix::identity(16);
    CHECK(partial_transpose(id).max_abs_diff(id) == 0.0);
}

TEST_CASE("bipartite index round-trip") {
    BipartiteIndex bi{5};
    for (std::size_t k = 0; k < 5; ++k)
        for (std::size_t i = 0; i < 5; ++i) {
            const auto [k2, i2] = bi.unflatten(bi.flatten(k, i));
            CHECK(k2 == k);
            CHECK(i2 == i);
        }
    CHECK_THROWS_AS(bipartite_local_dim(ComplexMatrix(6, 6)), DimensionError);
}

TEST_CASE("partial trace basics") {
    Rng rng(7);
    SUBCASE("product state factors") {
        const auto psi_a = haar_state(3, rng);
        const auto psi_b = haar_state(4, rng);
        const auto rho_a = outer(psi_a, psi_a);
        const auto rho_b = outer(psi_b, psi_b);
        const auto joint = kron(rho_a, rho_b);
        const auto back = partial_trace(joint, {0}, {3, 4});
        CHECK(back.max_abs_diff(rho_a) < 1e-13);
    }
    SUBCASE("maximally entangled state reduces to I/d") {
        const std::size_t d = 3;
        std::vector<cplx> bell(d * d, 0.0);
        for (std::size_t i = 0; i < d; ++i) bell[i * d + i] = 1.0 / std::sqrt(3.0);
        const auto rho = outer(bell, bell);
        const auto red = partial_trace(rho, {0}, {3, 3});
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                CHECK(std::abs(red(r, c) - (r == c ? cplx(1.0 / 3) : cplx(0.0))) < 1e-13);
    }
    SUBCASE("trace over everything gives the scalar trace") {
        const auto m = random_matrix(6, rng);
        const auto s = partial_trace(m, {}, {2, 3});
        CHECK(s.rows() == 1);
        CHECK(std::abs(s(0, 0) - m.trace()) < 1e-12);
    }
    SUBCASE("trace preservation and convex combinations") {
        const auto a = random_matrix(6, rng);
        const auto b = random_matrix(6, rng);
        const auto ta = partial_trace(a, {1}, {2, 3});
        const auto tb = partial_trace(b, {1}, {2, 3});
        ComplexMatrix mix = a;
        mix *= cplx(0.25, 0.0);
        ComplexMatrix bs = b;
        bs *= cplx(0.75, 0.0);
        mix += bs;
        ComplexMatrix want = ta;
        want *= cplx(0.25, 0.0);
        ComplexMatrix wb = tb;
        wb *= cplx(0.75, 0.0);
        want += wb;
        CHECK(partial_trace(mix, {1}, {2, 3}).max_abs_diff(want) < 1e-12);
        CHECK(std::abs(ta.trace() - a.trace()) < 1e-12);
    }
    SUBCASE("unknown label") {
        CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(6), {5}, {2, 3}), LabelError);
    }
}

TEST_CASE("polar factor") {
    SUBCASE("positive diagonal maps to identity") {
        ComplexMatrix m(2, 2);
        m(0, 0) = 2.0;
        m(1, 1) = 3.0;
        CHECK(polar_factor(m).max_abs_diff(ComplexMatrix::identity(2)) < 1e-14);
    }
    SUBCASE("unitary fixed point and idempotence") {
        Rng rng(3);
        const auto w = haar_unitary(5, rng);
        CHECK(polar_factor(w).max_abs_diff(w) < 1e-13);
        const auto m = random_matrix(5, rng);
        const auto p = polar_factor(m);
        CHECK(polar_factor(p).max_abs_diff(p) < 1e-13);
    }
    SUBCASE("output is the Frobenius-closest unitary among random competitors") {
        Rng rng(17);
        const auto m = random_matrix(4, rng);
        const auto w = polar_factor(m);
        CHECK(w.unitarity_residual() < 1e-12);
        const double best = (m - w).frobenius_norm();
        for (int t = 0; t < 100; ++t) {
            const auto v = haar_unitary(4, rng);
            CHECK((m - v).frobenius_norm() >= best - 1e-12);
        }
    }
    SUBCASE("singular input") {
        ComplexMatrix m(2, 2);
        m(0, 0) = 1.0;
        CHECK_THROWS_AS(polar_factor(m), SingularError);
    }
}

TEST_CASE("fourier matrix") {
    const auto h = fourier_matrix(2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h(0, 0) - cplx(s)) < 1e-15);
    CHECK(std::abs(h(1, 1) - cplx(-s)) < 1e-15);
    const auto f3 = fourier_matrix(3);
    CHECK(f3.unitarity_residual() < 1e-14);
    const cplx want = std::exp(cplx(0.0, 2.0 * M_PI / 3.0)) / std::sqrt(3.0);
    CHECK(std::abs(f3(1, 1) - want) < 1e-14);
}

TEST_CASE("swap powers") {
    const std::size_t d = 2;
    CHECK(swap_power(d, 0.0).max_abs_diff(ComplexMatrix::identity(4)) < 1e-15);
    CHECK(swap_power(d, 1.0).max_abs_diff(swap_matrix(2)) < 1e-15);
    const auto half = swap_power(d, 0.5);
    CHECK(matmul(half, half).max_abs_diff(swap_matrix(2)) < 1e-12);
}

TEST_CASE("haar unitary sampling") {
    Rng rng(42);
    for (std::size_t d : {2, 7, 23}) {
        const auto u = haar_unitary(d, rng);
        CHECK(u.unitarity_residual() < 1e-12);
    }
    SUBCASE("seed determinism") {
        const auto a = haar_unitary(5, std::uint64_t(99));
        const auto b = haar_unitary(5, std::uint64_t(99));
        CHECK(a.max_abs_diff(b) == 0.0);
    }
    SUBCASE("first-moment of |<0|psi>|^2 is 1/d") {
        const std::size_t d = 4, n = 100000;
        Rng r(12);
        double mean = 0.0, var = 0.0;
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto psi = haar_state(d, r);
            vals[i] = std::norm(psi[0]);
            mean += vals[i];
        }
        mean /= n;
        for (double v : vals) var += (v - mean) * (v - mean);
        var /= n;
        const double sigma = std::sqrt(var / n);
        CHECK(std::abs(mean - 1.0 / d) < 3.0 * sigma);
    }
}

TEST_CASE("choi state of a unitary has maximally mixed single-party marginals") {
    Rng rng(6);
    for (std::size_t d : {2, 3}) {
        const auto u = haar_unitary(d * d, rng);
        const auto psi = choi_state_bipartite(u);
        for (int p = 0; p < 4; ++p) {
            const double purity_p = psi.reduced_purity({p});
            CHECK(purity_p == doctest::Approx(1.0 / d).epsilon(1e-12));
        }
        double nrm = 0.0;
        for (const auto& v : psi.amplitudes) nrm += std::norm(v);
        CHECK(nrm == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("apply_channel validates density inputs") {
    ComplexMatrix bad = ComplexMatrix::identity(3);  // trace 3
    const auto u = ComplexMatrix::identity(9);
    CHECK_THROWS_AS(apply_channel(u, {bad, bad}), InputError);
}
