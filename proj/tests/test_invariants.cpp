#include <doctest.h>

#include <cmath>

#include "qconv/invariants.hpp"
#include "qconv/latin.hpp"
#include "qconv/rng.hpp"

using namespace qconv;

namespace {

// 16-index brute force, usable at d = 2
cplx brute_force_invariant(const ComplexMatrix& u, const PermQuadruple& q) {
    const std::size_t d = bipartite_local_dim(u);
    const std::size_t n = q.n;
    auto at = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return u(i * d + j, k * d + l);
    };
    std::size_t total = 1;
    for (std::size_t t = 0; t < 4 * n; ++t) total *= d;
    cplx acc = 0.0;
    std::vector<std::size_t> iv(n), jv(n), kv(n), lv(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t t = 0; t < n; ++t) {
            iv[t] = rem % d;
            rem /= d;
        }
        for (std::size_t t = 0; t < n; ++t) {
            jv[t] = rem % d;
            rem /= d;
        }
        for (std::size_t t = 0; t < n; ++t) {
            kv[t] = rem % d;
            rem /= d;
        }
        for (std::size_t t = 0; t < n; ++t) {
            lv[t] = rem % d;
            rem /= d;
        }
        cplx term = 1.0;
        for (std::size_t t = 0; t < n && term != cplx(0.0); ++t)
            term *= at(iv[t], jv[t], kv[t], lv[t]);
        if (term == cplx(0.0)) continue;
        for (std::size_t s = 0; s < n && term != cplx(0.0); ++s)
            term *= std::conj(at(iv[q.sigma[s]], jv[q.tau[s]], kv[q.rho[s]], lv[q.lambda[s]]));
        acc += term;
    }
    return acc;
}

}  // namespace

TEST_CASE("quadruple parsing") {
    const auto q = PermQuadruple::parse("id,(12)(34),(13)(24),(14)(23)");
    CHECK(q.n == 4);
    CHECK(q.sigma == std::vector<int>{0, 1, 2, 3});
    CHECK(q.tau == std::vector<int>{1, 0, 3, 2});
    CHECK(q.rho == std::vector<int>{2, 3, 0, 1});
    CHECK(q.lambda == std::vector<int>{3, 2, 1, 0});
    CHECK_THROWS_AS(PermQuadruple::parse("id,id"), ParseError);
    CHECK_THROWS_AS(PermQuadruple::parse("id,(12,id,id"), ParseError);
}

TEST_CASE("identity quadruple gives (d^2)^n, checked against the brute force oracle") {
    Rng rng(2);
    const auto u = haar_unitary(4, rng);
    const auto q = PermQuadruple::identity(4);
    const cplx v = local_invariant(u, q);
    CHECK(std::abs(v - cplx(256.0)) < 1e-9);
    const cplx bf = brute_force_invariant(u, q);
    CHECK(std::abs(v - bf) < 1e-9);
}

TEST_CASE("streamed contraction matches the brute force at d=2") {
    Rng rng(15);
    const auto u = haar_unitary(4, rng);
    for (const char* text : {"id,(12)(34),(13)(24),(14)(23)", "(12),(2 3),(13),id",
                             "(1234),(12)(34),id,(14)(23)"}) {
        const auto q = PermQuadruple::parse(text);
        const cplx a = local_invariant(u, q);
        const cplx b = brute_force_invariant(u, q);
        CHECK(std::abs(a - b) < 1e-9);
    }
}

TEST_CASE("permutation counting path agrees with the streamed path") {
    const auto squares = mols(3);
    const auto p9 = perm_2unitary_from_mols(squares[1], squares[0]);
    const auto q = klein_quadruple();
    const long long count = local_invariant_permutation(p9, q);
    const cplx dense = local_invariant(p9, q);
    CHECK(std::abs(dense - cplx(double(count))) < 1e-9);
}

TEST_CASE("published normalization: the P49 baseline is 343") {
    const auto squares = mols(7);
    const auto p49 = perm_2unitary_from_mols(squares[0], squares[1]);
    const long long count = local_invariant_permutation(p49, klein_quadruple());
    CHECK(7 * count == 343);
    CHECK(local_invariant_table_norm(p49, klein_quadruple()).real() ==
          doctest::Approx(343.0).epsilon(1e-9));
}

TEST_CASE("invariance under local rotations and conjugation covariance") {
    Rng rng(8);
    const auto u = haar_unitary(9, rng);
    const auto q = klein_quadruple();
    const cplx base = local_invariant(u, q);
    for (int t = 0; t < 3; ++t) {
        const auto rot = matmul(kron(haar_unitary(3, rng), haar_unitary(3, rng)),
                                matmul(u, kron(haar_unitary(3, rng), haar_unitary(3, rng))));
        CHECK(std::abs(local_invariant(rot, q) - base) < 1e-8);
    }
    CHECK(std::abs(local_invariant(u.conj(), q) - std::conj(base)) < 1e-9);
}

TEST_CASE("budget guard") {
    const auto u = ComplexMatrix::identity(49);
    CHECK_THROWS_AS(local_invariant(u, klein_quadruple(), 1000), BudgetError);
}

TEST_CASE("permutation path refuses dense input") {
    Rng rng(4);
    const auto u = haar_unitary(9, rng);
    CHECK_THROWS_AS(local_invariant_permutation(u, klein_quadruple()), StructureError);
}
