// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit when any
// criterion fails. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qconv/coherence.hpp"
#include "qconv/coherify.hpp"
#include "qconv/families.hpp"
#include "qconv/invariants.hpp"
#include "qconv/latin.hpp"
#include "qconv/linalg.hpp"
#include "qconv/metrics.hpp"
#include "qconv/sinkhorn.hpp"
#include "qconv/stats.hpp"
#include "qconv/tensor_ops.hpp"

using namespace qconv;

namespace {

struct Runner {
    int failures = 0;

    void run(const std::string& name, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%-4s %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

ComplexMatrix first_mols_gate(std::size_t d) {
    const auto squares = mols(d);
    return perm_2unitary_from_mols(squares[0], squares[1]);
}

// criterion 9 helper: 16-index brute force at d=2
cplx brute_force_identity_quad(const ComplexMatrix& u) {
    const std::size_t d = 2, n = 4;
    auto at = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return u(i * d + j, k * d + l);
    };
    cplx acc = 0.0;
    std::size_t total = 1;
    for (std::size_t t = 0; t < 4 * n; ++t) total *= d;
    std::vector<std::size_t> iv(n), jv(n), kv(n), lv(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (auto* vec : {&iv, &jv, &kv, &lv})
            for (std::size_t t = 0; t < n; ++t) {
                (*vec)[t] = rem % d;
                rem /= d;
            }
        cplx term = 1.0;
        for (std::size_t t = 0; t < n && term != cplx(0.0); ++t)
            term *= at(iv[t], jv[t], kv[t], lv[t]);
        for (std::size_t t = 0; t < n && term != cplx(0.0); ++t)
            term *= std::conj(at(iv[t], jv[t], kv[t], lv[t]));
        acc += term;
    }
    return acc;
}

}  // namespace

int main() {
    Runner r;

    r.run("C01 MOLS 2-unitaries at d=3,4,5,7", [](std::string& detail) {
        for (std::size_t d : {3, 4, 5, 7}) {
            const auto p = first_mols_gate(d);
            const auto two = is_2unitary(p, 1e-12);
            const double ep = entangling_power(p);
            if (!(two.max_residual() < 1e-12 && std::abs(ep - 1.0) < 1e-12)) {
                detail = "d=" + std::to_string(d) + " residual " +
                         std::to_string(two.max_residual()) + " e_p " + std::to_string(ep);
                return false;
            }
        }
        return true;
    });

    r.run("C02 canonical values at d=2,3,4", [](std::string& detail) {
        for (std::size_t d : {2, 3, 4}) {
            const auto id = ComplexMatrix::identity(d * d);
            const auto s = swap_matrix(d);
            const bool ok = std::abs(entangling_power(id)) < 1e-12 &&
                            std::abs(entangling_power(s)) < 1e-12 &&
                            std::abs(gate_typicality(id)) < 1e-12 &&
                            std::abs(gate_typicality(s) - 1.0) < 1e-12 &&
                            std::abs(op_entanglement(s) - (1.0 - 1.0 / (d * d))) < 1e-12;
            if (!ok) {
                detail = "failure at d=" + std::to_string(d);
                return false;
            }
        }
        return true;
    });

    r.run("C03 MUB coherifications at d=3,5,7 + tristochasticity biconditional",
          [](std::string& detail) {
              for (std::size_t d : {3, 5, 7}) {
                  const auto a = cyclic_tensor(d);
                  const auto u = build_unitary(a, mub_bases(d));
                  const double want = 1.0 - 2.0 / double(d * d + d);
                  if (std::abs(entangling_power(u) - want) >= 1e-10 ||
                      std::abs(gate_typicality(u) - 0.5) >= 1e-10) {
                      detail = "MUB values off at d=" + std::to_string(d);
                      return false;
                  }
                  // e_p < 1 must go with a failed certificate
                  if (is_tristochastic_channel(u, a, 1e-10).is_tristochastic) {
                      detail = "MUB wrongly certified tristochastic at d=" + std::to_string(d);
                      return false;
                  }
              }
              // e_p = 1 must go with a passing certificate
              const auto squares = mols(3);
              const auto p9 = perm_2unitary_from_mols(squares[1], squares[0]);
              if (!is_tristochastic_channel(p9, tensor_from_square(squares[1]), 1e-10)
                       .is_tristochastic) {
                  detail = "P9 failed the tristochasticity certificate";
                  return false;
              }
              return true;
          });

    r.run("C04 coherification bounds + ensemble mean at d=3 (10^3 draws)",
          [](std::string& detail) {
              const std::size_t d = 3;
              const auto a = cyclic_tensor(d);
              Rng master(41);
              const std::size_t n = 1000;
              double sum = 0.0, sum2 = 0.0;
              const double es = 1.0 - 1.0 / double(d * d);
              for (std::size_t i = 0; i < n; ++i) {
                  Rng rr = master.child(i);
                  const auto b = BasisFamily::random(d, rr);
                  const auto cf = coherification_entanglements(a, b);
                  const double ep = (cf.e_choi_u + cf.e_choi_us - es) / es;
                  const double gt = (cf.e_choi_u - cf.e_choi_us + es) / (2.0 * es);
                  if (ep < 0.75 - 1e-10 || ep > 1.0 + 1e-10 || gt < 0.375 - 1e-10 ||
                      gt > 0.625 + 1e-10) {
                      detail = "bounds violated at draw " + std::to_string(i);
                      return false;
                  }
                  sum += ep;
                  sum2 += ep * ep;
              }
              const double mean = sum / n;
              const double se = std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
              if (std::abs(mean - 5.0 / 6.0) >= 3.0 * se) {
                  detail = "ensemble mean " + std::to_string(mean) + " se " + std::to_string(se);
                  return false;
              }
              // extremal constructions attain the lower bound exactly
              const auto u1 = build_unitary(a, BasisFamily::computational(d));
              BasisFamily ft;
              ft.d = d;
              ft.v.assign(d, ComplexMatrix(d, d));
              for (std::size_t k = 0; k < d; ++k)
                  for (std::size_t l = 0; l < d; ++l)
                      for (std::size_t i = 0; i < d; ++i) ft.v[k](l, i) = double(a.at3(k, l, i));
              const auto u2 = build_unitary(a, ft);
              if (std::abs(entangling_power(u1) - 0.75) >= 1e-12 ||
                  std::abs(entangling_power(u2) - 0.75) >= 1e-12) {
                  detail = "extremal e_p not 3/4";
                  return false;
              }
              return true;
          });

    r.run("C05 Monte Carlo matches the closed formula (10 gates, 10^4 samples)",
          [](std::string& detail) {
              Rng master(7);
              for (int g = 0; g < 10; ++g) {
                  Rng rr = master.child(g);
                  const auto u = haar_unitary(9, rr);
                  const double closed = entangling_power(u);
                  const auto est = ep_monte_carlo(u, 10000, 1000 + g);
                  if (std::abs(est.mean - closed) >= 3.0 * est.stderr_) {
                      detail = "gate " + std::to_string(g) + ": " + std::to_string(est.mean) +
                               " vs " + std::to_string(closed);
                      return false;
                  }
              }
              return true;
          });

    r.run("C06 U81: 100 draws 2-unitary, permutation limits, coherence table",
          [](std::string& detail) {
              for (int s = 0; s < 100; ++s) {
                  if (!is_2unitary(build_u81(U81Params::random(s)), 1e-9).is_2unitary) {
                      detail = "draw " + std::to_string(s) + " failed 2-unitarity";
                      return false;
                  }
              }
              const auto up = build_u81(U81Params::permutation_point());
              for (const auto& v : up.data()) {
                  const double a = std::abs(v);
                  if (std::min(a, std::abs(a - 1.0)) > 1e-12) {
                      detail = "permutation limit not 0/1";
                      return false;
                  }
              }
              const auto u = build_u81(U81Params::symmetric_point());
              const auto f2 = kron(fourier_matrix(9), fourier_matrix(9));
              const bool table =
                  std::abs(s_alpha_unitary(u, 0.0) - 7.0 / 3.0) < 1e-12 &&
                  std::abs(s_alpha_unitary(u, 2.0) - 5.0 / 9.0) < 1e-12 &&
                  std::abs(s_alpha_unitary(u, kAlphaInf) -
                           (3.0 + 2.0 * std::sqrt(3.0)) / 9.0) < 1e-12 &&
                  std::abs(s_alpha_unitary(matmul(f2, u), 2.0) - 5.0 / 729.0) < 1e-12;
              if (!table) {
                  detail = "symmetric-point coherence table mismatch";
                  return false;
              }
              return true;
          });

    r.run("C07 d=6 candidate: e_p = (208+sqrt(3))/210, real orthogonal",
          [](std::string& detail) {
              const auto u = build_d6_candidate();
              for (const auto& v : u.data())
                  if (v.imag() != 0.0) {
                      detail = "complex entry";
                      return false;
                  }
              if (matmul(u, u.transpose()).max_abs_diff(ComplexMatrix::identity(36)) >= 1e-12) {
                  detail = "not orthogonal";
                  return false;
              }
              const double ep = entangling_power(u);
              if (std::abs(ep - d6_candidate_ep_exact()) >= 1e-12) {
                  detail = "e_p = " + std::to_string(ep);
                  return false;
              }
              return true;
          });

    static U49SearchOutcome u49_outcome;  // reused by C13/C14
    static bool u49_ok = false;
    r.run("C08 Sinkhorn d=7 cyclic ansatz: certified family member in 20 restarts",
          [](std::string& detail) {
              u49_outcome = u49_ansatz_search(1, 20);
              const auto& c = u49_outcome.certificate;
              u49_ok = c.certified();
              detail = "residual " + std::to_string(c.residual) + ", S2 " +
                       std::to_string(c.s2) + ", invariant " + std::to_string(c.invariant) +
                       ", restarts " + std::to_string(c.restarts_used);
              return u49_ok;
          });

    r.run("C09 invariant baselines: P49 -> 343 (integer path), identity quad = 256 at d=2",
          [](std::string& detail) {
              const auto p49 = first_mols_gate(7);
              const long long count = local_invariant_permutation(p49, klein_quadruple());
              if (7 * count != 343) {
                  detail = "7 * count = " + std::to_string(7 * count);
                  return false;
              }
              Rng rng(12);
              const auto u = haar_unitary(4, rng);
              const cplx direct = local_invariant(u, PermQuadruple::identity(4));
              const cplx brute = brute_force_identity_quad(u);
              if (std::abs(direct - cplx(256.0)) >= 1e-9 || std::abs(direct - brute) >= 1e-9) {
                  detail = "identity quadruple mismatch";
                  return false;
              }
              return true;
          });

    r.run("C10 P16: circuit equality, magic basis, rank theorem saturation",
          [](std::string& detail) {
              const auto p = build_p16();
              if (circuit_to_unitary(p16_circuit()).max_abs_diff(p) != 0.0) {
                  detail = "circuit differs from the matrix";
                  return false;
              }
              const auto rep = verify_basis_mapping(p);
              if (rep.gram_residual >= 1e-14 || rep.max_second_schmidt >= 1e-12 ||
                  !rep.rows_map_to_basis) {
                  detail = "magic basis mapping failed";
                  return false;
              }
              for (int m = 1; m <= 4; ++m)
                  for (int n = 1; n <= 4; ++n) {
                      const int got = rank_theorem_check(p, m, n, 100, 10 * m + n);
                      if (got > std::min(m, n)) {
                          detail = "rank bound violated at m=" + std::to_string(m) +
                                   " n=" + std::to_string(n);
                          return false;
                      }
                      if (got != std::min(m, n)) {
                          detail = "saturation missed at m=" + std::to_string(m) +
                                   " n=" + std::to_string(n);
                          return false;
                      }
                  }
              return true;
          });

    r.run("C11 multipartite: U64 from three orthogonal cubes, C2 values",
          [](std::string& detail) {
              const auto cubes = latin_hypercubes(4, 3, 3);
              if (!all_mutually_orthogonal(cubes)) {
                  detail = "cubes not mutually orthogonal";
                  return false;
              }
              const auto u64 = multipartite_unitary_from_hypercubes(cubes);
              const double mep = multipartite_ep(u64, 4, 4);
              if (std::abs(mep - 1.0) >= 1e-10) {
                  detail = "multipartite e_p = " + std::to_string(mep);
                  return false;
              }
              const auto a4 = tensor_from_hypercube(cubes[0]);
              // the three-cube unitary is a coherification of its own tensor
              // with product-basis vectors; probe multistochasticity directly
              if (!is_multistochastic_channel(u64, a4, 1e-10, 50, 3).is_multistochastic) {
                  detail = "multistochasticity probe failed";
                  return false;
              }
              // C2 of optimal coherifications: (d,m) in {(2,3),(3,3),(4,3),(2,4)}
              Rng rng(8);
              for (std::size_t d : {2, 3, 4}) {
                  const auto a = cyclic_tensor(d);
                  const auto u = build_unitary(a, BasisFamily::random(d, rng));
                  const double c2 = c2_coherence(dynamical_matrix(u, a));
                  if (std::abs(c2 - (d - 1.0) / (d * d)) >= 1e-12) {
                      detail = "C2 mismatch at (d,3), d=" + std::to_string(d);
                      return false;
                  }
              }
              {
                  // (d, m) = (2, 4): optimal coherification of the parity tensor
                  const auto cubes2 = latin_hypercubes(2, 3, 1);
                  const auto a = tensor_from_hypercube(cubes2[0]);
                  Rng rr(5);
                  const auto mb = MultiBasisFamily::random(2, 4, rr);
                  const auto u = multistoch_build(a, mb);
                  // dynamical matrix for arity-4 tensors via the m=4 overlap form
                  double all = 0.0, diag = 0.0;
                  for (std::size_t i1 = 0; i1 < 2; ++i1)
                      for (std::size_t p = 0; p < 4; ++p)
                          for (std::size_t i1b = 0; i1b < 2; ++i1b)
                              for (std::size_t q = 0; q < 4; ++q) {
                                  const cplx g = inner(mb.vectors[i1][p], mb.vectors[i1b][q]);
                                  all += std::norm(g);
                                  if (i1 == i1b && p == q) diag += std::norm(g);
                              }
                  const double c2 = (all - diag) / std::pow(2.0, 2.0 * 3.0);
                  if (std::abs(c2 - 1.0 / 8.0) >= 1e-12) {
                      detail = "C2 mismatch at (2,4): " + std::to_string(c2);
                      return false;
                  }
              }
              return true;
          });

    r.run("C12 KS distinguisher at n=10^4 + null calibration", [](std::string& detail) {
        const auto u81 = build_u81(U81Params::random(99));
        const auto squares = mols(9);
        const auto p81 = perm_2unitary_from_mols(squares[0], squares[1]);
        auto su = sample_entanglement(u81, 10000, 501);
        auto sp = sample_entanglement(p81, 10000, 502);
        const auto ks = ks_two_sample(su.values, sp.values);
        if (!(ks.p_underflow || ks.p_value < 1e-6)) {
            detail = "separation p = " + std::to_string(ks.p_value);
            return false;
        }
        int rejections = 0;
        for (int t = 0; t < 100; ++t) {
            const auto a = sample_entanglement(p81, 10000, 9000 + 2 * t);
            const auto b = sample_entanglement(p81, 10000, 9001 + 2 * t);
            if (ks_two_sample(a.values, b.values).p_value < 0.05) ++rejections;
        }
        detail = "null rejections " + std::to_string(rejections) + "/100";
        return rejections >= 2 && rejections <= 9;
    });

    r.run("C13 coherence ranges: P9 probe endpoints, U49 containment",
          [](std::string& detail) {
              const auto squares = mols(3);
              const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
              const auto rp = coherence_range_estimate(p9, 2.0, 0, 1);
              if (std::abs(rp.lo_estimate - 1.0 / 81.0) >= 1e-12 ||
                  std::abs(rp.hi_estimate - 1.0) >= 1e-12) {
                  detail = "P9 probes missed the endpoints";
                  return false;
              }
              if (!u49_ok) {
                  detail = "no certified U49 from C08";
                  return false;
              }
              const auto u49 = build_unitary(cyclic_tensor(7), u49_outcome.bases);
              const auto ru = coherence_range_estimate(u49, 2.0, 2000, 5);
              if (!(ru.lo_estimate <= 0.042 + 1e-9 &&
                    ru.hi_estimate >= 115.0 / 343.0 - 1e-9)) {
                  detail = "U49 estimate [" + std::to_string(ru.lo_estimate) + ", " +
                           std::to_string(ru.hi_estimate) + "]";
                  return false;
              }
              return true;
          });

    r.run("C14 AME(4,d) marginals from P9, U81 and the found U49",
          [](std::string& detail) {
              const auto squares = mols(3);
              const auto p9 = perm_2unitary_from_mols(squares[0], squares[1]);
              if (ame_worst_marginal_deviation(ame_state(p9), 3) >= 1e-10) {
                  detail = "P9 marginals";
                  return false;
              }
              const auto u81 = build_u81(U81Params::random(42));
              if (ame_worst_marginal_deviation(ame_state(u81), 9) >= 1e-10) {
                  detail = "U81 marginals";
                  return false;
              }
              if (!u49_ok) {
                  detail = "no certified U49 from C08";
                  return false;
              }
              const auto u49 = build_unitary(cyclic_tensor(7), u49_outcome.bases);
              if (ame_worst_marginal_deviation(ame_state(u49), 7) >= 1e-10) {
                  detail = "U49 marginals";
                  return false;
              }
              return true;
          });

    if (r.failures == 0) {
        std::printf("acceptance: all 14 criteria PASS\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", r.failures);
    return 1;
}
