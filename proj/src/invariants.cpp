#include "qconv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qconv {

namespace {

std::vector<int> parse_perm(const std::string& text, std::size_t n_hint) {
    // "id" or cycle notation "(12)(34)"; entries are single digits 1..9
    if (text == "id" || text == "Id" || text == "ID") {
        std::vector<int> p(n_hint);
        for (std::size_t i = 0; i < n_hint; ++i) p[i] = static_cast<int>(i);
        return p;
    }
    std::size_t n = n_hint;
    for (char c : text)
        if (c >= '1' && c <= '9') n = std::max<std::size_t>(n, static_cast<std::size_t>(c - '0'));
    std::vector<int> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '(') throw ParseError("permutation: expected '(' in " + text);
        std::vector<int> cyc;
        ++pos;
        while (pos < text.size() && text[pos] != ')') {
            if (text[pos] >= '1' && text[pos] <= '9')
                cyc.push_back(text[pos] - '1');
            else if (text[pos] != ' ' && text[pos] != ',')
                throw ParseError("permutation: unexpected character in " + text);
            ++pos;
        }
        if (pos == text.size()) throw ParseError("permutation: unbalanced '(' in " + text);
        ++pos;
        for (std::size_t i = 0; i < cyc.size(); ++i)
            p[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
    return p;
}

bool is_perm(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

std::vector<int> invert(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

}  // namespace

PermQuadruple PermQuadruple::identity(std::size_t n) {
    PermQuadruple q;
    q.n = n;
    q.sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) q.sigma[i] = static_cast<int>(i);
    q.tau = q.rho = q.lambda = q.sigma;
    return q;
}

PermQuadruple PermQuadruple::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',' && (cur.empty() || cur.back() == ')' || cur == "id")) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw ParseError("quadruple must have four comma-separated permutations");
    std::size_t n = 1;
    std::vector<std::vector<int>> ps;
    for (const auto& s : parts) {
        auto p = parse_perm(s, 1);
        n = std::max(n, p.size());
        ps.push_back(std::move(p));
    }
    PermQuadruple q;
    q.n = n;
    for (auto& p : ps)
        while (p.size() < n) p.push_back(static_cast<int>(p.size()));
    q.sigma = ps[0];
    q.tau = ps[1];
    q.rho = ps[2];
    q.lambda = ps[3];
    q.require_valid();
    return q;
}

void PermQuadruple::require_valid() const {
    if (sigma.size() != n || tau.size() != n || rho.size() != n || lambda.size() != n)
        throw ParseError("quadruple component size mismatch");
    if (!is_perm(sigma) || !is_perm(tau) || !is_perm(rho) || !is_perm(lambda))
        throw ParseError("quadruple components must be bijections");
}

PermQuadruple klein_quadruple() { return PermQuadruple::parse("id,(12)(34),(13)(24),(14)(23)"); }

namespace {

// Streamed contraction. Conjugate factor s is paired with plain factor
// sigma(s) over the shared i index, producing
//   T_s(a, b | k_{sigma(s)}, k_{rho(s)}, l_{sigma(s)}, l_{lambda(s)})
// with a = j_{sigma(s)}, b = j_{tau(s)}. For fixed (k., l.) the j sum
// factorizes over the cycles of the map sigma(s) -> tau(s), each cycle
// contributing the trace of a product of d x d slices.
cplx invariant_streamed(const ComplexMatrix& u, const PermQuadruple& q) {
    const std::size_t d = bipartite_local_dim(u);
    const std::size_t n = q.n;

    // T_s stored as [kp][kr][lp][ll][a][b], kp = k_{sigma(s)}, kr = k_{rho(s)},
    // lp = l_{sigma(s)}, ll = l_{lambda(s)}
    const std::size_t slice = d * d;
    const std::size_t tsize = slice * d * d * d * d;
    std::vector<std::vector<cplx>> T(n, std::vector<cplx>(tsize, cplx(0.0)));
    std::vector<std::vector<unsigned char>> live(n,
        std::vector<unsigned char>(d * d * d * d, 0));
    for (std::size_t s = 0; s < n; ++s) {
        auto& t = T[s];
        auto& lv = live[s];
        for (std::size_t kp = 0; kp < d; ++kp)
            for (std::size_t kr = 0; kr < d; ++kr)
                for (std::size_t lp = 0; lp < d; ++lp)
                    for (std::size_t ll = 0; ll < d; ++ll) {
                        const std::size_t base =
                            (((kp * d + kr) * d + lp) * d + ll) * slice;
                        bool any = false;
                        for (std::size_t a = 0; a < d; ++a)
                            for (std::size_t b = 0; b < d; ++b) {
                                cplx acc = 0.0;
                                for (std::size_t i = 0; i < d; ++i)
                                    acc += u(i * d + a, kp * d + lp) *
                                           std::conj(u(i * d + b, kr * d + ll));
                                t[base + a * d + b] = acc;
                                if (std::norm(acc) > 1e-28) any = true;
                            }
                        lv[((kp * d + kr) * d + lp) * d + ll] = any ? 1 : 0;
                    }
    }

    // cycles of the j map: edge from node sigma(s) to node tau(s) carries T_s
    const auto sigma_inv = invert(q.sigma);
    std::vector<int> next(n), edge_of_node(n);
    for (std::size_t s = 0; s < n; ++s) {
        next[q.sigma[s]] = q.tau[s];
        edge_of_node[q.sigma[s]] = static_cast<int>(s);
    }
    std::vector<std::vector<int>> cycles;  // each = ordered list of edges s
    {
        std::vector<bool> used(n, false);
        for (std::size_t start = 0; start < n; ++start) {
            if (used[start]) continue;
            std::vector<int> cyc;
            std::size_t node = start;
            do {
                used[node] = true;
                cyc.push_back(edge_of_node[node]);
                node = static_cast<std::size_t>(next[node]);
            } while (node != start);
            cycles.push_back(std::move(cyc));
        }
    }

    // outer loop over (k_1..k_n, l_1..l_n)
    std::size_t outer = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) outer *= d;

    const long long total = static_cast<long long>(outer);
    cplx result = 0.0;
    double acc_re = 0.0, acc_im = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : acc_re, acc_im) \
    num_threads(max_threads())
#endif
    for (long long flat = 0; flat < total; ++flat) {
        std::size_t kk[8], lll[8];
        std::size_t rem = static_cast<std::size_t>(flat);
        for (std::size_t t = n; t-- > 0;) {
            lll[t] = rem % d;
            rem /= d;
        }
        for (std::size_t t = n; t-- > 0;) {
            kk[t] = rem % d;
            rem /= d;
        }
        // gather slice bases; skip if any T-slice is empty
        const cplx* sl[8];
        bool dead = false;
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t kp = kk[q.sigma[s]], kr = kk[q.rho[s]];
            const std::size_t lp = lll[q.sigma[s]], ll = lll[q.lambda[s]];
            const std::size_t key = ((kp * d + kr) * d + lp) * d + ll;
            if (!live[s][key]) {
                dead = true;
                break;
            }
            sl[s] = &T[s][key * slice];
        }
        if (dead) continue;
        cplx term = 1.0;
        // per-cycle trace of the product of slices, in cycle order
        static thread_local std::vector<cplx> work1, work2;
        for (const auto& cyc : cycles) {
            if (cyc.size() == 1) {
                const cplx* m = sl[cyc[0]];
                cplx tr = 0.0;
                for (std::size_t a = 0; a < d; ++a) tr += m[a * d + a];
                term *= tr;
            } else if (cyc.size() == 2) {
                const cplx* m1 = sl[cyc[0]];
                const cplx* m2 = sl[cyc[1]];
                cplx tr = 0.0;
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) tr += m1[a * d + b] * m2[b * d + a];
                term *= tr;
            } else {
                work1.assign(sl[cyc[0]], sl[cyc[0]] + slice);
                work2.assign(slice, cplx(0.0));
                for (std::size_t e = 1; e < cyc.size(); ++e) {
                    const cplx* m = sl[cyc[e]];
                    std::fill(work2.begin(), work2.end(), cplx(0.0));
                    for (std::size_t a = 0; a < d; ++a)
                        for (std::size_t p = 0; p < d; ++p) {
                            const cplx w = work1[a * d + p];
                            if (w == cplx(0.0)) continue;
                            for (std::size_t b = 0; b < d; ++b)
                                work2[a * d + b] += w * m[p * d + b];
                        }
                    std::swap(work1, work2);
                }
                cplx tr = 0.0;
                for (std::size_t a = 0; a < d; ++a) tr += work1[a * d + a];
                term *= tr;
            }
            if (term == cplx(0.0)) break;
        }
        acc_re += term.real();
        acc_im += term.imag();
    }
    result = cplx(acc_re, acc_im);
    return result;
}

}  // namespace

cplx local_invariant(const ComplexMatrix& u, const PermQuadruple& q, std::size_t budget) {
    q.require_valid();
    const std::size_t d = bipartite_local_dim(u);
    std::size_t outer = 1;
    for (std::size_t i = 0; i < 2 * q.n; ++i) {
        outer *= d;
        if (outer > budget)
            throw BudgetError("local_invariant: d^{2n} exceeds the evaluation budget");
    }
    return invariant_streamed(u, q);
}

cplx local_invariant_table_norm(const ComplexMatrix& u, const PermQuadruple& q,
                                std::size_t budget) {
    const std::size_t d = bipartite_local_dim(u);
    return static_cast<double>(d) * local_invariant(u, q, budget);
}

long long local_invariant_permutation(const ComplexMatrix& u, const PermQuadruple& q) {
    q.require_valid();
    const std::size_t d = bipartite_local_dim(u);
    const std::size_t n = q.n;
    // decode the permutation: column (k,l) -> row (K[k][l], L[k][l])
    std::vector<std::vector<int>> K(d, std::vector<int>(d, -1)), L = K;
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            int hit = -1;
            for (std::size_t r = 0; r < d * d; ++r) {
                const cplx v = u(r, k * d + l);
                if (v == cplx(0.0)) continue;
                if (v != cplx(1.0) || hit >= 0)
                    throw StructureError("integer invariant path needs a 0/1 permutation");
                hit = static_cast<int>(r);
            }
            if (hit < 0) throw StructureError("integer invariant path: empty column");
            K[k][l] = hit / static_cast<int>(d);
            L[k][l] = hit % static_cast<int>(d);
        }
    std::size_t outer = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) outer *= d;
    long long count = 0;
    const long long total = static_cast<long long>(outer);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count) num_threads(max_threads())
#endif
    for (long long flat = 0; flat < total; ++flat) {
        std::size_t kk[8], lll[8];
        std::size_t rem = static_cast<std::size_t>(flat);
        for (std::size_t t = n; t-- > 0;) {
            lll[t] = rem % d;
            rem /= d;
        }
        for (std::size_t t = n; t-- > 0;) {
            kk[t] = rem % d;
            rem /= d;
        }
        bool ok = true;
        for (std::size_t s = 0; s < n && ok; ++s) {
            const int kr = static_cast<int>(kk[q.rho[s]]);
            const int lr = static_cast<int>(lll[q.lambda[s]]);
            ok = K[kr][lr] == K[kk[q.sigma[s]]][lll[q.sigma[s]]] &&
                 L[kr][lr] == L[kk[q.tau[s]]][lll[q.tau[s]]];
        }
        if (ok) ++count;
    }
    return count;
}

}  // namespace qconv
