#include "qconv/latin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace qconv {

namespace {

// irreducible polynomial coefficients (without the leading term), low degree
// first, for the fields used here
std::vector<std::size_t> irreducible_tail(std::size_t p, std::size_t k) {
    if (p == 2 && k == 2) return {1, 1};     // x^2 + x + 1
    if (p == 2 && k == 3) return {1, 1, 0};  // x^3 + x + 1
    if (p == 3 && k == 2) return {1, 0};     // x^2 + 1
    if (p == 2 && k == 4) return {1, 1, 0, 0};  // x^4 + x + 1
    throw NoConstructionError("no irreducible polynomial table for p=" + std::to_string(p) +
                              " k=" + std::to_string(k));
}

std::vector<std::size_t> digits(std::size_t x, std::size_t p, std::size_t k) {
    std::vector<std::size_t> d(k);
    for (std::size_t i = 0; i < k; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

std::size_t undigits(const std::vector<std::size_t>& d, std::size_t p) {
    std::size_t x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
    return x;
}

}  // namespace

bool GaloisField::is_prime_power(std::size_t q, std::size_t* p_out, std::size_t* k_out) {
    if (q < 2) return false;
    std::size_t p = 0;
    for (std::size_t f = 2; f * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    if (p == 0) p = q;  // q itself prime
    std::size_t k = 0, x = q;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    if (x != 1) return false;
    if (p_out) *p_out = p;
    if (k_out) *k_out = k;
    return true;
}

GaloisField::GaloisField(std::size_t q) : q_(q) {
    std::size_t p = 0, k = 0;
    if (!is_prime_power(q, &p, &k))
        throw NoConstructionError("GF(" + std::to_string(q) + "): not a prime power");
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    if (k == 1) {
        for (std::size_t a = 0; a < q; ++a) {
            neg_[a] = (q - a) % q;
            for (std::size_t b = 0; b < q; ++b) {
                add_[a * q + b] = (a + b) % q;
                mul_[a * q + b] = (a * b) % q;
            }
        }
        return;
    }
    const auto tail = irreducible_tail(p, k);
    for (std::size_t a = 0; a < q; ++a) {
        const auto da = digits(a, p, k);
        std::vector<std::size_t> dn(k);
        for (std::size_t i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
        neg_[a] = undigits(dn, p);
        for (std::size_t b = 0; b < q; ++b) {
            const auto db = digits(b, p, k);
            std::vector<std::size_t> ds(k);
            for (std::size_t i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
            add_[a * q + b] = undigits(ds, p);
            // polynomial product reduced by the irreducible
            std::vector<std::size_t> prod(2 * k - 1, 0);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            for (std::size_t deg = 2 * k - 2; deg >= k; --deg) {
                const std::size_t c = prod[deg];
                if (c == 0) continue;
                prod[deg] = 0;
                // x^k = -(tail), so x^deg = -(tail) * x^{deg-k}
                for (std::size_t i = 0; i < k; ++i)
                    prod[deg - k + i] = (prod[deg - k + i] + c * (p - tail[i]) % p * 1) % p;
            }
            prod.resize(k);
            mul_[a * q + b] = undigits(prod, p);
        }
    }
}

std::size_t GaloisField::inv(std::size_t a) const {
    if (a == 0) throw SingularError("GF inverse of zero");
    for (std::size_t b = 1; b < q_; ++b)
        if (mul(a, b) == 1) return b;
    throw SingularError("GF element without inverse (table corrupt)");
}

bool LatinSquare::valid() const {
    if (cells.size() != d * d) return false;
    for (std::size_t r = 0; r < d; ++r) {
        std::vector<bool> seen_row(d, false), seen_col(d, false);
        for (std::size_t c = 0; c < d; ++c) {
            const int vr = at(r, c), vc = at(c, r);
            if (vr < 1 || vr > static_cast<int>(d) || vc < 1 || vc > static_cast<int>(d))
                return false;
            if (seen_row[vr - 1] || seen_col[vc - 1]) return false;
            seen_row[vr - 1] = seen_col[vc - 1] = true;
        }
    }
    return true;
}

std::size_t LatinHypercube::flat(const std::vector<std::size_t>& idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < arity; ++i) f = f * d + idx[i];
    return f;
}

bool LatinHypercube::valid() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) n *= d;
    if (cells.size() != n) return false;
    // every axis-aligned line must be a permutation of 1..d
    for (std::size_t axis = 0; axis < arity; ++axis) {
        std::size_t stride = 1;
        for (std::size_t i = axis + 1; i < arity; ++i) stride *= d;
        for (std::size_t base = 0; base < n; ++base) {
            if ((base / stride) % d != 0) continue;
            std::vector<bool> seen(d, false);
            for (std::size_t v = 0; v < d; ++v) {
                const int s = cells[base + v * stride];
                if (s < 1 || s > static_cast<int>(d) || seen[s - 1]) return false;
                seen[s - 1] = true;
            }
        }
    }
    return true;
}

LatinSquare LatinHypercube::as_square() const {
    if (arity != 2) throw DimensionError("as_square on a hypercube of arity != 2");
    return LatinSquare{d, cells};
}

LatinHypercube LatinHypercube::from_square(const LatinSquare& s) {
    return LatinHypercube{s.d, 2, s.cells};
}

std::size_t PermutationTensor::flat(const std::vector<std::size_t>& idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < arity; ++i) f = f * d + idx[i];
    return f;
}

bool PermutationTensor::valid() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) n *= d;
    if (entries.size() != n) return false;
    for (const auto e : entries)
        if (e > 1) return false;
    for (std::size_t axis = 0; axis < arity; ++axis) {
        std::size_t stride = 1;
        for (std::size_t i = axis + 1; i < arity; ++i) stride *= d;
        for (std::size_t base = 0; base < n; ++base) {
            if ((base / stride) % d != 0) continue;
            int sum = 0;
            for (std::size_t v = 0; v < d; ++v) sum += entries[base + v * stride];
            if (sum != 1) return false;
        }
    }
    return true;
}

std::size_t PermutationTensor::j_of(std::size_t k, std::size_t l) const {
    for (std::size_t j = 0; j < d; ++j)
        if (at3(k, l, j)) return j;
    throw StructureError("permutation tensor has empty (k,l) line");
}

std::size_t PermutationTensor::k_of(std::size_t l, std::size_t j) const {
    for (std::size_t k = 0; k < d; ++k)
        if (at3(k, l, j)) return k;
    throw StructureError("permutation tensor has empty (l,j) line");
}

std::size_t PermutationTensor::l_of(std::size_t k, std::size_t j) const {
    for (std::size_t l = 0; l < d; ++l)
        if (at3(k, l, j)) return l;
    throw StructureError("permutation tensor has empty (k,j) line");
}

PermutationTensor cyclic_tensor(std::size_t d) {
    PermutationTensor a;
    a.d = d;
    a.arity = 3;
    a.entries.assign(d * d * d, 0);
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < d; ++j) a.entries[(((l + j) % d) * d + l) * d + j] = 1;
    return a;
}

std::vector<LatinSquare> mols(std::size_t d) {
    if (d == 6)
        throw NoConstructionError("d=6: no pair of orthogonal Latin squares exists");
    if (d < 3 || !GaloisField::is_prime_power(d))
        throw NoConstructionError("mols: order " + std::to_string(d) +
                                  " is not a prime power >= 3");
    GaloisField gf(d);
    std::vector<LatinSquare> out;
    for (std::size_t alpha = 1; alpha < d; ++alpha) {
        LatinSquare sq;
        sq.d = d;
        sq.cells.resize(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                sq.at(i, j) = static_cast<int>(gf.add(gf.mul(alpha, i), j)) + 1;
        out.push_back(std::move(sq));
    }
    return out;
}

bool are_orthogonal(const LatinSquare& l, const LatinSquare& m) {
    if (l.d != m.d) throw DimensionError("orthogonality check: order mismatch");
    std::set<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < l.d * l.d; ++i) pairs.emplace(l.cells[i], m.cells[i]);
    return pairs.size() == l.d * l.d;
}

PermutationTensor tensor_from_square(const LatinSquare& l) {
    if (!l.valid()) throw StructureError("tensor_from_square: invalid Latin square");
    PermutationTensor a;
    a.d = l.d;
    a.arity = 3;
    a.entries.assign(l.d * l.d * l.d, 0);
    for (std::size_t r = 0; r < l.d; ++r)
        for (std::size_t c = 0; c < l.d; ++c) {
            const std::size_t s = static_cast<std::size_t>(l.at(r, c) - 1);
            a.entries[(s * l.d + r) * l.d + c] = 1;
        }
    return a;
}

LatinSquare square_from_tensor(const PermutationTensor& a) {
    if (a.arity != 3) throw DimensionError("square_from_tensor: arity must be 3");
    LatinSquare l;
    l.d = a.d;
    l.cells.resize(a.d * a.d);
    for (std::size_t r = 0; r < a.d; ++r)
        for (std::size_t c = 0; c < a.d; ++c) l.at(r, c) = static_cast<int>(a.k_of(r, c)) + 1;
    return l;
}

PermutationTensor tensor_from_hypercube(const LatinHypercube& l) {
    if (!l.valid()) throw StructureError("tensor_from_hypercube: invalid hypercube");
    PermutationTensor a;
    a.d = l.d;
    a.arity = l.arity + 1;
    std::size_t n = 1;
    for (std::size_t i = 0; i < a.arity; ++i) n *= a.d;
    a.entries.assign(n, 0);
    const std::size_t block = n / a.d;  // stride of the first index
    for (std::size_t f = 0; f < block; ++f) {
        const std::size_t s = static_cast<std::size_t>(l.cells[f] - 1);
        a.entries[s * block + f] = 1;
    }
    return a;
}

LatinHypercube hypercube_from_tensor(const PermutationTensor& a) {
    if (a.arity < 2) throw DimensionError("hypercube_from_tensor: arity must be >= 2");
    LatinHypercube l;
    l.d = a.d;
    l.arity = a.arity - 1;
    std::size_t block = 1;
    for (std::size_t i = 0; i < l.arity; ++i) block *= a.d;
    l.cells.assign(block, 0);
    for (std::size_t f = 0; f < block; ++f) {
        for (std::size_t s = 0; s < a.d; ++s)
            if (a.entries[s * block + f]) {
                l.cells[f] = static_cast<int>(s) + 1;
                break;
            }
        if (l.cells[f] == 0) throw StructureError("hypercube_from_tensor: empty symbol line");
    }
    return l;
}

ComplexMatrix perm_2unitary_from_mols(const LatinSquare& l, const LatinSquare& m) {
    if (!are_orthogonal(l, m))
        throw OrthogonalityError("perm_2unitary_from_mols: squares are not orthogonal");
    const std::size_t d = l.d;
    ComplexMatrix p(d * d, d * d);
    for (std::size_t row = 0; row < d; ++row)
        for (std::size_t col = 0; col < d; ++col) {
            const std::size_t a = static_cast<std::size_t>(l.at(row, col) - 1);
            const std::size_t b = static_cast<std::size_t>(m.at(row, col) - 1);
            p(a * d + b, row * d + col) = 1.0;
        }
    return p;
}

namespace {

// linear form over GF(d): cells(i_2..i_m) = sum_t coeff[t] * i_{t+2}
LatinHypercube hypercube_from_form(const GaloisField& gf, const std::vector<std::size_t>& coeff) {
    LatinHypercube h;
    h.d = gf.size();
    h.arity = coeff.size();
    std::size_t n = 1;
    for (std::size_t i = 0; i < h.arity; ++i) n *= h.d;
    h.cells.resize(n);
    std::vector<std::size_t> idx(h.arity, 0);
    for (std::size_t f = 0; f < n; ++f) {
        std::size_t rem = f, v = 0;
        for (std::size_t i = h.arity; i-- > 0;) {
            idx[i] = rem % h.d;
            rem /= h.d;
        }
        for (std::size_t i = 0; i < h.arity; ++i) v = gf.add(v, gf.mul(coeff[i], idx[i]));
        h.cells[f] = static_cast<int>(v) + 1;
    }
    return h;
}

// Two linear forms give orthogonal hypercubes iff every 2x2 coefficient minor
// is nonsingular.
bool forms_orthogonal(const GaloisField& gf, const std::vector<std::size_t>& a,
                      const std::vector<std::size_t>& b) {
    const std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
            const std::size_t det =
                gf.add(gf.mul(a[s], b[t]), gf.neg(gf.mul(a[t], b[s])));
            if (det == 0) return false;
        }
    return true;
}

bool clique_search(const GaloisField& gf, const std::vector<std::vector<std::size_t>>& cand,
                   std::size_t want, std::size_t start, std::vector<std::size_t>& picked) {
    if (picked.size() == want) return true;
    for (std::size_t i = start; i < cand.size(); ++i) {
        bool ok = true;
        for (std::size_t p : picked)
            if (!forms_orthogonal(gf, cand[p], cand[i])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        picked.push_back(i);
        if (clique_search(gf, cand, want, i + 1, picked)) return true;
        picked.pop_back();
    }
    return false;
}

}  // namespace

std::vector<LatinHypercube> latin_hypercubes(std::size_t d, std::size_t arity,
                                             std::size_t how_many) {
    if (arity < 2) throw DimensionError("latin_hypercubes: arity must be >= 2");
    if (!GaloisField::is_prime_power(d))
        throw NoConstructionError("latin_hypercubes: order " + std::to_string(d) +
                                  " is not a prime power");
    if (how_many == 0) return {};
    GaloisField gf(d);

    // Candidate coefficient vectors, all entries nonzero, first entry 1
    // (scaling only relabels symbols). The alpha-power family
    // (alpha, 1, alpha^2, ...) is listed first so small requests return it.
    std::vector<std::vector<std::size_t>> cand;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t alpha = 1; alpha < d; ++alpha) {
        std::vector<std::size_t> c(arity);
        c[0] = alpha;
        if (arity > 1) c[1] = 1;
        std::size_t pw = alpha;
        for (std::size_t t = 2; t < arity; ++t) {
            pw = gf.mul(pw, alpha);
            c[t] = pw;
        }
        const std::size_t s = gf.inv(c[0]);
        for (auto& x : c) x = gf.mul(s, x);
        if (std::find(c.begin(), c.end(), 0u) == c.end() && seen.insert(c).second)
            cand.push_back(c);
    }
    std::vector<std::size_t> c(arity, 1);
    while (true) {
        if (seen.insert(c).second) cand.push_back(c);
        std::size_t t = arity;
        while (t-- > 1) {
            if (++c[t] < d) break;
            c[t] = 1;
        }
        if (t == 0) break;
    }

    std::vector<std::size_t> picked;
    if (!clique_search(gf, cand, how_many, 0, picked))
        throw NoConstructionError("latin_hypercubes: no set of " + std::to_string(how_many) +
                                  " mutually orthogonal linear-form hypercubes at d=" +
                                  std::to_string(d) + ", arity=" + std::to_string(arity));
    std::vector<LatinHypercube> out;
    for (std::size_t i : picked) out.push_back(hypercube_from_form(gf, cand[i]));
    return out;
}

bool are_orthogonal_hypercubes(const LatinHypercube& a, const LatinHypercube& b) {
    if (a.d != b.d || a.arity != b.arity)
        throw DimensionError("hypercube orthogonality: shape mismatch");
    if (a.arity == 2) return are_orthogonal(a.as_square(), b.as_square());
    const std::size_t d = a.d;
    std::size_t n = 1;
    for (std::size_t i = 0; i < a.arity; ++i) n *= d;
    // every aligned pair of 2-index subsquares (all other indices fixed)
    for (std::size_t ax1 = 0; ax1 < a.arity; ++ax1)
        for (std::size_t ax2 = ax1 + 1; ax2 < a.arity; ++ax2) {
            std::size_t s1 = 1, s2 = 1;
            for (std::size_t i = ax1 + 1; i < a.arity; ++i) s1 *= d;
            for (std::size_t i = ax2 + 1; i < a.arity; ++i) s2 *= d;
            for (std::size_t base = 0; base < n; ++base) {
                if ((base / s1) % d != 0 || (base / s2) % d != 0) continue;
                std::set<std::pair<int, int>> pairs;
                for (std::size_t v1 = 0; v1 < d; ++v1)
                    for (std::size_t v2 = 0; v2 < d; ++v2) {
                        const std::size_t f = base + v1 * s1 + v2 * s2;
                        pairs.emplace(a.cells[f], b.cells[f]);
                    }
                if (pairs.size() != d * d) return false;
            }
        }
    return true;
}

bool all_mutually_orthogonal(const std::vector<LatinHypercube>& cubes) {
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (std::size_t j = i + 1; j < cubes.size(); ++j)
            if (!are_orthogonal_hypercubes(cubes[i], cubes[j])) return false;
    return true;
}

ComplexMatrix multipartite_unitary_from_hypercubes(const std::vector<LatinHypercube>& cubes) {
    if (cubes.empty()) throw DimensionError("need at least one hypercube");
    const std::size_t d = cubes[0].d;
    const std::size_t m1 = cubes.size();  // m-1 parties
    for (const auto& c : cubes)
        if (c.d != d || c.arity != m1)
            throw DimensionError("hypercubes must share order and have arity = count");
    if (!all_mutually_orthogonal(cubes))
        throw OrthogonalityError("hypercubes are not mutually orthogonal");
    std::size_t n = 1;
    for (std::size_t i = 0; i < m1; ++i) n *= d;
    ComplexMatrix u(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t row = 0;
        for (std::size_t k = 0; k < m1; ++k)
            row = row * d + static_cast<std::size_t>(cubes[k].cells[col] - 1);
        u(row, col) = 1.0;
    }
    return u;
}

std::vector<LatinHypercube> oa_transform(const std::vector<LatinHypercube>& cubes) {
    if (cubes.empty()) throw DimensionError("oa_transform: empty input");
    const std::size_t d = cubes[0].d;
    const std::size_t m1 = cubes.size();
    if (!all_mutually_orthogonal(cubes))
        throw OrthogonalityError("oa_transform: hypercubes are not mutually orthogonal");
    std::size_t n = 1;
    for (std::size_t i = 0; i < m1; ++i) n *= d;
    // OA rows (i_2..i_m, L^(1)..L^(m-1)); after moving the symbol block to the
    // front the new front coordinates must cover all tuples exactly once.
    std::vector<LatinHypercube> out(m1);
    for (auto& h : out) {
        h.d = d;
        h.arity = m1;
        h.cells.assign(n, 0);
    }
    for (std::size_t f = 0; f < n; ++f) {
        std::size_t front = 0;
        for (std::size_t k = 0; k < m1; ++k)
            front = front * d + static_cast<std::size_t>(cubes[k].cells[f] - 1);
        std::size_t rem = f;
        std::vector<std::size_t> idx(m1);
        for (std::size_t i = m1; i-- > 0;) {
            idx[i] = rem % d;
            rem /= d;
        }
        for (std::size_t k = 0; k < m1; ++k) {
            if (out[k].cells[front] != 0)
                throw OrthogonalityError("oa_transform: front coordinates collide");
            out[k].cells[front] = static_cast<int>(idx[k]) + 1;
        }
    }
    for (auto& h : out)
        if (!h.valid()) throw StructureError("oa_transform produced an invalid hypercube");
    return out;
}

std::size_t oa_min_distance(const std::vector<LatinHypercube>& cubes) {
    const std::size_t d = cubes[0].d;
    const std::size_t m1 = cubes.size();
    std::size_t n = 1;
    for (std::size_t i = 0; i < m1; ++i) n *= d;
    const std::size_t width = 2 * m1;
    std::vector<std::vector<int>> rows(n, std::vector<int>(width));
    for (std::size_t f = 0; f < n; ++f) {
        std::size_t rem = f;
        for (std::size_t i = m1; i-- > 0;) {
            rows[f][i] = static_cast<int>(rem % d);
            rem /= d;
        }
        for (std::size_t k = 0; k < m1; ++k) rows[f][m1 + k] = cubes[k].cells[f] - 1;
    }
    std::size_t best = width;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            std::size_t dist = 0;
            for (std::size_t w = 0; w < width; ++w)
                if (rows[a][w] != rows[b][w]) ++dist;
            best = std::min(best, dist);
        }
    return best;
}

}  // namespace qconv
