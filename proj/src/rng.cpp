#include "qconv/rng.hpp"

#include <cmath>

#include "qconv/linalg.hpp"

namespace qconv {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t sm64_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace

std::uint64_t Rng::mix_seed(std::uint64_t s) { return sm64_finalize(s + kGolden); }

Rng Rng::child(std::uint64_t i) const {
    Rng c(0);
    c.state_ = sm64_finalize(state_ ^ sm64_finalize(i * kGolden + 0x1234567899ABCDEFULL));
    return c;
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return sm64_finalize(state_);
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::uint64_t Rng::uniform_int(std::uint64_t n) {
    // Rejection sampling keeps the distribution exactly uniform.
    const std::uint64_t limit = n * (~0ULL / n);
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    double u1, u2;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    cached_ = r * std::sin(t);
    have_cached_ = true;
    return r * std::cos(t);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return cplx(re, im) / std::sqrt(2.0);
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
    // QR of a Ginibre matrix with the R diagonal kept positive (modified
    // Gram-Schmidt, two passes) is exactly Haar.
    std::vector<std::vector<cplx>> cols(d, std::vector<cplx>(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) cols[j][i] = rng.complex_normal();
    for (std::size_t j = 0; j < d; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                const cplx r = inner(cols[p], cols[j]);
                for (std::size_t i = 0; i < d; ++i) cols[j][i] -= r * cols[p][i];
            }
        }
        normalize(cols[j]);
    }
    ComplexMatrix q(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) q(i, j) = cols[j][i];
    return q;
}

std::vector<cplx> haar_state(std::size_t d, Rng& rng) {
    std::vector<cplx> v(d);
    for (auto& x : v) x = rng.complex_normal();
    normalize(v);
    return v;
}

ComplexMatrix random_hermitian_unit(std::size_t d, Rng& rng) {
    ComplexMatrix h(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        h(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx z = rng.complex_normal();
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    const auto eg = eigh(h);
    double s = 0.0;
    for (double v : eg.values) s = std::max(s, std::abs(v));
    if (s > 0.0) h *= cplx(1.0 / s, 0.0);
    return h;
}

}  // namespace qconv
