#include "qconv/sinkhorn.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "qconv/linalg.hpp"
#include "qconv/rng.hpp"

namespace qconv {

double SearchState::max_residual() const {
    return std::max(residual_v, std::max(residual_vprime, residual_vsecond));
}

std::vector<ComplexMatrix> assemble_v(const SearchState& s) { return s.bases.v; }

std::vector<ComplexMatrix> assemble_vprime(const SearchState& s) {
    const std::size_t d = s.tensor.d;
    std::vector<ComplexMatrix> fam(d, ComplexMatrix(d, d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t l = s.tensor.l_of(k, j);
            for (std::size_t i = 0; i < d; ++i) fam[j](k, i) = s.bases.amp(k, l, i);
        }
    return fam;
}

std::vector<ComplexMatrix> assemble_vsecond(const SearchState& s) {
    const std::size_t d = s.tensor.d;
    std::vector<ComplexMatrix> fam(d, ComplexMatrix(d, d));
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t k = s.tensor.k_of(l, j);
            for (std::size_t i = 0; i < d; ++i) fam[l](j, i) = s.bases.amp(k, l, i);
        }
    return fam;
}

double family_residual(const std::vector<ComplexMatrix>& family) {
    double worst = 0.0;
    for (const auto& m : family) worst = std::max(worst, m.unitarity_residual());
    return worst;
}

namespace {

void refresh_residuals(SearchState& s) {
    s.residual_v = family_residual(assemble_v(s));
    s.residual_vprime = family_residual(assemble_vprime(s));
    s.residual_vsecond = family_residual(assemble_vsecond(s));
}

void write_back_vprime(SearchState& s, const std::vector<ComplexMatrix>& fam) {
    const std::size_t d = s.tensor.d;
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            const std::size_t l = s.tensor.l_of(k, j);
            for (std::size_t i = 0; i < d; ++i) s.bases.amp(k, l, i) = fam[j](k, i);
        }
}

void write_back_vsecond(SearchState& s, const std::vector<ComplexMatrix>& fam) {
    const std::size_t d = s.tensor.d;
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t k = s.tensor.k_of(l, j);
            for (std::size_t i = 0; i < d; ++i) s.bases.amp(k, l, i) = fam[l](j, i);
        }
}

}  // namespace

SearchState sinkhorn_sweep(SearchState s) {
    const std::size_t d = s.tensor.d;
    for (std::size_t k = 0; k < d; ++k) s.bases.v[k] = polar_factor(s.bases.v[k]);
    auto vp = assemble_vprime(s);
    for (auto& m : vp) m = polar_factor(m);
    write_back_vprime(s, vp);
    auto vs = assemble_vsecond(s);
    for (auto& m : vs) m = polar_factor(m);
    write_back_vsecond(s, vs);
    s.iteration += 1;
    refresh_residuals(s);
    return s;
}

BasisFamily cyclic_project(const BasisFamily& bases, std::size_t d) {
    BasisFamily out = bases;
    for (std::size_t k = 0; k < d; ++k) {
        // orbits are the diagonals i - l = c (mod d) of V_k
        for (std::size_t c = 0; c < d; ++c) {
            double mean2 = 0.0;
            for (std::size_t l = 0; l < d; ++l) mean2 += std::norm(bases.amp(k, l, (l + c) % d));
            const double target = std::sqrt(mean2 / static_cast<double>(d));
            for (std::size_t l = 0; l < d; ++l) {
                const cplx v = bases.amp(k, l, (l + c) % d);
                const double a = std::abs(v);
                out.amp(k, l, (l + c) % d) = a > 1e-300 ? v * (target / a) : cplx(target, 0.0);
            }
        }
        // all rows share the same norm after orbit averaging
        for (std::size_t l = 0; l < d; ++l) {
            double nrm = 0.0;
            for (std::size_t i = 0; i < d; ++i) nrm += std::norm(out.amp(k, l, i));
            nrm = std::sqrt(nrm);
            if (nrm > 0.0)
                for (std::size_t i = 0; i < d; ++i) out.amp(k, l, i) /= nrm;
        }
    }
    return out;
}

SearchResult search(const PermutationTensor& a, const BasisFamily& init,
                    const SearchOptions& opt) {
    if (a.arity != 3) throw DimensionError("search expects an arity-3 tensor");
    SearchState s;
    s.tensor = a;
    s.bases = init;
    const std::size_t d = a.d;
    const bool cyclic = opt.constraint == Constraint::Cyclic;
    auto apply_constraint = [&](SearchState& st) {
        if (cyclic) {
            st.bases = cyclic_project(st.bases, d);
            st.bases.v[0] = ComplexMatrix::identity(d);
        } else if (opt.pin_first_basis) {
            st.bases.v[0] = ComplexMatrix::identity(d);
        }
    };
    apply_constraint(s);
    refresh_residuals(s);

    double best = s.max_residual();
    std::size_t last_improve = 0;
    for (std::size_t sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        s = sinkhorn_sweep(std::move(s));
        apply_constraint(s);
        refresh_residuals(s);
        const double r = s.max_residual();
        s.history.push_back(r);
        if (r < best - opt.stall_eps) {
            best = r;
            last_improve = sweep;
        }
        if (r < opt.tol) return {true, std::move(s)};
        if (sweep - last_improve > opt.stall_window) break;  // stalled
    }
    return {false, std::move(s)};
}

SearchResult search(const PermutationTensor& a, std::uint64_t seed, const SearchOptions& opt) {
    Rng rng(seed);
    BasisFamily init = BasisFamily::random(a.d, rng);
    return search(a, init, opt);
}

NullityReport solution_nullity(const SearchState& state, double sv_threshold) {
    const std::size_t d = state.tensor.d;
    const std::size_t nparams = 2 * d * d * d;  // re/im of every basis entry
    SearchState work = state;

    auto residual_vec = [&](const SearchState& st) {
        std::vector<double> r;
        r.reserve(6 * d * d * d);
        for (const auto& fam : {assemble_v(st), assemble_vprime(st), assemble_vsecond(st)})
            for (const auto& m : fam) {
                // entries of M M^dag - I
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        cplx s = 0.0;
                        for (std::size_t t = 0; t < d; ++t) s += m(a, t) * std::conj(m(b, t));
                        if (a == b) s -= 1.0;
                        r.push_back(s.real());
                        r.push_back(s.imag());
                    }
            }
        return r;
    };

    const auto base = residual_vec(work);
    const double h = 1e-6;
    Eigen::MatrixXd jac(base.size(), nparams);
    std::size_t col = 0;
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t i = 0; i < d; ++i)
                for (int part = 0; part < 2; ++part) {
                    const cplx delta = part == 0 ? cplx(h, 0.0) : cplx(0.0, h);
                    work.bases.amp(k, l, i) = state.bases.amp(k, l, i) + delta;
                    const auto plus = residual_vec(work);
                    work.bases.amp(k, l, i) = state.bases.amp(k, l, i) - delta;
                    const auto minus = residual_vec(work);
                    work.bases.amp(k, l, i) = state.bases.amp(k, l, i);
                    for (std::size_t rr = 0; rr < base.size(); ++rr)
                        jac(rr, col) = (plus[rr] - minus[rr]) / (2.0 * h);
                    ++col;
                }

    Eigen::BDCSVD<Eigen::MatrixXd> dec(jac);
    const auto& sv = dec.singularValues();
    int rank = 0;
    const double thr = sv_threshold * (sv.size() > 0 ? std::max(1.0, sv(0)) : 1.0);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr) ++rank;

    // analytic structure tangents: common left rotation a -> i H a (d^2 real
    // dims) and per-vector phases a_{k,l} -> i theta a_{k,l} (d^2 dims)
    Eigen::MatrixXd tang(nparams, 2 * d * d);
    tang.setZero();
    std::size_t tcol = 0;
    auto param_index = [&](std::size_t k, std::size_t l, std::size_t i, int part) {
        return ((k * d + l) * d + i) * 2 + static_cast<std::size_t>(part);
    };
    // left rotations: basis of Hermitian H: diagonal E_aa and pairs
    for (std::size_t aa = 0; aa < d; ++aa) {
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) {
                const cplx dv = cplx(0.0, 1.0) * state.bases.amp(k, l, aa);
                tang(param_index(k, l, aa, 0), tcol) = dv.real();
                tang(param_index(k, l, aa, 1), tcol) = dv.imag();
            }
        ++tcol;
    }
    for (std::size_t aa = 0; aa < d; ++aa)
        for (std::size_t bb = aa + 1; bb < d; ++bb)
            for (int kind = 0; kind < 2; ++kind) {
                // H = E_ab + E_ba (kind 0) or i E_ab - i E_ba (kind 1)
                for (std::size_t k = 0; k < d; ++k)
                    for (std::size_t l = 0; l < d; ++l) {
                        const cplx va = state.bases.amp(k, l, aa);
                        const cplx vb = state.bases.amp(k, l, bb);
                        cplx da, db;
                        if (kind == 0) {
                            da = cplx(0.0, 1.0) * vb;
                            db = cplx(0.0, 1.0) * va;
                        } else {
                            da = cplx(-1.0, 0.0) * vb;
                            db = cplx(1.0, 0.0) * va;
                        }
                        tang(param_index(k, l, aa, 0), tcol) += da.real();
                        tang(param_index(k, l, aa, 1), tcol) += da.imag();
                        tang(param_index(k, l, bb, 0), tcol) += db.real();
                        tang(param_index(k, l, bb, 1), tcol) += db.imag();
                    }
                ++tcol;
            }
    // per-vector phases
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            for (std::size_t i = 0; i < d; ++i) {
                const cplx dv = cplx(0.0, 1.0) * state.bases.amp(k, l, i);
                tang(param_index(k, l, i, 0), tcol) = dv.real();
                tang(param_index(k, l, i, 1), tcol) = dv.imag();
            }
            ++tcol;
        }

    Eigen::BDCSVD<Eigen::MatrixXd> tdec(tang);
    int trank = 0;
    const auto& tsv = tdec.singularValues();
    for (Eigen::Index i = 0; i < tsv.size(); ++i)
        if (tsv(i) > 1e-9 * std::max(1.0, tsv(0))) ++trank;

    NullityReport rep;
    rep.raw_nullity = static_cast<int>(nparams) - rank;
    rep.structure_rank = trank;
    return rep;
}

}  // namespace qconv
