#pragma once

// Best separable approximation of a two-qubit state: rho = lambda rho_s +
// (1 - lambda) |psi_e><psi_e| with maximal separable weight lambda.
//
// For a fixed candidate psi_e, feasibility of lambda means
// rho - (1 - lambda) |psi><psi| is PSD and stays PSD under partial
// transposition (exact separability certificate for two qubits). Both cones
// give eigenvalue functions concave in lambda, so the feasible set is an
// interval; the largest feasible lambda is located by a coarse descending
// probe followed by bisection. The outer search over psi_e is gradient-free
// coordinate descent in a hyperspherical chart of the support of rho, with
// seeded random restarts.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcr/linalg.hpp"
#include "qcr/measures.hpp"
#include "qcr/relations.hpp"
#include "qcr/rng.hpp"
#include "qcr/states.hpp"

namespace qcr {

struct BsaCertificates {
    double residual_min_eig = 0.0;      // min eigenvalue of rho_s
    double residual_ppt_min_eig = 0.0;  // min eigenvalue of PT(rho_s)
};

struct LSDecomposition {
    double lambda = 0.0;
    std::optional<PureState> psi_e;      // unset when lambda = 1
    std::optional<DensityMatrix> rho_s;  // unset when lambda = 0
    BsaCertificates certificates;
    bool converged = false;
};

struct BsaOptions {
    int restarts = 64;
    std::uint64_t seed = 0x5ca1ab1eu;
    double inner_tol = 1e-9;     // bisection width on lambda
    int stagnation_limit = 16;   // restarts without improvement before stopping
};

namespace detail {

// Cholesky-based test: succeeds iff m + shift*I is positive definite,
// i.e. min eig(m) > -shift up to round-off.
inline bool psd_within(const ComplexMatrix& m, double shift) {
    const std::size_t n = m.dim();
    std::array<cplx, 16> l{};
    for (std::size_t j = 0; j < n; ++j) {
        double d = std::real(m(j, j)) + shift;
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l[j * n + k]);
        if (d <= 0.0) return false;
        const double root = std::sqrt(d);
        l[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * std::conj(l[j * n + k]);
            l[i * n + j] = s / root;
        }
    }
    return true;
}

// Candidate pure state over an r-dimensional support basis, parametrized by
// r-1 polar angles and r-1 relative phases (first coefficient real >= 0).
inline std::vector<cplx> chart_coefficients(std::span<const double> angles, std::size_t r) {
    std::vector<cplx> c(r, cplx(0.0, 0.0));
    double prefix = 1.0;
    for (std::size_t j = 0; j < r; ++j) {
        double mag;
        if (j + 1 < r) {
            mag = prefix * std::cos(angles[j]);
            prefix *= std::sin(angles[j]);
        } else {
            mag = prefix;
        }
        if (j == 0)
            c[j] = mag;
        else
            c[j] = mag * cplx(std::cos(angles[r - 2 + j]), std::sin(angles[r - 2 + j]));
    }
    return c;
}

// Inverse of the chart, used to start a restart at a given state.
inline std::vector<double> chart_from_coefficients(std::span<const cplx> c) {
    const std::size_t r = c.size();
    std::vector<double> angles(2 * (r - 1), 0.0);
    // rotate the global phase so c[0] is real non-negative
    cplx ref = c[0];
    const double ref_mag = std::abs(ref);
    const cplx rot = ref_mag > 1e-14 ? std::conj(ref) / ref_mag : cplx(1.0, 0.0);
    std::vector<double> mags(r);
    for (std::size_t j = 0; j < r; ++j) mags[j] = std::abs(c[j]);
    double prefix = 1.0;
    for (std::size_t j = 0; j + 1 < r; ++j) {
        const double ratio = prefix > 1e-14 ? std::clamp(mags[j] / prefix, -1.0, 1.0) : 1.0;
        angles[j] = std::acos(ratio);
        prefix *= std::sin(angles[j]);
    }
    for (std::size_t j = 1; j < r; ++j) angles[r - 2 + j] = std::arg(c[j] * rot);
    return angles;
}

struct BsaProblem {
    const DensityMatrix& rho;
    ComplexMatrix rho_pt;
    std::vector<std::vector<cplx>> support;  // eigenvectors spanning supp(rho)
    double inner_tol;

    explicit BsaProblem(const DensityMatrix& rho_in, double tol) : rho(rho_in), inner_tol(tol) {
        rho_pt = partial_transpose(rho.matrix, 2, 0);
        const HermEigResult es = herm_eig(rho.matrix);
        for (std::size_t j = 0; j < 4; ++j) {
            if (es.eigenvalues[j] <= 1e-12) continue;
            std::vector<cplx> col(4);
            for (std::size_t x = 0; x < 4; ++x) col[x] = es.eigenvectors(x, j);
            support.push_back(std::move(col));
        }
    }

    std::size_t rank() const { return support.size(); }
    std::size_t parameter_count() const { return 2 * (rank() - 1); }

    std::vector<cplx> state_from(std::span<const double> angles) const {
        const std::vector<cplx> c = chart_coefficients(angles, rank());
        std::vector<cplx> psi(4, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < rank(); ++j)
            for (std::size_t x = 0; x < 4; ++x) psi[x] += c[j] * support[j][x];
        return psi;
    }

    // Largest feasible lambda for this candidate, or -1 when none exists.
    double max_feasible_lambda(std::span<const cplx> psi) const {
        ComplexMatrix proj(4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) proj(r, c) = psi[r] * std::conj(psi[c]);
        const ComplexMatrix proj_pt = partial_transpose(proj, 2, 0);

        const auto feasible = [&](double lambda) {
            const double t = 1.0 - lambda;
            ComplexMatrix sigma = rho.matrix;
            ComplexMatrix sigma_pt = rho_pt;
            for (std::size_t i = 0; i < 16; ++i) {
                sigma(i / 4, i % 4) -= t * proj(i / 4, i % 4);
                sigma_pt(i / 4, i % 4) -= t * proj_pt(i / 4, i % 4);
            }
            return psd_within(sigma, 1e-12) && psd_within(sigma_pt, 1e-12);
        };

        static constexpr double kProbes[] = {0.996, 0.992, 0.984, 0.969, 0.938, 0.875, 0.75,
                                             0.625, 0.5,   0.375, 0.25,  0.125, 0.0625, 0.0};
        double lo = -1.0, hi = 1.0;
        for (double probe : kProbes) {
            if (feasible(probe)) {
                lo = probe;
                break;
            }
            hi = probe;
        }
        if (lo < 0.0) return -1.0;
        while (hi - lo > inner_tol) {
            const double mid = 0.5 * (lo + hi);
            (feasible(mid) ? lo : hi) = mid;
        }
        return lo;
    }

    double objective(std::span<const double> angles) const { return max_feasible_lambda(state_from(angles)); }
};

}  // namespace detail

// Largest lambda for which (rho - (1-lambda)|psi><psi|)/lambda is PSD and
// PPT, or -1 when no feasible lambda exists for this candidate.
inline double max_feasible_lambda(const DensityMatrix& rho, const PureState& psi, double tol = 1e-9) {
    if (rho.n_qubits != 2 || psi.n_qubits != 2)
        throw std::invalid_argument("max_feasible_lambda: expected two-qubit inputs");
    const detail::BsaProblem problem(rho, tol);
    return problem.max_feasible_lambda(psi.amplitudes);
}

// Assembles the decomposition induced by (lambda, psi_e), with certificates.
inline LSDecomposition make_ls_decomposition(const DensityMatrix& rho, double lambda, const PureState& psi) {
    LSDecomposition out;
    out.lambda = lambda;
    out.psi_e = psi;
    if (lambda > 1e-12) {
        ComplexMatrix sep(4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                sep(r, c) = (rho.matrix(r, c) - (1.0 - lambda) * psi.amplitudes[r] * std::conj(psi.amplitudes[c])) /
                            lambda;
        out.rho_s = DensityMatrix::trusted(2, std::move(sep));
        out.certificates.residual_min_eig = min_eigenvalue(out.rho_s->matrix);
        out.certificates.residual_ppt_min_eig = min_eigenvalue(partial_transpose(out.rho_s->matrix, 2, 0));
    }
    out.converged = true;
    return out;
}

inline LSDecomposition best_separable_approximation(const DensityMatrix& rho, const BsaOptions& opt = {}) {
    if (rho.n_qubits != 2) throw std::invalid_argument("best_separable_approximation: expected a two-qubit state");

    LSDecomposition out;

    // PPT inputs are separable outright.
    if (is_ppt(rho)) {
        out.lambda = 1.0;
        out.rho_s = rho;
        out.certificates.residual_min_eig = min_eigenvalue(rho.matrix);
        out.certificates.residual_ppt_min_eig = ppt_min_eigenvalue(rho);
        out.converged = true;
        return out;
    }

    const HermEigResult es = herm_eig(rho.matrix);

    // Pure entangled input: no separable admixture is possible, and every
    // candidate psi other than the state itself has an empty feasible set.
    if (mixedness(rho) <= 1e-10) {
        std::vector<cplx> amp(4);
        for (std::size_t x = 0; x < 4; ++x) amp[x] = es.eigenvectors(x, 0);
        out.lambda = 0.0;
        out.psi_e = PureState::validated(2, std::move(amp));
        out.converged = true;
        return out;
    }

    detail::BsaProblem problem(rho, opt.inner_tol);
    const std::size_t n_params = problem.parameter_count();

    double best_lambda = -1.0;
    std::vector<double> best_angles(n_params, 0.0);
    bool best_hit_budget = false;
    int stagnant = 0;

    const int restarts = std::max(1, opt.restarts);
    for (int rs = 0; rs < restarts && stagnant < opt.stagnation_limit; ++rs) {
        std::vector<double> angles;
        if (rs == 0) {
            // Deterministic start: dominant eigenvector expressed in the chart.
            std::vector<cplx> c(problem.rank(), cplx(0.0, 0.0));
            c[0] = 1.0;
            angles = detail::chart_from_coefficients(c);
        } else {
            Rng rng = Rng::stream(opt.seed, std::uint64_t(rs));
            std::vector<cplx> c(problem.rank());
            double norm = 0.0;
            for (cplx& v : c) {
                v = rng.next_complex_gaussian();
                norm += std::norm(v);
            }
            norm = std::sqrt(norm);
            for (cplx& v : c) v /= norm;
            angles = detail::chart_from_coefficients(c);
        }

        double current = problem.objective(angles);
        double step = 0.4;
        int passes = 0;
        constexpr int kMaxPasses = 250;
        while (passes < kMaxPasses) {
            ++passes;
            bool improved = false;
            for (std::size_t idx = 0; idx < angles.size(); ++idx) {
                for (double delta : {step, -step}) {
                    angles[idx] += delta;
                    const double v = problem.objective(angles);
                    if (v > current + 1e-14) {
                        current = v;
                        improved = true;
                    } else {
                        angles[idx] -= delta;
                    }
                }
            }
            if (!improved) {
                if (step <= 1e-5) break;
                step *= 0.5;
            }
        }

        if (current > best_lambda + 1e-9) {
            best_lambda = current;
            best_angles = angles;
            best_hit_budget = passes >= kMaxPasses;
            stagnant = 0;
        } else {
            ++stagnant;
        }
    }

    if (best_lambda < 0.0) {
        // No feasible decomposition located; report the entangled state itself.
        std::vector<cplx> amp(4);
        for (std::size_t x = 0; x < 4; ++x) amp[x] = es.eigenvectors(x, 0);
        out.lambda = 0.0;
        out.psi_e = PureState::validated(2, std::move(amp));
        out.converged = false;
        return out;
    }

    std::vector<cplx> psi = problem.state_from(best_angles);
    double norm = 0.0;
    for (const cplx& a : psi) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (cplx& a : psi) a /= norm;

    out.lambda = best_lambda;
    out.psi_e = PureState::validated(2, psi);
    if (best_lambda > 1e-12) {
        ComplexMatrix sep(4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                sep(r, c) = (rho.matrix(r, c) - (1.0 - best_lambda) * psi[r] * std::conj(psi[c])) / best_lambda;
        out.rho_s = DensityMatrix::trusted(2, std::move(sep));
        out.certificates.residual_min_eig = min_eigenvalue(out.rho_s->matrix);
        out.certificates.residual_ppt_min_eig = min_eigenvalue(partial_transpose(out.rho_s->matrix, 2, 0));
    }
    out.converged = !best_hit_budget;
    return out;
}

// Checks the spin-flip expansion (eq22), the concurrence split (eq23), and the
// tangle form (eq24) on a decomposition of rho. eq22 is an algebraic identity
// for any valid decomposition; eq23/eq24 hold only at the optimum.
inline std::vector<RelationReport> verify_ls(const DensityMatrix& rho, const LSDecomposition& lsd,
                                             const RelationConfig& cfg = {}) {
    if (rho.n_qubits != 2) throw std::invalid_argument("verify_ls: expected a two-qubit state");
    const double lambda = lsd.lambda;

    double reconstruction = 0.0;  // Frobenius gap of lambda rho_s + (1-lambda) P
    {
        ComplexMatrix rebuilt(4);
        if (lsd.rho_s) rebuilt += cplx(lambda, 0.0) * lsd.rho_s->matrix;
        if (lsd.psi_e)
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    rebuilt(r, c) += (1.0 - lambda) * lsd.psi_e->amplitudes[r] * std::conj(lsd.psi_e->amplitudes[c]);
        reconstruction = (rebuilt - rho.matrix).frobenius_norm();
    }
    if (reconstruction > 1e-8)
        throw std::invalid_argument("verify_ls: decomposition does not reconstruct rho (Frobenius gap " +
                                    std::to_string(reconstruction) + ")");

    double term_sep = 0.0;    // Tr(lambda^2 rho_s rho_s~)
    double term_cross = 0.0;  // 2 lambda (1-lambda) Re <psi~|rho_s|psi~>
    double term_ent = 0.0;    // (1-lambda)^2 |<psi|psi~>|^2
    double c_psi = 0.0;

    if (lsd.rho_s) {
        const DensityMatrix flip_s = spin_flip(*lsd.rho_s);
        cplx tr = 0.0;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) tr += lsd.rho_s->matrix(r, c) * flip_s.matrix(c, r);
        term_sep = lambda * lambda * std::real(tr);
    }
    if (lsd.psi_e) {
        const PureState flipped = spin_flip(*lsd.psi_e);
        c_psi = std::abs(inner_product(lsd.psi_e->amplitudes, flipped.amplitudes));
        term_ent = (1.0 - lambda) * (1.0 - lambda) * c_psi * c_psi;
        if (lsd.rho_s) {
            cplx expect = 0.0;
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    expect += std::conj(flipped.amplitudes[r]) * lsd.rho_s->matrix(r, c) * flipped.amplitudes[c];
            term_cross = 2.0 * lambda * (1.0 - lambda) * std::real(expect);
        }
    }

    const double tr_flip = tr_rho_rhotilde(rho);
    const double c_rho = wootters_concurrence(rho);

    std::vector<RelationReport> reports;
    reports.push_back(detail::make_identity(
        "eq22", {{"separable_term", term_sep}, {"cross_term", term_cross}, {"entangled_term", term_ent}},
        term_sep + term_cross + term_ent, tr_flip, cfg.ls_identity_tol));
    reports.push_back(detail::make_identity(
        "eq23", {{"C_rho", c_rho}, {"lambda", lambda}, {"C_psi_e", c_psi}},
        c_rho, (1.0 - lambda) * c_psi, cfg.ls_optimum_tol));
    reports.push_back(detail::make_identity(
        "eq24", {{"tangle", c_rho * c_rho}, {"lambda", lambda}, {"overlap_sq", c_psi * c_psi}},
        c_rho * c_rho, (1.0 - lambda) * (1.0 - lambda) * c_psi * c_psi, cfg.ls_optimum_tol));
    return reports;
}

}  // namespace qcr
