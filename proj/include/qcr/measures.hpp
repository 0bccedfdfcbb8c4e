#pragma once

// Scalar quantities of qubit states: spin-flip map, coherence/predictability,
// mixedness, concurrence (pure and Wootters closed form), I-tangle, residual
// tangle, spin-flip overlap Tr(rho rho~), indistinguishability, separable
// uncertainty, and the PPT separability certificate.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qcr/linalg.hpp"
#include "qcr/states.hpp"

namespace qcr {

// |psi~> = sigma_y^(x)n |psi*>.
inline PureState spin_flip(const PureState& psi) {
    const ComplexMatrix& y = pauli_y_n(psi.n_qubits);
    std::vector<cplx> out(psi.dim(), cplx(0.0, 0.0));
    for (std::size_t r = 0; r < psi.dim(); ++r) {
        cplx s = 0.0;
        for (std::size_t c = 0; c < psi.dim(); ++c) s += y(r, c) * std::conj(psi.amplitudes[c]);
        out[r] = s;
    }
    return PureState{psi.n_qubits, std::move(out)};
}

// rho~ = sigma_y^(x)n rho* sigma_y^(x)n.
inline DensityMatrix spin_flip(const DensityMatrix& rho) {
    const ComplexMatrix& y = pauli_y_n(rho.n_qubits);
    return DensityMatrix::trusted(rho.n_qubits, y * rho.matrix.conjugate() * y);
}

struct SingleQubitProperties {
    double coherence = 0.0;      // nu = 2|rho_10|
    double predictability = 0.0; // p = |rho_00 - rho_11|
    double s2bar = 0.0;          // (nu^2 + p^2) / 2
};

inline SingleQubitProperties single_qubit_properties(const DensityMatrix& rho_k) {
    if (rho_k.dim() != 2) throw std::invalid_argument("single_qubit_properties: expected a 2x2 density matrix");
    SingleQubitProperties out;
    out.coherence = 2.0 * std::abs(rho_k.matrix(1, 0));
    out.predictability = std::abs(std::real(rho_k.matrix(0, 0)) - std::real(rho_k.matrix(1, 1)));
    out.s2bar = 0.5 * (out.coherence * out.coherence + out.predictability * out.predictability);
    return out;
}

// Linear entropy M = 1 - Tr(rho^2).
inline double mixedness(const DensityMatrix& rho) {
    double tr2 = 0.0;
    const ComplexMatrix& m = rho.matrix;
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) tr2 += std::real(m(r, c) * m(c, r));
    return 1.0 - tr2;
}

inline double purity(const DensityMatrix& rho) { return 1.0 - mixedness(rho); }

// C = |<psi|psi~>| for a two-qubit pure state.
inline double concurrence_pure(const PureState& psi) {
    if (psi.n_qubits != 2) throw std::invalid_argument("concurrence_pure: expected a two-qubit state");
    const PureState flipped = spin_flip(psi);
    return std::abs(inner_product(psi.amplitudes, flipped.amplitudes));
}

namespace detail {

// Eigenvectors of rho scaled by sqrt(lambda_j), truncated to the support.
struct SupportDecomposition {
    std::vector<double> eigenvalues;
    std::vector<std::vector<cplx>> subnorm_vectors;
};

inline SupportDecomposition support_decomposition(const DensityMatrix& rho, double threshold = 1e-12) {
    const HermEigResult es = herm_eig(rho.matrix);
    SupportDecomposition out;
    for (std::size_t j = 0; j < rho.dim(); ++j) {
        if (es.eigenvalues[j] <= threshold) continue;
        out.eigenvalues.push_back(es.eigenvalues[j]);
        const double root = std::sqrt(es.eigenvalues[j]);
        std::vector<cplx> col(rho.dim());
        for (std::size_t x = 0; x < rho.dim(); ++x) col[x] = root * es.eigenvectors(x, j);
        out.subnorm_vectors.push_back(std::move(col));
    }
    return out;
}

// Complex symmetric preconcurrence matrix tau_jk = w_j^T (sigma_y^(x)n) w_k.
inline std::vector<cplx> preconcurrence(const std::vector<std::vector<cplx>>& w, std::size_t n_qubits) {
    const ComplexMatrix& y = pauli_y_n(n_qubits);
    const std::size_t r = w.size();
    const std::size_t dim = w.empty() ? 0 : w[0].size();
    std::vector<cplx> tau(r * r, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = j; k < r; ++k) {
            cplx s = 0.0;
            for (std::size_t x = 0; x < dim; ++x) {
                cplx row = 0.0;
                for (std::size_t z = 0; z < dim; ++z) row += y(x, z) * w[k][z];
                s += w[j][x] * row;
            }
            tau[j * r + k] = s;
            tau[k * r + j] = s;
        }
    return tau;
}

// Singular values (descending) of a complex symmetric matrix, via the real
// symmetric embedding [[Re, Im], [Im, -Re]] whose spectrum is +-sigma_i.
// Keeps errors linear in machine epsilon, unlike squaring into tau^dag tau.
inline std::vector<double> symmetric_singular_values(const std::vector<cplx>& tau, std::size_t r) {
    ComplexMatrix m(2 * r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) {
            const double re = tau[j * r + k].real();
            const double im = tau[j * r + k].imag();
            m(j, k) = re;
            m(j, r + k) = im;
            m(r + j, k) = im;
            m(r + j, r + k) = -re;
        }
    std::vector<double> eig = herm_eigenvalues(m);
    eig.resize(r);  // spectrum is symmetric about zero; top half = singular values
    for (double& s : eig) s = std::max(0.0, s);
    return eig;
}

}  // namespace detail

// Closed-form mixed-state concurrence C = max(0, sqrt(mu1) - sqrt(mu2) -
// sqrt(mu3) - sqrt(mu4)), with mu_i the descending spectrum of
// sqrt(rho) rho~ sqrt(rho). The sqrt(mu_i) are evaluated as the singular
// values of the preconcurrence matrix over the support of rho, which equals
// the Hermitian-product spectrum exactly but avoids taking square roots of
// round-off-sized eigenvalues on rank-deficient states.
inline double wootters_concurrence(const DensityMatrix& rho) {
    if (rho.n_qubits != 2) throw std::invalid_argument("wootters_concurrence: expected a two-qubit state");
    const detail::SupportDecomposition sd = detail::support_decomposition(rho);
    const std::vector<cplx> tau = detail::preconcurrence(sd.subnorm_vectors, 2);
    const std::vector<double> sigma = detail::symmetric_singular_values(tau, sd.subnorm_vectors.size());
    double c = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) c += (i == 0) ? sigma[i] : -sigma[i];
    return std::max(0.0, c);
}

// Two-qubit tangle, defined operationally as the squared Wootters concurrence.
inline double tangle(const DensityMatrix& rho) {
    const double c = wootters_concurrence(rho);
    return c * c;
}

// Tr(rho rho~); real up to 1e-10 round-off, imaginary part discarded.
inline double tr_rho_rhotilde(const DensityMatrix& rho) {
    const DensityMatrix flipped = spin_flip(rho);
    cplx s = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) s += rho.matrix(r, c) * flipped.matrix(c, r);
    return std::real(s);
}

inline double hs_to_spinflip(const DensityMatrix& rho) { return hs_distance(rho.matrix, spin_flip(rho).matrix); }

// I(rho, rho~) = 1 - D_HS^2(rho - rho~).
inline double indistinguishability(const DensityMatrix& rho) {
    const double d = hs_to_spinflip(rho);
    return 1.0 - d * d;
}

// Entanglement across the bipartition {k} vs rest of a pure state: 2 M(rho_k).
inline double i_tangle_pure(const PureState& psi, std::size_t k) {
    if (k >= psi.n_qubits) throw std::invalid_argument("i_tangle_pure: qubit index out of range");
    const std::size_t keep[1] = {k};
    return 2.0 * mixedness(marginal_of_pure(psi, keep));
}

struct ResidualTangleReport {
    double tau_1_23 = 0.0, tau_2_13 = 0.0, tau_3_12 = 0.0;  // one-vs-rest tangles
    double tau_12 = 0.0, tau_13 = 0.0, tau_23 = 0.0;        // pairwise tangles
    double tau_123 = 0.0;                                   // residual three-body tangle
    double symmetrized_gap = 0.0;  // |pivot form - permutation-invariant form|
};

// Residual tangle of a three-qubit pure state. tau_123 is reported from the
// pivot-1 form; the permutation-symmetrized form must agree within 1e-8.
inline ResidualTangleReport residual_tangle(const PureState& psi) {
    if (psi.n_qubits != 3) throw std::invalid_argument("residual_tangle: expected a three-qubit state");
    ResidualTangleReport r;
    r.tau_1_23 = i_tangle_pure(psi, 0);
    r.tau_2_13 = i_tangle_pure(psi, 1);
    r.tau_3_12 = i_tangle_pure(psi, 2);
    const auto pair_tangle = [&](std::size_t a, std::size_t b) {
        const std::size_t keep[2] = {a, b};
        return tangle(marginal_of_pure(psi, keep));
    };
    r.tau_12 = pair_tangle(0, 1);
    r.tau_13 = pair_tangle(0, 2);
    r.tau_23 = pair_tangle(1, 2);
    r.tau_123 = r.tau_1_23 - r.tau_12 - r.tau_13;
    const double symmetrized =
        (r.tau_1_23 + r.tau_2_13 + r.tau_3_12 - 2.0 * (r.tau_12 + r.tau_13 + r.tau_23)) / 3.0;
    r.symmetrized_gap = std::abs(r.tau_123 - symmetrized);
    if (r.symmetrized_gap > 1e-8)
        throw std::runtime_error("residual_tangle: pivot and symmetrized forms disagree by " +
                                 std::to_string(r.symmetrized_gap));
    return r;
}

struct SeparableUncertainty {
    double value = 0.0;
    bool noise_clipped = false;  // true when a value in [-1e-8, 0) was reported as 0
};

// eta = Tr(rho rho~) + M(rho) - tangle. Values in [-1e-8, 0) clip to zero;
// anything lower indicates an invalid input state and is rejected.
inline SeparableUncertainty separable_uncertainty_detail(const DensityMatrix& rho) {
    if (rho.n_qubits != 2) throw std::invalid_argument("separable_uncertainty: expected a two-qubit state");
    SeparableUncertainty out;
    out.value = tr_rho_rhotilde(rho) + mixedness(rho) - tangle(rho);
    if (out.value < -1e-8)
        throw std::domain_error("separable_uncertainty: eta = " + std::to_string(out.value) +
                                " below -1e-8; input state is not a valid density matrix");
    if (out.value < 0.0) {
        out.value = 0.0;
        out.noise_clipped = true;
    }
    return out;
}

inline double separable_uncertainty(const DensityMatrix& rho) { return separable_uncertainty_detail(rho).value; }

// Minimum eigenvalue of the partial transpose; >= -1e-9 iff separable
// (exact for two qubits only).
inline double ppt_min_eigenvalue(const DensityMatrix& rho) {
    if (rho.n_qubits != 2) throw std::invalid_argument("ppt_min_eigenvalue: expected a two-qubit state");
    return min_eigenvalue(partial_transpose(rho.matrix, 2, 0));
}

inline bool is_ppt(const DensityMatrix& rho) { return ppt_min_eigenvalue(rho) >= -1e-9; }

// ---------------------------------------------------------------------------
// Aggregate record emitted by the CLI `measure` command.

struct MeasureSet {
    std::size_t n_qubits = 0;
    double mixedness = 0.0;
    double purity = 0.0;
    double tr_rho_rhotilde = 0.0;
    double hs_to_spinflip = 0.0;
    double indistinguishability = 0.0;
    std::optional<double> tangle;                 // two-qubit only
    std::optional<double> separable_uncertainty;  // two-qubit only
    bool eta_noise_clipped = false;
    std::vector<SingleQubitProperties> per_qubit;
};

inline MeasureSet measure_set(const DensityMatrix& rho) {
    MeasureSet out;
    out.n_qubits = rho.n_qubits;
    out.mixedness = mixedness(rho);
    out.purity = 1.0 - out.mixedness;
    out.tr_rho_rhotilde = tr_rho_rhotilde(rho);
    out.hs_to_spinflip = hs_to_spinflip(rho);
    out.indistinguishability = 1.0 - out.hs_to_spinflip * out.hs_to_spinflip;
    if (rho.n_qubits == 2) {
        out.tangle = tangle(rho);
        const SeparableUncertainty eta = separable_uncertainty_detail(rho);
        out.separable_uncertainty = eta.value;
        out.eta_noise_clipped = eta.noise_clipped;
    }
    for (std::size_t k = 0; k < rho.n_qubits; ++k) {
        const std::size_t keep[1] = {k};
        out.per_qubit.push_back(single_qubit_properties(rho.n_qubits == 1 ? rho : marginal(rho, keep)));
    }
    return out;
}

inline MeasureSet measure_set(const PureState& psi) { return measure_set(to_density(psi)); }

}  // namespace qcr
