#pragma once

// Direct numerical minimization of sum_i p_i C^2(psi_i) over pure-state
// ensemble decompositions of a two-qubit density matrix. Kept independent of
// the closed-form route in measures.hpp so the two can cross-check each other.
//
// Every size-m ensemble of rho corresponds to an m x r isometry U mixing the
// subnormalized eigenvectors w_j = sqrt(lambda_j) v_j:
//   phi_i = sum_j U_ij w_j,  p_i = <phi_i|phi_i>,  psi_i = phi_i / sqrt(p_i).
// With tau_jk = w_j^T (sigma_y (x) sigma_y) w_k the objective becomes
//   f(U) = sum_i |(U tau U^T)_ii|^2 / p_i,
// which is minimized by gradient-free coordinate descent over a Givens-chain
// parametrization of U, restarted from random draws.

#include <cstdint>
#include <limits>
#include <vector>

#include "qcr/linalg.hpp"
#include "qcr/measures.hpp"
#include "qcr/rng.hpp"

namespace qcr {

struct ConvexRoofOptions {
    int restarts = 32;
    std::uint64_t seed = 0x9d2c5680u;
    double improvement_tol = 1e-6;
    int max_passes = 400;
};

struct ConvexRoofResult {
    double value = 0.0;
    bool converged = false;  // false when the winning restart ran out of pass budget
    int best_restart = -1;
    std::size_t best_ensemble_size = 0;
};

namespace detail {

// Objective for one fixed ensemble size m over an r-dimensional support.
class RoofObjective {
  public:
    RoofObjective(std::vector<double> eigenvalues, const std::vector<std::vector<cplx>>& subnorm_vectors,
                  std::size_t m)
        : lambda_(std::move(eigenvalues)), tau_(preconcurrence(subnorm_vectors, 2)), m_(m), r_(lambda_.size()) {
        // Givens pairs (i, j) with j < r, i > j reach every m x r isometry
        // from the truncated identity (plus r column phases).
        for (std::size_t j = 0; j < r_; ++j)
            for (std::size_t i = j + 1; i < m_; ++i) pairs_.emplace_back(i, j);
    }

    std::size_t parameter_count() const { return 2 * pairs_.size() + r_; }
    std::size_t ensemble_size() const { return m_; }

    double evaluate(std::span<const double> params) const {
        // U = product of Givens rotations applied to Id_{m x r} . diag(phases)
        std::vector<cplx> u(m_ * r_, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < r_; ++j) {
            const double beta = params[2 * pairs_.size() + j];
            u[j * r_ + j] = cplx(std::cos(beta), std::sin(beta));
        }
        for (std::size_t k = 0; k < pairs_.size(); ++k) {
            const auto [i, j] = pairs_[k];
            const double theta = params[2 * k];
            const double phi = params[2 * k + 1];
            const double c = std::cos(theta), s = std::sin(theta);
            const cplx ph(std::cos(phi), std::sin(phi));
            for (std::size_t col = 0; col < r_; ++col) {
                const cplx ui = u[i * r_ + col];
                const cplx uj = u[j * r_ + col];
                u[i * r_ + col] = c * ui + s * ph * uj;
                u[j * r_ + col] = -s * std::conj(ph) * ui + c * uj;
            }
        }

        double f = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            double p = 0.0;
            for (std::size_t j = 0; j < r_; ++j) p += std::norm(u[i * r_ + j]) * lambda_[j];
            if (p < 1e-15) continue;  // empty ensemble member contributes nothing
            cplx g = 0.0;
            for (std::size_t j = 0; j < r_; ++j) {
                g += u[i * r_ + j] * u[i * r_ + j] * tau_[j * r_ + j];
                for (std::size_t k = j + 1; k < r_; ++k)
                    g += 2.0 * u[i * r_ + j] * u[i * r_ + k] * tau_[j * r_ + k];
            }
            f += std::norm(g) / p;
        }
        return f;
    }

  private:
    std::vector<double> lambda_;
    std::vector<cplx> tau_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::size_t m_;
    std::size_t r_;
};

struct DescentOutcome {
    double value;
    bool hit_pass_budget;
};

inline DescentOutcome coordinate_descent(const RoofObjective& obj, std::vector<double>& params,
                                         const ConvexRoofOptions& opt) {
    double best = obj.evaluate(params);
    double step = 0.5;
    int passes = 0;
    while (passes < opt.max_passes) {
        ++passes;
        bool improved = false;
        for (std::size_t idx = 0; idx < params.size(); ++idx) {
            for (double delta : {step, -step}) {
                params[idx] += delta;
                const double v = obj.evaluate(params);
                if (v < best - 1e-14) {
                    best = v;
                    improved = true;
                } else {
                    params[idx] -= delta;
                }
            }
        }
        if (!improved) {
            if (step <= 1e-5) return {best, false};
            step *= 0.5;
        }
    }
    return {best, true};
}

}  // namespace detail

// Best upper bound on the tangle found within the restart budget. Restart k
// uses ensemble size 4 + (k mod 5); restart 0 starts from the eigenbasis
// ensemble itself, the rest from random isometries.
inline ConvexRoofResult convex_roof_tangle(const DensityMatrix& rho, const ConvexRoofOptions& opt = {}) {
    if (rho.n_qubits != 2) throw std::invalid_argument("convex_roof_tangle: expected a two-qubit state");
    const detail::SupportDecomposition sd = detail::support_decomposition(rho);
    const std::vector<double>& lambda = sd.eigenvalues;
    const std::vector<std::vector<cplx>>& w = sd.subnorm_vectors;
    const std::size_t r = lambda.size();

    ConvexRoofResult result;
    result.value = std::numeric_limits<double>::infinity();

    if (r == 1) {
        // Single decomposition: the state itself.
        const detail::RoofObjective obj(lambda, w, 1);
        std::vector<double> p(obj.parameter_count(), 0.0);
        result.value = obj.evaluate(p);
        result.converged = true;
        result.best_restart = 0;
        result.best_ensemble_size = 1;
        return result;
    }

    const int restarts = std::max(1, opt.restarts);
    for (int rs = 0; rs < restarts; ++rs) {
        const std::size_t m = std::max<std::size_t>(r, 4 + std::size_t(rs % 5));
        detail::RoofObjective obj(lambda, w, m);
        std::vector<double> params(obj.parameter_count(), 0.0);
        if (rs > 0) {
            Rng rng = Rng::stream(opt.seed, std::uint64_t(rs));
            for (double& p : params) p = 2.0 * std::numbers::pi * rng.next_double();
        }
        const detail::DescentOutcome out = detail::coordinate_descent(obj, params, opt);
        if (out.value < result.value - 1e-15) {
            result.value = out.value;
            result.best_restart = rs;
            result.best_ensemble_size = m;
            result.converged = !out.hit_pass_budget;
        }
        if (result.value < opt.improvement_tol * 1e-3) break;  // already at an exact zero
    }
    return result;
}

}  // namespace qcr
