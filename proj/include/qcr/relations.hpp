#pragma once

// Evaluates the complementarity identities as residuals with per-term
// breakdowns. Each verifier emits one report per applicable relation;
// inapplicable relations are omitted rather than reported as failures.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qcr/measures.hpp"
#include "qcr/states.hpp"

namespace qcr {

enum class RelationKind { Identity, LowerBound };

struct RelationReport {
    std::string relation_id;
    RelationKind kind = RelationKind::Identity;
    std::vector<std::pair<std::string, double>> terms;  // insertion-ordered
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs
    double tolerance = 0.0;
    bool pass = false;

    // |residual| for identities; violation depth for lower bounds.
    double deviation() const {
        return kind == RelationKind::Identity ? std::abs(residual) : std::max(0.0, -residual);
    }
};

struct RelationConfig {
    double identity_tol = 1e-9;   // relations among exactly computed quantities
    double wootters_tol = 1e-8;   // relations involving the Wootters spectrum
    double monogamy_tol = 1e-8;   // slack floor for the sharing inequality
    double ls_optimum_tol = 1e-3; // optimality signature of the BSA solver
    double ls_identity_tol = 1e-9;

    static RelationConfig uniform(double t) { return RelationConfig{t, t, t, t, t}; }
};

namespace detail {

inline RelationReport make_identity(std::string id, std::vector<std::pair<std::string, double>> terms, double lhs,
                                    double rhs, double tol) {
    RelationReport r;
    r.relation_id = std::move(id);
    r.kind = RelationKind::Identity;
    r.terms = std::move(terms);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = lhs - rhs;
    r.tolerance = tol;
    r.pass = std::abs(r.residual) <= tol;
    return r;
}

inline RelationReport make_lower_bound(std::string id, std::vector<std::pair<std::string, double>> terms, double lhs,
                                       double rhs, double tol) {
    RelationReport r;
    r.relation_id = std::move(id);
    r.kind = RelationKind::LowerBound;
    r.terms = std::move(terms);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = lhs - rhs;
    r.tolerance = tol;
    r.pass = r.residual >= -tol;
    return r;
}

}  // namespace detail

// Relations for pure states: eq6 and eq7 always; eq1 per qubit when n = 2;
// eq12 when n = 3.
inline std::vector<RelationReport> verify_pure(const PureState& psi, const RelationConfig& cfg = {}) {
    if (psi.n_qubits < 1 || psi.n_qubits > 5)
        throw std::invalid_argument("verify_pure: qubit count must lie in [1, 5]");
    const std::size_t n = psi.n_qubits;

    std::vector<double> marg_mixedness(n);
    std::vector<SingleQubitProperties> props(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t keep[1] = {k};
        const DensityMatrix rho_k = marginal_of_pure(psi, keep);
        marg_mixedness[k] = mixedness(rho_k);
        props[k] = single_qubit_properties(rho_k);
    }

    std::vector<RelationReport> reports;

    {
        std::vector<std::pair<std::string, double>> terms;
        double lhs = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            terms.emplace_back("M_q" + std::to_string(k), marg_mixedness[k]);
            terms.emplace_back("s2bar_q" + std::to_string(k), props[k].s2bar);
            lhs += marg_mixedness[k] + props[k].s2bar;
        }
        reports.push_back(detail::make_identity("eq6", std::move(terms), lhs, 0.5 * double(n), cfg.identity_tol));
    }
    {
        std::vector<std::pair<std::string, double>> terms;
        double lhs = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double tau_k = 2.0 * marg_mixedness[k];
            terms.emplace_back("tau_q" + std::to_string(k), tau_k);
            terms.emplace_back("s2bar_q" + std::to_string(k), props[k].s2bar);
            lhs += tau_k + 2.0 * props[k].s2bar;
        }
        reports.push_back(detail::make_identity("eq7", std::move(terms), lhs, double(n), cfg.identity_tol));
    }

    if (n == 2) {
        const double c = concurrence_pure(psi);
        for (std::size_t k = 0; k < 2; ++k) {
            const double nu2 = props[k].coherence * props[k].coherence;
            const double p2 = props[k].predictability * props[k].predictability;
            reports.push_back(detail::make_identity(
                "eq1.q" + std::to_string(k),
                {{"C2", c * c}, {"nu2", nu2}, {"p2", p2}}, c * c + nu2 + p2, 1.0, cfg.identity_tol));
        }
    }

    if (n == 3) {
        const ResidualTangleReport rt = residual_tangle(psi);
        const double bracket = rt.tau_12 + rt.tau_13 + rt.tau_23 + props[0].s2bar + props[1].s2bar + props[2].s2bar;
        reports.push_back(detail::make_identity(
            "eq12",
            {{"tau_123", rt.tau_123},
             {"tau_12", rt.tau_12},
             {"tau_13", rt.tau_13},
             {"tau_23", rt.tau_23},
             {"s2bar_q0", props[0].s2bar},
             {"s2bar_q1", props[1].s2bar},
             {"s2bar_q2", props[2].s2bar}},
            rt.tau_123 + (2.0 / 3.0) * bracket, 1.0, cfg.wootters_tol));
    }
    return reports;
}

// Relations for an arbitrary two-qubit density matrix:
// eq13, eq14, eq17, eq19, eq20, eq27, eq28.
inline std::vector<RelationReport> verify_two_qubit(const DensityMatrix& rho, const RelationConfig& cfg = {}) {
    if (rho.n_qubits != 2) throw std::invalid_argument("verify_two_qubit: expected a two-qubit state");

    const double m_total = mixedness(rho);
    const double tr_flip = tr_rho_rhotilde(rho);
    const double d_hs = hs_to_spinflip(rho);
    const double indist = 1.0 - d_hs * d_hs;
    const double tau = tangle(rho);
    const double eta = separable_uncertainty(rho);

    double m_k[2], s2bar[2];
    for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t keep[1] = {k};
        const DensityMatrix rho_k = marginal(rho, keep);
        m_k[k] = mixedness(rho_k);
        s2bar[k] = single_qubit_properties(rho_k).s2bar;
    }

    std::vector<RelationReport> reports;
    reports.push_back(detail::make_identity(
        "eq13", {{"tr_rho_rhotilde", tr_flip}, {"M", m_total}, {"M_q0", m_k[0]}, {"M_q1", m_k[1]}},
        tr_flip + m_total, m_k[0] + m_k[1], cfg.identity_tol));
    reports.push_back(detail::make_identity(
        "eq14", {{"tr_rho_rhotilde", tr_flip}, {"M", m_total}, {"s2bar_q0", s2bar[0]}, {"s2bar_q1", s2bar[1]}},
        tr_flip + m_total + s2bar[0] + s2bar[1], 1.0, cfg.identity_tol));
    reports.push_back(detail::make_identity(
        "eq17", {{"tr_rho_rhotilde", tr_flip}, {"M", m_total}, {"I", indist}},
        tr_flip + m_total, indist, cfg.identity_tol));
    reports.push_back(detail::make_identity(
        "eq19", {{"I", indist}, {"s2bar_q0", s2bar[0]}, {"s2bar_q1", s2bar[1]}},
        indist + s2bar[0] + s2bar[1], 1.0, cfg.identity_tol));
    reports.push_back(detail::make_identity(
        "eq20", {{"D_HS", d_hs}, {"s2bar_q0", s2bar[0]}, {"s2bar_q1", s2bar[1]}},
        d_hs, std::sqrt(std::max(0.0, s2bar[0] + s2bar[1])), cfg.identity_tol));
    reports.push_back(detail::make_identity(
        "eq27", {{"eta", eta}, {"M_q0", m_k[0]}, {"M_q1", m_k[1]}, {"tau", tau}},
        eta, m_k[0] + m_k[1] - tau, cfg.wootters_tol));
    reports.push_back(detail::make_identity(
        "eq28", {{"eta", eta}, {"tau", tau}, {"s2bar_q0", s2bar[0]}, {"s2bar_q1", s2bar[1]}},
        eta + tau + s2bar[0] + s2bar[1], 1.0, cfg.wootters_tol));
    return reports;
}

// Entanglement-sharing inequality, one report per pivot qubit.
inline std::vector<RelationReport> verify_monogamy(const PureState& psi, const RelationConfig& cfg = {}) {
    if (psi.n_qubits != 3) throw std::invalid_argument("verify_monogamy: expected a three-qubit state");
    const ResidualTangleReport rt = residual_tangle(psi);
    const double one_vs_rest[3] = {rt.tau_1_23, rt.tau_2_13, rt.tau_3_12};
    const double pair_sum[3] = {rt.tau_12 + rt.tau_13, rt.tau_12 + rt.tau_23, rt.tau_13 + rt.tau_23};

    std::vector<RelationReport> reports;
    for (std::size_t k = 0; k < 3; ++k) {
        reports.push_back(detail::make_lower_bound(
            "eq8.pivot" + std::to_string(k),
            {{"tau_pivot_rest", one_vs_rest[k]}, {"pair_tangle_sum", pair_sum[k]}},
            one_vs_rest[k], pair_sum[k], cfg.monogamy_tol));
    }
    return reports;
}

// Variance/covariance decomposition of Tr(rho rho~) + M(rho) for states in
// the nine-parameter canonical form, evaluated from both sides independently.
struct Eq16Report {
    double variances[4] = {0.0, 0.0, 0.0, 0.0};  // omega_i (1 - omega_i)
    double cov_14 = 0.0;                         // -omega_1 omega_4
    double cov_23 = 0.0;                         // -omega_2 omega_3
    double mean_sq_coherence = 0.0;              // (nu_1^2 + nu_2^2) / 2
    double lhs = 0.0;                            // Tr(rho rho~) + M(rho), via measures
    double rhs = 0.0;                            // from the parameters
    double residual = 0.0;
    bool pass = false;
    double coherence_residual_q0 = 0.0;  // |nu(rho_c marginal) - 4|a||
    double coherence_residual_q1 = 0.0;
};

inline Eq16Report verify_eq16(const Form15Params& p, const RelationConfig& cfg = {}) {
    const DensityMatrix rho = form15_state(p);

    Eq16Report r;
    for (std::size_t i = 0; i < 4; ++i) r.variances[i] = p.omega[i] * (1.0 - p.omega[i]);
    r.cov_14 = -p.omega[0] * p.omega[3];
    r.cov_23 = -p.omega[1] * p.omega[2];

    double nu[2];
    for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t keep[1] = {k};
        nu[k] = single_qubit_properties(marginal(rho, keep)).coherence;
    }
    r.mean_sq_coherence = 0.5 * (nu[0] * nu[0] + nu[1] * nu[1]);

    r.lhs = tr_rho_rhotilde(rho) + mixedness(rho);
    r.rhs = r.variances[0] + r.variances[1] + r.variances[2] + r.variances[3] - 2.0 * r.cov_14 - 2.0 * r.cov_23 -
            r.mean_sq_coherence;
    r.residual = r.lhs - r.rhs;
    const double four_a = 4.0 * std::abs(p.a);
    r.coherence_residual_q0 = std::abs(nu[0] - four_a);
    r.coherence_residual_q1 = std::abs(nu[1] - four_a);
    r.pass = std::abs(r.residual) <= cfg.identity_tol && r.coherence_residual_q0 <= cfg.identity_tol &&
             r.coherence_residual_q1 <= cfg.identity_tol;
    return r;
}

struct BatchSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    double max_abs_residual = 0.0;
};

inline BatchSummary summarize(std::span<const RelationReport> reports) {
    BatchSummary s;
    s.total = reports.size();
    for (const RelationReport& r : reports) {
        if (r.pass) ++s.passed;
        s.max_abs_residual = std::max(s.max_abs_residual, r.deviation());
    }
    return s;
}

}  // namespace qcr
