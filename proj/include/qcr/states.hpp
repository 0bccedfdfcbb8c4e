#pragma once

// State types and constructors for every family the library works with:
// computational basis states, Bell/GHZ/W states, Werner states, the
// rank-deficient maximally-entangled-for-fixed-marginals family, the
// nine-parameter canonical two-qubit form, and seeded Haar / Ginibre samplers.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcr/linalg.hpp"
#include "qcr/rng.hpp"

namespace qcr {

// Named violation so callers (and the CLI) can report which contract failed.
class StateValidationError : public std::invalid_argument {
  public:
    StateValidationError(std::string invariant, const std::string& message)
        : std::invalid_argument("state invariant '" + invariant + "' violated: " + message),
          invariant_(std::move(invariant)) {}

    const std::string& invariant() const { return invariant_; }

  private:
    std::string invariant_;
};

struct PureState {
    std::size_t n_qubits = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }

    double norm() const {
        double s = 0.0;
        for (const cplx& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }

    // Validating constructor; requires unit norm within 1e-10.
    static PureState validated(std::size_t n_qubits, std::vector<cplx> amplitudes) {
        if (n_qubits < 1) throw StateValidationError("shape", "n_qubits must be >= 1");
        const std::size_t dim = std::size_t(1) << n_qubits;
        if (amplitudes.size() != dim)
            throw StateValidationError("shape", "expected " + std::to_string(dim) + " amplitudes, got " +
                                                    std::to_string(amplitudes.size()));
        PureState psi{n_qubits, std::move(amplitudes)};
        if (std::abs(psi.norm() - 1.0) > 1e-10)
            throw StateValidationError("norm", "||psi|| = " + std::to_string(psi.norm()) + " (must be 1 within 1e-10)");
        return psi;
    }
};

struct DensityMatrix {
    std::size_t n_qubits = 0;
    ComplexMatrix matrix;

    std::size_t dim() const { return matrix.dim(); }

    // Full contract check: Hermitian (1e-9 per entry), unit trace (1e-9),
    // no eigenvalue below -1e-9. Throws StateValidationError naming the
    // first violated invariant.
    static DensityMatrix validated(std::size_t n_qubits, ComplexMatrix m) {
        if (n_qubits < 1) throw StateValidationError("shape", "n_qubits must be >= 1");
        const std::size_t dim = std::size_t(1) << n_qubits;
        if (m.dim() != dim)
            throw StateValidationError("shape",
                                       "expected dim " + std::to_string(dim) + ", got " + std::to_string(m.dim()));
        const double herm = m.max_hermiticity_violation();
        if (herm > 1e-9)
            throw StateValidationError("hermitian", "max |m - m^dag| entry = " + std::to_string(herm) +
                                                        " (must be <= 1e-9)");
        const cplx tr = m.trace();
        if (std::abs(tr - cplx(1.0, 0.0)) > 1e-9)
            throw StateValidationError("trace", "Tr = " + std::to_string(std::real(tr)) + (std::imag(tr) >= 0 ? "+" : "") +
                                                    std::to_string(std::imag(tr)) + "i (must be 1 within 1e-9)");
        const double min_eig = min_eigenvalue(m);
        if (min_eig < -1e-9)
            throw StateValidationError("psd", "min eigenvalue " + std::to_string(min_eig) + " (must be >= -1e-9)");
        return DensityMatrix{n_qubits, std::move(m)};
    }

    // For internal call sites whose output is valid by construction
    // (partial traces, convex combinations of valid states, ...).
    static DensityMatrix trusted(std::size_t n_qubits, ComplexMatrix m) { return DensityMatrix{n_qubits, std::move(m)}; }
};

inline DensityMatrix to_density(const PureState& psi) {
    ComplexMatrix m(psi.dim());
    for (std::size_t r = 0; r < psi.dim(); ++r)
        for (std::size_t c = 0; c < psi.dim(); ++c) m(r, c) = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
    return DensityMatrix::trusted(psi.n_qubits, std::move(m));
}

// Marginal of a pure state without forming the full density matrix:
// out[A][B] = sum_t psi[A,t] conj(psi[B,t]). O(2^(n+|keep|)) instead of O(4^n).
inline DensityMatrix marginal_of_pure(const PureState& psi, std::span<const std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("marginal_of_pure: keep set is empty");
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (std::size_t q : kept)
        if (q >= psi.n_qubits) throw std::invalid_argument("marginal_of_pure: qubit index out of range");

    const std::size_t dim = psi.dim();
    const std::size_t out_dim = std::size_t(1) << kept.size();
    // Bucket amplitudes by the traced-out sub-index.
    std::vector<std::size_t> kept_index(dim);
    std::vector<std::size_t> traced_index(dim);
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < psi.n_qubits; ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
    for (std::size_t x = 0; x < dim; ++x) {
        kept_index[x] = detail::extract_bits(x, kept, psi.n_qubits);
        traced_index[x] = detail::extract_bits(x, traced, psi.n_qubits);
    }
    const std::size_t traced_dim = dim >> kept.size();
    std::vector<cplx> bucket(out_dim * traced_dim, cplx(0.0, 0.0));
    for (std::size_t x = 0; x < dim; ++x) bucket[kept_index[x] * traced_dim + traced_index[x]] = psi.amplitudes[x];

    ComplexMatrix out(out_dim);
    for (std::size_t a = 0; a < out_dim; ++a)
        for (std::size_t b = 0; b < out_dim; ++b) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t)
                s += bucket[a * traced_dim + t] * std::conj(bucket[b * traced_dim + t]);
            out(a, b) = s;
        }
    return DensityMatrix::trusted(kept.size(), std::move(out));
}

inline DensityMatrix marginal(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    ComplexMatrix m = partial_trace(rho.matrix, rho.n_qubits, keep);
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return DensityMatrix::trusted(kept.size(), std::move(m));
}

// ---------------------------------------------------------------------------
// Named pure-state families

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

// Phase conventions: Phi+- = (|00> +- |11>)/sqrt2, Psi+- = (|01> +- |10>)/sqrt2.
inline PureState bell_state(BellState which) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<cplx> amp(4, cplx(0.0, 0.0));
    switch (which) {
        case BellState::PhiPlus:  amp[0] = r; amp[3] = r;  break;
        case BellState::PhiMinus: amp[0] = r; amp[3] = -r; break;
        case BellState::PsiPlus:  amp[1] = r; amp[2] = r;  break;
        case BellState::PsiMinus: amp[1] = r; amp[2] = -r; break;
    }
    return PureState{2, std::move(amp)};
}

inline PureState basis_state(const std::string& bits) {
    if (bits.empty()) throw std::invalid_argument("basis_state: empty bitstring");
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("basis_state: malformed bitstring '" + bits + "'");
        index = (index << 1) | std::size_t(ch - '0');
    }
    std::vector<cplx> amp(std::size_t(1) << bits.size(), cplx(0.0, 0.0));
    amp[index] = 1.0;
    return PureState{bits.size(), std::move(amp)};
}

inline PureState ghz_state(std::size_t n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("ghz_state: need n >= 2");
    std::vector<cplx> amp(std::size_t(1) << n_qubits, cplx(0.0, 0.0));
    const double r = 1.0 / std::sqrt(2.0);
    amp.front() = r;
    amp.back() = r;
    return PureState{n_qubits, std::move(amp)};
}

inline PureState w_state(std::size_t n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("w_state: need n >= 2");
    std::vector<cplx> amp(std::size_t(1) << n_qubits, cplx(0.0, 0.0));
    const double r = 1.0 / std::sqrt(double(n_qubits));
    for (std::size_t q = 0; q < n_qubits; ++q) amp[std::size_t(1) << q] = r;
    return PureState{n_qubits, std::move(amp)};
}

// ---------------------------------------------------------------------------
// Two-qubit mixed families

struct WernerParams {
    double lambda = 0.0;
    BellState bell_choice = BellState::PhiPlus;
};

// lambda |Bell><Bell| + (1-lambda)/4 I4.
inline DensityMatrix werner(const WernerParams& p) {
    if (p.lambda < 0.0 || p.lambda > 1.0)
        throw std::invalid_argument("werner: lambda = " + std::to_string(p.lambda) + " outside [0, 1]");
    const DensityMatrix bell = to_density(bell_state(p.bell_choice));
    ComplexMatrix m = p.lambda * cplx(1.0, 0.0) * bell.matrix;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) += (1.0 - p.lambda) / 4.0;
    return DensityMatrix::trusted(2, std::move(m));
}

struct MEMSParams {
    double x1 = 0.0;
    double x2 = 0.0;
};

// Corner entries x1, x2, off-corner sqrt(x1 x2), middle entry 1 - x1 - x2.
inline DensityMatrix mems(const MEMSParams& p) {
    if (p.x1 < 0.0 || p.x1 > 1.0 || p.x2 < 0.0 || p.x2 > 1.0)
        throw std::invalid_argument("mems: x1, x2 must lie in [0, 1]");
    if (p.x1 + p.x2 > 1.0 + 1e-15)
        throw std::invalid_argument("mems: constraint x1 + x2 <= 1 violated");
    ComplexMatrix m(4);
    m(0, 0) = p.x1;
    m(3, 3) = p.x2;
    m(0, 3) = m(3, 0) = std::sqrt(p.x1 * p.x2);
    m(2, 2) = std::max(0.0, 1.0 - p.x1 - p.x2);
    return DensityMatrix::validated(2, std::move(m));
}

struct Form15Params {
    double omega[4] = {0.0, 0.0, 0.0, 0.0};
    cplx a = 0.0;
    cplx e = 0.0;
    cplx f = 0.0;
};

// Nine-parameter canonical two-qubit form: diagonal omegas, every
// single-coherence slot equal to a, corner e, middle f, Hermitian mirror.
// Positivity is not automatic; invalid parameter sets are rejected.
inline DensityMatrix form15_state(const Form15Params& p) {
    double sum = 0.0;
    for (double w : p.omega) {
        if (w < 0.0 || w > 1.0) throw std::invalid_argument("form15_state: omega entries must lie in [0, 1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("form15_state: omegas sum to " + std::to_string(sum) + ", not 1");
    ComplexMatrix m(4);
    m(0, 0) = p.omega[0];
    m(1, 1) = p.omega[1];
    m(2, 2) = p.omega[2];
    m(3, 3) = p.omega[3];
    m(0, 1) = m(0, 2) = m(1, 3) = m(2, 3) = p.a;
    m(1, 0) = m(2, 0) = m(3, 1) = m(3, 2) = std::conj(p.a);
    m(0, 3) = p.e;
    m(3, 0) = std::conj(p.e);
    m(1, 2) = p.f;
    m(2, 1) = std::conj(p.f);
    return DensityMatrix::validated(2, std::move(m));
}

// ---------------------------------------------------------------------------
// Seeded samplers

inline PureState random_pure(std::size_t n_qubits, Rng& rng) {
    if (n_qubits < 1 || n_qubits > 5) throw std::invalid_argument("random_pure: n must lie in [1, 5]");
    const std::size_t dim = std::size_t(1) << n_qubits;
    std::vector<cplx> amp(dim);
    for (cplx& a : amp) a = rng.next_complex_gaussian();
    double norm = 0.0;
    for (const cplx& a : amp) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (cplx& a : amp) a /= norm;
    return PureState{n_qubits, std::move(amp)};
}

inline PureState random_pure(std::size_t n_qubits, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure(n_qubits, rng);
}

// Ginibre induced measure: G G^dag / Tr(G G^dag) with G of shape 2^n x rank.
inline DensityMatrix random_mixed(std::size_t n_qubits, std::size_t rank, Rng& rng) {
    if (n_qubits < 1 || n_qubits > 5) throw std::invalid_argument("random_mixed: n must lie in [1, 5]");
    const std::size_t dim = std::size_t(1) << n_qubits;
    if (rank < 1 || rank > dim) throw std::invalid_argument("random_mixed: rank must lie in [1, 2^n]");
    std::vector<cplx> g(dim * rank);
    for (cplx& v : g) v = rng.next_complex_gaussian();
    ComplexMatrix m(dim);
    double tr = 0.0;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < rank; ++k) s += g[r * rank + k] * std::conj(g[c * rank + k]);
            m(r, c) = s;
            if (r == c) tr += std::real(s);
        }
    m *= cplx(1.0 / tr, 0.0);
    return DensityMatrix::trusted(n_qubits, std::move(m));
}

inline DensityMatrix random_mixed(std::size_t n_qubits, std::size_t rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_mixed(n_qubits, rank, rng);
}

// Random valid nine-parameter form: Dirichlet(1,1,1,1) diagonal, Gaussian
// coherences shrunk until the matrix passes the PSD check. Fixture generator;
// the induced distribution is unimportant, determinism and validity are.
inline Form15Params random_form15_params(Rng& rng) {
    Form15Params p;
    double sum = 0.0;
    double w[4];
    for (double& wi : w) {
        wi = -std::log(1.0 - rng.next_double());
        sum += wi;
    }
    for (std::size_t i = 0; i < 4; ++i) p.omega[i] = w[i] / sum;
    cplx a = 0.15 * rng.next_complex_gaussian();
    cplx e = 0.15 * rng.next_complex_gaussian();
    cplx f = 0.15 * rng.next_complex_gaussian();
    for (int attempt = 0; attempt < 64; ++attempt) {
        p.a = a;
        p.e = e;
        p.f = f;
        try {
            form15_state(p);
            return p;
        } catch (const StateValidationError&) {
            a *= 0.5;
            e *= 0.5;
            f *= 0.5;
        }
    }
    p.a = p.e = p.f = 0.0;  // diagonal matrix is always valid
    return p;
}

// ---------------------------------------------------------------------------
// Flat family-spec grammar used by the CLI: name:param1[,param2]

struct ParsedState {
    std::optional<PureState> pure;
    std::optional<DensityMatrix> density;
};

namespace detail {

inline BellState parse_bell_name(const std::string& name) {
    if (name == "phi+") return BellState::PhiPlus;
    if (name == "phi-") return BellState::PhiMinus;
    if (name == "psi+") return BellState::PsiPlus;
    if (name == "psi-") return BellState::PsiMinus;
    throw std::invalid_argument("unknown Bell state '" + name + "' (expected phi+, phi-, psi+, psi-)");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace detail

// Accepts: basis:<bits>, bell:<which>, ghz:<n>, w:<n>, werner:<lambda>[,<bell>],
// mems:<x1>,<x2>.
inline ParsedState parse_state_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("state spec '" + spec + "' is missing ':' (expected name:params)");
    const std::string name = spec.substr(0, colon);
    const std::vector<std::string> args = detail::split(spec.substr(colon + 1), ',');

    ParsedState out;
    if (name == "basis") {
        out.pure = basis_state(args.at(0));
    } else if (name == "bell") {
        out.pure = bell_state(detail::parse_bell_name(args.at(0)));
    } else if (name == "ghz") {
        out.pure = ghz_state(std::stoul(args.at(0)));
    } else if (name == "w") {
        out.pure = w_state(std::stoul(args.at(0)));
    } else if (name == "werner") {
        WernerParams p;
        p.lambda = std::stod(args.at(0));
        if (args.size() > 1) p.bell_choice = detail::parse_bell_name(args.at(1));
        out.density = werner(p);
    } else if (name == "mems") {
        if (args.size() < 2) throw std::invalid_argument("mems spec needs two parameters: mems:<x1>,<x2>");
        out.density = mems(MEMSParams{std::stod(args[0]), std::stod(args[1])});
    } else {
        throw std::invalid_argument("unknown state family '" + name + "'");
    }
    return out;
}

}  // namespace qcr
