#pragma once

// Dense complex matrix arithmetic and the spectral primitives used by the
// rest of the library. Everything here is value-semantic and pure; matrices
// are immutable after construction unless explicitly mutated by the owner.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcr {

using cplx = std::complex<double>;

class ComplexMatrix {
  public:
    ComplexMatrix() : dim_(0) {}

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, cplx(0.0, 0.0)) {}

    ComplexMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_)
            throw std::invalid_argument("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                                        " does not match dim^2 = " + std::to_string(dim_ * dim_));
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix out(dim_);
        for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = std::conj(entries_[i]);
        return out;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& e : entries_) s += std::norm(e);
        return std::sqrt(s);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o, "+");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o, "-");
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (cplx& e : entries_) e *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b, "*");
        const std::size_t n = a.dim_;
        ComplexMatrix out(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx(0.0, 0.0)) continue;
                for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    // Largest entrywise deviation from o.
    double max_abs_diff(const ComplexMatrix& o) const {
        check_same_dim(o, "max_abs_diff");
        double worst = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            worst = std::max(worst, std::abs(entries_[i] - o.entries_[i]));
        return worst;
    }

    double max_hermiticity_violation() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = r; c < dim_; ++c)
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return worst;
    }

  private:
    void check_same_dim(const ComplexMatrix& o, const char* op) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument(std::string("ComplexMatrix: dimension mismatch in '") + op + "': " +
                                        std::to_string(dim_) + " vs " + std::to_string(o.dim_));
    }

    std::size_t dim_;
    std::vector<cplx> entries_;
};

inline cplx inner_product(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner_product: length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Kronecker product, (a (x) b)[(i*db+k),(j*db+l)] = a[i,j] * b[k,l].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

namespace detail {

inline std::size_t checked_qubit_dim(const ComplexMatrix& m, std::size_t n_qubits, const char* where) {
    const std::size_t dim = std::size_t(1) << n_qubits;
    if (m.dim() != dim)
        throw std::invalid_argument(std::string(where) + ": matrix dim " + std::to_string(m.dim()) +
                                    " does not equal 2^" + std::to_string(n_qubits));
    return dim;
}

// Qubit 0 is the leftmost (most significant) tensor factor everywhere.
inline std::size_t qubit_bit(std::size_t index, std::size_t qubit, std::size_t n_qubits) {
    return (index >> (n_qubits - 1 - qubit)) & 1u;
}

// Compact sub-index of `index` over the given ascending qubit positions.
inline std::size_t extract_bits(std::size_t index, std::span<const std::size_t> qubits, std::size_t n_qubits) {
    std::size_t out = 0;
    for (std::size_t q : qubits) out = (out << 1) | qubit_bit(index, q, n_qubits);
    return out;
}

}  // namespace detail

// Trace out every qubit not in `keep` (treated as a set; output qubit order is
// ascending original order). Trace is preserved.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t n_qubits, std::span<const std::size_t> keep) {
    const std::size_t dim = detail::checked_qubit_dim(m, n_qubits, "partial_trace");
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (std::size_t q : kept)
        if (q >= n_qubits)
            throw std::invalid_argument("partial_trace: qubit index " + std::to_string(q) + " out of range for n = " +
                                        std::to_string(n_qubits));
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n_qubits; ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

    ComplexMatrix out(std::size_t(1) << kept.size());
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t kr = detail::extract_bits(r, kept, n_qubits);
        const std::size_t tr = detail::extract_bits(r, traced, n_qubits);
        for (std::size_t c = 0; c < dim; ++c) {
            if (detail::extract_bits(c, traced, n_qubits) != tr) continue;
            out(kr, detail::extract_bits(c, kept, n_qubits)) += m(r, c);
        }
    }
    return out;
}

// Transposition applied to one tensor factor only; involutive.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t n_qubits, std::size_t transpose_on) {
    const std::size_t dim = detail::checked_qubit_dim(m, n_qubits, "partial_transpose");
    if (transpose_on >= n_qubits)
        throw std::invalid_argument("partial_transpose: qubit index " + std::to_string(transpose_on) +
                                    " out of range for n = " + std::to_string(n_qubits));
    const std::size_t mask = std::size_t(1) << (n_qubits - 1 - transpose_on);
    ComplexMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            const std::size_t rs = (r & ~mask) | (c & mask);
            const std::size_t cs = (c & ~mask) | (r & mask);
            out(rs, cs) = m(r, c);
        }
    return out;
}

struct HermEigResult {
    std::vector<double> eigenvalues;  // sorted descending
    ComplexMatrix eigenvectors;       // column j pairs with eigenvalue j
};

namespace detail {

// One complex Jacobi rotation zeroing a(p,q). Maintains Hermiticity exactly by
// mirroring the updated row/column. `vectors` may be null when only the
// spectrum is needed.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix* vectors, std::size_t p, std::size_t q) {
    const cplx beta = a(p, q);
    const double ab = std::abs(beta);
    if (ab == 0.0) return;
    const cplx phase = beta / ab;
    const double alpha = std::real(a(p, p));
    const double gamma = std::real(a(q, q));
    const double zeta = (gamma - alpha) / (2.0 * ab);
    const double sign = zeta >= 0.0 ? 1.0 : -1.0;
    const double t = sign / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = c * akp - s * std::conj(phase) * akq;
        a(k, q) = s * phase * akp + c * akq;
        a(p, k) = std::conj(a(k, p));
        a(q, k) = std::conj(a(k, q));
    }
    a(p, p) = alpha * c * c - 2.0 * ab * c * s + gamma * s * s;
    a(q, q) = alpha * s * s + 2.0 * ab * c * s + gamma * c * c;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    if (vectors) {
        ComplexMatrix& v = *vectors;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = c * vkp - s * std::conj(phase) * vkq;
            v(k, q) = s * phase * vkp + c * vkq;
        }
    }
}

inline double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = r + 1; c < a.dim(); ++c) s += std::norm(a(r, c));
    return std::sqrt(2.0 * s);
}

// Cyclic Jacobi sweeps; stops once the off-diagonal Frobenius mass drops below
// 1e-13 relative to max(1, ||A||_F).
inline std::vector<double> jacobi_eigensolve(ComplexMatrix& a, ComplexMatrix* vectors) {
    const std::size_t n = a.dim();
    const double tol = 1e-13 * std::max(1.0, a.frobenius_norm());
    constexpr int kMaxSweeps = 60;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_frobenius(a) <= tol) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, vectors, p, q);
    }
    if (sweep == kMaxSweeps && offdiag_frobenius(a) > tol)
        throw std::runtime_error("jacobi_eigensolve: no convergence after 60 sweeps");
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = std::real(a(i, i));
    return eig;
}

}  // namespace detail

// Spectral decomposition of a Hermitian matrix (symmetrized as (m + m^dag)/2
// before solving). Eigenvalues descending; ties keep sweep order.
inline HermEigResult herm_eig(const ComplexMatrix& m) {
    const double herm_tol = 1e-9;
    if (m.max_hermiticity_violation() > herm_tol)
        throw std::invalid_argument("herm_eig: input is not Hermitian within 1e-9 per entry");
    const std::size_t n = m.dim();
    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    std::vector<double> eig = detail::jacobi_eigensolve(a, &v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return eig[i] > eig[j]; });

    HermEigResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = eig[order[j]];
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, j) = v(r, order[j]);
    }
    return out;
}

// Eigenvalues only (descending), skipping eigenvector accumulation.
inline std::vector<double> herm_eigenvalues(const ComplexMatrix& m) {
    if (m.max_hermiticity_violation() > 1e-9)
        throw std::invalid_argument("herm_eigenvalues: input is not Hermitian within 1e-9 per entry");
    const std::size_t n = m.dim();
    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    std::vector<double> eig = detail::jacobi_eigensolve(a, nullptr);
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

inline double min_eigenvalue(const ComplexMatrix& m) {
    std::vector<double> eig = herm_eigenvalues(m);
    return eig.back();
}

// Hermitian PSD square root. Eigenvalues in [-1e-9, 0) clip to zero; anything
// below -1e-9 is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    HermEigResult es = herm_eig(m);
    const std::size_t n = m.dim();
    for (double& lambda : es.eigenvalues) {
        if (lambda < -1e-9)
            throw std::invalid_argument("psd_sqrt: eigenvalue " + std::to_string(lambda) + " below -1e-9");
        lambda = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += es.eigenvectors(r, j) * es.eigenvalues[j] * std::conj(es.eigenvectors(c, j));
            out(r, c) = s;
        }
    return out;
}

// Hilbert-Schmidt distance sqrt(Tr[(a-b)^2] / 2) for Hermitian inputs.
inline double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("hs_distance: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()));
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) s += std::norm(a(r, c) - b(r, c));
    return std::sqrt(0.5 * s);
}

inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

// sigma_y^(x)n, cached per qubit count (n <= 5 at desk scale).
inline const ComplexMatrix& pauli_y_n(std::size_t n_qubits) {
    static const std::vector<ComplexMatrix> cache = [] {
        std::vector<ComplexMatrix> c;
        c.push_back(ComplexMatrix::identity(1));
        for (std::size_t n = 1; n <= 6; ++n) c.push_back(kron(c.back(), pauli_y()));
        return c;
    }();
    if (n_qubits == 0 || n_qubits >= cache.size())
        throw std::invalid_argument("pauli_y_n: qubit count out of supported range");
    return cache[n_qubits];
}

}  // namespace qcr
