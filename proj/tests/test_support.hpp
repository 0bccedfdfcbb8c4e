#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <vector>

#include "qcr/linalg.hpp"
#include "qcr/rng.hpp"
#include "qcr/states.hpp"

namespace qcr::testing {

inline ComplexMatrix random_complex(std::size_t dim, Rng& rng) {
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = rng.next_complex_gaussian();
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
    const ComplexMatrix g = random_complex(dim, rng);
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = 0.5 * (g(r, c) + std::conj(g(c, r)));
    return m;
}

// Haar-distributed single-qubit unitary: Gram-Schmidt of two Gaussian columns.
inline ComplexMatrix random_unitary2(Rng& rng) {
    cplx a = rng.next_complex_gaussian(), b = rng.next_complex_gaussian();
    double n1 = std::sqrt(std::norm(a) + std::norm(b));
    a /= n1;
    b /= n1;
    cplx c = rng.next_complex_gaussian(), d = rng.next_complex_gaussian();
    const cplx overlap = std::conj(a) * c + std::conj(b) * d;
    c -= overlap * a;
    d -= overlap * b;
    const double n2 = std::sqrt(std::norm(c) + std::norm(d));
    ComplexMatrix u(2);
    u(0, 0) = a;
    u(1, 0) = b;
    u(0, 1) = c / n2;
    u(1, 1) = d / n2;
    return u;
}

inline DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMatrix& u0, const ComplexMatrix& u1) {
    const ComplexMatrix u = kron(u0, u1);
    return DensityMatrix::trusted(rho.n_qubits, u * rho.matrix * u.adjoint());
}

// Product of independent Haar-random single-qubit pure states.
inline PureState random_product_pure(std::size_t n_qubits, Rng& rng) {
    std::vector<cplx> amp{1.0};
    for (std::size_t q = 0; q < n_qubits; ++q) {
        const PureState single = random_pure(1, rng);
        std::vector<cplx> next(amp.size() * 2);
        for (std::size_t i = 0; i < amp.size(); ++i) {
            next[2 * i] = amp[i] * single.amplitudes[0];
            next[2 * i + 1] = amp[i] * single.amplitudes[1];
        }
        amp = std::move(next);
    }
    return PureState::validated(n_qubits, std::move(amp));
}

}  // namespace qcr::testing
