#include <catch_amalgamated.hpp>

#include "qcr/linalg.hpp"
#include "qcr/rng.hpp"
#include "test_support.hpp"

using namespace qcr;
using qcr::testing::random_complex;
using qcr::testing::random_hermitian;

namespace {

ComplexMatrix bell_phi_plus_projector() {
    ComplexMatrix m(4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

}  // namespace

TEST_CASE("kron basics") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix i4 = kron(i2, i2);
    CHECK(i4.max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

    // hand expansion of sigma_y (x) sigma_y
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    ComplexMatrix expected(4);
    expected(0, 3) = -1.0;
    expected(1, 2) = 1.0;
    expected(2, 1) = 1.0;
    expected(3, 0) = -1.0;
    CHECK(yy.max_abs_diff(expected) < 1e-15);

    const ComplexMatrix p = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    const ComplexMatrix pp = kron(p, p);
    CHECK(pp.max_abs_diff(ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0, 0.0, 0.0})) == 0.0);
}

TEST_CASE("kron entry layout") {
    Rng rng(11);
    const ComplexMatrix a = random_complex(2, rng);
    const ComplexMatrix b = random_complex(3, rng);
    const ComplexMatrix k = kron(a, b);
    REQUIRE(k.dim() == 6);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c)
                    CHECK(std::abs(k(i * 3 + r, j * 3 + c) - a(i, j) * b(r, c)) < 1e-15);
}

TEST_CASE("partial trace on known states") {
    const ComplexMatrix bell = bell_phi_plus_projector();
    const std::size_t keep0[1] = {0};
    const ComplexMatrix marg = partial_trace(bell, 2, keep0);
    ComplexMatrix half(2);
    half(0, 0) = half(1, 1) = 0.5;
    CHECK(marg.max_abs_diff(half) < 1e-15);

    ComplexMatrix zz(4);
    zz(0, 0) = 1.0;  // |00><00|
    const std::size_t keep1[1] = {1};
    const ComplexMatrix m1 = partial_trace(zz, 2, keep1);
    ComplexMatrix zero_proj(2);
    zero_proj(0, 0) = 1.0;
    CHECK(m1.max_abs_diff(zero_proj) < 1e-15);

    // GHZ two-qubit marginal by direct index contraction
    ComplexMatrix ghz(8);
    ghz(0, 0) = ghz(0, 7) = ghz(7, 0) = ghz(7, 7) = 0.5;
    const std::size_t keep01[2] = {0, 1};
    const ComplexMatrix m01 = partial_trace(ghz, 3, keep01);
    ComplexMatrix expected(4);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK(m01.max_abs_diff(expected) < 1e-15);
}

TEST_CASE("partial trace errors and trace preservation") {
    Rng rng(7);
    const ComplexMatrix m = random_hermitian(8, rng);
    const std::size_t bad[1] = {3};
    CHECK_THROWS_AS(partial_trace(m, 3, bad), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(m, 3, std::span<const std::size_t>{}), std::invalid_argument);

    for (std::size_t q = 0; q < 3; ++q) {
        const std::size_t keep[1] = {q};
        const ComplexMatrix reduced = partial_trace(m, 3, keep);
        CHECK(std::abs(reduced.trace() - m.trace()) < 1e-12);
    }
    // complementary keep-sets preserve the trace equally
    const std::size_t a[1] = {0}, b[2] = {1, 2};
    CHECK(std::abs(partial_trace(m, 3, a).trace() - partial_trace(m, 3, b).trace()) < 1e-12);
}

TEST_CASE("partial transpose") {
    Rng rng(13);
    const ComplexMatrix r1 = random_hermitian(2, rng);
    const ComplexMatrix r2 = random_hermitian(2, rng);
    const ComplexMatrix prod = kron(r1, r2);
    CHECK(partial_transpose(prod, 2, 1).max_abs_diff(kron(r1, r2.transpose())) < 1e-15);
    CHECK(partial_transpose(prod, 2, 0).max_abs_diff(kron(r1.transpose(), r2)) < 1e-15);

    const ComplexMatrix x = random_complex(4, rng);
    CHECK(partial_transpose(partial_transpose(x, 2, 0), 2, 0).max_abs_diff(x) == 0.0);

    // Bell-state partial transpose spectrum {1/2, 1/2, 1/2, -1/2}
    const std::vector<double> eig = herm_eigenvalues(partial_transpose(bell_phi_plus_projector(), 2, 0));
    CHECK(std::abs(eig[0] - 0.5) < 1e-12);
    CHECK(std::abs(eig[1] - 0.5) < 1e-12);
    CHECK(std::abs(eig[2] - 0.5) < 1e-12);
    CHECK(std::abs(eig[3] + 0.5) < 1e-12);

    CHECK_THROWS_AS(partial_transpose(x, 2, 2), std::invalid_argument);
}

TEST_CASE("herm_eig on simple matrices") {
    const HermEigResult d = herm_eig(ComplexMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0}));
    REQUIRE(d.eigenvalues.size() == 3);
    CHECK(d.eigenvalues[0] == Catch::Approx(3.0));
    CHECK(d.eigenvalues[1] == Catch::Approx(2.0));
    CHECK(d.eigenvalues[2] == Catch::Approx(1.0));

    const HermEigResult q = herm_eig(cplx(0.25, 0.0) * ComplexMatrix::identity(4));
    for (double e : q.eigenvalues) CHECK(e == Catch::Approx(0.25));

    const HermEigResult b = herm_eig(bell_phi_plus_projector());
    CHECK(b.eigenvalues[0] == Catch::Approx(1.0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(b.eigenvalues[i]) < 1e-12);
}

TEST_CASE("herm_eig reconstruction and orthonormality on random matrices") {
    Rng rng(2024);
    for (std::size_t dim : {2u, 4u, 8u}) {
        for (int trial = 0; trial < 1000; ++trial) {
            const ComplexMatrix a = random_hermitian(dim, rng);
            const HermEigResult es = herm_eig(a);

            for (std::size_t i = 0; i + 1 < dim; ++i) REQUIRE(es.eigenvalues[i] >= es.eigenvalues[i + 1]);

            ComplexMatrix rebuilt(dim);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c) {
                    cplx s = 0.0;
                    for (std::size_t j = 0; j < dim; ++j)
                        s += es.eigenvectors(r, j) * es.eigenvalues[j] * std::conj(es.eigenvectors(c, j));
                    rebuilt(r, c) = s;
                }
            const double scale = std::max(1.0, a.frobenius_norm());
            REQUIRE((rebuilt - a).frobenius_norm() <= 1e-10 * scale);

            const ComplexMatrix gram = es.eigenvectors.adjoint() * es.eigenvectors;
            REQUIRE(gram.max_abs_diff(ComplexMatrix::identity(dim)) <= 1e-10);
        }
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;  // m(1,0) stays 0
    CHECK_THROWS_AS(herm_eig(m), std::invalid_argument);
}

TEST_CASE("psd_sqrt") {
    CHECK(psd_sqrt(ComplexMatrix::identity(4)).max_abs_diff(ComplexMatrix::identity(4)) < 1e-12);
    CHECK(psd_sqrt(ComplexMatrix::diagonal(std::vector<double>{4.0, 1.0, 0.0, 0.0}))
              .max_abs_diff(ComplexMatrix::diagonal(std::vector<double>{2.0, 1.0, 0.0, 0.0})) < 1e-12);
    const ComplexMatrix bell = bell_phi_plus_projector();
    CHECK(psd_sqrt(bell).max_abs_diff(bell) < 1e-12);

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix g = random_complex(4, rng);
        ComplexMatrix psd = g * g.adjoint();
        const ComplexMatrix root = psd_sqrt(psd);
        CHECK((root * root - psd).frobenius_norm() <= 1e-8 * std::max(1.0, psd.frobenius_norm()));
        CHECK(root.max_hermiticity_violation() < 1e-10);
    }

    CHECK_THROWS_AS(psd_sqrt(ComplexMatrix::diagonal(std::vector<double>{1.0, -0.5})), std::invalid_argument);
}

TEST_CASE("hs_distance") {
    Rng rng(3);
    const ComplexMatrix a = random_hermitian(4, rng);
    CHECK(hs_distance(a, a) == 0.0);

    ComplexMatrix p00(4), p11(4);
    p00(0, 0) = 1.0;
    p11(3, 3) = 1.0;
    CHECK(hs_distance(p00, p11) == Catch::Approx(1.0));

    ComplexMatrix half(2), zero_proj(2);
    half(0, 0) = half(1, 1) = 0.5;
    zero_proj(0, 0) = 1.0;
    CHECK(hs_distance(half, zero_proj) == Catch::Approx(0.5));

    CHECK_THROWS_AS(hs_distance(a, half), std::invalid_argument);

    // symmetry and triangle inequality on random Hermitian triples
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexMatrix x = random_hermitian(4, rng);
        const ComplexMatrix y = random_hermitian(4, rng);
        const ComplexMatrix z = random_hermitian(4, rng);
        CHECK(std::abs(hs_distance(x, y) - hs_distance(y, x)) < 1e-12);
        CHECK(hs_distance(x, z) <= hs_distance(x, y) + hs_distance(y, z) + 1e-10);
    }
}

TEST_CASE("trace linearity and cyclicity") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexMatrix a = random_complex(4, rng);
        const ComplexMatrix b = random_complex(4, rng);
        CHECK(std::abs((a * b).trace() - (b * a).trace()) <= 1e-10);
        CHECK(std::abs((a + b).trace() - a.trace() - b.trace()) <= 1e-12);
    }
}

TEST_CASE("matrix construction rejects bad shapes") {
    CHECK_THROWS_AS(ComplexMatrix(2, std::vector<cplx>(3)), std::invalid_argument);
}
