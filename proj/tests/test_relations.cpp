#include <catch_amalgamated.hpp>

#include <map>

#include "qcr/relations.hpp"
#include "test_support.hpp"

using namespace qcr;

namespace {

const RelationReport& find_report(const std::vector<RelationReport>& reports, const std::string& id) {
    for (const RelationReport& r : reports)
        if (r.relation_id == id) return r;
    FAIL("missing relation " + id);
    throw std::logic_error("unreachable");
}

bool has_report(const std::vector<RelationReport>& reports, const std::string& id) {
    for (const RelationReport& r : reports)
        if (r.relation_id == id) return true;
    return false;
}

double term(const RelationReport& r, const std::string& name) {
    for (const auto& [key, value] : r.terms)
        if (key == name) return value;
    FAIL("missing term " + name + " in " + r.relation_id);
    return 0.0;
}

}  // namespace

TEST_CASE("pure-state reports for the Bell state") {
    const std::vector<RelationReport> reports = verify_pure(bell_state(BellState::PhiPlus));
    REQUIRE(has_report(reports, "eq6"));
    REQUIRE(has_report(reports, "eq7"));
    REQUIRE(!has_report(reports, "eq12"));

    for (std::size_t k = 0; k < 2; ++k) {
        const RelationReport& eq1 = find_report(reports, "eq1.q" + std::to_string(k));
        CHECK(term(eq1, "C2") == Catch::Approx(1.0));
        CHECK(term(eq1, "nu2") <= 1e-12);
        CHECK(term(eq1, "p2") <= 1e-12);
        CHECK(std::abs(eq1.residual) <= 1e-12);
        CHECK(eq1.pass);
    }
}

TEST_CASE("pure-state reports for GHZ") {
    const std::vector<RelationReport> reports = verify_pure(ghz_state(3));
    const RelationReport& eq7 = find_report(reports, "eq7");
    CHECK(eq7.lhs == Catch::Approx(3.0));
    CHECK(eq7.rhs == 3.0);
    CHECK(eq7.pass);
    // all marginals maximally mixed: each tau term is 1, each s2bar 0
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(term(eq7, "tau_q" + std::to_string(k)) == Catch::Approx(1.0));
        CHECK(term(eq7, "s2bar_q" + std::to_string(k)) <= 1e-12);
    }
    const RelationReport& eq12 = find_report(reports, "eq12");
    CHECK(term(eq12, "tau_123") == Catch::Approx(1.0).margin(1e-8));
    CHECK(eq12.pass);
}

TEST_CASE("pure-state reports for a product state") {
    const std::vector<RelationReport> reports = verify_pure(basis_state("000"));
    const RelationReport& eq12 = find_report(reports, "eq12");
    CHECK(term(eq12, "tau_123") <= 1e-12);
    CHECK(term(eq12, "s2bar_q0") == Catch::Approx(0.5));
    CHECK(eq12.lhs == Catch::Approx(1.0));
    CHECK(eq12.pass);

    const std::vector<RelationReport> single = verify_pure(basis_state("0"));
    CHECK(find_report(single, "eq6").lhs == Catch::Approx(0.5));
    CHECK(!has_report(single, "eq1.q0"));
}

TEST_CASE("relation reports satisfy their own residual contract") {
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        for (const RelationReport& r : verify_pure(random_pure(2 + i % 3, rng))) {
            CHECK(r.residual == r.lhs - r.rhs);
            if (r.kind == RelationKind::Identity) CHECK(r.pass == (std::abs(r.residual) <= r.tolerance));
        }
    }
}

TEST_CASE("two-qubit reports for the Werner family") {
    const std::vector<RelationReport> reports = verify_two_qubit(werner({0.5, BellState::PhiPlus}));
    const RelationReport& eq28 = find_report(reports, "eq28");
    CHECK(term(eq28, "eta") == Catch::Approx(15.0 / 16.0));
    CHECK(term(eq28, "tau") == Catch::Approx(1.0 / 16.0));
    CHECK(term(eq28, "s2bar_q0") <= 1e-12);
    CHECK(term(eq28, "s2bar_q1") <= 1e-12);
    CHECK(eq28.pass);

    for (const char* id : {"eq13", "eq14", "eq17", "eq19", "eq20", "eq27"}) {
        const RelationReport& r = find_report(reports, id);
        CHECK(r.pass);
    }
}

TEST_CASE("two-qubit reports for |00> and the maximally mixed state") {
    const std::vector<RelationReport> zz = verify_two_qubit(to_density(basis_state("00")));
    const RelationReport& eq19 = find_report(zz, "eq19");
    CHECK(term(eq19, "I") <= 1e-12);
    CHECK(term(eq19, "s2bar_q0") == Catch::Approx(0.5));
    CHECK(term(eq19, "s2bar_q1") == Catch::Approx(0.5));
    CHECK(eq19.pass);

    const std::vector<RelationReport> mixed = verify_two_qubit(werner({0.0, BellState::PhiPlus}));
    const RelationReport& eq28 = find_report(mixed, "eq28");
    CHECK(term(eq28, "eta") == Catch::Approx(1.0));
    CHECK(term(eq28, "tau") <= 1e-12);
    CHECK(eq28.pass);
}

TEST_CASE("all two-qubit identities hold on random states of every rank") {
    Rng rng(3);
    for (std::size_t rank = 1; rank <= 4; ++rank)
        for (int i = 0; i < 250; ++i) {
            const std::vector<RelationReport> reports = verify_two_qubit(random_mixed(2, rank, rng));
            for (const RelationReport& r : reports) {
                INFO(r.relation_id << " residual " << r.residual);
                CHECK(r.pass);
            }
        }
}

TEST_CASE("all pure-state identities hold on random states") {
    Rng rng(4);
    for (std::size_t n = 1; n <= 5; ++n)
        for (int i = 0; i < 100; ++i) {
            const std::vector<RelationReport> reports = verify_pure(random_pure(n, rng));
            for (const RelationReport& r : reports) {
                INFO("n=" << n << " " << r.relation_id << " residual " << r.residual);
                CHECK(r.pass);
            }
        }
}

TEST_CASE("monogamy reports") {
    const std::vector<RelationReport> ghz = verify_monogamy(ghz_state(3));
    REQUIRE(ghz.size() == 3);
    for (const RelationReport& r : ghz) {
        CHECK(r.kind == RelationKind::LowerBound);
        CHECK(r.residual == Catch::Approx(1.0).margin(1e-8));
        CHECK(r.pass);
    }

    for (const RelationReport& r : verify_monogamy(w_state(3))) {
        CHECK(std::abs(r.residual) <= 1e-8);  // W saturates the bound
        CHECK(r.pass);
    }

    for (const RelationReport& r : verify_monogamy(basis_state("000"))) {
        CHECK(std::abs(r.residual) <= 1e-12);
        CHECK(r.pass);
    }

    Rng rng(5);
    for (int i = 0; i < 200; ++i)
        for (const RelationReport& r : verify_monogamy(random_pure(3, rng))) CHECK(r.pass);
}

TEST_CASE("eq16 worked examples") {
    RelationConfig cfg;
    cfg.identity_tol = 1e-10;

    Form15Params diag;
    diag.omega[0] = diag.omega[1] = 0.5;
    const Eq16Report a = verify_eq16(diag, cfg);
    CHECK(a.lhs == Catch::Approx(0.5));
    CHECK(a.rhs == Catch::Approx(0.5));
    CHECK(a.pass);

    Form15Params mixed;
    mixed.omega[0] = mixed.omega[1] = mixed.omega[2] = mixed.omega[3] = 0.25;
    const Eq16Report b = verify_eq16(mixed, cfg);
    CHECK(b.lhs == Catch::Approx(1.0));
    CHECK(b.rhs == Catch::Approx(1.0));
    CHECK(b.variances[0] == Catch::Approx(3.0 / 16.0));
    CHECK(b.cov_14 == Catch::Approx(-1.0 / 16.0));
    CHECK(b.pass);

    Form15Params bell;
    bell.omega[0] = bell.omega[3] = 0.5;
    bell.e = 0.5;
    const Eq16Report c = verify_eq16(bell, cfg);
    CHECK(c.lhs == Catch::Approx(1.0));
    CHECK(c.rhs == Catch::Approx(1.0));
    CHECK(c.pass);
}

TEST_CASE("eq16 on random canonical-form draws") {
    Rng rng(6);
    for (int i = 0; i < 300; ++i) {
        const Form15Params p = random_form15_params(rng);
        const Eq16Report r = verify_eq16(p);
        CHECK(std::abs(r.residual) <= 1e-10);
        CHECK(r.coherence_residual_q0 <= 1e-10);
        CHECK(r.coherence_residual_q1 <= 1e-10);
    }
}

TEST_CASE("summaries aggregate deviations") {
    Rng rng(7);
    std::vector<RelationReport> reports = verify_two_qubit(random_mixed(2, 4, rng));
    const BatchSummary s = summarize(reports);
    CHECK(s.total == reports.size());
    CHECK(s.passed == reports.size());
    CHECK(s.max_abs_residual <= 1e-9);

    // a lower-bound report with positive slack contributes zero deviation
    std::vector<RelationReport> mono = verify_monogamy(ghz_state(3));
    const BatchSummary ms = summarize(mono);
    CHECK(ms.max_abs_residual <= 1e-10);
}
