#include <catch2/catch_amalgamated.hpp>

#include "qibs/costs.hpp"
#include "qibs/protocol.hpp"
#include "qibs/toy.hpp"

using namespace qibs;

TEST_CASE("ledger counters accumulate and reject negative counts") {
    CostLedger ledger;
    ledger.record_qubits(QubitLeg::signature_delivery, 3);
    ledger.record_qubits(QubitLeg::signature_delivery, 6);
    ledger.record_measurements(36);
    ledger.record_conversions(17);
    CHECK(ledger.qubits(QubitLeg::signature_delivery) == 9);
    CHECK(ledger.measurements() == 36);
    CHECK(ledger.conversions() == 17);
    CHECK(ledger.total_qubits() == 9);

    CHECK_THROWS_AS(ledger.record_qubits(QubitLeg::verify_request, -1), std::invalid_argument);
    CHECK_THROWS_AS(ledger.record_measurements(-5), std::invalid_argument);
    CHECK_THROWS_AS(ledger.record_conversions(-2), std::invalid_argument);
}

TEST_CASE("merge adds counters and propagates applicability") {
    CostLedger a;
    a.record_qubits(QubitLeg::key_establishment, 4);
    a.record_measurements(2);
    CostLedger b;
    b.record_qubits(QubitLeg::key_establishment, 8);
    b.record_conversions(3);
    b.set_conversions_applicable(false);
    a.merge(b);
    CHECK(a.qubits(QubitLeg::key_establishment) == 12);
    CHECK(a.measurements() == 2);
    CHECK(a.conversions() == 3);
    CHECK_FALSE(a.conversions_applicable());
}

TEST_CASE("an honest reference run reconciles every formula") {
    const Transcript transcript = run_protocol(toy::config());
    REQUIRE(transcript.outcome == Outcome::accept);

    const CostLedger& ledger = transcript.ledger;
    // m = 3, n = 8
    CHECK(ledger.qubits(QubitLeg::key_establishment) == 12);
    CHECK(ledger.qubits(QubitLeg::phase_authentication) == 16);
    CHECK(ledger.qubits(QubitLeg::signature_delivery) == 9);
    CHECK(ledger.qubits(QubitLeg::verify_request) == 6);
    CHECK(ledger.qubits(QubitLeg::verify_response) == 3);
    CHECK(ledger.initializing_qubits() == 28);
    CHECK(ledger.total_qubits() == 46);
    CHECK(ledger.measurements() == 23 * 3 + 3 * 8);
    CHECK(ledger.conversions_applicable());
    CHECK(ledger.conversions() == 3 * 3 + 8);

    const FormulaReport report = check_formulas(ledger, 3, 8);
    CHECK(report.all_pass());
    CHECK(report.checks.size() == 9);
}

TEST_CASE("formulas hold across sizes") {
    for (const auto& [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 4}, {4, 12}}) {
        ProtocolConfig config;
        config.message_qubits = m;
        config.phase_bits = n;
        config.signer_id = std::string(m, '1');
        config.message_bits = std::string(m, '0');
        config.seed = 17 + m;
        const Transcript transcript = run_protocol(config);
        REQUIRE(transcript.outcome == Outcome::accept);
        CHECK(check_formulas(transcript.ledger, m, n).all_pass());
    }
}

TEST_CASE("counts are independent of message content") {
    ProtocolConfig a = toy::config();
    ProtocolConfig b = toy::config();
    b.message_bits = "111";
    const Transcript ta = run_protocol(a);
    const Transcript tb = run_protocol(b);
    CHECK(ta.ledger.total_qubits() == tb.ledger.total_qubits());
    CHECK(ta.ledger.measurements() == tb.ledger.measurements());
    CHECK(ta.ledger.conversions() == tb.ledger.conversions());
}

TEST_CASE("quantum-message runs mark conversions not applicable") {
    ProtocolConfig config = toy::config();
    config.message_bits.reset();
    const Transcript transcript = run_protocol(config);
    REQUIRE(transcript.outcome == Outcome::accept);
    CHECK_FALSE(transcript.ledger.conversions_applicable());
    const FormulaReport report = check_formulas(transcript.ledger, 3, 8);
    CHECK(report.all_pass());
    CHECK(report.checks.size() == 8); // conversion check suppressed
}

TEST_CASE("mismatched ledgers fail reconciliation") {
    CostLedger ledger;
    const FormulaReport report = check_formulas(ledger, 3, 8);
    CHECK_FALSE(report.all_pass());
}
