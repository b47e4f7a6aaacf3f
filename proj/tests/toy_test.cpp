#include <catch2/catch_amalgamated.hpp>

#include "qibs/toy.hpp"

using namespace qibs;

TEST_CASE("reference walkthrough reproduces every frozen value") {
    const toy::WalkthroughReport report = toy::run_walkthrough();
    REQUIRE(report.checkpoints.size() == 8);
    for (const toy::Checkpoint& checkpoint : report.checkpoints) {
        INFO(checkpoint.stage << ": " << checkpoint.note);
        CHECK(checkpoint.pass);
        CHECK(checkpoint.deviation <= toy::walkthrough_tolerance);
    }
    CHECK(report.accepted);
    CHECK(report.all_pass());
    CHECK(report.first_failure() == nullptr);
}

TEST_CASE("walkthrough checkpoints appear in protocol order") {
    const toy::WalkthroughReport report = toy::run_walkthrough();
    const char* expected[] = {"pad-encrypt",         "pad-decrypt",    "signature-state",
                              "encrypted-signature", "encrypted-identity", "skg-recovery",
                              "response",            "final-accept"};
    REQUIRE(report.checkpoints.size() == std::size(expected));
    for (std::size_t i = 0; i < std::size(expected); ++i)
        CHECK(report.checkpoints[i].stage == expected[i]);
}

TEST_CASE("a corrupted golden table fails at the right stage") {
    toy::GoldenTable golden = toy::golden();
    golden.signature = basis_state("000").amplitudes();
    const toy::WalkthroughReport report = toy::run_walkthrough(golden);
    CHECK_FALSE(report.all_pass());
    REQUIRE(report.first_failure() != nullptr);
    CHECK(report.first_failure()->stage == "signature-state");

    // earlier stages still pass
    CHECK(report.checkpoints[0].pass);
    CHECK(report.checkpoints[1].pass);
}

TEST_CASE("pinned toy configuration is self-consistent") {
    const ProtocolConfig config = toy::config();
    CHECK(config.message_qubits == 3);
    CHECK(config.phase_bits == 8);
    CHECK(config.signer_id == "011");
    REQUIRE(config.message_bits.has_value());
    CHECK(*config.message_bits == "010");
    REQUIRE(config.inject_signer_key.has_value());
    CHECK(*config.inject_signer_key == "010110");
    REQUIRE(config.inject_verifier_key.has_value());
    CHECK(*config.inject_verifier_key == "100101");
    REQUIRE(config.inject_phase.has_value());
    CHECK(config.inject_phase->numerator == 128);
    CHECK(config.inject_phase->bits == 8);
}
