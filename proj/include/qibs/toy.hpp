// The worked three-qubit reference instance and its expected intermediate
// values. The golden table is a hand-transcribed constant, never recomputed
// from the code under test; the walkthrough replays every stage through the
// public library operations and diffs each result against the table, up to
// global phase, at 1e-9.
//
// Reference instance: m = 3, signer identity 011, verifier identity 100,
// signer pad key 010110, verifier pad key 100101, signing phase pi
// (numerator 128 of 8 bits), message |010>.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qibs/protocol.hpp"
#include "qibs/statevector.hpp"

namespace qibs::toy {

inline constexpr const char* signer_key_bits = "010110";
inline constexpr const char* verifier_key_bits = "100101";
inline constexpr const char* signer_id_bits = "011";
inline constexpr const char* message_bits = "010";

inline PhaseSecret phase() { return PhaseSecret::from_fraction(128, 8); } // angle pi

inline ProtocolConfig config() {
    ProtocolConfig c;
    c.message_qubits = 3;
    c.phase_bits = 8;
    c.signer_id = signer_id_bits;
    c.message_bits = message_bits;
    c.inject_signer_key = signer_key_bits;
    c.inject_verifier_key = verifier_key_bits;
    c.inject_phase = phase();
    c.seed = 0;
    return c;
}

struct GoldenTable {
    std::string pad_plain;             // pad demo input
    std::string pad_cipher;            // its ciphertext under the signer key
    std::vector<complex_t> signature;  // |S>, amplitudes in index order
    std::vector<complex_t> enc_signature; // |S> under the verifier pad
    std::string enc_identity;          // identity register under the verifier pad
    std::string recovery;              // SKG recovery register
    std::string response;              // re-padded response register
};

inline GoldenTable golden() {
    // amplitudes are all +-1/(2*sqrt(2))
    const double r = 1.0 / (2.0 * std::sqrt(2.0));
    GoldenTable g;
    g.pad_plain = message_bits;
    g.pad_cipher = "100";
    g.signature = {{-r, 0}, {-r, 0}, {-r, 0}, {-r, 0}, {r, 0}, {r, 0}, {r, 0}, {r, 0}};
    g.enc_signature = {{-r, 0}, {-r, 0}, {-r, 0}, {-r, 0}, {-r, 0}, {-r, 0}, {-r, 0}, {-r, 0}};
    g.enc_identity = "000";
    g.recovery = "010";
    g.response = "001";
    return g;
}

struct Checkpoint {
    std::string stage;
    bool pass = false;
    double deviation = 0.0;
    std::string note;
};

struct WalkthroughReport {
    std::vector<Checkpoint> checkpoints;
    bool accepted = false;

    bool all_pass() const {
        for (const Checkpoint& c : checkpoints)
            if (!c.pass) return false;
        return true;
    }

    const Checkpoint* first_failure() const {
        for (const Checkpoint& c : checkpoints)
            if (!c.pass) return &c;
        return nullptr;
    }
};

inline constexpr double walkthrough_tolerance = 1e-9;

// Replays the reference instance stage by stage against `expected`.
inline WalkthroughReport run_walkthrough(const GoldenTable& expected = golden()) {
    WalkthroughReport report;
    auto check_state = [&](std::string stage, const StateVector& actual,
                           const std::vector<complex_t>& want, std::string note) {
        const double dev = phase_aligned_max_diff(actual, want);
        report.checkpoints.push_back(
            {std::move(stage), dev <= walkthrough_tolerance, dev, std::move(note)});
    };
    auto check_basis = [&](std::string stage, const StateVector& actual,
                           const std::string& label, std::string note) {
        check_state(std::move(stage), actual, basis_state(label).amplitudes(), std::move(note));
    };

    const OtpKey signer_key{std::string(signer_key_bits)};
    const OtpKey verifier_key{std::string(verifier_key_bits)};
    const std::size_t m = 3;

    const StateVector message = basis_state(expected.pad_plain);
    const StateVector pad_cipher = encrypt(message, signer_key);
    check_basis("pad-encrypt", pad_cipher, expected.pad_cipher,
                "one-time pad of the message under the signer key");
    check_basis("pad-decrypt", decrypt(pad_cipher, signer_key), expected.pad_plain,
                "pad round trip returns the message");

    const Signer signer{Identity(signer_id_bits), signer_key, phase(), m};
    const SignatureTuple tuple = sign(signer, basis_state(message_bits));
    check_state("signature-state", tuple.signature, expected.signature,
                "rotated and padded message");

    const StateVector enc_signature = encrypt(tuple.signature, verifier_block_key(verifier_key, m, 0));
    check_state("encrypted-signature", enc_signature, expected.enc_signature,
                "signature under the verifier pad");
    const StateVector enc_identity = encrypt(tuple.identity_state, verifier_block_key(verifier_key, m, 1));
    check_basis("encrypted-identity", enc_identity, expected.enc_identity,
                "identity register under the verifier pad");

    const StateVector recovery = apply_gate_all(
        decrypt(decrypt(enc_signature, verifier_block_key(verifier_key, m, 0)), signer_key),
        signing_gate(phase()).dagger());
    check_basis("skg-recovery", recovery, expected.recovery,
                "SKG strips both pads and undoes the rotation");

    const StateVector response = encrypt(recovery, verifier_block_key(verifier_key, m, 0));
    check_basis("response", response, expected.response, "recovery under the verifier pad");

    const Transcript transcript = run_protocol(config());
    report.accepted = transcript.outcome == Outcome::accept;
    report.checkpoints.push_back({"final-accept", report.accepted,
                                  report.accepted ? 0.0 : 1.0 - transcript.final_fidelity,
                                  "full protocol run accepts"});
    return report;
}

} // namespace qibs::toy
