// Identity-based signature protocol among three parties: a signer, a
// verifier and the system key generator (SKG).
//
//   initializing  the SKG establishes a pad key with each party and learns
//                 each signer's phase secret
//   signing       the signer rotates the message with U(pi/2, phi, 0) on
//                 every qubit, pads the result with its key, and sends the
//                 tuple (message copy, signature, identity register)
//   verification  the verifier pads signature and identity with its own key
//                 and asks the SKG, which strips the pads, reads the
//                 identity, undoes the signer's rotation, and returns the
//                 re-padded recovery; the verifier unpads and compares it
//                 with the held message copy
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qibs/costs.hpp"
#include "qibs/keyestab.hpp"
#include "qibs/noise.hpp"
#include "qibs/qotp.hpp"
#include "qibs/rng.hpp"
#include "qibs/statevector.hpp"

namespace qibs {

// Verification accepts when the comparator fidelity reaches 1 - accept_epsilon.
inline constexpr double accept_epsilon = 1e-6;

struct Identity {
    std::string bits;

    explicit Identity(std::string b) : bits(std::move(b)) {
        if (bits.empty()) throw std::invalid_argument("Identity: empty label");
        for (char c : bits)
            if (c != '0' && c != '1') throw std::invalid_argument("Identity: label must be 0/1 bits");
    }
};

inline Gate signing_gate(const PhaseSecret& phase) {
    return u_gate(std::numbers::pi / 2, phase.angle(), 0.0);
}

struct SignatureTuple {
    StateVector message;
    StateVector signature;
    StateVector identity_state;
};

struct SignerRecord {
    OtpKey key;
    PhaseSecret phase;
};

class SkgRegistry {
public:
    void register_signer(const Identity& id, OtpKey key, PhaseSecret phase) {
        if (key.size() != 2 * id.bits.size())
            throw std::invalid_argument("register_signer: key must cover the identity length");
        if (!signers_.emplace(id.bits, SignerRecord{std::move(key), phase}).second)
            throw std::invalid_argument("register_signer: duplicate identity");
    }

    void register_verifier(std::string name, OtpKey key) {
        if (!verifiers_.emplace(std::move(name), std::move(key)).second)
            throw std::invalid_argument("register_verifier: duplicate verifier");
    }

    const SignerRecord* find_signer(const std::string& id_bits) const {
        const auto it = signers_.find(id_bits);
        return it == signers_.end() ? nullptr : &it->second;
    }

    const OtpKey* find_verifier_key(const std::string& name) const {
        const auto it = verifiers_.find(name);
        return it == verifiers_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, SignerRecord>& signers() const { return signers_; }

private:
    std::map<std::string, SignerRecord> signers_;
    std::map<std::string, OtpKey> verifiers_;
};

struct Signer {
    Identity id;
    OtpKey key;
    PhaseSecret phase;
    std::size_t message_qubits = 0;
};

struct Verifier {
    std::string name;
    OtpKey key;
    std::size_t message_qubits = 0;
    std::optional<StateVector> held_message;
};

// The verifier key covers a 2m-qubit payload: signature block then identity
// block. A 2m-bit key tiles across both; a 4m-bit key is consumed
// positionally. The response leg reuses block 0.
inline OtpKey verifier_block_key(const OtpKey& key, std::size_t m, std::size_t block) {
    if (block > 1) throw std::out_of_range("verifier_block_key: block out of range");
    if (key.size() >= 4 * m) return key.subkey(2 * m * block + 1, 2 * m);
    if (key.size() >= 2 * m) return key.subkey(1, 2 * m);
    throw std::invalid_argument("verifier_block_key: key shorter than 2m bits");
}

inline SignatureTuple sign(const Signer& signer, const StateVector& message,
                           CostLedger* ledger = nullptr) {
    const std::size_t m = signer.message_qubits;
    if (m == 0) throw std::runtime_error("sign: signer not initialized");
    if (message.num_qubits() != m) throw std::invalid_argument("sign: message size mismatch");
    if (signer.id.bits.size() != m) throw std::invalid_argument("sign: identity size mismatch");
    if (signer.key.size() < 2 * m) throw std::invalid_argument("sign: signer key too short");

    StateVector rotated = apply_gate_all(message, signing_gate(signer.phase));
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(m));
    StateVector signature = encrypt(rotated, signer.key);
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(2 * m));
    StateVector identity_state = basis_state(signer.id.bits);
    if (ledger) ledger->record_conversions(static_cast<std::int64_t>(m));
    return SignatureTuple{message, std::move(signature), std::move(identity_state)};
}

struct VerifyRequest {
    StateVector enc_signature;
    StateVector enc_identity;
};

inline VerifyRequest verify_request(Verifier& verifier, const SignatureTuple& tuple,
                                    CostLedger* ledger = nullptr) {
    const std::size_t m = verifier.message_qubits;
    if (m == 0) throw std::runtime_error("verify_request: verifier not initialized");
    if (tuple.message.num_qubits() != m || tuple.signature.num_qubits() != m ||
        tuple.identity_state.num_qubits() != m)
        throw std::invalid_argument("verify_request: tuple size mismatch");

    verifier.held_message = tuple.message;
    VerifyRequest request{
        encrypt(tuple.signature, verifier_block_key(verifier.key, m, 0)),
        encrypt(tuple.identity_state, verifier_block_key(verifier.key, m, 1))};
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(4 * m));
    return request;
}

struct SkgResponse {
    std::optional<StateVector> response;
    std::string measured_identity;
    std::string reject_reason;

    bool rejected() const { return !response.has_value(); }
};

// Unknown identities produce a reject signal, never an exception: a forged
// identity is a protocol outcome, not a caller error.
inline SkgResponse skg_respond(const SkgRegistry& registry, const std::string& verifier_name,
                               const VerifyRequest& request, Rng& rng,
                               CostLedger* ledger = nullptr) {
    const OtpKey* verifier_key = registry.find_verifier_key(verifier_name);
    if (!verifier_key) throw std::invalid_argument("skg_respond: unknown verifier");
    const std::size_t m = request.enc_signature.num_qubits();
    if (request.enc_identity.num_qubits() != m)
        throw std::invalid_argument("skg_respond: request size mismatch");

    StateVector signature = decrypt(request.enc_signature, verifier_block_key(*verifier_key, m, 0));
    StateVector identity_state = decrypt(request.enc_identity, verifier_block_key(*verifier_key, m, 1));
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(4 * m));

    const std::string id_bits = measure_all(identity_state, rng);
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(m));

    const SignerRecord* record = registry.find_signer(id_bits);
    if (!record) return SkgResponse{std::nullopt, id_bits, "unknown identity"};

    StateVector rotated = decrypt(signature, record->key);
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(2 * m));
    StateVector recovered = apply_gate_all(rotated, signing_gate(record->phase).dagger());
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(m));
    StateVector response = encrypt(recovered, verifier_block_key(*verifier_key, m, 0));
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(2 * m));
    return SkgResponse{std::move(response), id_bits, ""};
}

// Swap-test estimate of |<a|b>|^2 from `shots` ancilla samples. After
// H, controlled-swap, H the ancilla-0 branch is (a(x)b + b(x)a)/2, so
// P(ancilla=0) = (1 + |<a|b>|^2)/2; the estimate 2*f0 - 1 is clamped to [0,1].
inline double swap_test(const StateVector& a, const StateVector& b, std::size_t shots, Rng& rng) {
    if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("swap_test: dimension mismatch");
    if (shots == 0) throw std::invalid_argument("swap_test: need at least one shot");
    double p0 = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            p0 += std::norm((a.amplitude(i) * b.amplitude(j) + b.amplitude(i) * a.amplitude(j)) / 2.0);
    std::size_t zeros = 0;
    for (std::size_t s = 0; s < shots; ++s)
        if (rng.next_double() < p0) ++zeros;
    const double estimate = 2.0 * static_cast<double>(zeros) / static_cast<double>(shots) - 1.0;
    return std::min(1.0, std::max(0.0, estimate));
}

enum class Comparator { exact, swap_test };
enum class Outcome { accept, reject };

struct FinalizeResult {
    Outcome outcome = Outcome::reject;
    double fidelity = 0.0;
    StateVector recovered;
};

inline FinalizeResult finalize(Verifier& verifier, const StateVector& response,
                               Comparator comparator, std::size_t shots, Rng& rng,
                               CostLedger* ledger = nullptr) {
    if (!verifier.held_message) throw std::runtime_error("finalize: no pending verification");
    const std::size_t m = verifier.message_qubits;
    if (response.num_qubits() != m) throw std::invalid_argument("finalize: response size mismatch");

    StateVector recovered = decrypt(response, verifier_block_key(verifier.key, m, 0));
    if (ledger) ledger->record_measurements(static_cast<std::int64_t>(2 * m));
    const double f = comparator == Comparator::exact
                         ? fidelity(recovered, *verifier.held_message)
                         : swap_test(recovered, *verifier.held_message, shots, rng);
    verifier.held_message.reset();
    const Outcome outcome = f >= 1.0 - accept_epsilon ? Outcome::accept : Outcome::reject;
    return FinalizeResult{outcome, f, std::move(recovered)};
}

struct TranscriptEntry {
    std::string sender;
    std::string receiver;
    std::string kind;
    std::uint64_t qubits = 0;
};

struct Transcript {
    std::vector<TranscriptEntry> messages;
    std::optional<Outcome> outcome;
    CostLedger ledger;
    double final_fidelity = 0.0;
    std::string reject_reason;
    std::string comparison_measurement;
    std::optional<SignatureTuple> delivered_tuple;
    std::optional<StateVector> recovered_message;
};

struct InitOptions {
    std::size_t message_qubits = 3;
    std::size_t phase_bits = 8;
    std::vector<Identity> signer_ids;
    std::uint64_t seed = 0;
    std::vector<std::optional<std::string>> signer_key_vectors; // 2m bits each
    std::vector<std::optional<PhaseSecret>> signer_phases;
    std::optional<std::string> verifier_key_vector; // 2m or 4m bits
    std::string verifier_name = "verifier";
};

struct Parties {
    SkgRegistry registry;
    std::vector<Signer> signers;
    Verifier verifier;
};

// Per-pairing channel seeds are derived from the run seed with fixed indices:
// signer channels at 1000 + index, the verifier channel at 2000.
inline Parties initialize(const InitOptions& options, CostLedger& ledger,
                          Transcript* transcript = nullptr) {
    const std::size_t m = options.message_qubits;
    if (m == 0) throw std::invalid_argument("initialize: need at least one message qubit");
    if (!options.signer_key_vectors.empty() && options.signer_key_vectors.size() != options.signer_ids.size())
        throw std::invalid_argument("initialize: signer key vector count mismatch");
    if (!options.signer_phases.empty() && options.signer_phases.size() != options.signer_ids.size())
        throw std::invalid_argument("initialize: signer phase count mismatch");

    Parties parties{SkgRegistry{}, {}, Verifier{options.verifier_name, OtpKey("00"), 0, std::nullopt}};

    for (std::size_t i = 0; i < options.signer_ids.size(); ++i) {
        const Identity& id = options.signer_ids[i];
        if (id.bits.size() != m) throw std::invalid_argument("initialize: identity length mismatch");
        KeyChannel channel("skg", "signer:" + id.bits, split_seed(options.seed, 1000 + i), &ledger);
        if (!options.signer_key_vectors.empty() && options.signer_key_vectors[i])
            channel.inject(*options.signer_key_vectors[i]);
        OtpKey key = dealer_share(channel, m);
        if (transcript)
            transcript->messages.push_back({"skg", channel.endpoint_b, "key-establishment", 2 * m});
        PhaseSecret phase =
            (!options.signer_phases.empty() && options.signer_phases[i])
                ? *options.signer_phases[i]
                : PhaseSecret::random(static_cast<std::uint32_t>(options.phase_bits), channel.rng);
        const PhaseSecret shared = share_phase(channel, phase);
        if (transcript)
            transcript->messages.push_back(
                {channel.endpoint_b, "skg", "phase-authentication", 2 * options.phase_bits});
        parties.registry.register_signer(id, key, shared);
        parties.signers.push_back(Signer{id, std::move(key), shared, m});
    }

    KeyChannel channel("skg", options.verifier_name, split_seed(options.seed, 2000), &ledger);
    std::optional<std::string> positional_key;
    if (options.verifier_key_vector) {
        if (options.verifier_key_vector->size() == 2 * m)
            channel.inject(*options.verifier_key_vector);
        else if (options.verifier_key_vector->size() == 4 * m)
            positional_key = *options.verifier_key_vector; // dealer still runs; override below
        else
            throw std::invalid_argument("initialize: verifier key vector must be 2m or 4m bits");
    }
    OtpKey verifier_key = dealer_share(channel, m);
    if (positional_key) verifier_key = OtpKey(*positional_key);
    if (transcript)
        transcript->messages.push_back({"skg", options.verifier_name, "key-establishment", 2 * m});
    parties.registry.register_verifier(options.verifier_name, verifier_key);
    parties.verifier = Verifier{options.verifier_name, std::move(verifier_key), m, std::nullopt};
    return parties;
}

struct ProtocolConfig {
    std::size_t message_qubits = 3;
    std::size_t phase_bits = 8;
    std::string signer_id = "011";
    std::optional<std::string> message_bits;    // classical basis-state message
    std::optional<StateVector> message_state;   // explicit quantum message (wins over bits)
    std::optional<std::string> inject_signer_key;
    std::optional<std::string> inject_verifier_key;
    std::optional<PhaseSecret> inject_phase;
    std::uint64_t seed = 0;
    NoiseModel noise{};
    Comparator comparator = Comparator::exact;
    std::size_t shots = 512;
    // adversarial overrides
    std::optional<std::string> forge_key;   // 2m bits used in place of the signer key
    std::optional<PhaseSecret> forge_phase; // used in place of the signer phase
    std::optional<std::string> tamper_pauli; // I/X/Y/Z labels applied in transit
};

// One full run. Randomness splits off the run seed: channel streams inside
// initialize(), the in-flight stream (noise, identity readout, comparator
// shots, final readout) at index 1, message sampling at index 2.
inline Transcript run_protocol(const ProtocolConfig& config) {
    const std::size_t m = config.message_qubits;
    if (config.signer_id.size() != m) throw std::invalid_argument("run_protocol: identity length mismatch");
    if (config.message_bits && config.message_bits->size() != m)
        throw std::invalid_argument("run_protocol: message length mismatch");
    if (config.message_state && config.message_state->num_qubits() != m)
        throw std::invalid_argument("run_protocol: message register size mismatch");
    if (config.tamper_pauli && config.tamper_pauli->size() != m)
        throw std::invalid_argument("run_protocol: tamper string length mismatch");

    Transcript transcript;
    InitOptions init;
    init.message_qubits = m;
    init.phase_bits = config.phase_bits;
    init.signer_ids.push_back(Identity(config.signer_id));
    init.seed = config.seed;
    init.signer_key_vectors.push_back(config.inject_signer_key);
    init.signer_phases.push_back(config.inject_phase);
    init.verifier_key_vector = config.inject_verifier_key;
    Parties parties = initialize(init, transcript.ledger, &transcript);

    Rng flight_rng(split_seed(config.seed, 1));
    Rng message_rng(split_seed(config.seed, 2));

    StateVector message = config.message_state ? *config.message_state
                          : config.message_bits ? basis_state(*config.message_bits)
                                                : random_product_state(m, message_rng);
    if (config.message_bits && !config.message_state)
        transcript.ledger.record_conversions(static_cast<std::int64_t>(2 * m));
    else
        transcript.ledger.set_conversions_applicable(false);

    Signer signing_party = parties.signers.front();
    if (config.forge_key) signing_party.key = OtpKey(*config.forge_key);
    if (config.forge_phase) signing_party.phase = *config.forge_phase;
    SignatureTuple tuple = sign(signing_party, message, &transcript.ledger);
    transcript.messages.push_back({"signer:" + config.signer_id, parties.verifier.name,
                                   "signature-tuple", 3 * m});
    transcript.ledger.record_qubits(QubitLeg::signature_delivery, static_cast<std::int64_t>(3 * m));

    SignatureTuple delivered = tuple;
    if (config.tamper_pauli) {
        for (std::size_t q = 1; q <= m; ++q) {
            const Gate& g = gates::from_label((*config.tamper_pauli)[q - 1]);
            delivered.message = apply_single(delivered.message, g, q);
            delivered.signature = apply_single(delivered.signature, g, q);
        }
    }
    delivered.message = apply_noise_all(delivered.message, config.noise, flight_rng);
    delivered.signature = apply_noise_all(delivered.signature, config.noise, flight_rng);
    delivered.identity_state = apply_noise_all(delivered.identity_state, config.noise, flight_rng);
    transcript.delivered_tuple = delivered;

    VerifyRequest request = verify_request(parties.verifier, delivered, &transcript.ledger);
    transcript.messages.push_back({parties.verifier.name, "skg", "verify-request", 2 * m});
    request.enc_signature = apply_noise_all(request.enc_signature, config.noise, flight_rng);
    request.enc_identity = apply_noise_all(request.enc_identity, config.noise, flight_rng);
    transcript.ledger.record_qubits(QubitLeg::verify_request, static_cast<std::int64_t>(2 * m));

    SkgResponse reply = skg_respond(parties.registry, parties.verifier.name, request,
                                    flight_rng, &transcript.ledger);
    if (reply.rejected()) {
        transcript.messages.push_back({"skg", parties.verifier.name, "reject-signal", 0});
        transcript.outcome = Outcome::reject;
        transcript.reject_reason = reply.reject_reason;
        transcript.comparison_measurement = "reject-signal";
        return transcript;
    }
    transcript.messages.push_back({"skg", parties.verifier.name, "response", m});
    StateVector response = apply_noise_all(*reply.response, config.noise, flight_rng);
    transcript.ledger.record_qubits(QubitLeg::verify_response, static_cast<std::int64_t>(m));

    FinalizeResult result = finalize(parties.verifier, response, config.comparator,
                                     config.shots, flight_rng, &transcript.ledger);
    transcript.outcome = result.outcome;
    transcript.final_fidelity = result.fidelity;
    if (result.outcome == Outcome::reject) transcript.reject_reason = "comparison failed";
    // final readout of the compared register; instrumentation, not billed
    transcript.comparison_measurement = measure_all(result.recovered, flight_rng);
    transcript.recovered_message = std::move(result.recovered);
    return transcript;
}

} // namespace qibs
