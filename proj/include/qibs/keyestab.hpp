// Key establishment between the SKG and one party. The default channel is an
// ideal trusted dealer: both endpoints end up with identical uniformly random
// bits. A BB84 mode is available as an opt-in realism layer; its extra
// traffic is not part of the closed-form cost reconciliation.
#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qibs/costs.hpp"
#include "qibs/qotp.hpp"
#include "qibs/rng.hpp"
#include "qibs/statevector.hpp"

namespace qibs {

// Phase secret quantized to n bits: angle = 2*pi*k / 2^n with k in 1..2^n-1.
struct PhaseSecret {
    std::uint32_t numerator = 0;
    std::uint32_t bits = 0;

    static PhaseSecret from_fraction(std::uint32_t numerator, std::uint32_t bits) {
        if (bits < 1 || bits > 30) throw std::invalid_argument("PhaseSecret: bit count out of range");
        if (numerator == 0) throw std::invalid_argument("PhaseSecret: numerator zero is excluded");
        if (numerator >= (std::uint32_t{1} << bits))
            throw std::invalid_argument("PhaseSecret: numerator out of range");
        return PhaseSecret{numerator, bits};
    }

    static PhaseSecret random(std::uint32_t bits, Rng& rng) {
        if (bits < 1 || bits > 30) throw std::invalid_argument("PhaseSecret: bit count out of range");
        const std::size_t k = 1 + rng.next_index((std::size_t{1} << bits) - 1);
        return from_fraction(static_cast<std::uint32_t>(k), bits);
    }

    double angle() const {
        return 2.0 * std::numbers::pi * static_cast<double>(numerator) /
               static_cast<double>(std::uint64_t{1} << bits);
    }

    friend bool operator==(const PhaseSecret&, const PhaseSecret&) = default;
};

// One authenticated pairing between "skg" and a party. Injected vectors let
// tests pin the established bits; otherwise the channel rng supplies them.
struct KeyChannel {
    std::string endpoint_a;
    std::string endpoint_b;
    Rng rng;
    CostLedger* ledger = nullptr;
    std::deque<std::string> injected_vectors;
    bool key_established = false;

    KeyChannel(std::string a, std::string b, std::uint64_t seed, CostLedger* costs = nullptr)
        : endpoint_a(std::move(a)), endpoint_b(std::move(b)), rng(seed), ledger(costs) {}

    void inject(std::string bits) { injected_vectors.push_back(std::move(bits)); }
};

// Ideal dealer: delivers 2*num_qubits shared bits, one qubit per bit.
inline OtpKey dealer_share(KeyChannel& channel, std::size_t num_qubits) {
    if (num_qubits == 0) throw std::invalid_argument("dealer_share: empty key request");
    OtpKey key = [&] {
        if (!channel.injected_vectors.empty()) {
            std::string bits = std::move(channel.injected_vectors.front());
            channel.injected_vectors.pop_front();
            if (bits.size() != 2 * num_qubits)
                throw std::invalid_argument("dealer_share: injected vector length mismatch");
            return OtpKey(std::move(bits));
        }
        return OtpKey::random(num_qubits, channel.rng);
    }();
    if (channel.ledger) {
        channel.ledger->record_qubits(QubitLeg::key_establishment, static_cast<std::int64_t>(2 * num_qubits));
        channel.ledger->record_measurements(static_cast<std::int64_t>(2 * num_qubits));
    }
    channel.key_established = true;
    return key;
}

// Spec'd alias: draw a fresh 2n-bit pad key from an established source.
inline OtpKey keygen(std::size_t num_qubits, KeyChannel& source) {
    return dealer_share(source, num_qubits);
}

struct Bb84Result {
    std::optional<OtpKey> sender_key;
    std::optional<OtpKey> receiver_key;
    double qber = 0.0;
    bool aborted = false;
};

inline constexpr double bb84_abort_threshold = 0.11;

// BB84 with an optional intercept-resend eavesdropper, run through the
// statevector core one qubit at a time. Sifted bits alternate between error
// estimation (even positions) and key material (odd positions).
inline Bb84Result bb84_share(KeyChannel& channel, std::size_t target_bits,
                             std::size_t raw_rounds, bool intercept_resend) {
    if (target_bits == 0) throw std::invalid_argument("bb84_share: empty key request");
    if (raw_rounds < 8 * target_bits)
        throw std::invalid_argument("bb84_share: raw rounds must be at least 8x the target bits");

    auto prepare = [](int bit, int basis) {
        StateVector q = basis_state(bit ? "1" : "0");
        if (basis) q = apply_single(q, gates::hadamard, 1);
        return q;
    };
    auto measure_in = [&](const StateVector& q, int basis) {
        StateVector rotated = basis ? apply_single(q, gates::hadamard, 1) : q;
        return measure_all(rotated, channel.rng) == "1" ? 1 : 0;
    };

    std::string sifted_a;
    std::string sifted_b;
    for (std::size_t r = 0; r < raw_rounds; ++r) {
        const int a_bit = channel.rng.next_bit();
        const int a_basis = channel.rng.next_bit();
        StateVector flying = prepare(a_bit, a_basis);
        if (intercept_resend) {
            const int e_basis = channel.rng.next_bit();
            flying = prepare(measure_in(flying, e_basis), e_basis);
        }
        const int b_basis = channel.rng.next_bit();
        const int b_bit = measure_in(flying, b_basis);
        if (a_basis == b_basis) {
            sifted_a.push_back(static_cast<char>('0' + a_bit));
            sifted_b.push_back(static_cast<char>('0' + b_bit));
        }
    }
    if (channel.ledger) {
        channel.ledger->record_qubits(QubitLeg::key_establishment, static_cast<std::int64_t>(raw_rounds));
        channel.ledger->record_measurements(static_cast<std::int64_t>(raw_rounds));
    }

    std::size_t test_count = 0;
    std::size_t errors = 0;
    std::string key_a;
    std::string key_b;
    for (std::size_t i = 0; i < sifted_a.size(); ++i) {
        if (i % 2 == 0) {
            ++test_count;
            if (sifted_a[i] != sifted_b[i]) ++errors;
        } else {
            key_a.push_back(sifted_a[i]);
            key_b.push_back(sifted_b[i]);
        }
    }
    const double qber = test_count ? static_cast<double>(errors) / static_cast<double>(test_count) : 0.0;
    if (qber > bb84_abort_threshold) return Bb84Result{std::nullopt, std::nullopt, qber, true};
    if (key_a.size() < target_bits) throw std::runtime_error("bb84_share: insufficient sifted bits");
    key_a.resize(target_bits);
    key_b.resize(target_bits);
    channel.key_established = true;
    return Bb84Result{OtpKey(std::move(key_a)), OtpKey(std::move(key_b)), qber, false};
}

// Authenticated transfer of the signer's phase secret, protected by the
// previously established pad key. Modeled as an exact round trip through the
// n-bit encoding; costs 2n qubits, 3n measurement units, n conversion units.
inline PhaseSecret share_phase(KeyChannel& channel, const PhaseSecret& secret) {
    if (!channel.key_established)
        throw std::runtime_error("share_phase: channel has no established key");
    if (channel.ledger) {
        channel.ledger->record_qubits(QubitLeg::phase_authentication, 2 * static_cast<std::int64_t>(secret.bits));
        channel.ledger->record_measurements(3 * static_cast<std::int64_t>(secret.bits));
        channel.ledger->record_conversions(static_cast<std::int64_t>(secret.bits));
    }
    return PhaseSecret::from_fraction(secret.numerator, secret.bits);
}

} // namespace qibs
